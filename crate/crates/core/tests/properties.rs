use gams_ldpc::code::{BaseGraph, BaseGraphId, CodeConfig, PrototypeMatrix};
use gams_ldpc::complexity::compression_savings;
use gams_ldpc::float::{box_plus, cn_update, DecoderVariant};
use gams_ldpc::quantized::{sort_min, BoxPlusLut, CompressedRRow, MinimaSet, QuantScheme};
use gams_ldpc::schedule::{build_oss, reorder_columns, Schedule};
use proptest::prelude::*;

fn llr() -> impl Strategy<Value = f64> {
    prop_oneof![-20.0..20.0f64, -0.5..0.5f64]
}

fn row(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(llr(), 2..=max_len)
}

fn prototype() -> impl Strategy<Value = PrototypeMatrix> {
    (2usize..6, 4usize..9, 1usize..6).prop_flat_map(|(m, n, z)| {
        prop::collection::vec(prop::collection::vec(-1i32..z as i32, n), m).prop_map(
            move |mut rows| {
                // keep every row at degree >= 2
                for (c, r) in rows.iter_mut().enumerate() {
                    r[c % n] = 0;
                    r[(c + 1) % n] = 0;
                }
                PrototypeMatrix::from_shifts(z, &rows).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn config_grows_with_length(bg in prop_oneof![Just(BaseGraphId::Bg1), Just(BaseGraphId::Bg2)],
                                z in prop::sample::select(vec![2usize, 16, 52, 384]),
                                e in 1usize..30_000) {
        let a = CodeConfig::new(bg, z, bg.k_u_max(), e);
        let b = CodeConfig::new(bg, z, bg.k_u_max(), e + z);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(a.n_p_used <= b.n_p_used);
            prop_assert!(a.m_p_used <= b.m_p_used);
            prop_assert_eq!(a.n_p_used, 2 + e.div_ceil(z));
        }
    }

    #[test]
    fn box_plus_never_exceeds_min(a in llr(), b in llr()) {
        let x = box_plus(a, b);
        prop_assert!(x.abs() <= a.abs().min(b.abs()) + 1e-12);
        if a != 0.0 && b != 0.0 && x != 0.0 {
            prop_assert_eq!(x < 0.0, (a < 0.0) != (b < 0.0));
        }
    }

    #[test]
    fn truncation_chain_is_monotone(t in row(12)) {
        let mut prev: Option<Vec<f64>> = None;
        for gamma in 2..=t.len() {
            let r = cn_update(&DecoderVariant::GaMs { gamma, beta: 0.0 }, &t).unwrap();
            if let Some(p) = &prev {
                for (now, before) in r.iter().zip(p) {
                    prop_assert!(now.abs() <= before.abs() + 1e-12);
                }
            }
            prev = Some(r);
        }
    }

    #[test]
    fn gams_outputs_two_magnitudes_and_right_signs(t in row(19), gamma in 2usize..6, beta in 0.0..0.5f64) {
        let r = cn_update(&DecoderVariant::GaMs { gamma, beta }, &t).unwrap();
        let mut mags: Vec<f64> = r.iter().map(|x| x.abs()).collect();
        mags.sort_by(f64::total_cmp);
        mags.dedup();
        prop_assert!(mags.len() <= 2);
        for (j, &x) in r.iter().enumerate() {
            let negative = t.iter().enumerate().filter(|&(i, &v)| i != j && v < 0.0).count() % 2 == 1;
            if x != 0.0 {
                prop_assert_eq!(x < 0.0, negative);
            }
        }
    }

    #[test]
    fn sort_min_keeps_smallest_ascending(stream in prop::collection::vec(0i32..16, 1..25), gamma in 2usize..6) {
        let mut set = MinimaSet::new(gamma, 15);
        for (i, &x) in stream.iter().enumerate() {
            sort_min(&mut set, x, i);
            prop_assert!(set.minima().windows(2).all(|w| w[0] <= w[1]));
        }
        let mut sorted = stream.clone();
        sorted.sort();
        sorted.truncate(gamma);
        prop_assert_eq!(set.minima(), &sorted[..]);
        let first = stream.iter().position(|&x| x == sorted[0]).unwrap();
        prop_assert_eq!(set.v_min, first);
    }

    #[test]
    fn compression_round_trips(d in 2usize..20, crit in 0usize..19, a in 0i32..16, b in 0i32..16, signs in any::<u32>()) {
        let crit = crit % d;
        let r: Vec<i32> = (0..d)
            .map(|j| {
                let m = if j == crit { a } else { b };
                if signs >> j & 1 == 1 { -m } else { m }
            })
            .collect();
        let c = CompressedRRow::compress(&r, crit).unwrap();
        prop_assert_eq!(c.expand(d), r);
    }

    #[test]
    fn oss_is_a_valid_schedule(p in prototype()) {
        let oss = build_oss(&p);
        prop_assert!(oss.validate(&p).is_ok());
        let re = reorder_columns(&p, &oss);
        prop_assert!(re.validate(&p).is_ok());
        prop_assert_eq!(&re.layer_order, &oss.layer_order);
        let back = Schedule::parse(&re.to_text(&p), &p).unwrap();
        prop_assert_eq!(back, re);
    }
}

#[test]
fn savings_grow_with_message_width() {
    for id in [BaseGraphId::Bg1, BaseGraphId::Bg2] {
        let bg = BaseGraph::builtin(id);
        let savings: Vec<f64> = (3..=10)
            .map(|b_cn| compression_savings(&QuantScheme::new(b_cn + 2, b_cn, 1).unwrap(), &bg))
            .collect();
        assert!(savings.windows(2).all(|w| w[0] < w[1]), "{savings:?}");
    }
}

#[test]
fn lut_matches_formula_exhaustively() {
    for (scheme, beta) in [
        (QuantScheme::S751, 0.0),
        (QuantScheme::S751, 0.1),
        (QuantScheme::S751, 0.25),
        (QuantScheme::S862, 0.0),
        (QuantScheme::S862, 0.1),
    ] {
        let lut = BoxPlusLut::build(scheme, beta).unwrap();
        let delta = scheme.delta();
        let n = lut.size() as i32;
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (a as f64 * delta, b as f64 * delta);
                let exact = (1.0 + (-(x + y)).exp()).ln() - (1.0 + (-(x - y).abs()).exp()).ln();
                let step = (exact.abs() / delta + beta + 0.5).floor() as i32;
                assert_eq!(
                    lut.get(a, b),
                    (a.min(b) - step).max(0),
                    "{scheme} {beta} [{a}][{b}]"
                );
            }
        }
    }
}

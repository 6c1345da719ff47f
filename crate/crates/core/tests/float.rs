use approx::assert_abs_diff_eq;
use gams_ldpc::code::PrototypeMatrix;
use gams_ldpc::float::{DecoderVariant, FloatDecoder};
use gams_ldpc::schedule::Schedule;
use gams_ldpc::DecodeOptions;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A tree-shaped code: three checks chained through shared variables.
fn tree_code() -> PrototypeMatrix {
    PrototypeMatrix::from_shifts(
        1,
        &[
            vec![0, 0, 0, -1, -1, -1, -1],
            vec![-1, -1, 0, 0, 0, -1, -1],
            vec![-1, -1, -1, -1, 0, 0, 0],
        ],
    )
    .unwrap()
}

/// Exact posterior LLRs by summing over every codeword.
fn brute_force_posteriors(proto: &PrototypeMatrix, y: &[f64]) -> Vec<f64> {
    let n = proto.n();
    let mut p0 = vec![0.0; n];
    let mut p1 = vec![0.0; n];
    for word in 0u32..1 << n {
        let bits: Vec<u8> = (0..n).map(|i| (word >> i & 1) as u8).collect();
        if proto.syndrome_weight(&bits) != 0 {
            continue;
        }
        let weight = (-bits.iter().zip(y).map(|(&b, &l)| b as f64 * l).sum::<f64>()).exp();
        for (i, &b) in bits.iter().enumerate() {
            if b == 0 {
                p0[i] += weight;
            } else {
                p1[i] += weight;
            }
        }
    }
    p0.iter().zip(&p1).map(|(a, b)| (a / b).ln()).collect()
}

#[test]
fn sum_product_is_exact_on_a_tree() {
    let proto = tree_code();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for schedule in [Schedule::natural(&proto), {
        let mut s = Schedule::natural(&proto);
        s.layer_order = vec![2, 0, 1];
        s
    }] {
        let opts = DecodeOptions {
            max_iterations: 6,
            early_exit: false,
            count_ops: false,
        };
        let dec = FloatDecoder::new(DecoderVariant::SumProduct, &proto, &schedule, opts).unwrap();
        for _ in 0..50 {
            let y: Vec<f64> = (0..proto.n())
                .map(|_| rng.random_range(-3.0..3.0))
                .collect();
            let (_, state) = dec.decode_with_state(&y).unwrap();
            let exact = brute_force_posteriors(&proto, &y);
            for (got, want) in state.q.iter().zip(&exact) {
                assert_abs_diff_eq!(got, want, epsilon = 1e-9);
            }
        }
    }
}

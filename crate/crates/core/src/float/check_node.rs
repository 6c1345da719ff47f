use crate::complexity::{Algorithm, OpCounts};
use crate::error::{Error, Result};

/// LLR magnitude standing in for infinity.
pub const LLR_SATURATION: f64 = 1e9;

/// Check-node update rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecoderVariant {
    SumProduct,
    MinSum,
    NormalizedMinSum {
        alpha: f64,
    },
    OffsetMinSum {
        beta: f64,
    },
    AMinStar,
    /// Generalized adjusted min-sum over the `gamma` smallest magnitudes,
    /// with offset `beta`.
    GaMs {
        gamma: usize,
        beta: f64,
    },
}

impl DecoderVariant {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            DecoderVariant::NormalizedMinSum { alpha } if !(alpha > 0.0 && alpha <= 1.0) => {
                bad(format!("NMS factor {alpha} outside (0, 1]"))
            }
            DecoderVariant::OffsetMinSum { beta } if !(beta >= 0.0 && beta.is_finite()) => {
                bad(format!("OMS offset {beta} must be non-negative"))
            }
            DecoderVariant::GaMs { gamma, .. } if gamma < 2 => {
                bad(format!("GA-MS needs gamma >= 2, got {gamma}"))
            }
            DecoderVariant::GaMs { beta, .. } if !(beta >= 0.0 && beta.is_finite()) => {
                bad(format!("GA-MS offset {beta} must be non-negative"))
            }
            _ => Ok(()),
        }
    }

    /// The entry of the complexity model matching this rule.
    pub fn algorithm(&self) -> Algorithm {
        match *self {
            DecoderVariant::SumProduct => Algorithm::SumProduct,
            DecoderVariant::MinSum => Algorithm::MinSum,
            DecoderVariant::NormalizedMinSum { .. } => Algorithm::NormalizedMinSum,
            DecoderVariant::OffsetMinSum { .. } => Algorithm::OffsetMinSum,
            DecoderVariant::AMinStar => Algorithm::AMinStar,
            DecoderVariant::GaMs { gamma, .. } => Algorithm::GaMs {
                gamma: gamma as u64,
            },
        }
    }

    pub fn label(&self) -> String {
        match *self {
            DecoderVariant::SumProduct => "SP".into(),
            DecoderVariant::MinSum => "MS".into(),
            DecoderVariant::NormalizedMinSum { alpha } => format!("NMS(a={alpha})"),
            DecoderVariant::OffsetMinSum { beta } => format!("OMS(b={beta})"),
            DecoderVariant::AMinStar => "A-Min*".into(),
            DecoderVariant::GaMs { gamma, beta } => format!("GA-MS-{gamma}(b={beta})"),
        }
    }
}

fn saturate(x: f64) -> f64 {
    x.clamp(-LLR_SATURATION, LLR_SATURATION)
}

/// Non-linear correction `ln(1 + e^-|a+b|) - ln(1 + e^-|a-b|)`, always <= 0.
pub fn box_plus_correction(a: f64, b: f64) -> f64 {
    let (a, b) = (saturate(a), saturate(b));
    (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Exact box-plus `2 atanh(tanh(a/2) tanh(b/2))`, evaluated as
/// `sgn(a) sgn(b) min(|a|, |b|)` plus the correction term.
pub fn box_plus(a: f64, b: f64) -> f64 {
    let (a, b) = (saturate(a), saturate(b));
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs()) + box_plus_correction(a, b)
}

/// `phi(x) = -ln tanh(x/2)` for `x >= 0`; its own inverse.
fn phi(x: f64) -> f64 {
    let x = x.max(1e-300);
    (2.0 / x.exp_m1()).ln_1p()
}

fn sign_of(x: f64) -> bool {
    x < 0.0
}

/// Outgoing messages of one check node for incoming `t`.
pub fn cn_update(variant: &DecoderVariant, t: &[f64]) -> Result<Vec<f64>> {
    variant.validate()?;
    if t.len() < 2 {
        return Err(Error::DegreeTooSmall(t.len()));
    }
    let mut r = vec![0.0; t.len()];
    let mut scratch = CheckNodeScratch::default();
    check_node(variant, t, &mut r, &mut scratch, None);
    Ok(r)
}

/// Buffers reused across check nodes.
#[derive(Clone, Debug, Default)]
pub(crate) struct CheckNodeScratch {
    mags: Vec<f64>,
    phis: Vec<f64>,
    minima: Vec<(f64, usize)>,
}

/// Computes `r` from `t` (same length, at least 2), tallying operations.
pub(crate) fn check_node(
    variant: &DecoderVariant,
    t: &[f64],
    r: &mut [f64],
    scratch: &mut CheckNodeScratch,
    mut ops: Option<&mut OpCounts>,
) {
    let d = t.len();
    let mut count = |c: u64, a: u64, l: u64| {
        if let Some(o) = ops.as_deref_mut() {
            o.comparisons += c;
            o.additions += a;
            o.lut_ops += l;
        }
    };
    scratch.mags.clear();
    scratch.mags.extend(t.iter().map(|x| saturate(x.abs())));
    let mags = &scratch.mags;
    let negative = t.iter().filter(|&&x| sign_of(x)).count() % 2 == 1;
    let signed = |v: usize, mag: f64| {
        if negative != sign_of(t[v]) {
            -mag
        } else {
            mag
        }
    };

    match *variant {
        DecoderVariant::SumProduct => {
            scratch.phis.clear();
            scratch.phis.extend(mags.iter().map(|&m| phi(m)));
            let sum: f64 = scratch.phis.iter().sum();
            count(0, d as u64 - 1, d as u64);
            for (v, out) in r.iter_mut().enumerate() {
                let rest = (sum - scratch.phis[v]).max(0.0);
                *out = signed(v, phi(rest).min(LLR_SATURATION));
            }
            count(0, d as u64, d as u64);
        }
        DecoderVariant::MinSum
        | DecoderVariant::NormalizedMinSum { .. }
        | DecoderVariant::OffsetMinSum { .. } => {
            let (mut m1, mut m2, mut i1) = if mags[1] < mags[0] {
                (mags[1], mags[0], 1)
            } else {
                (mags[0], mags[1], 0)
            };
            count(1, 0, 0);
            for (j, &m) in mags.iter().enumerate().skip(2) {
                let below_first = m < m1;
                let below_second = m < m2;
                count(2, 0, 0);
                if below_first {
                    m2 = m1;
                    m1 = m;
                    i1 = j;
                } else if below_second {
                    m2 = m;
                }
            }
            let adjust = |x: f64| match *variant {
                DecoderVariant::NormalizedMinSum { alpha } => alpha * x,
                DecoderVariant::OffsetMinSum { beta } => (x - beta).max(0.0),
                _ => x,
            };
            if !matches!(variant, DecoderVariant::MinSum) {
                count(0, 2, 0);
            }
            let (crit, noncrit) = (adjust(m2), adjust(m1));
            for (v, out) in r.iter_mut().enumerate() {
                *out = signed(v, if v == i1 { crit } else { noncrit });
            }
        }
        DecoderVariant::AMinStar => {
            let mut i1 = 0;
            for j in 1..d {
                if mags[j] < mags[i1] {
                    i1 = j;
                }
            }
            count(d as u64 - 1, 0, 0);
            let mut others = (0..d).filter(|&j| j != i1).map(|j| mags[j]);
            let first = others.next().expect("degree at least 2");
            let mut boxes = 0;
            let crit = others.fold(first, |acc, m| {
                boxes += 1;
                box_plus(acc, m)
            });
            let noncrit = box_plus(crit, mags[i1]);
            boxes += 1;
            count(0, 2 * boxes + 1, boxes);
            for (v, out) in r.iter_mut().enumerate() {
                *out = signed(v, if v == i1 { crit } else { noncrit });
            }
        }
        DecoderVariant::GaMs { gamma, beta } => {
            let minima = &mut scratch.minima;
            minima.clear();
            for (j, &m) in mags.iter().enumerate() {
                // pruned sorter: one comparator per held minimum
                count(minima.len() as u64, 0, 0);
                let pos = minima.iter().filter(|&&(held, _)| held <= m).count();
                if pos < gamma {
                    if minima.len() == gamma {
                        minima.pop();
                    }
                    minima.insert(pos, (m, j));
                }
            }
            let (m1, i1) = minima[0];
            let mut crit = minima[1].0;
            for &(m, _) in &minima[2..] {
                crit = box_plus(crit, m);
            }
            let noncrit = box_plus(crit, m1);
            count(0, 2, minima.len() as u64 - 1);
            let (crit, noncrit) = ((crit - beta).max(0.0), (noncrit - beta).max(0.0));
            for (v, out) in r.iter_mut().enumerate() {
                *out = signed(v, if v == i1 { crit } else { noncrit });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn run(variant: DecoderVariant, t: &[f64]) -> Vec<f64> {
        cn_update(&variant, t).unwrap()
    }

    #[test]
    fn box_plus_examples() {
        assert_abs_diff_eq!(box_plus(0.5, -1.0), -0.2273, epsilon = 1e-3);
        assert_abs_diff_eq!(box_plus(1.7, f64::INFINITY), 1.7, epsilon = 1e-12);
        assert_abs_diff_eq!(box_plus(-2.5, f64::INFINITY), -2.5, epsilon = 1e-12);
        assert_eq!(box_plus(0.3, 2.0), box_plus(2.0, 0.3));
        let exact = 2.0 * ((0.8f64 / 2.0).tanh() * (-1.9f64 / 2.0).tanh()).atanh();
        assert_abs_diff_eq!(box_plus(0.8, -1.9), exact, epsilon = 1e-12);
    }

    #[test]
    fn gams2_example() {
        let r = run(
            DecoderVariant::GaMs {
                gamma: 2,
                beta: 0.0,
            },
            &[0.5, -1.0, 2.0],
        );
        assert_abs_diff_eq!(r[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1], 0.2273, epsilon = 1e-3);
        assert_abs_diff_eq!(r[2], -0.2273, epsilon = 1e-3);
    }

    #[test]
    fn min_sum_example() {
        assert_eq!(
            run(DecoderVariant::MinSum, &[0.5, -1.0, 2.0]),
            vec![-1.0, 0.5, -0.5]
        );
        let r = run(
            DecoderVariant::OffsetMinSum { beta: 0.75 },
            &[0.5, -1.0, 2.0],
        );
        assert_eq!(r, vec![-0.25, 0.0, -0.0]);
        let r = run(
            DecoderVariant::NormalizedMinSum { alpha: 0.5 },
            &[0.5, -1.0, 2.0],
        );
        assert_eq!(r, vec![-0.5, 0.25, -0.25]);
    }

    #[test]
    fn full_gamma_equals_amin_star() {
        let t = [1.2, -0.4, 3.3, -2.0, 0.9];
        let a = run(DecoderVariant::AMinStar, &t);
        let g = run(
            DecoderVariant::GaMs {
                gamma: 5,
                beta: 0.0,
            },
            &t,
        );
        for (x, y) in a.iter().zip(&g) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
        // more minima than edges behaves like gamma = d_c
        let g = run(
            DecoderVariant::GaMs {
                gamma: 9,
                beta: 0.0,
            },
            &t,
        );
        for (x, y) in a.iter().zip(&g) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn sum_product_matches_pairwise_box_plus() {
        let t = [1.2, -0.4, 3.3, -2.0, 0.9];
        let r = run(DecoderVariant::SumProduct, &t);
        for v in 0..t.len() {
            let others: Vec<f64> = (0..t.len()).filter(|&j| j != v).map(|j| t[j]).collect();
            let expected = others[1..]
                .iter()
                .fold(others[0], |acc, &x| box_plus(acc, x));
            assert_abs_diff_eq!(r[v], expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn amin_star_tie_goes_to_lowest_index() {
        let r = run(DecoderVariant::AMinStar, &[2.0, 0.5, 0.5, 3.0]);
        let crit = box_plus(box_plus(2.0, 0.5), 3.0);
        assert_abs_diff_eq!(r[1], crit, epsilon = 1e-12);
        assert!(r[2] < crit);
    }

    #[test]
    fn degree_and_parameter_errors() {
        assert!(matches!(
            cn_update(&DecoderVariant::MinSum, &[1.0]),
            Err(Error::DegreeTooSmall(1))
        ));
        let bad = DecoderVariant::GaMs {
            gamma: 1,
            beta: 0.0,
        };
        assert!(cn_update(&bad, &[1.0, 2.0]).is_err());
        let bad = DecoderVariant::NormalizedMinSum { alpha: 1.5 };
        assert!(bad.validate().is_err());
        let bad = DecoderVariant::OffsetMinSum { beta: -0.1 };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn counted_costs_match_model() {
        let t = [1.2, -0.4, 3.3, -2.0, 0.9, 0.1, -5.0, 2.2];
        for variant in [
            DecoderVariant::SumProduct,
            DecoderVariant::MinSum,
            DecoderVariant::NormalizedMinSum { alpha: 0.75 },
            DecoderVariant::OffsetMinSum { beta: 0.5 },
            DecoderVariant::AMinStar,
            DecoderVariant::GaMs {
                gamma: 3,
                beta: 0.1,
            },
            DecoderVariant::GaMs {
                gamma: 4,
                beta: 0.0,
            },
        ] {
            let mut ops = OpCounts::default();
            let mut r = vec![0.0; t.len()];
            check_node(
                &variant,
                &t,
                &mut r,
                &mut CheckNodeScratch::default(),
                Some(&mut ops),
            );
            let mut expected = variant.algorithm().check_node_cost(t.len() as u64);
            expected.memory_units = 0;
            assert_eq!(ops, expected, "{}", variant.label());
        }
    }
}

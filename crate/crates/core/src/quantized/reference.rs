//! Straight-line fixed-point GA-MS decoder used as an oracle.
//!
//! Each check row is processed on its own: every extrinsic message is
//! formed, all magnitudes are sorted (stably), the γ smallest are kept and
//! folded through the LUT. R-messages are held per edge and Q-messages in
//! natural order. Termination follows the same per-sweep parity flags as
//! [`QuantizedDecoder`](super::QuantizedDecoder).

use crate::code::PrototypeMatrix;
use crate::schedule::Schedule;

use super::BoxPlusLut;

/// Output of [`reference_decode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceOutcome {
    pub bits: Vec<u8>,
    pub q: Vec<i32>,
    /// `r[c][j * z + k]`, `j` indexing the layer's ascending columns.
    pub r: Vec<Vec<i32>>,
    pub iterations: usize,
}

pub fn reference_decode(
    proto: &PrototypeMatrix,
    schedule: &Schedule,
    lut: &BoxPlusLut,
    gamma: usize,
    y: &[i32],
    max_iterations: usize,
    early_exit: bool,
) -> ReferenceOutcome {
    let z = proto.z();
    let scheme = lut.scheme();
    let (vn_max, cn_max) = (scheme.vn_max(), scheme.cn_max());
    let sat = |x: i32| x.clamp(-vn_max, vn_max);
    let m = proto.m_p();
    let mut q = y.to_vec();
    let mut r: Vec<Vec<i32>> = (0..m).map(|c| vec![0; proto.row_degree(c) * z]).collect();
    let mut iterations = 0;

    while iterations < max_iterations {
        let mut flags = vec![false; m];
        for &c in &schedule.layer_order {
            let cols = proto.row_columns(c);
            let d = cols.len();
            let mut layer_ok = true;
            for k in 0..z {
                let idx: Vec<usize> = cols.iter().map(|&v| proto.vn_index(c, v, k)).collect();
                // arrival order follows the MIN schedule
                let order: Vec<usize> = schedule.column_order[c]
                    .iter()
                    .map(|v| cols.iter().position(|x| x == v).unwrap())
                    .collect();
                let t: Vec<i32> = (0..d).map(|j| sat(q[idx[j]] - r[c][j * z + k])).collect();
                let mut sorted: Vec<(i32, usize)> = order
                    .iter()
                    .map(|&j| (t[j].abs().min(cn_max), cols[j]))
                    .collect();
                sorted.sort_by_key(|&(mag, _)| mag);
                sorted.truncate(gamma);
                let v_min = sorted[0].1;
                let negative = t.iter().filter(|&&x| x < 0).count() % 2 == 1;
                let mut parity = 0u8;
                for j in 0..d {
                    let mags: Vec<i32> = sorted
                        .iter()
                        .skip(usize::from(cols[j] == v_min))
                        .map(|&(mag, _)| mag)
                        .collect();
                    let mag = mags[1..].iter().fold(mags[0], |acc, &x| lut.get(acc, x));
                    let value = if negative != (t[j] < 0) { -mag } else { mag };
                    r[c][j * z + k] = value;
                    q[idx[j]] = sat(t[j] + value);
                    parity ^= u8::from(q[idx[j]] < 0);
                }
                layer_ok &= parity == 0;
            }
            flags[c] = layer_ok;
        }
        iterations += 1;
        if early_exit && flags.iter().all(|&f| f) {
            break;
        }
    }

    ReferenceOutcome {
        bits: q.iter().map(|&x| u8::from(x < 0)).collect(),
        q,
        r,
        iterations,
    }
}

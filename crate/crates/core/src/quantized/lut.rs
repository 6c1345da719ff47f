use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::float::box_plus_correction;

use super::QuantScheme;

/// Two-input box-plus table over CN-domain magnitudes with the offset β
/// folded in: `max(min(a, b) - floor(|Δ(aδ, bδ)| / δ + β + 0.5), 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxPlusLut {
    scheme: QuantScheme,
    beta: f64,
    size: usize,
    table: Vec<u8>,
}

impl BoxPlusLut {
    pub fn build(scheme: QuantScheme, beta: f64) -> Result<BoxPlusLut> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "LUT offset {beta} must be non-negative"
            )));
        }
        let size = scheme.cn_max() as usize + 1;
        let delta = scheme.delta();
        let mut table = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                let correction = box_plus_correction(a as f64 * delta, b as f64 * delta).abs();
                let step = (correction / delta + beta + 0.5).floor() as i64;
                table[a * size + b] = (a.min(b) as i64 - step).max(0) as u8;
            }
        }
        Ok(BoxPlusLut {
            scheme,
            beta,
            size,
            table,
        })
    }

    pub fn scheme(&self) -> QuantScheme {
        self.scheme
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Number of magnitudes per axis, `2^(B_CN - 1)`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Table entry for magnitudes `a`, `b` in `[0, cn_max]`.
    #[inline]
    pub fn get(&self, a: i32, b: i32) -> i32 {
        self.table[a as usize * self.size + b as usize] as i32
    }

    /// Header `scheme=<B_VN>,<B_CN>,<B_f> beta=<β>` followed by one line of
    /// space-separated entries per row.
    pub fn dump(&self) -> String {
        let mut out = format!("scheme={} beta={}\n", self.scheme, self.beta);
        for row in self.table.chunks(self.size) {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let lut = BoxPlusLut::build(QuantScheme::S751, 0.25).unwrap();
        assert_eq!(lut.size(), 16);
        for x in 0..16 {
            assert_eq!(lut.get(x, 0), 0);
        }
        assert_eq!(lut.get(1, 1), 0);
        assert_eq!(lut.get(15, 15), 13);
        // distinct magnitudes leave the minimum untouched
        assert_eq!(lut.get(2, 15), 2);
    }

    #[test]
    fn invariants_all_schemes() {
        for (scheme, beta) in [
            (QuantScheme::S751, 0.0),
            (QuantScheme::S751, 0.1),
            (QuantScheme::S751, 0.25),
            (QuantScheme::S862, 0.0),
            (QuantScheme::S862, 0.1),
            (QuantScheme::S862, 0.6),
        ] {
            let lut = BoxPlusLut::build(scheme, beta).unwrap();
            let n = lut.size() as i32;
            for a in 0..n {
                assert_eq!(lut.get(a, 0), 0);
                for b in 0..n {
                    assert_eq!(lut.get(a, b), lut.get(b, a));
                    assert!(lut.get(a, b) <= a.min(b));
                    assert!(lut.get(a, b) >= 0);
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let lut = BoxPlusLut::build(QuantScheme::S751, 0.25).unwrap();
        let text = lut.dump();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("scheme=7,5,1 beta=0.25"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 16);
        assert_eq!(rows[15].split(' ').nth(15), Some("13"));
    }

    #[test]
    fn rejects_negative_offset() {
        assert!(BoxPlusLut::build(QuantScheme::S751, -0.1).is_err());
    }
}

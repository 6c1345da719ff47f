use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Fixed-point format `(B_VN, B_CN, B_f)`: VN-message bits, CN-message bits
/// and fractional bits, with step `delta = 2^-B_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantScheme {
    pub b_vn: u32,
    pub b_cn: u32,
    pub b_f: u32,
}

impl QuantScheme {
    pub const S751: QuantScheme = QuantScheme {
        b_vn: 7,
        b_cn: 5,
        b_f: 1,
    };
    pub const S862: QuantScheme = QuantScheme {
        b_vn: 8,
        b_cn: 6,
        b_f: 2,
    };

    pub fn new(b_vn: u32, b_cn: u32, b_f: u32) -> Result<QuantScheme> {
        if b_cn < 2 || b_vn <= b_cn || b_vn > 16 {
            return Err(Error::InvalidParameter(format!(
                "quantization scheme ({b_vn},{b_cn},{b_f}) needs 16 >= B_VN > B_CN >= 2"
            )));
        }
        if b_f >= b_cn {
            return Err(Error::InvalidParameter(format!(
                "quantization scheme ({b_vn},{b_cn},{b_f}) needs B_f < B_CN"
            )));
        }
        Ok(QuantScheme { b_vn, b_cn, b_f })
    }

    /// Quantization step.
    pub fn delta(&self) -> f64 {
        (-(self.b_f as f64)).exp2()
    }

    /// Largest VN-message magnitude, `2^(B_VN-1) - 1`.
    pub fn vn_max(&self) -> i32 {
        (1 << (self.b_vn - 1)) - 1
    }

    /// Largest CN-message magnitude, `2^(B_CN-1) - 1`.
    pub fn cn_max(&self) -> i32 {
        (1 << (self.b_cn - 1)) - 1
    }

    /// Uniform quantization `sgn(y) * min(floor(|y|/delta + 0.5), vn_max)`.
    pub fn quantize(&self, y: f64) -> i32 {
        let mag = (y.abs() / self.delta() + 0.5)
            .floor()
            .min(self.vn_max() as f64);
        let mag = if mag.is_nan() { 0 } else { mag as i32 };
        if y < 0.0 {
            -mag
        } else {
            mag
        }
    }

    pub fn dequantize(&self, x: i32) -> f64 {
        x as f64 * self.delta()
    }
}

impl fmt::Display for QuantScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.b_vn, self.b_cn, self.b_f)
    }
}

impl FromStr for QuantScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuantScheme> {
        let bad =
            || Error::InvalidParameter(format!("scheme '{s}' is not of the form B_VN,B_CN,B_f"));
        let parts: Vec<u32> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parts[..] {
            [b_vn, b_cn, b_f] => QuantScheme::new(b_vn, b_cn, b_f),
            _ => Err(bad()),
        }
    }
}

/// Quantizes a real LLR under `scheme`.
pub fn quantize_llr(scheme: &QuantScheme, y: f64) -> i32 {
    scheme.quantize(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = QuantScheme::S751;
        assert_eq!(quantize_llr(&s, 0.0), 0);
        assert_eq!(quantize_llr(&s, 100.0), 63);
        assert_eq!(quantize_llr(&s, 1.3), 3);
        assert_eq!(quantize_llr(&s, -1.3), -3);
        assert_eq!(quantize_llr(&s, f64::NEG_INFINITY), -63);
        assert_eq!(QuantScheme::S862.vn_max(), 127);
        assert_eq!(QuantScheme::S862.cn_max(), 31);
        assert_eq!(QuantScheme::S862.delta(), 0.25);
    }

    #[test]
    fn parse() {
        assert_eq!("7,5,1".parse::<QuantScheme>().unwrap(), QuantScheme::S751);
        assert_eq!(
            "(8, 6, 2)".parse::<QuantScheme>().unwrap(),
            QuantScheme::S862
        );
        assert!("5,5,1".parse::<QuantScheme>().is_err());
        assert!("7,5".parse::<QuantScheme>().is_err());
        assert_eq!(QuantScheme::S751.to_string(), "7,5,1");
    }
}

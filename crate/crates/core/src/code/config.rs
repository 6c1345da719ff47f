use crate::error::{Error, Result};

use super::BaseGraphId;

/// Lifting-set generators, in lifting-set index order.
pub const LIFTING_SET_GENERATORS: [usize; 8] = [2, 3, 5, 7, 9, 11, 13, 15];

/// Largest lifting size.
pub const Z_MAX: usize = 384;

/// Returns the lifting-set index of `z`, or `None` if `z` is not a 5G NR
/// lifting size (`z = a * 2^n` with `a` a set generator and `2 <= z <= 384`).
pub fn lifting_set_index(z: usize) -> Option<usize> {
    if !(2..=Z_MAX).contains(&z) {
        return None;
    }
    let odd = z >> z.trailing_zeros();
    // a = 2 covers the pure powers of two
    if odd == 1 {
        return Some(0);
    }
    LIFTING_SET_GENERATORS.iter().position(|&a| a == odd)
}

pub fn is_valid_lifting_size(z: usize) -> bool {
    lifting_set_index(z).is_some()
}

/// All valid lifting sizes in increasing order.
pub fn lifting_sizes() -> Vec<usize> {
    (2..=Z_MAX).filter(|&z| is_valid_lifting_size(z)).collect()
}

/// A rate-matched code: base graph, lifting size and transmitted length.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeConfig {
    pub bg: BaseGraphId,
    pub z: usize,
    pub set_index: usize,
    /// Information columns.
    pub k_u: usize,
    /// Information bits, `k_u * z`.
    pub k: usize,
    /// Transmitted bits.
    pub e: usize,
    /// Base graph columns in use, `2 + ceil(e / z)`.
    pub n_p_used: usize,
    /// Base graph rows in use, `n_p_used - k_u`.
    pub m_p_used: usize,
    /// Untransmitted positions at the end of the last used column.
    pub tail_zero_llrs: usize,
}

/// Columns that are never transmitted.
pub const PUNCTURED_COLUMNS: [usize; 2] = [0, 1];

impl CodeConfig {
    pub fn new(bg: BaseGraphId, z: usize, k_u: usize, e: usize) -> Result<CodeConfig> {
        let set_index = lifting_set_index(z).ok_or(Error::InvalidLiftingSize(z))?;
        if k_u != bg.k_u_max() {
            return Err(Error::InvalidConfig(format!(
                "K_u = {k_u} not supported for {bg} (filler-bit shortening is not implemented; use K_u = {})",
                bg.k_u_max()
            )));
        }
        if e == 0 {
            return Err(Error::InvalidConfig("E must be positive".into()));
        }
        let n_p_used = 2 + e.div_ceil(z);
        let m_p_used = n_p_used.saturating_sub(k_u);
        if m_p_used < 4 {
            return Err(Error::InvalidConfig(format!(
                "E = {e} too small: only {m_p_used} rows in use, the 4 core rows are required"
            )));
        }
        if m_p_used > bg.n_rows() {
            return Err(Error::InvalidConfig(format!(
                "E = {e} too large for {bg}: needs {m_p_used} rows, graph has {}",
                bg.n_rows()
            )));
        }
        Ok(CodeConfig {
            bg,
            z,
            set_index,
            k_u,
            k: k_u * z,
            e,
            n_p_used,
            m_p_used,
            tail_zero_llrs: n_p_used * z - 2 * z - e,
        })
    }

    /// Resolves a rate `num/den` to `E = ceil(K * den / num)`.
    pub fn from_rate(
        bg: BaseGraphId,
        z: usize,
        k_u: usize,
        num: usize,
        den: usize,
    ) -> Result<CodeConfig> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::InvalidConfig(format!("invalid rate {num}/{den}")));
        }
        let e = (k_u * z * den).div_ceil(num);
        CodeConfig::new(bg, z, k_u, e)
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.e as f64
    }

    /// Codeword length before puncturing.
    pub fn n(&self) -> usize {
        self.n_p_used * self.z
    }

    /// Whether codeword bit `i` is transmitted.
    pub fn is_transmitted(&self, i: usize) -> bool {
        i >= 2 * self.z && i < 2 * self.z + self.e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifting_sizes_count() {
        assert_eq!(lifting_sizes().len(), 51);
    }

    #[test]
    fn lifting_size_examples() {
        assert_eq!(lifting_set_index(384), Some(1));
        assert_eq!(lifting_set_index(6), Some(1));
        assert_eq!(lifting_set_index(17), None);
        assert_eq!(lifting_set_index(2), Some(0));
        assert_eq!(lifting_set_index(256), Some(0));
        assert_eq!(lifting_set_index(1), None);
        assert_eq!(lifting_set_index(15 * 32), None);
        assert_eq!(lifting_set_index(15 * 16), Some(7));
    }

    #[test]
    fn derive_config_examples() {
        let c = CodeConfig::new(BaseGraphId::Bg1, 384, 22, 9504).unwrap();
        assert_eq!((c.n_p_used, c.m_p_used), (27, 5));
        assert!((c.rate() - 8.0 / 9.0).abs() < 1e-12);
        let c = CodeConfig::new(BaseGraphId::Bg1, 384, 22, 25344).unwrap();
        assert_eq!((c.n_p_used, c.m_p_used, c.tail_zero_llrs), (68, 46, 0));
        assert!((c.rate() - 1.0 / 3.0).abs() < 1e-12);
        let c = CodeConfig::new(BaseGraphId::Bg2, 384, 10, 19200).unwrap();
        assert_eq!((c.n_p_used, c.m_p_used), (52, 42));
        assert!((c.rate() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn derive_config_errors() {
        assert!(CodeConfig::new(BaseGraphId::Bg1, 384, 22, 0).is_err());
        assert!(CodeConfig::new(BaseGraphId::Bg1, 384, 22, 25345).is_err());
        assert!(CodeConfig::new(BaseGraphId::Bg1, 17, 22, 1000).is_err());
    }

    #[test]
    fn tail_positions() {
        let c = CodeConfig::new(BaseGraphId::Bg1, 32, 22, 850).unwrap();
        assert_eq!(c.n_p_used, 2 + 27);
        assert_eq!(c.tail_zero_llrs, 29 * 32 - 64 - 850);
        assert!(!c.is_transmitted(0));
        assert!(c.is_transmitted(64));
        assert!(!c.is_transmitted(64 + 850));
    }

    #[test]
    fn rate_resolution() {
        let c = CodeConfig::from_rate(BaseGraphId::Bg2, 384, 10, 2, 3).unwrap();
        assert_eq!((c.e, c.n_p_used), (5760, 17));
    }
}

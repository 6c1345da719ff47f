use crate::error::{Error, Result};

/// Largest check degree whose critical position fits the 5-bit index.
pub const MAX_COMPRESSED_DEGREE: usize = 32;

/// R-messages of one check row stored as two magnitudes, the position of
/// the critical edge, and one sign bit per edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompressedRRow {
    pub mag_crit: u8,
    pub mag_noncrit: u8,
    /// Position of the critical edge in the layer's column list.
    pub idx: u8,
    /// Bit `j` set when edge `j` is negative.
    pub signs: u32,
}

impl CompressedRRow {
    /// Compresses `r` whose non-critical entries share one magnitude.
    pub fn compress(r: &[i32], critical: usize) -> Result<CompressedRRow> {
        if r.len() > MAX_COMPRESSED_DEGREE || critical >= r.len() {
            return Err(Error::NotCompressible);
        }
        let mut noncrit = None;
        let mut signs = 0u32;
        for (j, &x) in r.iter().enumerate() {
            if x < 0 {
                signs |= 1 << j;
            }
            if j != critical {
                match noncrit {
                    None => noncrit = Some(x.unsigned_abs()),
                    Some(m) if m != x.unsigned_abs() => return Err(Error::NotCompressible),
                    _ => {}
                }
            }
        }
        let narrow = |m: u32| u8::try_from(m).map_err(|_| Error::NotCompressible);
        Ok(CompressedRRow {
            mag_crit: narrow(r[critical].unsigned_abs())?,
            mag_noncrit: narrow(noncrit.unwrap_or(0))?,
            idx: critical as u8,
            signs,
        })
    }

    /// Message of edge `j`.
    #[inline]
    pub fn get(&self, j: usize) -> i32 {
        let mag = if j == self.idx as usize {
            self.mag_crit
        } else {
            self.mag_noncrit
        } as i32;
        if self.signs >> j & 1 == 1 {
            -mag
        } else {
            mag
        }
    }

    /// All `degree` messages of the row.
    pub fn expand(&self, degree: usize) -> Vec<i32> {
        (0..degree).map(|j| self.get(j)).collect()
    }
}

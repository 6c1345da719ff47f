use crate::error::{Error, Result};

use super::{BinaryMatrix, PrototypeMatrix};

/// Systematic encoder for a raptor-like prototype matrix.
///
/// The first `k_u` block columns carry the message, the next four are the
/// core parity solved against rows 0..4, and each following column is the
/// degree-1 parity of one extension row.
#[derive(Clone, Debug)]
pub struct Encoder {
    proto: PrototypeMatrix,
    k_u: usize,
    core_inverse: BinaryMatrix,
}

impl Encoder {
    /// Inverts the 4x4 circulant core once for this prototype matrix.
    pub fn new(proto: &PrototypeMatrix, k_u: usize) -> Result<Encoder> {
        let z = proto.z();
        if proto.m_p() < 4 || proto.n_p() != k_u + proto.m_p() {
            return Err(Error::InvalidConfig(format!(
                "prototype {}x{} is not raptor-like for K_u = {k_u}",
                proto.m_p(),
                proto.n_p()
            )));
        }
        for c in 4..proto.m_p() {
            let own = k_u + c;
            if proto.shift(c, own).is_none()
                || proto.column_rows(own) != [c]
                || proto.row_columns(c).iter().any(|&v| v > own)
            {
                return Err(Error::InvalidConfig(format!(
                    "extension row {c} lacks a degree-1 parity column"
                )));
            }
        }
        let mut core = BinaryMatrix::zeros(4 * z, 4 * z);
        for c in 0..4 {
            for j in 0..4 {
                if let Some(s) = proto.shift(c, k_u + j) {
                    for k in 0..z {
                        core.set(c * z + k, j * z + (k + s) % z, true);
                    }
                }
            }
        }
        let core_inverse = core.inverse().ok_or(Error::SingularCore)?;
        Ok(Encoder {
            proto: proto.clone(),
            k_u,
            core_inverse,
        })
    }

    /// Number of message bits.
    pub fn k(&self) -> usize {
        self.k_u * self.proto.z()
    }

    pub fn prototype(&self) -> &PrototypeMatrix {
        &self.proto
    }

    /// Encodes `message` (one byte per bit) into a codeword of length `n_p * z`.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.k() {
            return Err(Error::MessageLength {
                got: message.len(),
                expected: self.k(),
            });
        }
        let p = &self.proto;
        let z = p.z();
        let mut x = vec![0u8; p.n()];
        x[..message.len()].copy_from_slice(message);

        // core rows: H_core * p_core = H_info * s
        let mut rhs = vec![0u8; 4 * z];
        for c in 0..4 {
            for &v in p.row_columns(c).iter().filter(|&&v| v < self.k_u) {
                for k in 0..z {
                    rhs[c * z + k] ^= x[p.vn_index(c, v, k)];
                }
            }
        }
        let core = self.core_inverse.mul_vec(&rhs);
        x[self.k_u * z..(self.k_u + 4) * z].copy_from_slice(&core);

        for c in 4..p.m_p() {
            let own = self.k_u + c;
            let s = p.shift(c, own).expect("checked in new");
            for k in 0..z {
                let parity = p
                    .row_columns(c)
                    .iter()
                    .filter(|&&v| v != own)
                    .fold(0u8, |acc, &v| acc ^ x[p.vn_index(c, v, k)]);
                x[own * z + (k + s) % z] = parity;
            }
        }
        Ok(x)
    }
}

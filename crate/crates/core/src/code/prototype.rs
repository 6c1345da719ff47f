use crate::error::{Error, Result};

use super::{BaseGraph, BaseGraphId, BinaryMatrix, CodeConfig};

/// Expanded prototype matrix: base graph rows and columns in use, with shift
/// values reduced modulo the lifting size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrototypeMatrix {
    bg: Option<BaseGraphId>,
    z: usize,
    m_p: usize,
    n_p: usize,
    /// Row-major, `-1` marks an absent block.
    shifts: Vec<i32>,
    row_cols: Vec<Vec<usize>>,
    col_rows: Vec<Vec<usize>>,
}

impl PrototypeMatrix {
    /// Builds a prototype matrix from explicit shift values (`-1` = absent).
    pub fn from_shifts(z: usize, rows: &[Vec<i32>]) -> Result<PrototypeMatrix> {
        let m_p = rows.len();
        let n_p = rows.first().map_or(0, |r| r.len());
        if m_p == 0 || n_p == 0 || z == 0 {
            return Err(Error::Dimension("empty prototype matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n_p) {
            return Err(Error::Dimension("ragged prototype matrix".into()));
        }
        let shifts: Vec<i32> = rows.iter().flatten().copied().collect();
        if let Some(&s) = shifts.iter().find(|&&s| s < -1 || s >= z as i32) {
            return Err(Error::Dimension(format!("shift {s} outside [-1, {z})")));
        }
        Ok(PrototypeMatrix::build(None, z, m_p, n_p, shifts))
    }

    fn build(
        bg: Option<BaseGraphId>,
        z: usize,
        m_p: usize,
        n_p: usize,
        shifts: Vec<i32>,
    ) -> PrototypeMatrix {
        let row_cols: Vec<Vec<usize>> = (0..m_p)
            .map(|c| (0..n_p).filter(|&v| shifts[c * n_p + v] >= 0).collect())
            .collect();
        let col_rows = (0..n_p)
            .map(|v| (0..m_p).filter(|&c| shifts[c * n_p + v] >= 0).collect())
            .collect();
        PrototypeMatrix {
            bg,
            z,
            m_p,
            n_p,
            shifts,
            row_cols,
            col_rows,
        }
    }

    pub fn base_graph(&self) -> Option<BaseGraphId> {
        self.bg
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn m_p(&self) -> usize {
        self.m_p
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    /// Raw shift value, `-1` when the block is absent.
    pub fn raw(&self, c: usize, v: usize) -> i32 {
        self.shifts[c * self.n_p + v]
    }

    pub fn shift(&self, c: usize, v: usize) -> Option<usize> {
        let s = self.raw(c, v);
        (s >= 0).then_some(s as usize)
    }

    /// Block columns of row `c`, ascending.
    pub fn row_columns(&self, c: usize) -> &[usize] {
        &self.row_cols[c]
    }

    /// Rows with a block in column `v`, ascending.
    pub fn column_rows(&self, v: usize) -> &[usize] {
        &self.col_rows[v]
    }

    pub fn row_degree(&self, c: usize) -> usize {
        self.row_cols[c].len()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.m_p).map(|c| self.row_degree(c)).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.row_cols.iter().map(Vec::len).sum()
    }

    /// Codeword length `n_p * z`.
    pub fn n(&self) -> usize {
        self.n_p * self.z
    }

    /// Number of parity checks `m_p * z`.
    pub fn m(&self) -> usize {
        self.m_p * self.z
    }

    /// Position of the VN in block column `v` connected to check `k` of layer `c`.
    pub fn vn_index(&self, c: usize, v: usize, k: usize) -> usize {
        let s = self.shift(c, v).expect("block present");
        v * self.z + (k + s) % self.z
    }

    /// Dense expansion into the binary parity-check matrix.
    pub fn expand_full_h(&self) -> Result<BinaryMatrix> {
        const COLUMN_LIMIT: usize = 100_000;
        let cols = self.n();
        if cols > COLUMN_LIMIT {
            return Err(Error::TooLarge {
                cols,
                limit: COLUMN_LIMIT,
            });
        }
        let mut h = BinaryMatrix::zeros(self.m(), cols);
        for c in 0..self.m_p {
            for &v in self.row_columns(c) {
                for k in 0..self.z {
                    h.set(c * self.z + k, self.vn_index(c, v, k), true);
                }
            }
        }
        Ok(h)
    }

    /// Syndrome weight of hard decisions `bits` (one byte per bit).
    pub fn syndrome_weight(&self, bits: &[u8]) -> usize {
        let mut weight = 0;
        for c in 0..self.m_p {
            for k in 0..self.z {
                let parity = self
                    .row_columns(c)
                    .iter()
                    .fold(0u8, |acc, &v| acc ^ bits[self.vn_index(c, v, k)]);
                weight += parity as usize;
            }
        }
        weight
    }
}

/// Reduces the base graph shifts for `config` and restricts to the rows and
/// columns in use.
pub fn expand_prototype(bg: &BaseGraph, config: &CodeConfig) -> Result<PrototypeMatrix> {
    if bg.id() != config.bg {
        return Err(Error::InvalidConfig(format!(
            "configuration is for {}, base graph is {}",
            config.bg,
            bg.id()
        )));
    }
    let (m_p, n_p, z) = (config.m_p_used, config.n_p_used, config.z);
    let mut shifts = vec![-1i32; m_p * n_p];
    for e in bg.entries() {
        if e.row < m_p && e.col < n_p {
            shifts[e.row * n_p + e.col] = (e.shifts[config.set_index] as usize % z) as i32;
        }
    }
    Ok(PrototypeMatrix::build(Some(bg.id()), z, m_p, n_p, shifts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::BaseGraph;

    #[test]
    fn shift_reduction() {
        let mut text = String::from("BG2 rows=42 cols=52\n0 0 389 389 389 389 389 389 389 389\n");
        text.push_str("0 1 0 0 0 0 0 0 0 0\n");
        for r in 1..42 {
            text.push_str(&format!("{r} 3 1 1 1 1 1 1 1 1\n"));
        }
        let bg = BaseGraph::parse(&text, BaseGraphId::Bg2).unwrap();
        let cfg = CodeConfig::new(BaseGraphId::Bg2, 384, 10, 19200).unwrap();
        let p = expand_prototype(&bg, &cfg).unwrap();
        assert_eq!(p.raw(0, 0), 5);
        assert_eq!(p.raw(0, 1), 0);
        assert_eq!(p.raw(0, 2), -1);
    }

    #[test]
    fn expanded_shifts_in_range() {
        for id in [BaseGraphId::Bg1, BaseGraphId::Bg2] {
            let bg = BaseGraph::builtin(id);
            for z in crate::code::lifting_sizes() {
                let e = (id.n_cols() - 2) * z;
                let cfg = CodeConfig::new(id, z, id.k_u_max(), e).unwrap();
                let p = expand_prototype(&bg, &cfg).unwrap();
                for c in 0..p.m_p() {
                    for v in 0..p.n_p() {
                        let s = p.raw(c, v);
                        assert!(s == -1 || (0..z as i32).contains(&s));
                    }
                }
                assert_eq!(p.num_blocks(), bg.num_entries());
            }
        }
    }

    #[test]
    fn circulant_expansion() {
        let p = PrototypeMatrix::from_shifts(3, &[vec![1, -1]]).unwrap();
        let h = p.expand_full_h().unwrap();
        assert_eq!((h.rows(), h.cols()), (3, 6));
        for r in 0..3 {
            for c in 0..6 {
                let expected = c < 3 && c == (r + 1) % 3;
                assert_eq!(h.get(r, c), expected, "({r},{c})");
            }
        }
        let p = PrototypeMatrix::from_shifts(4, &[vec![0]]).unwrap();
        let h = p.expand_full_h().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(h.get(r, c), r == c);
            }
        }
    }

    #[test]
    fn expanded_row_weight_matches_degree() {
        let bg = BaseGraph::builtin(BaseGraphId::Bg2);
        let cfg = CodeConfig::new(BaseGraphId::Bg2, 16, 10, 40 * 16).unwrap();
        let p = expand_prototype(&bg, &cfg).unwrap();
        let h = p.expand_full_h().unwrap();
        for c in 0..p.m_p() {
            for k in 0..p.z() {
                assert_eq!(h.row_weight(c * p.z() + k), p.row_degree(c));
            }
        }
    }

    #[test]
    fn size_guard() {
        let p = PrototypeMatrix::from_shifts(384, &[vec![0; 300]]).unwrap();
        assert!(matches!(p.expand_full_h(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn bg1_high_rate_degrees() {
        let bg = BaseGraph::builtin(BaseGraphId::Bg1);
        let cfg = CodeConfig::new(BaseGraphId::Bg1, 384, 22, 9504).unwrap();
        let p = expand_prototype(&bg, &cfg).unwrap();
        let d = p.row_degrees();
        assert_eq!(d.iter().sum::<usize>(), 79);
        assert_eq!(d.iter().max(), Some(&19));
        assert_eq!(d.iter().min(), Some(&3));
    }
}

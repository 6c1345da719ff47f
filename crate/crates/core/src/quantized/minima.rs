use super::BoxPlusLut;

/// Largest supported number of tracked minima.
pub const MAX_GAMMA: usize = 32;

/// The `gamma` smallest CN-domain magnitudes seen on one check row, in
/// ascending order, with the column of the smallest and the sign product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimaSet {
    gamma: usize,
    len: usize,
    /// Unused slots hold the saturation value.
    m: [i32; MAX_GAMMA],
    /// Block column of `m[0]`.
    pub v_min: usize,
    /// Parity of negative inputs (`true` = product of signs is negative).
    pub negative: bool,
}

impl MinimaSet {
    /// Empty set; every slot starts at the saturation value `cn_max`.
    pub fn new(gamma: usize, cn_max: i32) -> MinimaSet {
        assert!(
            (2..=MAX_GAMMA).contains(&gamma),
            "gamma {gamma} out of range"
        );
        MinimaSet {
            gamma,
            len: 0,
            m: [cn_max; MAX_GAMMA],
            v_min: usize::MAX,
            negative: false,
        }
    }

    /// Builds a full set from ascending magnitudes (tests and examples).
    pub fn from_sorted(minima: &[i32], v_min: usize) -> MinimaSet {
        assert!(minima.windows(2).all(|w| w[0] <= w[1]));
        let mut set = MinimaSet::new(minima.len(), *minima.last().unwrap_or(&0));
        set.m[..minima.len()].copy_from_slice(minima);
        set.len = minima.len();
        set.v_min = v_min;
        set
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// The minima collected so far, ascending (at most `gamma`).
    pub fn minima(&self) -> &[i32] {
        &self.m[..self.len]
    }

    pub fn reset(&mut self, cn_max: i32) {
        self.len = 0;
        self.m = [cn_max; MAX_GAMMA];
        self.v_min = usize::MAX;
        self.negative = false;
    }
}

/// Inserts magnitude `mag` of block column `col`, keeping the `gamma`
/// smallest in ascending order. Equal magnitudes keep arrival order, so the
/// tracked minimum column only changes on a strictly smaller input.
#[inline]
pub fn sort_min(state: &mut MinimaSet, mag: i32, col: usize) {
    let held = state.len;
    let pos = state.m[..held].iter().filter(|&&x| x <= mag).count();
    if pos >= state.gamma {
        return;
    }
    let end = (held + 1).min(state.gamma);
    state.m.copy_within(pos..end - 1, pos + 1);
    state.m[pos] = mag;
    state.len = end;
    if pos == 0 {
        state.v_min = col;
    }
}

/// LUT-folded magnitude for block column `v`: over all minima for a
/// non-critical edge, over all but the first for the critical edge.
#[inline]
pub fn lut_min(lut: &BoxPlusLut, state: &MinimaSet, v: usize) -> i32 {
    let m = state.minima();
    let from = if v == state.v_min { 1 } else { 0 };
    let mut acc = m[from];
    for &x in &m[from + 1..] {
        acc = lut.get(acc, x);
    }
    acc
}

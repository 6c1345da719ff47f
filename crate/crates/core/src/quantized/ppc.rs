/// Partial parity checks: one pass/fail flag per layer, each the AND of the
/// layer's `Z` row parities after its most recent update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpcState {
    flags: Vec<bool>,
}

impl PpcState {
    pub fn new(layers: usize) -> PpcState {
        PpcState {
            flags: vec![false; layers],
        }
    }

    /// Clears every flag; called at the start of each sweep.
    pub fn reset(&mut self) {
        self.flags.fill(false);
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    /// Records layer `c` from its row parities (`0` = satisfied) and returns
    /// whether every layer currently passes.
    pub fn update(&mut self, c: usize, row_parities: impl IntoIterator<Item = u8>) -> bool {
        self.flags[c] = row_parities.into_iter().all(|p| p & 1 == 0);
        self.all_passed()
    }

    pub fn all_passed(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }
}

/// Records layer `c` and reports whether decoding may stop.
pub fn ppc_update_and_check(
    ppc: &mut PpcState,
    c: usize,
    row_parities: impl IntoIterator<Item = u8>,
) -> bool {
    ppc.update(c, row_parities)
}

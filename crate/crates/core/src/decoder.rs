//! Types shared by the floating-point and fixed-point decoders.

use crate::complexity::OpCounts;
use crate::error::Result;

/// Iteration limit and instrumentation switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeOptions {
    pub max_iterations: usize,
    /// Stop as soon as the termination check passes at the end of an iteration.
    pub early_exit: bool,
    /// Tally datapath operations into [`DecodeResult::ops`].
    pub count_ops: bool,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            max_iterations: 15,
            early_exit: true,
            count_ops: false,
        }
    }
}

impl DecodeOptions {
    pub fn with_max_iterations(max_iterations: usize) -> DecodeOptions {
        DecodeOptions {
            max_iterations,
            ..DecodeOptions::default()
        }
    }
}

/// Outcome of decoding one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    /// Hard decisions, one byte per code bit (1 iff the posterior is negative).
    pub bits: Vec<u8>,
    /// Whether the decoder stopped because the codeword checks passed.
    pub converged: bool,
    pub iterations: usize,
    /// Unsatisfied checks of the final hard decisions.
    pub syndrome_weight: usize,
    /// Operation tallies when counting was enabled.
    pub ops: Option<OpCounts>,
}

/// A decoder for channel LLRs of a fixed code.
pub trait Decoder: Send + Sync {
    fn decode(&self, llrs: &[f64]) -> Result<DecodeResult>;

    /// Short label used in reports.
    fn name(&self) -> String;
}

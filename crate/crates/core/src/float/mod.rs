//! Floating-point layered decoders: sum-product, min-sum and its normalized
//! and offset forms, A-Min*, and GA-MS-γ.

mod check_node;

use crate::code::PrototypeMatrix;
use crate::complexity::OpCounts;
use crate::decoder::{DecodeOptions, DecodeResult, Decoder};
use crate::error::{Error, Result};
use crate::schedule::Schedule;

pub use check_node::{box_plus, box_plus_correction, cn_update, DecoderVariant, LLR_SATURATION};
use check_node::{check_node, CheckNodeScratch};

/// Messages of a layered decoder.
#[derive(Clone, Debug)]
pub struct MessageState {
    /// Posterior LLR per variable node.
    pub q: Vec<f64>,
    /// R-messages per layer, `r[c][j * z + k]` for the `j`-th block column
    /// of layer `c` (ascending order) and row `k` of the circulant.
    pub r: Vec<Vec<f64>>,
}

impl MessageState {
    pub fn new(proto: &PrototypeMatrix, y: &[f64]) -> MessageState {
        MessageState {
            q: y.to_vec(),
            r: (0..proto.m_p())
                .map(|c| vec![0.0; proto.row_degree(c) * proto.z()])
                .collect(),
        }
    }
}

/// Layered decoder with a floating-point check-node rule.
#[derive(Clone, Debug)]
pub struct FloatDecoder<'a> {
    variant: DecoderVariant,
    proto: &'a PrototypeMatrix,
    schedule: Schedule,
    options: DecodeOptions,
}

impl<'a> FloatDecoder<'a> {
    pub fn new(
        variant: DecoderVariant,
        proto: &'a PrototypeMatrix,
        schedule: &Schedule,
        options: DecodeOptions,
    ) -> Result<FloatDecoder<'a>> {
        variant.validate()?;
        schedule.validate(proto)?;
        if let Some(c) = (0..proto.m_p()).find(|&c| proto.row_degree(c) < 2) {
            return Err(Error::DegreeTooSmall(proto.row_degree(c)));
        }
        Ok(FloatDecoder {
            variant,
            proto,
            schedule: schedule.clone(),
            options,
        })
    }

    pub fn variant(&self) -> &DecoderVariant {
        &self.variant
    }

    /// Decodes and also returns the final message state.
    pub fn decode_with_state(&self, y: &[f64]) -> Result<(DecodeResult, MessageState)> {
        let p = self.proto;
        if y.len() != p.n() {
            return Err(Error::LlrLength {
                got: y.len(),
                expected: p.n(),
            });
        }
        let z = p.z();
        let mut state = MessageState::new(p, y);
        let mut ops = self.options.count_ops.then(OpCounts::default);
        let mut scratch = CheckNodeScratch::default();
        let mut t = Vec::new();
        let mut r_new = Vec::new();
        let mut idx = Vec::new();
        let mut bits = hard_decisions(&state.q);
        let mut syndrome = p.syndrome_weight(&bits);
        let mut iterations = 0;

        while iterations < self.options.max_iterations {
            for &c in &self.schedule.layer_order {
                let cols = p.row_columns(c);
                let d = cols.len();
                let r = &mut state.r[c];
                for k in 0..z {
                    idx.clear();
                    idx.extend(cols.iter().map(|&v| p.vn_index(c, v, k)));
                    t.clear();
                    t.extend((0..d).map(|j| state.q[idx[j]] - r[j * z + k]));
                    r_new.resize(d, 0.0);
                    check_node(&self.variant, &t, &mut r_new, &mut scratch, ops.as_mut());
                    for j in 0..d {
                        r[j * z + k] = r_new[j];
                        state.q[idx[j]] = t[j] + r_new[j];
                    }
                    if let Some(o) = ops.as_mut() {
                        o.additions += d as u64;
                    }
                }
            }
            iterations += 1;
            bits = hard_decisions(&state.q);
            syndrome = p.syndrome_weight(&bits);
            if self.options.early_exit && syndrome == 0 {
                break;
            }
        }

        if let Some(o) = ops.as_mut() {
            if iterations > 0 {
                o.memory_units = storage_words(&self.variant, p);
            }
        }
        let result = DecodeResult {
            bits,
            converged: syndrome == 0,
            iterations,
            syndrome_weight: syndrome,
            ops,
        };
        Ok((result, state))
    }
}

impl Decoder for FloatDecoder<'_> {
    fn decode(&self, y: &[f64]) -> Result<DecodeResult> {
        self.decode_with_state(y).map(|(r, _)| r)
    }

    fn name(&self) -> String {
        self.variant.label()
    }
}

/// Posterior words plus the per-check-node storage of `variant`.
fn storage_words(variant: &DecoderVariant, p: &PrototypeMatrix) -> u64 {
    let algorithm = variant.algorithm();
    let per_row: u64 = (0..p.m_p())
        .map(|c| {
            algorithm
                .check_node_cost(p.row_degree(c) as u64)
                .memory_units
        })
        .sum();
    per_row * p.z() as u64 + p.n() as u64
}

/// `1` where the LLR is negative.
pub fn hard_decisions(q: &[f64]) -> Vec<u8> {
    q.iter().map(|&x| u8::from(x < 0.0)).collect()
}

/// Layered decoding of `y` with at most `max_iterations` iterations, stopping
/// early once the syndrome is zero.
pub fn layered_decode(
    variant: DecoderVariant,
    proto: &PrototypeMatrix,
    y: &[f64],
    max_iterations: usize,
    schedule: &Schedule,
) -> Result<DecodeResult> {
    let options = DecodeOptions::with_max_iterations(max_iterations);
    FloatDecoder::new(variant, proto, schedule, options)?.decode(y)
}

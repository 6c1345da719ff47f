//! Generalized adjusted min-sum (GA-MS) decoding of 5G NR LDPC codes.
//!
//! The crate covers the code model (base graphs, lifting, rate matching and
//! encoding), floating-point reference decoders, the fixed-point layered
//! GA-MS decoder with its box-plus look-up table, the static layer schedule
//! and pipeline latency model of a block-parallel decoder, the complexity and
//! memory models, and a Monte-Carlo AWGN simulation harness.

pub mod code;
pub mod complexity;
pub mod decoder;
mod error;
pub mod float;
pub mod quantized;
pub mod schedule;
pub mod sim;

pub use decoder::{DecodeOptions, DecodeResult, Decoder};
pub use error::{Error, Result};

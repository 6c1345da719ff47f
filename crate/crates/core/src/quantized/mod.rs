//! Fixed-point layered GA-MS decoder.
mod compress;
mod decoder;
mod lut;
mod minima;
mod ppc;
pub mod reference;
mod scheme;

pub use compress::{CompressedRRow, MAX_COMPRESSED_DEGREE};
pub use decoder::{
    rerotation_offset, GamsParams, QuantizedDecoder, QuantizedOutcome, RStorage, Rotation,
    SweepTrace, Termination,
};
pub use lut::BoxPlusLut;
pub use minima::{lut_min, sort_min, MinimaSet, MAX_GAMMA};
pub use ppc::{ppc_update_and_check, PpcState};
pub use scheme::{quantize_llr, QuantScheme};

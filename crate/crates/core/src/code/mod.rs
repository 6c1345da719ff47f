//! 5G NR QC-LDPC code model: base graphs, lifting, rate matching and encoding.

mod base_graph;
mod config;
mod encoder;
mod gf2;
mod prototype;

pub use base_graph::{BaseGraph, BaseGraphEntry, BaseGraphId, NUM_LIFTING_SETS};
pub use config::{
    is_valid_lifting_size, lifting_set_index, lifting_sizes, CodeConfig, LIFTING_SET_GENERATORS,
    PUNCTURED_COLUMNS, Z_MAX,
};
pub use encoder::Encoder;
pub use gf2::BinaryMatrix;
pub use prototype::{expand_prototype, PrototypeMatrix};

/// Convenience bundle of a configuration and its prototype matrix.
#[derive(Clone, Debug)]
pub struct Code {
    pub config: CodeConfig,
    pub proto: PrototypeMatrix,
}

impl Code {
    pub fn new(bg: &BaseGraph, config: CodeConfig) -> crate::Result<Code> {
        let proto = expand_prototype(bg, &config)?;
        Ok(Code { config, proto })
    }

    /// Code built from the compiled-in base graph data.
    pub fn builtin(config: CodeConfig) -> Code {
        let bg = BaseGraph::builtin(config.bg);
        Code::new(&bg, config).expect("configuration matches its base graph")
    }
}

//! Per-iteration operation counts and decoder memory sizing.
//!
//! # Cost model
//!
//! Counts are datapath operations per decoding iteration for a code with
//! `M` check nodes, `N` variable nodes, check degree `d_c` and variable
//! degree `d_v`. Every algorithm pays one addition per edge for the
//! posterior update (`d_v * N`). On top of that, per check node:
//!
//! | algorithm | comparisons | additions | LUTs | stored words |
//! |-----------|-------------|-----------|------|--------------|
//! | SP        | 0 | `2d_c - 1` (sum and leave-one-out differences in the phi domain) | `2d_c` (phi in and out) | `d_c` |
//! | A-Min*    | `d_c - 1` (argmin) | `2d_c - 1` (two correction arguments per box-plus, plus the merge) | `d_c - 1` box-plus | 3 |
//! | MS        | `2d_c - 3` (two-minimum tracker) | 0 | 0 | 2 |
//! | OMS, NMS  | `2d_c - 3` | 2 (offset or scaling of both minima) | 0 | 2 |
//! | A-MS      | `2d_c - 3` | `3d_c - 6` | `2d_c - 4` | 3 |
//! | GA-MS-γ   | `γ d_c - γ(γ+1)/2` (pruned sorter) | 2 (offset on both magnitudes) | `γ - 1` box-plus | 2 |
//!
//! The pruned sorter compares the `j`-th incoming magnitude against the
//! `min(j - 1, γ)` minima held so far, and `Σ_j min(j - 1, γ)` over a row of
//! degree `d_c >= γ` is the closed form above. The storage column adds the
//! `N` posterior words.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::code::BaseGraph;
use crate::decoder::DecodeResult;
use crate::error::{Error, Result};
use crate::quantized::QuantScheme;

/// Operation tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub comparisons: u64,
    pub additions: u64,
    pub lut_ops: u64,
    pub memory_units: u64,
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        self.comparisons += rhs.comparisons;
        self.additions += rhs.additions;
        self.lut_ops += rhs.lut_ops;
        self.memory_units += rhs.memory_units;
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(mut self, rhs: OpCounts) -> OpCounts {
        self += rhs;
        self
    }
}

/// Algorithms covered by the complexity comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    SumProduct,
    AMinStar,
    MinSum,
    OffsetMinSum,
    NormalizedMinSum,
    AdjustedMinSum,
    GaMs { gamma: u64 },
}

impl Algorithm {
    /// Per-check-node cost (excluding the per-edge posterior additions and
    /// the `N` posterior words).
    pub fn check_node_cost(&self, d_c: u64) -> OpCounts {
        let two_min = 2 * d_c - 3;
        let (comparisons, additions, lut_ops, memory_units) = match *self {
            Algorithm::SumProduct => (0, 2 * d_c - 1, 2 * d_c, d_c),
            Algorithm::AMinStar => (d_c - 1, 2 * d_c - 1, d_c - 1, 3),
            Algorithm::MinSum => (two_min, 0, 0, 2),
            Algorithm::OffsetMinSum | Algorithm::NormalizedMinSum => (two_min, 2, 0, 2),
            Algorithm::AdjustedMinSum => (two_min, 3 * d_c - 6, 2 * d_c - 4, 3),
            Algorithm::GaMs { gamma } => (gamma * d_c - gamma * (gamma + 1) / 2, 2, gamma - 1, 2),
        };
        OpCounts {
            comparisons,
            additions,
            lut_ops,
            memory_units,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::SumProduct => f.write_str("SP"),
            Algorithm::AMinStar => f.write_str("A-Min*"),
            Algorithm::MinSum => f.write_str("MS"),
            Algorithm::OffsetMinSum => f.write_str("OMS"),
            Algorithm::NormalizedMinSum => f.write_str("NMS"),
            Algorithm::AdjustedMinSum => f.write_str("A-MS"),
            Algorithm::GaMs { gamma } => write!(f, "GA-MS-{gamma}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        let lower = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match lower.as_str() {
            "sp" => Algorithm::SumProduct,
            "amin*" | "aminstar" => Algorithm::AMinStar,
            "ms" => Algorithm::MinSum,
            "oms" => Algorithm::OffsetMinSum,
            "nms" => Algorithm::NormalizedMinSum,
            "ams" => Algorithm::AdjustedMinSum,
            _ => match lower.strip_prefix("gams").map(str::parse::<u64>) {
                Some(Ok(gamma)) if gamma >= 2 => Algorithm::GaMs { gamma },
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown algorithm '{s}' (expected sp, amin*, ms, oms, nms, ams or gams<γ>)"
                    )))
                }
            },
        })
    }
}

/// Closed-form per-iteration counts for a `(d_c, d_v)`-regular code with
/// `m` check nodes and `n` variable nodes.
pub fn counts_formula(algorithm: Algorithm, d_c: u64, d_v: u64, m: u64, n: u64) -> OpCounts {
    let per_cn = algorithm.check_node_cost(d_c);
    OpCounts {
        comparisons: per_cn.comparisons * m,
        additions: d_v * n + per_cn.additions * m,
        lut_ops: per_cn.lut_ops * m,
        memory_units: per_cn.memory_units * m + n,
    }
}

/// Per-iteration counts tallied by a decode run with operation counting
/// enabled. Datapath counts are averaged over the executed iterations; the
/// storage figure is reported as-is.
pub fn counts_instrumented(result: &DecodeResult) -> Result<OpCounts> {
    let ops = result.ops.ok_or_else(|| {
        Error::InvalidParameter("operation counting was not enabled for this decode".into())
    })?;
    let iters = result.iterations.max(1) as u64;
    Ok(OpCounts {
        comparisons: ops.comparisons / iters,
        additions: ops.additions / iters,
        lut_ops: ops.lut_ops / iters,
        memory_units: ops.memory_units,
    })
}

/// Relative reduction `1 - new/old`.
pub fn reduction(new: u64, old: u64) -> f64 {
    1.0 - new as f64 / old as f64
}

/// Per-iteration cells written in terms of `M` and `N`, in the order
/// comparisons, additions, LUTs, memory (e.g. `18M`, `5N+2M`, `2M`, `2M+N`).
pub fn symbolic_cells(algorithm: Algorithm, d_c: u64, d_v: u64) -> [String; 4] {
    let per_cn = algorithm.check_node_cost(d_c);
    let term = |k: u64, sym: &str| match k {
        0 => String::new(),
        1 => sym.to_string(),
        k => format!("{k}{sym}"),
    };
    let join = |a: String, b: String| match (a.is_empty(), b.is_empty()) {
        (true, true) => "0".to_string(),
        (false, true) => a,
        (true, false) => b,
        (false, false) => format!("{a}+{b}"),
    };
    [
        join(term(per_cn.comparisons, "M"), String::new()),
        join(term(d_v, "N"), term(per_cn.additions, "M")),
        join(term(per_cn.lut_ops, "M"), String::new()),
        join(term(per_cn.memory_units, "M"), "N".to_string()),
    ]
}

/// Savings of GA-MS-γ over A-MS and SP for one code size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reductions {
    /// Comparisons plus additions, versus A-MS.
    pub ops_vs_ams: f64,
    pub memory_vs_ams: f64,
    pub luts_vs_sp: f64,
    pub luts_vs_ams: f64,
}

pub fn gams_reductions(gamma: u64, d_c: u64, d_v: u64, m: u64, n: u64) -> Reductions {
    let g = counts_formula(Algorithm::GaMs { gamma }, d_c, d_v, m, n);
    let a = counts_formula(Algorithm::AdjustedMinSum, d_c, d_v, m, n);
    let sp = counts_formula(Algorithm::SumProduct, d_c, d_v, m, n);
    Reductions {
        ops_vs_ams: reduction(g.comparisons + g.additions, a.comparisons + a.additions),
        memory_vs_ams: reduction(g.memory_units, a.memory_units),
        luts_vs_sp: reduction(g.lut_ops, sp.lut_ops),
        luts_vs_ams: reduction(g.lut_ops, a.lut_ops),
    }
}

/// Block-parallel datapath lanes per memory instance.
pub const LANES_PER_INSTANCE: usize = 24;
/// Memory instances per message type.
pub const MEMORY_INSTANCES: usize = 16;
/// Bits of the compressed critical-column index.
pub const INDEX_BITS: usize = 5;

/// One memory of the decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryBlock {
    pub name: &'static str,
    pub width_bits: usize,
    pub depth: usize,
    pub instances: usize,
}

impl MemoryBlock {
    pub fn capacity_bytes(&self) -> usize {
        self.width_bits * self.depth * self.instances / 8
    }

    pub fn capacity_kb(&self) -> f64 {
        self.capacity_bytes() as f64 / 1024.0
    }
}

/// Memories of the decoder for one quantization scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryLayout {
    pub blocks: Vec<MemoryBlock>,
}

impl MemoryLayout {
    pub fn total_bytes(&self) -> usize {
        self.blocks.iter().map(MemoryBlock::capacity_bytes).sum()
    }

    /// Total capacity in KB (1 KB = 1024 bytes).
    pub fn total_kb(&self) -> f64 {
        self.total_bytes() as f64 / 1024.0
    }
}

/// Q, T, R-sign and compressed R-magnitude memories sized for `bg`.
pub fn memory_sizing(scheme: &QuantScheme, bg: &BaseGraph) -> MemoryLayout {
    let id = bg.id();
    let block = |name, width_bits, depth| MemoryBlock {
        name,
        width_bits,
        depth,
        instances: MEMORY_INSTANCES,
    };
    let vn_width = LANES_PER_INSTANCE * scheme.b_vn as usize;
    MemoryLayout {
        blocks: vec![
            block("Q", vn_width, id.n_cols()),
            block("T", vn_width, id.n_cols()),
            block("R-sign", LANES_PER_INSTANCE, bg.num_entries()),
            block(
                "R-mag",
                LANES_PER_INSTANCE * compressed_row_bits(scheme),
                id.n_rows(),
            ),
        ],
    }
}

/// Bits of one compressed row without signs: two magnitudes and the index.
pub fn compressed_row_bits(scheme: &QuantScheme) -> usize {
    2 * (scheme.b_cn as usize - 1) + INDEX_BITS
}

/// Fraction of R-message bits saved by compressed storage, per lane.
pub fn compression_savings(scheme: &QuantScheme, bg: &BaseGraph) -> f64 {
    let entries = bg.num_entries();
    let compressed = entries + bg.id().n_rows() * compressed_row_bits(scheme);
    1.0 - compressed as f64 / (entries * scheme.b_cn as usize) as f64
}

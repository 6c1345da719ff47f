//! Layer schedules, the optimized static schedule (OSS), and the MIN/SEL
//! pipeline latency model of the block-parallel decoder.

mod oss;
mod pipeline;

use std::fmt::Write as _;

use crate::code::PrototypeMatrix;
use crate::error::{Error, Result};

pub use oss::{build_oss, classify_rows, reorder_columns, PuncturedClasses};
pub use pipeline::{
    latency_simplified, peak_throughput, simulate_pipeline, LatencyReport, LayerTiming,
    PipelineParams,
};

/// Processing order of a layered decoder.
///
/// `column_order[c]` is the order in which the MIN phase visits the block
/// columns of layer `c`, and `sel_order[c]` the order in which the SEL phase
/// writes them back. Both are indexed by layer, not by schedule position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub layer_order: Vec<usize>,
    pub column_order: Vec<Vec<usize>>,
    pub sel_order: Vec<Vec<usize>>,
}

impl Schedule {
    /// Layers in index order, columns ascending.
    pub fn natural(proto: &PrototypeMatrix) -> Schedule {
        let columns: Vec<Vec<usize>> = (0..proto.m_p())
            .map(|c| proto.row_columns(c).to_vec())
            .collect();
        Schedule {
            layer_order: (0..proto.m_p()).collect(),
            column_order: columns.clone(),
            sel_order: columns,
        }
    }

    /// Checks that the schedule is a permutation of the layers of `proto` and
    /// that every column order permutes exactly that layer's block columns.
    pub fn validate(&self, proto: &PrototypeMatrix) -> Result<()> {
        let m = proto.m_p();
        if self.layer_order.len() != m {
            return Err(Error::InvalidSchedule(format!(
                "{} layers scheduled, code uses {m}",
                self.layer_order.len()
            )));
        }
        let mut seen = vec![false; m];
        for &c in &self.layer_order {
            if c >= m {
                return Err(Error::InvalidSchedule(format!(
                    "layer {c} is not used (code uses {m} layers)"
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidSchedule(format!("layer {c} scheduled twice")));
            }
        }
        if self.column_order.len() != m || self.sel_order.len() != m {
            return Err(Error::InvalidSchedule(
                "column orders do not cover every layer".into(),
            ));
        }
        for c in 0..m {
            for (name, order) in [("MIN", &self.column_order[c]), ("SEL", &self.sel_order[c])] {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != proto.row_columns(c) {
                    return Err(Error::InvalidSchedule(format!(
                        "{name} column order of layer {c} is not a permutation of its block columns"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The layer processed before `layer_order[pos]`, wrapping around.
    pub fn previous_layer(&self, pos: usize) -> usize {
        let m = self.layer_order.len();
        self.layer_order[(pos + m - 1) % m]
    }

    /// Text form: one line per scheduled layer,
    /// `<layer> : <MIN columns> | <SEL columns>`, with `#` comments.
    pub fn to_text(&self, proto: &PrototypeMatrix) -> String {
        let mut out = String::new();
        if let Some(bg) = proto.base_graph() {
            let _ = writeln!(out, "# {bg} z={} layers={}", proto.z(), proto.m_p());
        }
        out.push_str("# layer : MIN column order | SEL column order\n");
        for &c in &self.layer_order {
            let _ = writeln!(
                out,
                "{c} : {} | {}   # d={}",
                join(&self.column_order[c]),
                join(&self.sel_order[c]),
                proto.row_degree(c)
            );
        }
        out
    }

    /// Parses the text form and validates it against `proto`.
    pub fn parse(text: &str, proto: &PrototypeMatrix) -> Result<Schedule> {
        let m = proto.m_p();
        let mut layer_order = Vec::with_capacity(m);
        let mut column_order = vec![Vec::new(); m];
        let mut sel_order = vec![Vec::new(); m];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::InvalidSchedule(format!("line {}: {what}", lineno + 1));
            let (layer, rest) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let (min, sel) = rest.split_once('|').ok_or_else(|| bad("missing '|'"))?;
            let c: usize = layer.trim().parse().map_err(|_| bad("bad layer index"))?;
            if c >= m {
                return Err(bad(&format!("layer {c} is not used")));
            }
            column_order[c] = parse_list(min).ok_or_else(|| bad("bad column list"))?;
            sel_order[c] = parse_list(sel).ok_or_else(|| bad("bad column list"))?;
            layer_order.push(c);
        }
        let schedule = Schedule {
            layer_order,
            column_order,
            sel_order,
        };
        schedule.validate(proto)?;
        Ok(schedule)
    }
}

fn join(cols: &[usize]) -> String {
    cols.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_list(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

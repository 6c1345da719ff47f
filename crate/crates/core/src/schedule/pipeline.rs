use crate::code::{CodeConfig, PrototypeMatrix, Z_MAX};

use super::Schedule;

/// Timing parameters of the two-stage MIN/SEL pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineParams {
    /// Cycles between the SEL phase issuing a block and the block becoming
    /// readable by the next MIN phase.
    pub register_delay: usize,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams { register_delay: 1 }
    }
}

/// Cycle budget of one scheduled layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerTiming {
    pub layer: usize,
    pub degree: usize,
    /// Cycles from the start of this layer's MIN phase to the start of the next.
    pub cycles: usize,
    /// Cycles lost waiting for blocks still being written by the previous layer.
    pub dep_stalls: usize,
    /// Cycles lost waiting for a longer previous SEL phase, `max(d_prev - d, 0)`.
    pub sync_stalls: usize,
}

/// Latency of `iterations` decoding iterations, decomposed into the
/// degree bound, data-dependency stalls and row-synchronization stalls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatencyReport {
    pub iterations: usize,
    /// Sum of layer degrees, one block per cycle.
    pub bound: usize,
    pub dep_stalls: usize,
    pub sync_stalls: usize,
    pub cycles_per_iteration: usize,
    pub total_cycles: usize,
    pub layers: Vec<LayerTiming>,
}

/// Cycle-steps the MIN/SEL pipeline over one iteration in steady state and
/// scales it to `iterations`.
///
/// While the MIN phase of a layer reads one block per cycle, the SEL phase
/// of the previous layer writes one block per cycle. A block written at
/// cycle `j` can be read from cycle `j + register_delay`; the MIN phase
/// stalls on a shared block until then. The next layer starts once both
/// phases of the current slot are done.
pub fn simulate_pipeline(
    proto: &PrototypeMatrix,
    schedule: &Schedule,
    params: PipelineParams,
    iterations: usize,
) -> LatencyReport {
    let delay = params.register_delay;
    let mut layers = Vec::with_capacity(schedule.layer_order.len());
    for (pos, &c) in schedule.layer_order.iter().enumerate() {
        let prev = schedule.previous_layer(pos);
        let d = proto.row_degree(c);
        let d_prev = proto.row_degree(prev);
        let ready = |v: usize| {
            schedule.sel_order[prev]
                .iter()
                .position(|&w| w == v)
                .map_or(0, |j| j + delay)
        };
        let mut last: Option<usize> = None;
        for &v in &schedule.column_order[c] {
            let earliest = last.map_or(0, |t| t + 1);
            last = Some(earliest.max(ready(v)));
        }
        let min_cycles = last.map_or(0, |t| t + 1);
        let cycles = min_cycles.max(d_prev + delay - 1);
        let sync = d_prev.saturating_sub(d);
        layers.push(LayerTiming {
            layer: c,
            degree: d,
            cycles,
            dep_stalls: cycles - d - sync,
            sync_stalls: sync,
        });
    }
    let bound = layers.iter().map(|l| l.degree).sum();
    let dep_stalls = layers.iter().map(|l| l.dep_stalls).sum();
    let sync_stalls = layers.iter().map(|l| l.sync_stalls).sum();
    let cycles_per_iteration = bound + dep_stalls + sync_stalls;
    LatencyReport {
        iterations,
        bound,
        dep_stalls,
        sync_stalls,
        cycles_per_iteration,
        total_cycles: iterations * cycles_per_iteration,
        layers,
    }
}

/// Closed-form latency `I * (sum d_c + d_max - d_min)`.
pub fn latency_simplified(proto: &PrototypeMatrix, iterations: usize) -> usize {
    let d = proto.row_degrees();
    let max = d.iter().max().copied().unwrap_or(0);
    let min = d.iter().min().copied().unwrap_or(0);
    iterations * (d.iter().sum::<usize>() + max - min)
}

/// Peak throughput in bit/s for a latency of `cycles` at `freq_hz`.
pub fn peak_throughput(config: &CodeConfig, cycles: usize, freq_hz: f64) -> f64 {
    assert!(cycles > 0, "latency must be positive");
    (Z_MAX * config.n_p_used) as f64 / cycles as f64 * freq_hz
}

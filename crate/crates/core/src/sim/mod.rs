//! AWGN Monte-Carlo simulation: frame generation, demapping, decoding and
//! error statistics.

mod modulation;
mod stats;

use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::code::{BaseGraphId, Code, Encoder};
use crate::decoder::{DecodeOptions, Decoder};
use crate::error::{Error, Result};
use crate::float::{DecoderVariant, FloatDecoder};
use crate::quantized::{GamsParams, QuantizedDecoder, Termination};
use crate::schedule::Schedule;

pub use modulation::{demap_maxlogmap, modulate, Modulation, Symbol};
pub use stats::{clopper_pearson, SimStats};

/// Noise variance per real dimension for unit-energy symbols.
pub fn noise_variance(rate: f64, modulation: Modulation, ebn0_db: f64) -> f64 {
    1.0 / (2.0 * rate * modulation.bits_per_symbol() as f64 * 10f64.powf(ebn0_db / 10.0))
}

/// Which codewords are transmitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameSource {
    /// The all-zero codeword; valid for symmetric constellations.
    AllZero,
    /// Encoded uniformly random messages.
    RandomMessages,
}

impl FrameSource {
    pub fn default_for(modulation: Modulation) -> FrameSource {
        if modulation.is_symmetric() {
            FrameSource::AllZero
        } else {
            FrameSource::RandomMessages
        }
    }
}

/// Modulation and operating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub modulation: Modulation,
    pub ebn0_db: f64,
    pub source: FrameSource,
}

impl ChannelConfig {
    pub fn new(modulation: Modulation, ebn0_db: f64) -> ChannelConfig {
        ChannelConfig {
            modulation,
            ebn0_db,
            source: FrameSource::default_for(modulation),
        }
    }

    pub fn sigma2(&self, rate: f64) -> f64 {
        noise_variance(rate, self.modulation, self.ebn0_db)
    }
}

/// Stop after `max_frames`, or as soon as `target_errors` frame errors have
/// been observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StopRule {
    pub max_frames: u64,
    pub target_errors: Option<u64>,
}

impl StopRule {
    pub fn frames(max_frames: u64) -> StopRule {
        StopRule {
            max_frames,
            target_errors: None,
        }
    }

    fn done(&self, stats: &SimStats) -> bool {
        stats.frames >= self.max_frames
            || self.target_errors.is_some_and(|t| stats.frame_errors >= t)
    }
}

/// Every frame draws from its own ChaCha stream keyed by the master seed,
/// the operating point and the frame index, so results do not depend on how
/// frames are spread over threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedPolicy {
    pub master: u64,
}

impl SeedPolicy {
    pub fn frame_rng(&self, point: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master ^ splitmix64(point));
        rng.set_stream(index);
        rng
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A decoder selection for simulation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecoderSpec {
    Float(DecoderVariant),
    Fixed {
        params: GamsParams,
        termination: Termination,
    },
}

/// Default NMS scaling factor.
pub const DEFAULT_NMS_ALPHA: f64 = 0.75;
/// Default OMS offset.
pub const DEFAULT_OMS_BETA: f64 = 0.5;

impl DecoderSpec {
    /// Parses `sp`, `ms`, `nms[=α]`, `oms[=β]`, `amin*`, `gams<γ>[=β]` and
    /// `gams<γ>-fx[=β]`; `gams<γ>-fx-syn` stops on the full syndrome instead
    /// of the partial parity checks. GA-MS offsets default per base graph.
    pub fn parse(s: &str, bg: BaseGraphId) -> Result<DecoderSpec> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, value) = match lower.split_once('=') {
            Some((n, v)) => {
                let v = f64::from_str(v).map_err(|_| {
                    Error::InvalidParameter(format!("bad parameter in decoder '{s}'"))
                })?;
                (n.to_string(), Some(v))
            }
            None => (lower.clone(), None),
        };
        let unknown = || {
            Error::InvalidParameter(format!(
                "unknown decoder '{s}' (expected sp, ms, nms[=a], oms[=b], amin*, gams<g>[=b], gams<g>-fx[=b] or gams<g>-fx-syn[=b])"
            ))
        };
        let spec = match name.as_str() {
            "sp" => DecoderSpec::Float(DecoderVariant::SumProduct),
            "ms" => DecoderSpec::Float(DecoderVariant::MinSum),
            "nms" => DecoderSpec::Float(DecoderVariant::NormalizedMinSum {
                alpha: value.unwrap_or(DEFAULT_NMS_ALPHA),
            }),
            "oms" => DecoderSpec::Float(DecoderVariant::OffsetMinSum {
                beta: value.unwrap_or(DEFAULT_OMS_BETA),
            }),
            "amin*" | "aminstar" | "amin" => DecoderSpec::Float(DecoderVariant::AMinStar),
            _ => {
                let rest = name.strip_prefix("gams").ok_or_else(unknown)?;
                let (digits, fixed, termination) = if let Some(d) = rest.strip_suffix("-fx-syn") {
                    (d, true, Termination::Syndrome)
                } else if let Some(d) = rest.strip_suffix("-fx") {
                    (d, true, Termination::Ppc)
                } else {
                    (rest, false, Termination::Ppc)
                };
                let gamma: usize = digits.parse().map_err(|_| unknown())?;
                if gamma < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "GA-MS needs gamma >= 2, got {gamma}"
                    )));
                }
                let mut params = GamsParams::default_for(gamma, bg);
                if let Some(beta) = value {
                    params.beta = beta;
                }
                if fixed {
                    DecoderSpec::Fixed {
                        params,
                        termination,
                    }
                } else {
                    DecoderSpec::Float(DecoderVariant::GaMs {
                        gamma,
                        beta: params.beta,
                    })
                }
            }
        };
        if let DecoderSpec::Float(v) = spec {
            v.validate()?;
        }
        Ok(spec)
    }

    /// SP, MS, NMS, OMS, A-Min*, GA-MS-3 and GA-MS-4 in floating point.
    pub fn all_float(bg: BaseGraphId) -> Vec<DecoderSpec> {
        ["sp", "ms", "nms", "oms", "amin*", "gams3", "gams4"]
            .iter()
            .map(|s| DecoderSpec::parse(s, bg).expect("built-in decoder names"))
            .collect()
    }

    pub fn label(&self) -> String {
        match self {
            DecoderSpec::Float(v) => v.label(),
            DecoderSpec::Fixed {
                params,
                termination,
            } => {
                let stop = match termination {
                    Termination::Ppc => "",
                    Termination::Syndrome => ";syn",
                };
                format!(
                    "GA-MS-{}-fx({};b={}{stop})",
                    params.gamma,
                    params.scheme.to_string().replace(',', "/"),
                    params.beta
                )
            }
        }
    }

    pub fn build<'a>(
        &self,
        code: &'a Code,
        schedule: &Schedule,
        options: DecodeOptions,
    ) -> Result<Box<dyn Decoder + 'a>> {
        Ok(match *self {
            DecoderSpec::Float(v) => {
                Box::new(FloatDecoder::new(v, &code.proto, schedule, options)?)
            }
            DecoderSpec::Fixed {
                params,
                termination,
            } => Box::new(
                QuantizedDecoder::new(&code.proto, schedule, params, options)?
                    .with_termination(termination),
            ),
        })
    }
}

/// Shared settings of a simulation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub stop: StopRule,
    pub seed: SeedPolicy,
    /// Worker threads; `0` uses every available core.
    pub workers: usize,
    pub max_iterations: usize,
}

/// Frames decoded between stop-rule checks.
const BATCH: u64 = 256;

/// Channel input for frame `index`: the transmitted codeword and its LLRs.
pub fn generate_frame(
    code: &Code,
    encoder: Option<&Encoder>,
    channel: &ChannelConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<u8>, Vec<f64>)> {
    let cfg = &code.config;
    let codeword = match (channel.source, encoder) {
        (FrameSource::AllZero, _) => vec![0u8; cfg.n()],
        (FrameSource::RandomMessages, Some(enc)) => {
            let msg: Vec<u8> = (0..enc.k()).map(|_| rng.random_range(0..2u8)).collect();
            enc.encode(&msg)?
        }
        (FrameSource::RandomMessages, None) => {
            return Err(Error::InvalidConfig(
                "random messages need an encoder".into(),
            ))
        }
    };
    let start = 2 * cfg.z;
    let tx = &codeword[start..start + cfg.e];
    let sigma = channel.sigma2(cfg.rate()).sqrt();
    let mut symbols = modulate(tx, channel.modulation)?;
    for s in &mut symbols {
        s.re += sigma * rng.sample::<f64, _>(StandardNormal);
        if channel.modulation != Modulation::Bpsk {
            s.im += sigma * rng.sample::<f64, _>(StandardNormal);
        }
    }
    let mut llrs = vec![0.0; cfg.n()];
    llrs[start..start + cfg.e].copy_from_slice(&demap_maxlogmap(
        &symbols,
        channel.modulation,
        sigma * sigma,
    ));
    Ok((codeword, llrs))
}

/// Simulates one operating point until the stop rule fires.
pub fn run_fer_point(
    code: &Code,
    schedule: &Schedule,
    decoder: &DecoderSpec,
    channel: &ChannelConfig,
    options: &RunOptions,
) -> Result<SimStats> {
    if options.stop.max_frames == 0 {
        return Err(Error::ZeroFrames);
    }
    let bps = channel.modulation.bits_per_symbol();
    if code.config.e % bps != 0 {
        return Err(Error::SymbolLength {
            len: code.config.e,
            bits_per_symbol: bps,
        });
    }
    let decode_options = DecodeOptions::with_max_iterations(options.max_iterations);
    let dec = decoder.build(code, schedule, decode_options)?;
    let encoder = match channel.source {
        FrameSource::AllZero => None,
        FrameSource::RandomMessages => Some(Encoder::new(&code.proto, code.config.k_u)?),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let point = channel.ebn0_db.to_bits() ^ (channel.modulation.bits_per_symbol() as u64) << 56;
    let k = code.config.k;

    let mut stats = SimStats::default();
    let mut next = 0u64;
    while !options.stop.done(&stats) {
        let end = (next + BATCH).min(options.stop.max_frames);
        let outcomes: Vec<(u64, usize)> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|index| {
                    let mut rng = options.seed.frame_rng(point, index);
                    let (cw, llrs) = generate_frame(code, encoder.as_ref(), channel, &mut rng)?;
                    let res = dec.decode(&llrs)?;
                    let errors = res.bits[..k]
                        .iter()
                        .zip(&cw[..k])
                        .filter(|(a, b)| a != b)
                        .count() as u64;
                    Ok((errors, res.iterations))
                })
                .collect::<Result<_>>()
        })?;
        for (errors, iterations) in outcomes {
            stats.record(errors, k as u64, iterations);
            if options.stop.done(&stats) {
                break;
            }
        }
        next = end;
    }
    Ok(stats)
}

/// One CSV row of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub decoder: String,
    pub bg: BaseGraphId,
    pub z: usize,
    pub k_u: usize,
    pub e: usize,
    pub rate: f64,
    pub modulation: Modulation,
    pub ebn0_db: f64,
    pub stats: SimStats,
}

pub const CSV_HEADER: [&str; 15] = [
    "decoder",
    "bg",
    "Z",
    "Ku",
    "E",
    "R",
    "modulation",
    "ebn0_db",
    "frames",
    "frame_errors",
    "fer",
    "fer_ci_lo",
    "fer_ci_hi",
    "ber",
    "avg_iters",
];

impl SweepRow {
    pub fn record(&self) -> Vec<String> {
        let (lo, hi) = self.stats.fer_ci95();
        let bg = match self.bg {
            BaseGraphId::Bg1 => "1",
            BaseGraphId::Bg2 => "2",
        };
        vec![
            self.decoder.clone(),
            bg.to_string(),
            self.z.to_string(),
            self.k_u.to_string(),
            self.e.to_string(),
            self.rate.to_string(),
            self.modulation.to_string(),
            self.ebn0_db.to_string(),
            self.stats.frames.to_string(),
            self.stats.frame_errors.to_string(),
            self.stats.fer().to_string(),
            lo.to_string(),
            hi.to_string(),
            self.stats.ber().to_string(),
            self.stats.avg_iterations().to_string(),
        ]
    }
}

/// Every decoder at every grid point, in grid-major order per decoder.
pub fn run_sweep(
    code: &Code,
    schedule: &Schedule,
    decoders: &[DecoderSpec],
    grid: &[f64],
    modulation: Modulation,
    options: &RunOptions,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty Eb/N0 grid".into()));
    }
    let mut rows = Vec::with_capacity(decoders.len() * grid.len());
    for decoder in decoders {
        for &ebn0_db in grid {
            let channel = ChannelConfig::new(modulation, ebn0_db);
            let stats = run_fer_point(code, schedule, decoder, &channel, options)?;
            rows.push(SweepRow {
                decoder: decoder.label(),
                bg: code.config.bg,
                z: code.config.z,
                k_u: code.config.k_u,
                e: code.config.e,
                rate: code.config.rate(),
                modulation,
                ebn0_db,
                stats,
            });
        }
    }
    Ok(rows)
}

/// Writes `rows` as CSV with [`CSV_HEADER`].
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Output(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Decoders whose FER rises with Eb/N0 by more than the confidence
/// intervals allow.
pub fn fer_monotonicity_warnings(rows: &[SweepRow]) -> Vec<String> {
    rows.windows(2)
        .filter(|w| w[0].decoder == w[1].decoder && w[1].ebn0_db > w[0].ebn0_db)
        .filter(|w| w[1].stats.fer_ci95().0 > w[0].stats.fer_ci95().1)
        .map(|w| {
            format!(
                "{}: FER rises from {} at {} dB to {} at {} dB",
                w[0].decoder,
                w[0].stats.fer(),
                w[0].ebn0_db,
                w[1].stats.fer(),
                w[1].ebn0_db
            )
        })
        .collect()
}

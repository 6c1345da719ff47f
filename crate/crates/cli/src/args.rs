use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "gams",
    version,
    about = "GA-MS LDPC decoding toolkit for 5G NR codes"
)]
pub struct Cli {
    /// Directory holding bg1.txt and bg2.txt.
    #[arg(long, global = true, env = "GAMS_DATA_DIR")]
    pub data_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum Command {
    /// Monte-Carlo FER/BER sweep over an Eb/N0 grid, written as CSV.
    Fer(FerArgs),
    /// Pipeline latency and peak throughput of one code.
    Latency(LatencyArgs),
    /// Per-iteration operation counts of the check-node algorithms.
    Complexity(ComplexityArgs),
    /// Decoder memory sizing for a quantization scheme.
    Memory(MemoryArgs),
    /// Print the box-plus look-up table.
    LutDump(LutArgs),
    /// Print the optimized static layer schedule.
    ScheduleGen(ScheduleArgs),
    /// Re-run a command from its manifest.
    Rerun(RerunArgs),
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct CodeArgs {
    /// Base graph (1 or 2).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub bg: u8,
    /// Lifting size.
    #[arg(long, default_value_t = 384)]
    pub z: usize,
    /// Information columns (defaults to 22 for BG1, 10 for BG2).
    #[arg(long)]
    pub ku: Option<usize>,
    /// Code rate as a fraction, e.g. 1/3.
    #[arg(long, conflicts_with = "e")]
    pub rate: Option<String>,
    /// Transmitted bits; overrides --rate.
    #[arg(long = "E", id = "e")]
    pub e: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum ScheduleKind {
    /// Rows in natural order, columns ascending.
    Natural,
    /// Optimized layer order, columns ascending.
    Oss,
    /// Optimized layer order with aligned column orders.
    OssReorder,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct FerArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Decoders: sp, ms, nms[=a], oms[=b], amin*, gams<g>[=b], gams<g>-fx[=b],
    /// gams<g>-fx-syn[=b] or all-float. Repeat or separate with commas.
    #[arg(long = "dec", required = true, value_delimiter = ',')]
    pub decoders: Vec<String>,
    /// Modulation: bpsk, qpsk, qam16 or qam64.
    #[arg(long = "mod", default_value = "qpsk")]
    pub modulation: String,
    /// Eb/N0 grid in dB: start:step:stop or a comma list.
    #[arg(long)]
    pub ebn0: String,
    /// Maximum decoding iterations.
    #[arg(long, default_value_t = 15)]
    pub imax: usize,
    /// Frame budget per point.
    #[arg(long, default_value_t = 100_000)]
    pub frames: u64,
    /// Stop a point after this many frame errors (0 disables).
    #[arg(long, default_value_t = 100)]
    pub errors: u64,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (0 = all cores); does not affect results.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = ScheduleKind::OssReorder)]
    pub schedule: ScheduleKind,
    /// CSV output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct LatencyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Decoding iterations.
    #[arg(long, short = 'I', default_value_t = 4)]
    pub iterations: usize,
    /// Clock frequency in MHz.
    #[arg(long, default_value_t = 895.0)]
    pub freq_mhz: f64,
    #[arg(long, value_enum, default_value_t = ScheduleKind::OssReorder)]
    pub schedule: ScheduleKind,
    /// Register delay between a SEL write and the next read.
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Text,
    Markdown,
    Csv,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ComplexityArgs {
    #[arg(long, default_value_t = 8)]
    pub dc: u64,
    #[arg(long, default_value_t = 5)]
    pub dv: u64,
    /// Check nodes.
    #[arg(long, default_value_t = 17664)]
    pub m: u64,
    /// Variable nodes.
    #[arg(long, default_value_t = 26112)]
    pub n: u64,
    /// GA-MS gamma used for the derived reductions.
    #[arg(long, default_value_t = 3)]
    pub gamma: u64,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct MemoryArgs {
    /// Quantization scheme B_VN,B_CN,B_f.
    #[arg(long, default_value = "7,5,1")]
    pub scheme: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
    pub bg: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct LutArgs {
    #[arg(long, default_value = "7,5,1")]
    pub scheme: String,
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value_t = ScheduleKind::OssReorder)]
    pub schedule: ScheduleKind,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct RerunArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Write the output here instead of the recorded path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

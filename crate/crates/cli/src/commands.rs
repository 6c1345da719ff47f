use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use gams_ldpc::code::{expand_prototype, BaseGraph, BaseGraphId, Code, CodeConfig};
use gams_ldpc::complexity::{
    compression_savings, counts_formula, gams_reductions, memory_sizing, symbolic_cells, Algorithm,
};
use gams_ldpc::quantized::{BoxPlusLut, QuantScheme};
use gams_ldpc::schedule::{
    build_oss, classify_rows, latency_simplified, peak_throughput, reorder_columns,
    simulate_pipeline, PipelineParams, Schedule,
};
use gams_ldpc::sim::{
    fer_monotonicity_warnings, run_sweep, write_csv, DecoderSpec, Modulation, RunOptions,
    SeedPolicy, StopRule,
};
use serde_json::json;

use crate::args::{
    Cli, CodeArgs, Command, ComplexityArgs, FerArgs, Format, LatencyArgs, LutArgs, MemoryArgs,
    RerunArgs, ScheduleArgs, ScheduleKind,
};
use crate::manifest::{manifest_path, RunManifest};

/// Base graph directory used when neither the flag nor the environment
/// variable is set.
const DEFAULT_DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

pub fn run(cli: Cli) -> Result<()> {
    let data_dir = cli
        .data_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR));
    // absolute, so manifests can be rerun from any directory
    let data_dir = std::fs::canonicalize(&data_dir).unwrap_or(data_dir);
    execute(cli.command, &data_dir)
}

fn execute(command: Command, data_dir: &Path) -> Result<()> {
    let stdout = io::stdout();
    match &command {
        Command::Fer(args) => cmd_fer(args, &command, data_dir),
        Command::Latency(args) => print(&cmd_latency(args, data_dir)?, stdout),
        Command::Complexity(args) => print(&cmd_complexity(args), stdout),
        Command::Memory(args) => print(&cmd_memory(args, data_dir)?, stdout),
        Command::LutDump(args) => print(&cmd_lut_dump(args)?, stdout),
        Command::ScheduleGen(args) => print(&cmd_schedule_gen(args, data_dir)?, stdout),
        Command::Rerun(args) => cmd_rerun(args),
    }
}

fn print(text: &str, out: io::Stdout) -> Result<()> {
    let mut out = out.lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn bg_id(bg: u8) -> BaseGraphId {
    if bg == 1 {
        BaseGraphId::Bg1
    } else {
        BaseGraphId::Bg2
    }
}

fn load_graph(data_dir: &Path, id: BaseGraphId) -> Result<BaseGraph> {
    let path = data_dir.join(id.file_name());
    Ok(BaseGraph::load(&path, id)?)
}

fn parse_rate(rate: &str) -> Result<(usize, usize)> {
    let (num, den) = rate
        .split_once('/')
        .ok_or_else(|| anyhow!("rate '{rate}' must be a fraction such as 1/3"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| anyhow!("rate '{rate}' must be a fraction such as 1/3"))
    };
    Ok((parse(num)?, parse(den)?))
}

/// Resolves the code flags; `e_multiple` rounds a rate-derived `E` up.
fn resolve_code(args: &CodeArgs, data_dir: &Path, e_multiple: usize) -> Result<Code> {
    let id = bg_id(args.bg);
    let k_u = args.ku.unwrap_or(id.k_u_max());
    let config = match (args.e, &args.rate) {
        (Some(e), _) => CodeConfig::new(id, args.z, k_u, e)?,
        (None, Some(rate)) => {
            let (num, den) = parse_rate(rate)?;
            let c = CodeConfig::from_rate(id, args.z, k_u, num, den)?;
            CodeConfig::new(id, args.z, k_u, c.e.next_multiple_of(e_multiple))?
        }
        (None, None) => bail!("give the code length with --rate or --E"),
    };
    let graph = load_graph(data_dir, id)?;
    let proto = expand_prototype(&graph, &config)?;
    Ok(Code { config, proto })
}

fn make_schedule(code: &Code, kind: ScheduleKind) -> Schedule {
    match kind {
        ScheduleKind::Natural => Schedule::natural(&code.proto),
        ScheduleKind::Oss => build_oss(&code.proto),
        ScheduleKind::OssReorder => reorder_columns(&code.proto, &build_oss(&code.proto)),
    }
}

fn code_json(code: &Code) -> serde_json::Value {
    let c = &code.config;
    json!({
        "bg": c.bg.to_string(), "z": c.z, "k_u": c.k_u, "k": c.k, "e": c.e,
        "rate": c.rate(), "n_p": c.n_p_used, "m_p": c.m_p_used,
    })
}

/// `start:step:stop` (inclusive) or a comma list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || anyhow!("Eb/N0 grid '{text}' must be start:step:stop or a comma list");
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if !(step > 0.0) || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect())
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

fn cmd_fer(args: &FerArgs, command: &Command, data_dir: &Path) -> Result<()> {
    let modulation: Modulation = args.modulation.parse()?;
    let code = resolve_code(&args.code, data_dir, modulation.bits_per_symbol())?;
    let bg = code.config.bg;
    let mut decoders = Vec::new();
    for name in &args.decoders {
        if name.eq_ignore_ascii_case("all-float") {
            decoders.extend(DecoderSpec::all_float(bg));
        } else {
            decoders.push(DecoderSpec::parse(name, bg)?);
        }
    }
    let grid = parse_grid(&args.ebn0)?;
    if args.imax == 0 {
        bail!("--imax must be at least 1");
    }
    let schedule = make_schedule(&code, args.schedule);
    let options = RunOptions {
        stop: StopRule {
            max_frames: args.frames,
            target_errors: (args.errors > 0).then_some(args.errors),
        },
        seed: SeedPolicy { master: args.seed },
        workers: args.workers,
        max_iterations: args.imax,
    };
    let rows = run_sweep(&code, &schedule, &decoders, &grid, modulation, &options)?;
    for warning in fer_monotonicity_warnings(&rows) {
        eprintln!("warning: {warning}");
    }
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_csv(&rows, BufWriter::new(file))?;
            let resolved = json!({
                "code": code_json(&code),
                "decoders": decoders.iter().map(DecoderSpec::label).collect::<Vec<_>>(),
                "ebn0_db": grid,
                "modulation": modulation.to_string(),
                "schedule": format!("{:?}", args.schedule),
                "max_iterations": args.imax,
                "max_frames": args.frames,
                "target_errors": args.errors,
            });
            RunManifest::new(command.clone(), data_dir, Some(args.seed), resolved)
                .write(&manifest_path(path))?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

pub fn cmd_latency(args: &LatencyArgs, data_dir: &Path) -> Result<String> {
    if args.iterations == 0 {
        bail!("--iterations must be at least 1");
    }
    if args.delay == 0 {
        bail!("--delay must be at least 1");
    }
    let code = resolve_code(&args.code, data_dir, 1)?;
    let schedule = make_schedule(&code, args.schedule);
    let params = PipelineParams {
        register_delay: args.delay,
    };
    let report = simulate_pipeline(&code.proto, &schedule, params, args.iterations);
    let simplified = latency_simplified(&code.proto, args.iterations);
    let gbps = peak_throughput(&code.config, report.total_cycles, args.freq_mhz * 1e6) / 1e9;
    let c = &code.config;
    let mut out = String::new();
    match args.format {
        Format::Csv => {
            out.push_str("bg,Z,Ku,E,R,schedule,iterations,bound,dep_stalls,sync_stalls,cycles_per_iteration,latency_cycles,closed_form_cycles,freq_mhz,throughput_gbps\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:?},{},{},{},{},{},{},{},{},{:.2}",
                args.code.bg,
                c.z,
                c.k_u,
                c.e,
                c.rate(),
                args.schedule,
                args.iterations,
                report.bound,
                report.dep_stalls,
                report.sync_stalls,
                report.cycles_per_iteration,
                report.total_cycles,
                simplified,
                args.freq_mhz,
                gbps
            );
        }
        Format::Text | Format::Markdown => {
            let _ = writeln!(
                out,
                "code: {} Z={} K_u={} E={} R={:.4} (n_p={}, m_p={})",
                c.bg,
                c.z,
                c.k_u,
                c.e,
                c.rate(),
                c.n_p_used,
                c.m_p_used
            );
            let _ = writeln!(out, "schedule: {:?}", args.schedule);
            let _ = writeln!(out, "iterations: {}", args.iterations);
            let _ = writeln!(out, "degree bound per iteration: {}", report.bound);
            let _ = writeln!(
                out,
                "dependency stalls per iteration: {}",
                report.dep_stalls
            );
            let _ = writeln!(out, "sync stalls per iteration: {}", report.sync_stalls);
            let _ = writeln!(out, "cycles per iteration: {}", report.cycles_per_iteration);
            let _ = writeln!(out, "latency: {} cycles", report.total_cycles);
            let _ = writeln!(out, "closed-form latency: {simplified} cycles");
            let _ = writeln!(out, "throughput: {gbps:.2} Gbps at {} MHz", args.freq_mhz);
        }
    }
    Ok(out)
}

const TABLE_ALGORITHMS: [Algorithm; 7] = [
    Algorithm::SumProduct,
    Algorithm::AMinStar,
    Algorithm::MinSum,
    Algorithm::OffsetMinSum,
    Algorithm::NormalizedMinSum,
    Algorithm::AdjustedMinSum,
    Algorithm::GaMs { gamma: 3 },
];

pub fn cmd_complexity(args: &ComplexityArgs) -> String {
    let mut algorithms = TABLE_ALGORITHMS.to_vec();
    algorithms[6] = Algorithm::GaMs {
        gamma: args.gamma.max(2),
    };
    let mut out = String::new();
    let csv = args.format == Format::Csv;
    if csv {
        out.push_str("algorithm,comparisons,additions,luts,memory,comparisons_count,additions_count,luts_count,memory_count\n");
    } else {
        let _ = writeln!(
            out,
            "Per-iteration operations (d_c={}, d_v={}, M={}, N={})\n",
            args.dc, args.dv, args.m, args.n
        );
        out.push_str("| algorithm | comparisons | additions | LUTs | memory |\n");
        out.push_str("|---|---|---|---|---|\n");
    }
    for alg in algorithms {
        let cells = symbolic_cells(alg, args.dc, args.dv);
        let counts = counts_formula(alg, args.dc, args.dv, args.m, args.n);
        if csv {
            let _ = writeln!(
                out,
                "{alg},{},{},{},{},{},{},{},{}",
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                counts.comparisons,
                counts.additions,
                counts.lut_ops,
                counts.memory_units
            );
        } else {
            let _ = writeln!(
                out,
                "| {alg} | {} ({}) | {} ({}) | {} ({}) | {} ({}) |",
                cells[0],
                counts.comparisons,
                cells[1],
                counts.additions,
                cells[2],
                counts.lut_ops,
                cells[3],
                counts.memory_units
            );
        }
    }
    if !csv {
        let r = gams_reductions(args.gamma.max(2), args.dc, args.dv, args.m, args.n);
        let _ = writeln!(out, "\nGA-MS-{} versus A-MS:", args.gamma.max(2));
        let _ = writeln!(
            out,
            "- comparisons + additions: {:.1}% fewer",
            100.0 * r.ops_vs_ams
        );
        let _ = writeln!(out, "- memory: {:.1}% less", 100.0 * r.memory_vs_ams);
        let _ = writeln!(out, "- LUT operations: {:.1}% fewer", 100.0 * r.luts_vs_ams);
        let _ = writeln!(out, "GA-MS-{} versus SP:", args.gamma.max(2));
        let _ = writeln!(out, "- LUT operations: {:.1}% fewer", 100.0 * r.luts_vs_sp);
    }
    out
}

pub fn cmd_memory(args: &MemoryArgs, data_dir: &Path) -> Result<String> {
    let scheme: QuantScheme = args.scheme.parse()?;
    let graph = load_graph(data_dir, bg_id(args.bg))?;
    let layout = memory_sizing(&scheme, &graph);
    let savings = compression_savings(&scheme, &graph);
    let mut out = String::new();
    if args.format == Format::Csv {
        out.push_str("memory,width_bits,depth,instances,bytes,kb\n");
        for b in &layout.blocks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.2}",
                b.name,
                b.width_bits,
                b.depth,
                b.instances,
                b.capacity_bytes(),
                b.capacity_kb()
            );
        }
        let _ = writeln!(
            out,
            "total,,,,{},{:.2}",
            layout.total_bytes(),
            layout.total_kb()
        );
    } else {
        let _ = writeln!(out, "scheme ({scheme}), {}", graph.id());
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>6} {:>5} {:>9}",
            "memory", "width", "depth", "inst", "KB"
        );
        for b in &layout.blocks {
            let _ = writeln!(
                out,
                "{:<8} {:>6} {:>6} {:>5} {:>9.2}",
                b.name,
                b.width_bits,
                b.depth,
                b.instances,
                b.capacity_kb()
            );
        }
        let _ = writeln!(out, "total: {:.2} KB", layout.total_kb());
        let _ = writeln!(
            out,
            "R-message compression saves {:.1}% of bits",
            100.0 * savings
        );
    }
    Ok(out)
}

pub fn cmd_lut_dump(args: &LutArgs) -> Result<String> {
    let scheme: QuantScheme = args.scheme.parse()?;
    Ok(BoxPlusLut::build(scheme, args.beta)?.dump())
}

pub fn cmd_schedule_gen(args: &ScheduleArgs, data_dir: &Path) -> Result<String> {
    let code = resolve_code(&args.code, data_dir, 1)?;
    let schedule = make_schedule(&code, args.schedule);
    let classes = classify_rows(&code.proto);
    let mut out = schedule.to_text(&code.proto);
    let _ = writeln!(
        out,
        "# punctured classes: P0={:?} P1={:?} P2={:?}",
        classes.p0, classes.p1, classes.p2
    );
    Ok(out)
}

fn cmd_rerun(args: &RerunArgs) -> Result<()> {
    let manifest = RunManifest::read(&args.manifest)?;
    let mut command = manifest.command;
    if let (Command::Fer(fer), Some(out)) = (&mut command, &args.out) {
        fer.out = Some(out.clone());
    }
    if matches!(command, Command::Rerun(_)) {
        bail!("manifest {} records another rerun", args.manifest.display());
    }
    execute(command, &manifest.data_dir)
}

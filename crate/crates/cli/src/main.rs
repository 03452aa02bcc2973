//! `revsynth`: LUT-based reversible logic synthesis from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use revsynth::classify::db::{lookup_and_instantiate, AnClassDb};
use revsynth::classify::{build_database, canonicalize_an, MAX_CLASS_VARS};
use revsynth::clifford::CliffordTNetwork;
use revsynth::esop::EsopHeuristic;
use revsynth::logic::blif::write_blif;
use revsynth::pipeline::{
    self, read_network, run_lut_mapping, run_pipeline, run_skeleton_with_stats, EsopExtract, InputFormat,
    MappingStrategy, OutputPaths, PipelineConfig, RunOptions,
};
use revsynth::synth::TopoStrategy;
use revsynth::tt::TruthTable;
use revsynth::Error;

/// Stdout writes that stay quiet when the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "revsynth", version, about = "LUT-based reversible logic synthesis to Clifford+T")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Map to a k-LUT network and write it as BLIF.
    Map {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        q: QubitArgs,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Map and synthesize single-target gates; reports the qubit count.
    Skeleton {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        q: QubitArgs,
        /// Gate network as JSON; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Print the line allocation trace to stderr.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        deterministic: bool,
    },
    /// Full flow: REAL, OpenQASM and statistics.
    Synth {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        q: QubitArgs,
        #[command(flatten)]
        t: TArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Output prefix for `.real` and `.qasm`; defaults to the input path
        /// without its extension.
        #[arg(short = 'o', long)]
        out_prefix: Option<PathBuf>,
        #[arg(long)]
        real: Option<PathBuf>,
        #[arg(long)]
        qasm: Option<PathBuf>,
        /// Statistics as JSON; stdout when omitted.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Check the result against the input; exit code 3 on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Run the full flow and check it; prints the verification report.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        q: QubitArgs,
        #[command(flatten)]
        t: TArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build or inspect the class database.
    ClassifyDb {
        #[command(subcommand)]
        cmd: DbCmd,
    },
}

#[derive(Subcommand)]
enum DbCmd {
    /// Build the baseline database and write it.
    Build {
        #[arg(long)]
        db: PathBuf,
        #[arg(long, default_value = "def_wo4")]
        esop_heuristic: EsopHeuristic,
    },
    /// List entries: variables, representative, T-count, provenance.
    Show {
        /// Database file; the baseline is built in memory when omitted.
        #[arg(long)]
        db: Option<PathBuf>,
        #[arg(long)]
        vars: Option<u32>,
    },
    /// Classify a function and print its circuit.
    Lookup {
        /// Truth table in hex, most significant row first.
        function: String,
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        db: Option<PathBuf>,
    },
    /// Replace the circuit of a class with a verified, cheaper one.
    Import {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        vars: u32,
        /// Class representative in hex.
        #[arg(long)]
        function: String,
        /// OpenQASM file: controls on qubits 0..n, target on qubit n.
        #[arg(long)]
        qasm: PathBuf,
    },
}

#[derive(Args)]
struct InputArgs {
    /// AIGER (aag) or BLIF file.
    input: PathBuf,
    /// Input format; detected from the content when omitted.
    #[arg(long)]
    format: Option<InputFormat>,
}

#[derive(Args)]
struct QubitArgs {
    /// LUT size k, 3..=32.
    #[arg(long, default_value_t = 16)]
    lut_size: usize,
    #[arg(long, default_value = "topo_def")]
    order: TopoStrategy,
    #[arg(long, default_value_t = 2)]
    area_iters: usize,
    #[arg(long, default_value_t = 1)]
    flow_iters: usize,
}

#[derive(Args)]
struct TArgs {
    #[arg(long, default_value = "hybrid")]
    mapping: MappingStrategy,
    #[arg(long, default_value = "aig")]
    esop_extract: EsopExtract,
    #[arg(long, default_value = "def_wo4")]
    esop_heuristic: EsopHeuristic,
    #[arg(long, default_value_t = 2)]
    hybrid_area_iters: usize,
    #[arg(long, default_value_t = 1)]
    hybrid_flow_iters: usize,
    /// SAT-based optimization of the 4-LUT networks (not available).
    #[arg(long)]
    satopt: bool,
    /// Class database; built and cached there when missing.
    #[arg(long)]
    db: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads for lowering.
    #[arg(long)]
    jobs: Option<usize>,
    /// Omit runtimes so the statistics are byte-for-byte reproducible.
    #[arg(long)]
    deterministic: bool,
}

fn config(q: &QubitArgs, t: Option<&TArgs>) -> PipelineConfig {
    let mut c = PipelineConfig {
        lut_size: q.lut_size,
        order: q.order,
        area_iters: q.area_iters,
        flow_iters: q.flow_iters,
        ..Default::default()
    };
    if let Some(t) = t {
        c.mapping = t.mapping;
        c.esop_extract = t.esop_extract;
        c.esop_heuristic = t.esop_heuristic;
        c.hybrid_area_iters = t.hybrid_area_iters;
        c.hybrid_flow_iters = t.hybrid_flow_iters;
        c.sat_opt = t.satopt;
        c.db_path = t.db.clone();
    }
    c
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out!("{text}"),
    }
    Ok(())
}

fn parse_table(vars: u32, hex: &str) -> Result<TruthTable, Error> {
    if vars == 0 || vars > MAX_CLASS_VARS {
        return Err(Error::Param(format!("--vars must be in 1..={MAX_CLASS_VARS}")));
    }
    let hex = hex.trim_start_matches("0x");
    TruthTable::from_hex(vars, hex).ok_or_else(|| Error::Param(format!("{hex:?} is not a {vars}-variable truth table")))
}

fn database(path: Option<&Path>) -> Result<AnClassDb, Error> {
    match path {
        Some(p) => AnClassDb::load(p),
        None => build_database(MAX_CLASS_VARS, EsopHeuristic::DefWo4),
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Map { input, q, output } => {
            let (net, _) = read_network(&input.input, input.format)?;
            let luts = run_lut_mapping(&net, &config(&q, None))?;
            let model = input.input.file_stem().and_then(|s| s.to_str()).unwrap_or("top");
            emit(output.as_deref(), &write_blif(&luts, model))
        }
        Cmd::Skeleton { input, q, output, stats, trace, deterministic } => {
            let (net, _) = read_network(&input.input, input.format)?;
            let opts = RunOptions { deterministic, ..Default::default() };
            let (s, report) = run_skeleton_with_stats(&net, &config(&q, None), &opts)?;
            if trace {
                for e in &s.synth.trace {
                    eprintln!("{e}");
                }
            }
            let doc = json!({
                "qubits": s.qubits(),
                "extra_line": s.extra_line,
                "network": revsynth::rev::json::to_json(s.network()),
            });
            let text = serde_json::to_string_pretty(&doc).expect("network serializes") + "\n";
            if let Some(p) = &stats {
                std::fs::write(p, report.to_json() + "\n")?;
            }
            match &output {
                Some(p) => {
                    std::fs::write(p, text)?;
                    outln!("qubits: {}", s.qubits());
                }
                None => out!("{text}"),
            }
            Ok(())
        }
        Cmd::Synth { input, q, t, run, out_prefix, real, qasm, stats, verify } => {
            let cfg = config(&q, Some(&t));
            let prefix = out_prefix.unwrap_or_else(|| input.input.with_extension(""));
            let out = OutputPaths {
                real: Some(real.unwrap_or_else(|| prefix.with_extension("real"))),
                qasm: Some(qasm.unwrap_or_else(|| prefix.with_extension("qasm"))),
                stats: stats.clone(),
            };
            let opts = RunOptions { jobs: run.jobs, verify, deterministic: run.deterministic };
            let o = pipeline::run_full(&input.input, &cfg, &opts, input.format, &out)?;
            if stats.is_none() {
                outln!("{}", o.stats.to_json());
            }
            Ok(())
        }
        Cmd::Verify { input, q, t, run } => {
            let (net, _) = read_network(&input.input, input.format)?;
            let opts = RunOptions { jobs: run.jobs, verify: true, deterministic: run.deterministic };
            match run_pipeline(&net, &config(&q, Some(&t)), &opts) {
                Ok(o) => {
                    outln!("{}", serde_json::to_string_pretty(&o.stats.verification).expect("report serializes"));
                    Ok(())
                }
                Err(Error::Verify(report)) => {
                    outln!("{report}");
                    Err(Error::Verify("result differs from the input".into()))
                }
                Err(e) => Err(e),
            }
        }
        Cmd::ClassifyDb { cmd } => run_db(cmd),
    }
}

fn run_db(cmd: DbCmd) -> Result<(), Error> {
    match cmd {
        DbCmd::Build { db, esop_heuristic } => {
            let d = build_database(MAX_CLASS_VARS, esop_heuristic)?;
            d.save(&db)?;
            outln!("{} classes written to {}", d.len(), db.display());
            Ok(())
        }
        DbCmd::Show { db, vars } => {
            let d = database(db.as_deref())?;
            for e in d.entries().filter(|e| vars.is_none_or(|n| e.canonical.num_vars() == n)) {
                outln!(
                    "{} {} t={} helpers={} {:?}",
                    e.canonical.num_vars(),
                    e.canonical.to_hex(),
                    e.t_count,
                    e.helpers(),
                    e.provenance
                );
            }
            Ok(())
        }
        DbCmd::Lookup { function, vars, db } => {
            let f = parse_table(vars, &function)?;
            let d = database(db.as_deref())?;
            let (rep, w) = canonicalize_an(&f)?;
            let n = vars as usize;
            let c = lookup_and_instantiate(&d, &(0..n).collect::<Vec<_>>(), &f, n, &[n + 1], n + 2)?;
            let doc = json!({
                "function": f.to_hex(),
                "representative": rep.to_hex(),
                "transform": w,
                "t_count": c.t_count(),
                "qasm": c.to_qasm(),
            });
            outln!("{}", serde_json::to_string_pretty(&doc).expect("lookup serializes"));
            Ok(())
        }
        DbCmd::Import { db, vars, function, qasm } => {
            let f = parse_table(vars, &function)?;
            let (rep, _) = canonicalize_an(&f)?;
            if rep != f {
                return Err(Error::Param(format!("{} is not a class representative; its class is {}", f.to_hex(), rep.to_hex())));
            }
            let mut d = AnClassDb::load_or_build(&db, EsopHeuristic::DefWo4)?;
            let c = CliffordTNetwork::from_qasm(&std::fs::read_to_string(&qasm)?, None)?;
            let t = c.t_count();
            d.import(&f, c)?;
            d.save(&db)?;
            outln!("class {}: imported circuit with {t} T gates", f.to_hex());
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Verify(_) => 3,
        Error::Unsupported(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

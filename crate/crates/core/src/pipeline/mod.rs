//! End-to-end flow: k-LUT mapping, single-target gate synthesis, and
//! lowering of every gate to Clifford+T, with statistics and optional
//! verification.

mod reference_data;
pub mod reference;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::db::AnClassDb;
use crate::classify::lutmap::{lower_stg_mapping, map_stg_hybrid, HybridRoute};
use crate::classify::{build_database, MAX_CLASS_VARS};
use crate::clifford::{lower_mct, map_stg_direct, mct_cascade, AncillaContext, CliffordTNetwork, GateCounts};
use crate::error::{Error, ParseError, Result};
use crate::esop::{minimize, EsopHeuristic};
use crate::logic::aiger::parse_aiger;
use crate::logic::blif::parse_blif;
use crate::logic::LogicNetwork;
use crate::mapper::{map_to_k_lut, MappingParams, DEFAULT_CUT_LIMIT};
use crate::rev::{LineInput, LineOutput, RevGate, RevNetwork, RevStats};
use crate::synth::{synthesize_mapping, SynthResult, TopoStrategy};
use crate::verify::{check_equivalence, simulate_unitary, CheckMode, EquivalenceReport, Unitary, TOLERANCE, UNITARY_MAX_QUBITS};

pub use reference::ReferenceRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Aiger,
    Blif,
}

impl std::str::FromStr for InputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "aiger" | "aag" => Ok(InputFormat::Aiger),
            "blif" => Ok(InputFormat::Blif),
            _ => Err(format!("unknown format {s:?} (aiger, blif)")),
        }
    }
}

/// Format from the first meaningful token: `aag` for AIGER, a dot command for
/// BLIF.
pub fn detect_format(text: &str) -> Option<InputFormat> {
    let tok = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?
        .split_whitespace()
        .next()?;
    match tok {
        "aag" => Some(InputFormat::Aiger),
        t if t.starts_with('.') => Some(InputFormat::Blif),
        _ => None,
    }
}

pub fn parse_network(text: &str, format: Option<InputFormat>) -> Result<(LogicNetwork, InputFormat)> {
    let format = match format.or_else(|| detect_format(text)) {
        Some(f) => f,
        None if text.trim().is_empty() => return Err(ParseError::new(1, "empty input").into()),
        None => return Err(ParseError::new(1, "unrecognized input format (expected `aag` header or BLIF)").into()),
    };
    let net = match format {
        InputFormat::Aiger => parse_aiger(text)?,
        InputFormat::Blif => parse_blif(text)?,
    };
    Ok((net, format))
}

pub fn read_network(path: &Path, format: Option<InputFormat>) -> Result<(LogicNetwork, InputFormat)> {
    parse_network(&std::fs::read_to_string(path)?, format)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MappingStrategy {
    Direct,
    #[default]
    Hybrid,
}

impl std::str::FromStr for MappingStrategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(MappingStrategy::Direct),
            "hybrid" => Ok(MappingStrategy::Hybrid),
            _ => Err(format!("unknown mapping {s:?} (direct, hybrid)")),
        }
    }
}

impl fmt::Display for MappingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MappingStrategy::Direct => "direct",
            MappingStrategy::Hybrid => "hybrid",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EsopExtract {
    #[default]
    Aig,
    Bdd,
}

impl std::str::FromStr for EsopExtract {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "aig" => Ok(EsopExtract::Aig),
            "bdd" => Ok(EsopExtract::Bdd),
            _ => Err(format!("unknown ESOP extraction {s:?} (aig, bdd)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub lut_size: usize,
    pub order: TopoStrategy,
    pub area_iters: usize,
    pub flow_iters: usize,
    pub mapping: MappingStrategy,
    pub esop_extract: EsopExtract,
    pub esop_heuristic: EsopHeuristic,
    pub hybrid_area_iters: usize,
    pub hybrid_flow_iters: usize,
    /// SAT-based optimization of the 4-LUT covers; not available.
    pub sat_opt: bool,
    pub db_path: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            lut_size: 16,
            order: TopoStrategy::TopoDef,
            area_iters: 2,
            flow_iters: 1,
            mapping: MappingStrategy::Hybrid,
            esop_extract: EsopExtract::Aig,
            esop_heuristic: EsopHeuristic::DefWo4,
            hybrid_area_iters: 2,
            hybrid_flow_iters: 1,
            sat_opt: false,
            db_path: None,
        }
    }
}

impl PipelineConfig {
    pub fn mapping_params(&self) -> MappingParams {
        MappingParams {
            lut_size: self.lut_size,
            area_iters: self.area_iters,
            flow_iters: self.flow_iters,
            cut_limit: DEFAULT_CUT_LIMIT,
        }
    }

    pub fn hybrid_params(&self) -> MappingParams {
        MappingParams {
            lut_size: 4,
            area_iters: self.hybrid_area_iters,
            flow_iters: self.hybrid_flow_iters,
            cut_limit: DEFAULT_CUT_LIMIT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.esop_extract == EsopExtract::Bdd {
            return Err(Error::Unsupported("BDD-based ESOP extraction (only AIG extraction is implemented)".into()));
        }
        if self.sat_opt {
            return Err(Error::Unsupported("SAT-based optimization of 4-LUT networks".into()));
        }
        self.mapping_params().validate()?;
        self.hybrid_params().validate()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads for lowering; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    pub verify: bool,
    /// Leave runtimes out of the statistics.
    pub deterministic: bool,
}

/// Output of the first two stages.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub lut_network: LogicNetwork,
    pub synth: SynthResult,
    /// A constant line added because the network was exactly one line wider
    /// than its largest gate, leaving no helper line for lowering.
    pub extra_line: bool,
}

impl Skeleton {
    pub fn network(&self) -> &RevNetwork {
        &self.synth.network
    }

    pub fn qubits(&self) -> usize {
        self.synth.network.num_lines()
    }

    /// Free constant-0 lines at gate `i`.
    pub fn free_lines(&self, i: usize) -> Vec<usize> {
        let mut f = self.synth.zero_lines[i].clone();
        if self.extra_line {
            f.push(self.qubits() - 1);
        }
        f
    }
}

pub fn run_lut_mapping(net: &LogicNetwork, cfg: &PipelineConfig) -> Result<LogicNetwork> {
    cfg.validate()?;
    map_to_k_lut(net, &cfg.mapping_params())
}

/// Steps 1 and 2: LUT mapping and gate synthesis. Fixes the qubit count.
pub fn run_skeleton(net: &LogicNetwork, cfg: &PipelineConfig) -> Result<Skeleton> {
    let lut_network = run_lut_mapping(net, cfg)?;
    skeleton_from_luts(lut_network, cfg)
}

fn skeleton_from_luts(lut_network: LogicNetwork, cfg: &PipelineConfig) -> Result<Skeleton> {
    let mut synth = synthesize_mapping(&lut_network, cfg.order)?;
    let widest = synth.network.gates.iter().map(|g| g.control_lines().len()).max().unwrap_or(0);
    let extra_line = widest >= 3 && synth.network.num_lines() == widest + 1;
    if extra_line {
        synth.network.add_line(LineInput::Zero, LineOutput::Zero);
    }
    Ok(Skeleton { lut_network, synth, extra_line })
}

/// Read a file and run steps 1 and 2; returns the skeleton and its qubit
/// count.
pub fn run_synthesize_mapping(input: &Path, cfg: &PipelineConfig, format: Option<InputFormat>) -> Result<(Skeleton, usize)> {
    let (net, _) = read_network(input, format)?;
    let s = run_skeleton(&net, cfg)?;
    let q = s.qubits();
    Ok((s, q))
}

/// Baseline database of the given heuristic, built once per process.
fn baseline_database(h: EsopHeuristic) -> Result<Arc<AnClassDb>> {
    static CACHE: [OnceLock<Arc<AnClassDb>>; 3] = [const { OnceLock::new() }; 3];
    let slot = &CACHE[h as usize];
    if let Some(db) = slot.get() {
        return Ok(db.clone());
    }
    let db = Arc::new(build_database(MAX_CLASS_VARS, h)?);
    Ok(slot.get_or_init(|| db).clone())
}

pub fn load_database(cfg: &PipelineConfig) -> Result<Arc<AnClassDb>> {
    match &cfg.db_path {
        Some(p) => Ok(Arc::new(AnClassDb::load_or_build(p, cfg.esop_heuristic)?)),
        None => baseline_database(cfg.esop_heuristic),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteRecord {
    pub gate: usize,
    pub controls: usize,
    #[serde(flatten)]
    pub route: HybridRoute,
    pub t_count: usize,
}

fn lower_gate(
    g: &RevGate,
    free: &[usize],
    width: usize,
    cfg: &PipelineConfig,
    db: Option<&AnClassDb>,
) -> Result<(CliffordTNetwork, HybridRoute)> {
    let mut busy = g.control_lines();
    busy.push(g.target());
    let clean: Vec<usize> = free.iter().copied().filter(|l| !busy.contains(l)).collect();
    let ctx = AncillaContext {
        dirty: (0..width).filter(|l| !busy.contains(l) && !clean.contains(l)).collect(),
        clean: clean.clone(),
    };
    match (cfg.mapping, g, db) {
        (MappingStrategy::Hybrid, RevGate::SingleTarget { .. }, Some(db)) => {
            let m = map_stg_hybrid(g, &cfg.hybrid_params(), &clean, width)?;
            Ok((lower_stg_mapping(&m, db, cfg.esop_heuristic, &clean, width)?, m.route))
        }
        (_, RevGate::Mct { controls, target }, _) => Ok((lower_mct(controls, *target, &ctx, width)?.0, HybridRoute::Direct)),
        _ => Ok((map_stg_direct(g, cfg.esop_heuristic, &ctx, width)?.0, HybridRoute::Direct)),
    }
}

/// Step 3: lower every gate, in parallel, concatenating in gate order.
pub fn lower_skeleton(
    s: &Skeleton,
    cfg: &PipelineConfig,
    jobs: Option<usize>,
) -> Result<(CliffordTNetwork, Vec<CliffordTNetwork>, Vec<RouteRecord>)> {
    cfg.validate()?;
    let db = match cfg.mapping {
        MappingStrategy::Hybrid => Some(load_database(cfg)?),
        MappingStrategy::Direct => None,
    };
    let width = s.qubits();
    let gates = &s.network().gates;
    let work = || -> Result<Vec<(CliffordTNetwork, HybridRoute)>> {
        gates
            .par_iter()
            .enumerate()
            .map(|(i, g)| lower_gate(g, &s.free_lines(i), width, cfg, db.as_deref()))
            .collect()
    };
    let parts = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Param(format!("worker pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut out = CliffordTNetwork::new(width);
    let mut routes = Vec::with_capacity(parts.len());
    let mut pieces = Vec::with_capacity(parts.len());
    for (i, (c, route)) in parts.into_iter().enumerate() {
        out.append(&c);
        routes.push(RouteRecord { gate: i, controls: gates[i].control_lines().len(), route, t_count: c.t_count() });
        pieces.push(c);
    }
    Ok((out, pieces, routes))
}

/// The gate network with every single-target gate replaced by its MCT
/// cascade, as written to REAL files.
pub fn mct_network(net: &RevNetwork, heuristic: EsopHeuristic) -> Result<RevNetwork> {
    let mut out = RevNetwork { lines: net.lines.clone(), gates: Vec::new() };
    for g in &net.gates {
        match g {
            RevGate::Mct { .. } => out.gates.push(g.clone()),
            RevGate::SingleTarget { controls, function, target } => {
                let cover = minimize(&crate::clifford::direct::control_esop(function)?, heuristic);
                out.gates.extend(mct_cascade(&cover, controls, *target));
            }
        }
    }
    Ok(out)
}

/// Compare the lowering of one gate with the gate's permutation on the
/// qubits it touches. `None` when that footprint is too wide to simulate.
pub fn check_lowered_gate(g: &RevGate, c: &CliffordTNetwork) -> Option<bool> {
    let mut used: Vec<usize> = g.control_lines();
    used.push(g.target());
    for gate in &c.gates {
        let (a, b) = gate.qubits();
        used.push(a);
        used.extend(b);
    }
    used.sort_unstable();
    used.dedup();
    if used.len() > UNITARY_MAX_QUBITS {
        return None;
    }
    let pos = |l: usize| used.binary_search(&l).unwrap();
    let mut local = CliffordTNetwork::new(used.len());
    for gate in &c.gates {
        local.push(gate.map(pos));
    }
    let u = simulate_unitary(&local).ok()?;
    let controls = g.control_lines();
    let t = pos(g.target());
    let expect = Unitary::permutation(used.len(), |i| {
        let words: Vec<u64> = controls.iter().map(|&l| if i >> pos(l) & 1 == 1 { !0 } else { 0 }).collect();
        let fire = match g {
            RevGate::SingleTarget { function, .. } => function.eval_words(&words) & 1 == 1,
            RevGate::Mct { controls, .. } => controls.iter().all(|&(l, p)| (i >> pos(l) & 1 == 1) == p),
        };
        if fire {
            i ^ 1 << t
        } else {
            i
        }
    });
    Some(u.equals_up_to_phase(&expect, TOLERANCE))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub equivalence: EquivalenceReport,
    /// Gates whose Clifford+T lowering was checked as a unitary.
    pub lowered_gates_checked: usize,
    /// Gates touching too many qubits for unitary simulation.
    pub lowered_gates_skipped: usize,
    pub lowered_gates_failed: Vec<usize>,
    pub passed: bool,
}

pub fn verify_result(
    spec: &LogicNetwork,
    s: &Skeleton,
    pieces: &[CliffordTNetwork],
) -> Result<VerificationSummary> {
    let equivalence = check_equivalence(spec, s.network(), CheckMode::auto(spec.inputs().len()))?;
    let checks: Vec<Option<bool>> =
        s.network().gates.par_iter().zip(pieces.par_iter()).map(|(g, c)| check_lowered_gate(g, c)).collect();
    let lowered_gates_failed: Vec<usize> =
        checks.iter().enumerate().filter(|(_, c)| **c == Some(false)).map(|(i, _)| i).collect();
    let passed = equivalence.equivalent
        && equivalence.garbage_free
        && equivalence.inputs_preserved
        && lowered_gates_failed.is_empty();
    Ok(VerificationSummary {
        lowered_gates_checked: checks.iter().filter(|c| c.is_some()).count(),
        lowered_gates_skipped: checks.iter().filter(|c| c.is_none()).count(),
        lowered_gates_failed,
        equivalence,
        passed,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LogicStats {
    pub inputs: usize,
    pub outputs: usize,
    pub gates: usize,
    /// Gates keyed by fanin count.
    pub gates_by_fanin: BTreeMap<usize, usize>,
}

impl LogicStats {
    pub fn of(net: &LogicNetwork) -> Self {
        let mut gates_by_fanin = BTreeMap::new();
        for v in net.gates_topo() {
            *gates_by_fanin.entry(net.fanin(v).len()).or_insert(0) += 1;
        }
        LogicStats { inputs: net.inputs().len(), outputs: net.outputs().len(), gates: net.num_gates(), gates_by_fanin }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CliffordTStats {
    pub qubits: usize,
    pub gates: usize,
    pub t_count: usize,
    pub counts: GateCounts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub qubits: usize,
    pub t_count: usize,
    pub ancillae: usize,
    pub extra_line: bool,
    pub input_network: LogicStats,
    pub lut_network: LogicStats,
    pub reversible: RevStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clifford_t: Option<CliffordTStats>,
    pub routes: Vec<RouteRecord>,
    /// Gates per route kind.
    pub route_summary: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<BTreeMap<String, f64>>,
    pub config: PipelineConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reference: Vec<ReferenceRow>,
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}

fn route_key(r: &HybridRoute) -> String {
    match r {
        HybridRoute::Direct => "direct".into(),
        HybridRoute::LutBased => "lut_based".into(),
        HybridRoute::Hybrid { merges } => format!("hybrid_{merges}"),
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub skeleton: Skeleton,
    pub circuit: CliffordTNetwork,
    pub stats: StatsReport,
}

struct Timer {
    on: bool,
    t: Instant,
    ms: BTreeMap<String, f64>,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer { on, t: Instant::now(), ms: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.ms.insert(stage.into(), (now - self.t).as_secs_f64() * 1e3);
        self.t = now;
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.on.then_some(self.ms)
    }
}

fn skeleton_stats(net: &LogicNetwork, s: &Skeleton, cfg: &PipelineConfig) -> StatsReport {
    StatsReport {
        qubits: s.qubits(),
        t_count: 0,
        ancillae: s.qubits() - s.synth.num_inputs,
        extra_line: s.extra_line,
        input_network: LogicStats::of(net),
        lut_network: LogicStats::of(&s.lut_network),
        reversible: s.network().statistics(),
        clifford_t: None,
        routes: vec![],
        route_summary: BTreeMap::new(),
        runtime_ms: None,
        config: cfg.clone(),
        verification: None,
        reference: vec![],
    }
}

/// Steps 1 and 2 on a parsed network, with statistics.
pub fn run_skeleton_with_stats(net: &LogicNetwork, cfg: &PipelineConfig, opts: &RunOptions) -> Result<(Skeleton, StatsReport)> {
    let mut timer = Timer::new(!opts.deterministic);
    let luts = run_lut_mapping(net, cfg)?;
    timer.lap("lut_mapping");
    let s = skeleton_from_luts(luts, cfg)?;
    timer.lap("synthesis");
    let mut stats = skeleton_stats(net, &s, cfg);
    stats.runtime_ms = timer.finish();
    Ok((s, stats))
}

/// All three steps on a parsed network. Verification failure is returned
/// as `Error::Verify`.
pub fn run_pipeline(net: &LogicNetwork, cfg: &PipelineConfig, opts: &RunOptions) -> Result<PipelineOutput> {
    let mut timer = Timer::new(!opts.deterministic);
    let luts = run_lut_mapping(net, cfg)?;
    timer.lap("lut_mapping");
    let skeleton = skeleton_from_luts(luts, cfg)?;
    timer.lap("synthesis");
    let (circuit, pieces, routes) = lower_skeleton(&skeleton, cfg, opts.jobs)?;
    timer.lap("clifford_t");
    let mut stats = skeleton_stats(net, &skeleton, cfg);
    stats.t_count = circuit.t_count();
    stats.clifford_t =
        Some(CliffordTStats { qubits: circuit.qubits, gates: circuit.len(), t_count: circuit.t_count(), counts: circuit.counts() });
    for r in &routes {
        *stats.route_summary.entry(route_key(&r.route)).or_insert(0) += 1;
    }
    stats.routes = routes;
    if opts.verify {
        let v = verify_result(net, &skeleton, &pieces)?;
        timer.lap("verification");
        let passed = v.passed;
        stats.verification = Some(v);
        if !passed {
            let report = serde_json::to_string(&stats.verification).expect("report serializes");
            return Err(Error::Verify(report));
        }
    }
    stats.runtime_ms = timer.finish();
    Ok(PipelineOutput { skeleton, circuit, stats })
}

/// Destination files of a full run; stats go to stdout when `stats` is unset.
#[derive(Clone, Debug, Default)]
pub struct OutputPaths {
    pub real: Option<PathBuf>,
    pub qasm: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

/// Write all files or none: on any failure the ones already written are
/// removed.
fn write_all(files: &[(&Path, String)]) -> Result<()> {
    let mut done: Vec<&Path> = Vec::new();
    for (p, text) in files {
        if let Err(e) = std::fs::write(p, text) {
            for d in &done {
                let _ = std::fs::remove_file(d);
            }
            let _ = std::fs::remove_file(p);
            return Err(e.into());
        }
        done.push(p);
    }
    Ok(())
}

/// Read, synthesize, lower, optionally verify, and write the REAL, QASM and
/// stats outputs. Files are written only after every step succeeded, and a
/// failed write removes the ones written before it.
pub fn run_full(
    input: &Path,
    cfg: &PipelineConfig,
    opts: &RunOptions,
    format: Option<InputFormat>,
    out: &OutputPaths,
) -> Result<PipelineOutput> {
    let (net, fmt) = read_network(input, format)?;
    let mut o = run_pipeline(&net, cfg, opts)?;
    if let Some(stem) = input.file_stem().and_then(|s| s.to_str()) {
        o.stats.reference = reference::lookup(stem, fmt, cfg.lut_size, cfg.mapping, cfg.esop_heuristic);
    }
    let mut files: Vec<(&Path, String)> = Vec::new();
    if let Some(p) = &out.real {
        files.push((p, crate::rev::real::write_real(&mct_network(o.skeleton.network(), cfg.esop_heuristic)?)?));
    }
    if let Some(p) = &out.qasm {
        files.push((p, o.circuit.to_qasm()));
    }
    if let Some(p) = &out.stats {
        files.push((p, o.stats.to_json() + "\n"));
    }
    write_all(&files)?;
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::AigBuilder;

    fn full_adder() -> LogicNetwork {
        let mut b = AigBuilder::new();
        let (a, x, c) = (b.input("a"), b.input("b"), b.input("cin"));
        let t = b.xor(a, x);
        let s = b.xor(t, c);
        let g = b.and(a, x);
        let p = b.and(t, c);
        let co = b.or(g, p);
        b.output(s, "s");
        b.output(co, "cout");
        b.finish()
    }

    #[test]
    fn detects_formats() {
        assert_eq!(detect_format("aag 0 0 0 0 0\n"), Some(InputFormat::Aiger));
        assert_eq!(detect_format("# c\n.model m\n"), Some(InputFormat::Blif));
        assert_eq!(detect_format("module m;"), None);
    }

    #[test]
    fn unsupported_features_are_refused() {
        let cfg = PipelineConfig { esop_extract: EsopExtract::Bdd, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Unsupported(_))));
        let cfg = PipelineConfig { sat_opt: true, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Unsupported(_))));
        let cfg = PipelineConfig { lut_size: 2, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Param(_))));
    }

    #[test]
    fn full_adder_k3() {
        let cfg = PipelineConfig { lut_size: 3, mapping: MappingStrategy::Direct, ..Default::default() };
        let opts = RunOptions { verify: true, deterministic: true, jobs: Some(2) };
        let o = run_pipeline(&full_adder(), &cfg, &opts).unwrap();
        assert_eq!(o.stats.qubits, 5);
        assert!(o.stats.t_count > 0);
        let v = o.stats.verification.as_ref().unwrap();
        assert!(v.passed && v.equivalence.patterns_tested == 8);
        assert_eq!(o.circuit.qubits, run_skeleton(&full_adder(), &cfg).unwrap().qubits());
        assert!(o.stats.runtime_ms.is_none());
    }

    #[test]
    fn stats_are_byte_deterministic() {
        let cfg = PipelineConfig { lut_size: 3, ..Default::default() };
        let opts = RunOptions { verify: true, deterministic: true, jobs: None };
        let a = run_pipeline(&full_adder(), &cfg, &opts).unwrap().stats.to_json();
        let b = run_pipeline(&full_adder(), &cfg, &RunOptions { jobs: Some(1), ..opts }).unwrap().stats.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_network() {
        let net = parse_aiger("aag 0 0 0 0 0\n").unwrap();
        let o = run_pipeline(&net, &PipelineConfig::default(), &RunOptions { verify: true, ..Default::default() }).unwrap();
        assert_eq!((o.stats.qubits, o.stats.t_count, o.circuit.len()), (0, 0, 0));
    }
}

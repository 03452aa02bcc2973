//! Single-target gates with more than four controls, mapped through a
//! 4-LUT cover of their control function (LUT-based), or by absorbing LUTs
//! into the root until the remaining ones fit on the free lines (hybrid).

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::db::{lookup_and_instantiate, AnClassDb};
use crate::clifford::{lower_mct, map_stg_direct, AncillaContext, CliffordTNetwork};
use crate::error::Result;
use crate::esop::EsopHeuristic;
use crate::logic::blif::flip_var;
use crate::logic::{AigBuilder, ConeFunction, LogicNetwork, Signal, VertexId};
use crate::mapper::{map_to_k_lut, MappingParams};
use crate::rev::{ControlFunction, RevGate};
use crate::tt::TruthTable;

/// Largest root support kept as a dense table.
const ROOT_TABLE_VARS: usize = 16;

/// How a single-target gate was lowered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "route")]
pub enum HybridRoute {
    Direct,
    LutBased,
    Hybrid { merges: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LutBasedOutcome {
    /// Compute, root, uncompute: `2m - 1` gates of at most 4 controls.
    Gates(Vec<RevGate>),
    Insufficient { luts: usize, zero_lines: usize },
}

/// Replacement for one single-target gate. Gate `direct` (if any) is lowered
/// by ESOP mapping; all others have at most four controls and go through the
/// class database.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StgMapping {
    pub gates: Vec<RevGate>,
    pub direct: Option<usize>,
    pub route: HybridRoute,
    /// Free lines consumed, taken from the front of the supplied list.
    pub zero_lines_used: usize,
}

/// 4-LUT cover of a control function; input `i` is control variable `i`.
pub fn lut_cover(function: &ControlFunction, params: &MappingParams) -> Result<LogicNetwork> {
    let mut b = AigBuilder::new();
    let leaves: Vec<Signal> = (0..function.arity()).map(|i| b.input(&format!("x{i}"))).collect();
    let root = match function {
        ControlFunction::Table(t) => b.from_table(t, &leaves),
        ControlFunction::Cone(c) => b.from_cone(c, &leaves),
        ControlFunction::Esop(c) => {
            let mut acc = b.constant(false);
            for cube in &c.cubes {
                let mut p = b.constant(true);
                for v in 0..c.num_vars {
                    if cube.mask >> v & 1 == 1 {
                        let l = leaves[v as usize];
                        p = b.and(p, if cube.polarity >> v & 1 == 1 { l } else { !l });
                    }
                }
                acc = b.xor(acc, p);
            }
            acc
        }
    };
    b.output(root, "f");
    map_to_k_lut(&b.finish(), &MappingParams { lut_size: 4, ..*params })
}

fn const_value(net: &LogicNetwork, v: VertexId) -> Option<bool> {
    (net.is_gate(v) && net.fanin(v).is_empty()).then(|| net.function(v).and_then(|f| f.to_table()).unwrap().get(0))
}

fn is_lut(net: &LogicNetwork, v: VertexId) -> bool {
    net.is_gate(v) && !net.fanin(v).is_empty()
}

/// LUT `v` as a gate onto `target`, fanin negations and constants folded in.
fn lut_gate(net: &LogicNetwork, v: VertexId, lines: &HashMap<VertexId, usize>, target: usize) -> RevGate {
    let mut t = net.function(v).and_then(|f| f.to_table()).expect("4-LUT has a table");
    let mut keep = Vec::new();
    let mut controls = Vec::new();
    for (j, s) in net.fanin(v).iter().enumerate() {
        let j = j as u32;
        if let Some(c) = const_value(net, s.node) {
            t = t.cofactor(j, c ^ s.neg);
        } else {
            if s.neg {
                t = flip_var(&t, j);
            }
            keep.push(j);
            controls.push(lines[&s.node]);
        }
    }
    RevGate::stg(controls, ControlFunction::Table(t.shrink(&keep)), target)
}

/// Gates for a root driven by an input or a constant.
fn trivial_root(net: &LogicNetwork, out: Signal, lines: &HashMap<VertexId, usize>, target: usize) -> Option<Vec<RevGate>> {
    if let Some(c) = const_value(net, out.node) {
        return Some(if c ^ out.neg { vec![RevGate::not(target)] } else { vec![] });
    }
    if !net.is_gate(out.node) {
        return Some(vec![RevGate::mct(vec![(lines[&out.node], !out.neg)], target)]);
    }
    None
}

fn input_lines(cover: &LogicNetwork, controls: &[usize]) -> HashMap<VertexId, usize> {
    cover.inputs().iter().copied().zip(controls.iter().copied()).collect()
}

fn live_luts(cover: &LogicNetwork, roots: impl IntoIterator<Item = VertexId>) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for r in roots {
        if is_lut(cover, r) {
            out.extend(cover.cone_gates(r).expect("vertex exists").into_iter().filter(|&v| is_lut(cover, v)));
        }
    }
    out
}

fn in_topo(cover: &LogicNetwork, set: &BTreeSet<VertexId>) -> Vec<VertexId> {
    cover.topo_order().iter().copied().filter(|v| set.contains(v)).collect()
}

/// LUT-based mapping with an explicit cover whose inputs correspond to
/// `controls`. Inner LUTs go onto `zero_lines`, the root onto `target`.
pub fn map_cover_lut_based(
    cover: &LogicNetwork,
    controls: &[usize],
    target: usize,
    zero_lines: &[usize],
) -> LutBasedOutcome {
    let out = cover.output_signal(cover.outputs()[0]).expect("cover has an output");
    let mut lines = input_lines(cover, controls);
    if let Some(g) = trivial_root(cover, out, &lines, target) {
        return LutBasedOutcome::Gates(g);
    }
    let luts = in_topo(cover, &live_luts(cover, [out.node]));
    if luts.len() > zero_lines.len() + 1 {
        return LutBasedOutcome::Insufficient { luts: luts.len(), zero_lines: zero_lines.len() };
    }
    let inner = &luts[..luts.len() - 1];
    let mut compute = Vec::new();
    for (i, &v) in inner.iter().enumerate() {
        compute.push(lut_gate(cover, v, &lines, zero_lines[i]));
        lines.insert(v, zero_lines[i]);
    }
    let mut root = lut_gate(cover, out.node, &lines, target);
    if out.neg {
        let RevGate::SingleTarget { function, .. } = &mut root else { unreachable!() };
        *function = function.complement();
    }
    let mut gates = compute.clone();
    gates.push(root);
    gates.extend(compute.into_iter().rev());
    LutBasedOutcome::Gates(gates)
}

fn small_gate(gate: &RevGate) -> Option<RevGate> {
    match gate {
        RevGate::SingleTarget { controls, function, target } if controls.len() <= 4 => Some(RevGate::stg(
            controls.clone(),
            ControlFunction::Table(function.to_table().expect("small function")),
            *target,
        )),
        RevGate::Mct { .. } => Some(gate.clone()),
        _ => None,
    }
}

/// LUT-based mapping of a single-target gate.
pub fn map_stg_lut_based(gate: &RevGate, params: &MappingParams, zero_lines: &[usize]) -> Result<LutBasedOutcome> {
    if let Some(g) = small_gate(gate) {
        return Ok(LutBasedOutcome::Gates(vec![g]));
    }
    let RevGate::SingleTarget { controls, function, target } = gate else { unreachable!() };
    let cover = lut_cover(function, params)?;
    Ok(map_cover_lut_based(&cover, controls, *target, zero_lines))
}

/// Hybrid mapping: LUT-based when the free lines suffice, otherwise LUTs are
/// merged into the root one at a time, each time picking the child that
/// leaves the smallest boundary (ties to the smaller vertex id), until the
/// LUTs still needed to feed the root fit on the free lines and the root
/// leaves at least one of the `width` lines untouched as a helper.
pub fn map_stg_hybrid(gate: &RevGate, params: &MappingParams, zero_lines: &[usize], width: usize) -> Result<StgMapping> {
    if let Some(g) = small_gate(gate) {
        return Ok(StgMapping { gates: vec![g], direct: None, route: HybridRoute::LutBased, zero_lines_used: 0 });
    }
    let RevGate::SingleTarget { function, .. } = gate else { unreachable!() };
    let cover = lut_cover(function, params)?;
    Ok(map_cover_hybrid(&cover, gate, zero_lines, width))
}

/// Hybrid mapping with an explicit cover of `gate`'s control function.
pub fn map_cover_hybrid(cover: &LogicNetwork, gate: &RevGate, zero_lines: &[usize], width: usize) -> StgMapping {
    let RevGate::SingleTarget { controls, target, .. } = gate else {
        return StgMapping { gates: vec![gate.clone()], direct: None, route: HybridRoute::LutBased, zero_lines_used: 0 };
    };
    if let LutBasedOutcome::Gates(gates) = map_cover_lut_based(cover, controls, *target, zero_lines) {
        let used = gates.len().saturating_sub(1) / 2;
        return StgMapping { gates, direct: None, route: HybridRoute::LutBased, zero_lines_used: used };
    }
    let out = cover.output_signal(cover.outputs()[0]).expect("cover has an output");
    let boundary = |merged: &BTreeSet<VertexId>| -> BTreeSet<VertexId> {
        merged
            .iter()
            .flat_map(|&v| cover.fanin(v).iter().map(|s| s.node))
            .filter(|n| !merged.contains(n) && const_value(cover, *n).is_none())
            .collect()
    };
    let mut merged: BTreeSet<VertexId> = [out.node].into();
    let mut merges = 0;
    let (leaves, needed) = loop {
        let b = boundary(&merged);
        let needed = live_luts(cover, b.iter().copied());
        if needed.is_empty() || (needed.len() <= zero_lines.len() && b.len() + 2 <= width) {
            break (b, needed);
        }
        let best = b
            .iter()
            .copied()
            .filter(|&v| is_lut(cover, v))
            .min_by_key(|&c| {
                let mut m = merged.clone();
                m.insert(c);
                (boundary(&m).len(), c)
            })
            .expect("a LUT remains on the boundary");
        merged.insert(best);
        merges += 1;
    };
    if needed.is_empty() {
        return StgMapping { gates: vec![gate.clone()], direct: Some(0), route: HybridRoute::Direct, zero_lines_used: 0 };
    }
    let mut lines = input_lines(cover, controls);
    let mut compute = Vec::new();
    for (i, v) in in_topo(cover, &needed).into_iter().enumerate() {
        compute.push(lut_gate(cover, v, &lines, zero_lines[i]));
        lines.insert(v, zero_lines[i]);
    }
    let leaves: Vec<VertexId> = leaves.into_iter().collect();
    let cone = ConeFunction::extract(cover, out, &leaves);
    let function = if leaves.len() <= ROOT_TABLE_VARS {
        ControlFunction::Table(cone.to_table())
    } else {
        ControlFunction::Cone(as_aig_cone(&cone))
    };
    let root = RevGate::stg(leaves.iter().map(|v| lines[v]).collect(), function, *target);
    let mut gates = compute.clone();
    let direct = gates.len();
    gates.push(root);
    gates.extend(compute.into_iter().rev());
    StgMapping { gates, direct: Some(direct), route: HybridRoute::Hybrid { merges }, zero_lines_used: needed.len() }
}

/// The same function as a cone of 2-input AND nodes.
fn as_aig_cone(cone: &ConeFunction) -> ConeFunction {
    let mut b = AigBuilder::new();
    let ins: Vec<Signal> = (0..cone.arity()).map(|i| b.input(&format!("x{i}"))).collect();
    let s = b.from_cone(cone, &ins);
    let net = b.finish();
    ConeFunction::extract(&net, s, net.inputs())
}

/// Clifford+T circuit for a mapping. Lines outside each gate serve as
/// borrowed helpers; the unused free lines are offered as clean ones.
pub fn lower_stg_mapping(
    m: &StgMapping,
    db: &AnClassDb,
    heuristic: EsopHeuristic,
    zero_lines: &[usize],
    width: usize,
) -> Result<CliffordTNetwork> {
    let spare: Vec<usize> = zero_lines[m.zero_lines_used.min(zero_lines.len())..].to_vec();
    let mut out = CliffordTNetwork::new(width);
    for (i, g) in m.gates.iter().enumerate() {
        let mut busy = g.control_lines();
        busy.push(g.target());
        let outside: Vec<usize> = (0..width).filter(|l| !busy.contains(l)).collect();
        let ctx = AncillaContext {
            clean: spare.iter().copied().filter(|l| !busy.contains(l)).collect(),
            dirty: outside.iter().copied().filter(|l| !spare.contains(l)).collect(),
        };
        let c = match g {
            _ if m.direct == Some(i) => map_stg_direct(g, heuristic, &ctx, width)?.0,
            RevGate::Mct { controls, target } => lower_mct(controls, *target, &ctx, width)?.0,
            RevGate::SingleTarget { controls, function, target } => {
                let f = function.to_table().expect("small function");
                lookup_and_instantiate(db, controls, &f, *target, &outside, width)?
            }
        };
        out.append(&c);
    }
    Ok(out)
}

/// Truth table of the control function; for tests on small gates.
pub fn gate_table(g: &RevGate) -> Option<TruthTable> {
    match g {
        RevGate::SingleTarget { function, .. } => function.to_table(),
        RevGate::Mct { controls, .. } => {
            let pol = controls.iter().enumerate().fold(0u64, |a, (i, c)| a | (c.1 as u64) << i);
            Some(TruthTable::from_fn(controls.len() as u32, |x| x == pol))
        }
    }
}

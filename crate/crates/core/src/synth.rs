//! LUT network to single-target gate network, with ancilla recycling.
//!
//! Each LUT is computed onto a constant-0 line taken from a free stack (or a
//! new line). When a LUT driving an output is computed and nothing else reads
//! it, its children are uncomputed recursively as their reference counts drop
//! to zero, and the freed lines are pushed back onto the stack.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{GateFunction, LogicNetwork, Signal, VertexId, VertexKind};
use crate::rev::{ControlFunction, LineInput, LineOutput, RevGate, RevNetwork};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopoStrategy {
    /// Order of the network as stored.
    #[default]
    TopoDef,
    /// Output cones by decreasing size, each traversed depth-first.
    TopoTfiSort,
}

impl std::str::FromStr for TopoStrategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "topo_def" => Ok(TopoStrategy::TopoDef),
            "topo_tfi_sort" => Ok(TopoStrategy::TopoTfiSort),
            _ => Err(format!("unknown order {s:?} (topo_def, topo_tfi_sort)")),
        }
    }
}

impl fmt::Display for TopoStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopoStrategy::TopoDef => "topo_def",
            TopoStrategy::TopoTfiSort => "topo_tfi_sort",
        })
    }
}

/// Gates that lie in the cone of some output.
fn live_gates(net: &LogicNetwork) -> Vec<bool> {
    let mut live = vec![false; net.len()];
    let mut stack: Vec<VertexId> = net.outputs().to_vec();
    while let Some(v) = stack.pop() {
        for s in net.fanin(v) {
            if net.is_gate(s.node) && !live[s.node] {
                live[s.node] = true;
                stack.push(s.node);
            }
        }
    }
    live
}

/// Gates of the output cones in the requested order. Gates outside every
/// output cone are left out.
pub fn topo_order(net: &LogicNetwork, strategy: TopoStrategy) -> Vec<VertexId> {
    let live = live_gates(net);
    match strategy {
        TopoStrategy::TopoDef => net.gates_topo().filter(|&g| live[g]).collect(),
        TopoStrategy::TopoTfiSort => {
            let mut outs: Vec<(usize, usize)> = net
                .outputs()
                .iter()
                .enumerate()
                .map(|(i, &y)| (net.cone_gates(y).map_or(0, |c| c.len()), i))
                .collect();
            outs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let mut seen = vec![false; net.len()];
            let mut order = Vec::new();
            for (_, i) in outs {
                let d = net.fanin(net.outputs()[i])[0].node;
                if !net.is_gate(d) || seen[d] {
                    continue;
                }
                let mut stack = vec![(d, false)];
                while let Some((v, expanded)) = stack.pop() {
                    if expanded {
                        order.push(v);
                        continue;
                    }
                    if seen[v] {
                        continue;
                    }
                    seen[v] = true;
                    stack.push((v, true));
                    for s in net.fanin(v).iter().rev() {
                        if net.is_gate(s.node) && !seen[s.node] {
                            stack.push((s.node, false));
                        }
                    }
                }
            }
            order
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AncillaBounds {
    /// Largest number of gates in the cone of one output.
    pub lower: usize,
    /// Number of gates.
    pub upper: usize,
    /// Largest transitive fan-in of one output, counting inputs and the
    /// output vertex itself.
    pub lower_literal: usize,
}

pub fn ancilla_bounds(net: &LogicNetwork) -> AncillaBounds {
    let mut b = AncillaBounds { lower: 0, upper: net.num_gates(), lower_literal: 0 };
    for &y in net.outputs() {
        let tfi = net.tfi(y).expect("output exists");
        b.lower_literal = b.lower_literal.max(tfi.len());
        b.lower = b.lower.max(tfi.iter().filter(|&&v| net.is_gate(v)).count());
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    NewLine { line: usize },
    Pop { line: usize },
    Push { line: usize },
    Compute { gate: VertexId, line: usize },
    Uncompute { gate: VertexId, line: usize },
    Copy { output: String, from: usize, to: usize },
    Invert { line: usize },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::NewLine { line } => write!(f, "new {line}"),
            TraceEvent::Pop { line } => write!(f, "pop {line}"),
            TraceEvent::Push { line } => write!(f, "push {line}"),
            TraceEvent::Compute { gate, line } => write!(f, "compute {gate} -> {line}"),
            TraceEvent::Uncompute { gate, line } => write!(f, "uncompute {gate} -> {line}"),
            TraceEvent::Copy { output, from, to } => write!(f, "copy {output} {from} -> {to}"),
            TraceEvent::Invert { line } => write!(f, "invert {line}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthResult {
    pub network: RevNetwork,
    pub num_inputs: usize,
    /// Lines added to copy an output whose driver line is already claimed or
    /// is a primary input.
    pub copy_lines: usize,
    /// Free constant-0 lines at the position of each gate.
    pub zero_lines: Vec<Vec<usize>>,
    /// LUT each gate was derived from; `None` for copies and inversions.
    pub source: Vec<Option<VertexId>>,
    pub trace: Vec<TraceEvent>,
}

impl SynthResult {
    pub fn ancillae(&self) -> usize {
        self.network.num_lines() - self.num_inputs
    }
}

/// Gate function with fanin complementation folded in.
fn control_function(f: &GateFunction, fanin: &[Signal]) -> ControlFunction {
    match f {
        GateFunction::Table(t) => {
            let mut t = t.clone();
            for (i, s) in fanin.iter().enumerate() {
                if s.neg {
                    t = crate::logic::blif::flip_var(&t, i as u32);
                }
            }
            ControlFunction::Table(t)
        }
        GateFunction::Cone(c) => {
            let mut c = c.clone();
            for (i, s) in fanin.iter().enumerate() {
                if s.neg {
                    for n in &mut c.nodes {
                        for e in &mut n.fanin {
                            if e.0 == i {
                                e.1 = !e.1;
                            }
                        }
                    }
                    if c.root.0 == i {
                        c.root.1 = !c.root.1;
                    }
                }
            }
            ControlFunction::Cone(c)
        }
    }
}

enum Constness {
    Zero,
    One,
    No,
}

fn constness(f: &ControlFunction) -> Constness {
    match f.to_table() {
        Some(t) if t.is_zero() => Constness::Zero,
        Some(t) if t.is_one() => Constness::One,
        _ => Constness::No,
    }
}

struct Synth<'a> {
    net: &'a LogicNetwork,
    res: SynthResult,
    free: Vec<usize>,
    line_of: HashMap<VertexId, usize>,
    refs: Vec<usize>,
    drivers: BTreeSet<VertexId>,
    visited: BTreeSet<VertexId>,
    funcs: HashMap<VertexId, ControlFunction>,
    uncompute: bool,
}

impl Synth<'_> {
    fn push_gate(&mut self, g: RevGate, source: Option<VertexId>) {
        self.res.network.append_gate(g).expect("synthesized gate is well formed");
        self.res.zero_lines.push(self.free.clone());
        self.res.source.push(source);
    }

    fn new_line(&mut self) -> usize {
        let l = self.res.network.add_line(LineInput::Zero, LineOutput::Zero);
        self.res.trace.push(TraceEvent::NewLine { line: l });
        l
    }

    fn request_constant(&mut self) -> usize {
        match self.free.pop() {
            Some(l) => {
                self.res.trace.push(TraceEvent::Pop { line: l });
                l
            }
            None => self.new_line(),
        }
    }

    fn apply_lut(&mut self, g: VertexId, target: usize) {
        let controls: Vec<usize> = self.net.fanin(g).iter().map(|s| self.line_of[&s.node]).collect();
        let f = self.funcs[&g].clone();
        match constness(&f) {
            Constness::Zero => {}
            Constness::One => self.push_gate(RevGate::not(target), Some(g)),
            Constness::No => self.push_gate(RevGate::stg(controls, f, target), Some(g)),
        }
    }

    fn uncompute_children(&mut self, g: VertexId) {
        let kids: Vec<VertexId> =
            self.net.fanin(g).iter().map(|s| s.node).filter(|&c| self.net.is_gate(c)).collect();
        for &c in &kids {
            self.refs[c] -= 1;
        }
        for &c in &kids {
            if self.refs[c] == 0 {
                self.uncompute_gate(c);
            }
        }
    }

    fn uncompute_gate(&mut self, g: VertexId) {
        if !self.visited.insert(g) {
            return;
        }
        if !self.drivers.contains(&g) {
            let t = self.line_of[&g];
            self.apply_lut(g, t);
            self.res.trace.push(TraceEvent::Uncompute { gate: g, line: t });
            self.free.push(t);
            self.res.trace.push(TraceEvent::Push { line: t });
        }
        self.uncompute_children(g);
    }

    fn run(&mut self, order: &[VertexId]) -> Result<()> {
        let net = self.net;
        for &x in net.inputs() {
            let name = net.name(x).unwrap_or("").to_string();
            let l = self.res.network.add_line(LineInput::Name(name.clone()), LineOutput::Name(name));
            self.line_of.insert(x, l);
        }
        // Complemented outputs of a LUT that nothing else reads are folded
        // into the LUT.
        let mut out_neg: Vec<bool> = net.outputs().iter().map(|&y| net.fanin(y)[0].neg).collect();
        for &g in order {
            let f = net.function(g).ok_or_else(|| Error::Param(format!("gate {g} has no function")))?;
            let mut cf = control_function(f, net.fanin(g));
            let users: Vec<usize> =
                (0..net.outputs().len()).filter(|&i| net.fanin(net.outputs()[i])[0].node == g).collect();
            if self.refs[g] == 0 && !users.is_empty() && users.iter().all(|&i| out_neg[i]) {
                cf = cf.complement();
                for i in users {
                    out_neg[i] = false;
                }
            }
            self.funcs.insert(g, cf);
        }
        for &g in order {
            let t = self.request_constant();
            self.apply_lut(g, t);
            self.res.trace.push(TraceEvent::Compute { gate: g, line: t });
            self.line_of.insert(g, t);
            if self.uncompute && self.refs[g] == 0 {
                self.visited.clear();
                self.uncompute_children(g);
            }
        }
        if !self.uncompute {
            for (&g, &l) in &self.line_of {
                if net.is_gate(g) && !self.drivers.contains(&g) {
                    self.res.network.lines[l].output = LineOutput::Garbage;
                }
            }
        }
        self.place_outputs(&out_neg)
    }

    fn place_outputs(&mut self, out_neg: &[bool]) -> Result<()> {
        let net = self.net;
        let mut claimed: BTreeSet<usize> = BTreeSet::new();
        let mut invert = Vec::new();
        for (i, &y) in net.outputs().iter().enumerate() {
            let name = net.name(y).unwrap_or("").to_string();
            let d = net.fanin(y)[0].node;
            let src = *self
                .line_of
                .get(&d)
                .ok_or_else(|| Error::Param(format!("output {name:?} driver {d} was not synthesized")))?;
            let is_input = net.vertex(d).kind == VertexKind::Input;
            if !is_input && claimed.insert(src) {
                self.res.network.lines[src].output = LineOutput::Name(name);
                if out_neg[i] {
                    invert.push(src);
                }
                continue;
            }
            let to = self.new_line();
            self.res.copy_lines += 1;
            self.push_gate(RevGate::cnot(src, to), None);
            self.res.trace.push(TraceEvent::Copy { output: name.clone(), from: src, to });
            // A claimed source line is inverted only after all copies.
            if out_neg[i] {
                self.push_gate(RevGate::not(to), None);
                self.res.trace.push(TraceEvent::Invert { line: to });
            }
            self.res.network.lines[to].output = LineOutput::Name(name);
        }
        for l in invert {
            self.push_gate(RevGate::not(l), None);
            self.res.trace.push(TraceEvent::Invert { line: l });
        }
        Ok(())
    }
}

fn synthesize(net: &LogicNetwork, order: &[VertexId], uncompute: bool) -> Result<SynthResult> {
    let live = live_gates(net);
    let mut refs = vec![0usize; net.len()];
    for (v, &alive) in live.iter().enumerate() {
        if net.is_gate(v) && alive {
            for s in net.fanin(v) {
                refs[s.node] += 1;
            }
        }
    }
    let drivers: BTreeSet<VertexId> =
        net.outputs().iter().map(|&y| net.fanin(y)[0].node).filter(|&d| net.is_gate(d)).collect();
    let mut s = Synth {
        net,
        res: SynthResult {
            network: RevNetwork::new(),
            num_inputs: net.inputs().len(),
            copy_lines: 0,
            zero_lines: Vec::new(),
            source: Vec::new(),
            trace: Vec::new(),
        },
        free: Vec::new(),
        line_of: HashMap::new(),
        refs,
        drivers,
        visited: BTreeSet::new(),
        funcs: HashMap::new(),
        uncompute,
    };
    s.run(order)?;
    Ok(s.res)
}

fn check_order(net: &LogicNetwork, order: &[VertexId]) -> Result<()> {
    let live = live_gates(net);
    let mut pos = vec![usize::MAX; net.len()];
    for (i, &g) in order.iter().enumerate() {
        if g >= net.len() || !net.is_gate(g) || pos[g] != usize::MAX {
            return Err(Error::Param(format!("order entry {g} is not a fresh gate")));
        }
        pos[g] = i;
    }
    for (v, &l) in live.iter().enumerate() {
        if l && pos[v] == usize::MAX {
            return Err(Error::Param(format!("order misses gate {v}")));
        }
    }
    for &g in order {
        for s in net.fanin(g) {
            if net.is_gate(s.node) && pos[s.node] > pos[g] {
                return Err(Error::Param(format!("order places gate {g} before its fanin {}", s.node)));
            }
        }
    }
    Ok(())
}

/// Garbage-free single-target gate network for a LUT network.
pub fn synthesize_mapping(net: &LogicNetwork, strategy: TopoStrategy) -> Result<SynthResult> {
    synthesize(net, &topo_order(net, strategy), true)
}

/// As [`synthesize_mapping`] with an explicit gate order, which must be a
/// topological order of the output cones.
pub fn synthesize_with_order(net: &LogicNetwork, order: &[VertexId]) -> Result<SynthResult> {
    check_order(net, order)?;
    synthesize(net, order, true)
}

/// Compute every LUT onto a fresh line and stop; inner LUT lines are left
/// labelled as garbage.
pub fn synthesize_compute_only(net: &LogicNetwork, strategy: TopoStrategy) -> Result<SynthResult> {
    let order = topo_order(net, strategy);
    let mut r = synthesize(net, &order, false)?;
    r.trace.retain(|e| !matches!(e, TraceEvent::Pop { .. }));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::TruthTable;

    fn lut(net: &mut LogicNetwork, fanin: &[VertexId], bits: u64) -> VertexId {
        let t = TruthTable::from_u64(fanin.len() as u32, bits);
        net.add_gate(fanin.iter().map(|&v| Signal::pos(v)).collect(), GateFunction::Table(t)).unwrap()
    }

    #[test]
    fn single_lut() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let b = n.add_input("b");
        let g = lut(&mut n, &[a, b], 0x6);
        n.add_output(Signal::pos(g), "y").unwrap();
        let r = synthesize_mapping(&n, TopoStrategy::TopoDef).unwrap();
        assert_eq!(r.network.num_lines(), 3);
        assert_eq!(r.network.gates.len(), 1);
        let b = ancilla_bounds(&n);
        assert_eq!((b.lower, b.upper), (1, 1));
    }

    #[test]
    fn chain_order_is_unique() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let b = n.add_input("b");
        let g1 = lut(&mut n, &[a, b], 0x8);
        let g2 = lut(&mut n, &[g1, a], 0x6);
        let g3 = lut(&mut n, &[g2, b], 0xe);
        n.add_output(Signal::pos(g3), "y").unwrap();
        for s in [TopoStrategy::TopoDef, TopoStrategy::TopoTfiSort] {
            assert_eq!(topo_order(&n, s), vec![g1, g2, g3]);
        }
    }

    #[test]
    fn shared_and_input_drivers_are_copied() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let b = n.add_input("b");
        let g = lut(&mut n, &[a, b], 0x8);
        n.add_output(Signal::pos(g), "y0").unwrap();
        n.add_output(Signal::new(g, true), "y1").unwrap();
        n.add_output(Signal::pos(a), "y2").unwrap();
        let r = synthesize_mapping(&n, TopoStrategy::TopoDef).unwrap();
        assert_eq!(r.copy_lines, 2);
        assert_eq!(r.network.num_lines(), 5);
        let rep = crate::verify::check_equivalence(&n, &r.network, crate::verify::CheckMode::Exhaustive).unwrap();
        assert!(rep.equivalent && rep.garbage_free && rep.inputs_preserved, "{rep:?}");
    }

    #[test]
    fn inverted_output_is_absorbed() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let b = n.add_input("b");
        let g = lut(&mut n, &[a, b], 0x8);
        n.add_output(Signal::new(g, true), "y").unwrap();
        let r = synthesize_mapping(&n, TopoStrategy::TopoDef).unwrap();
        assert_eq!(r.network.gates.len(), 1);
        let rep = crate::verify::check_equivalence(&n, &r.network, crate::verify::CheckMode::Exhaustive).unwrap();
        assert!(rep.equivalent);
    }

    #[test]
    fn bad_orders_rejected() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let g1 = lut(&mut n, &[a], 0x1);
        let g2 = lut(&mut n, &[g1], 0x1);
        n.add_output(Signal::pos(g2), "y").unwrap();
        assert!(synthesize_with_order(&n, &[g2, g1]).is_err());
        assert!(synthesize_with_order(&n, &[g2]).is_err());
        assert!(synthesize_with_order(&n, &[g1, g2]).is_ok());
    }
}

//! Boolean logic networks: AIGs and k-LUT networks share one representation.
//!
//! Every arc carries a polarity bit. A gate evaluates its function on the
//! polarity-adjusted values of its ordered fanins, so an AIG node is a gate
//! with the 2-input AND table and complemented edges live on the arcs.

mod aig_builder;
pub mod aiger;
pub mod blif;

use std::collections::BTreeSet;
use std::sync::OnceLock;

pub use aig_builder::AigBuilder;

use crate::tt::{TruthTable, MAX_DENSE_VARS};
use crate::NetworkError;

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signal {
    pub node: VertexId,
    pub neg: bool,
}

impl Signal {
    pub fn new(node: VertexId, neg: bool) -> Self {
        Signal { node, neg }
    }

    pub fn pos(node: VertexId) -> Self {
        Signal { node, neg: false }
    }
}

impl std::ops::Not for Signal {
    type Output = Signal;
    fn not(self) -> Signal {
        Signal { node: self.node, neg: !self.neg }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Input,
    Output,
    Gate,
}

/// A LUT function too wide for a dense table, kept as its AIG cone.
///
/// Local index space: leaves occupy `0..leaves.len()`, cone node `j` is
/// `leaves.len() + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFunction {
    pub leaves: Vec<VertexId>,
    pub nodes: Vec<ConeNode>,
    pub root: (usize, bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeNode {
    pub fanin: Vec<(usize, bool)>,
    pub func: TruthTable,
}

impl ConeFunction {
    /// Collect the cone of `root` in `net` bounded by `leaves`.
    pub fn extract(net: &LogicNetwork, root: Signal, leaves: &[VertexId]) -> Self {
        let mut local: std::collections::HashMap<VertexId, usize> =
            leaves.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut nodes = Vec::new();
        let mut stack = vec![(root.node, false)];
        while let Some((v, expanded)) = stack.pop() {
            if local.contains_key(&v) {
                continue;
            }
            let vx = &net.vertices[v];
            if expanded {
                let fanin = vx.fanin.iter().map(|s| (local[&s.node], s.neg)).collect();
                let func = match &vx.function {
                    Some(GateFunction::Table(t)) => t.clone(),
                    _ => panic!("cone node {v} is not a table gate"),
                };
                local.insert(v, leaves.len() + nodes.len());
                nodes.push(ConeNode { fanin, func });
            } else {
                assert_eq!(vx.kind, VertexKind::Gate, "cone escapes its leaves at {v}");
                stack.push((v, true));
                for s in vx.fanin.iter().rev() {
                    if !local.contains_key(&s.node) {
                        stack.push((s.node, false));
                    }
                }
            }
        }
        ConeFunction { leaves: leaves.to_vec(), nodes, root: (local[&root.node], root.neg) }
    }

    pub fn arity(&self) -> usize {
        self.leaves.len()
    }

    pub fn eval_words(&self, leaf_words: &[u64]) -> u64 {
        let mut vals = leaf_words.to_vec();
        for n in &self.nodes {
            let ins: Vec<u64> =
                n.fanin.iter().map(|&(i, neg)| if neg { !vals[i] } else { vals[i] }).collect();
            vals.push(eval_table_words(&n.func, &ins));
        }
        let r = vals[self.root.0];
        if self.root.1 {
            !r
        } else {
            r
        }
    }

    pub fn complement(&self) -> Self {
        let mut c = self.clone();
        c.root.1 = !c.root.1;
        c
    }

    /// Dense table; only for arity <= 16.
    pub fn to_table(&self) -> TruthTable {
        table_by_simulation(self.arity() as u32, |ins| self.eval_words(ins))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateFunction {
    Table(TruthTable),
    Cone(ConeFunction),
}

impl GateFunction {
    pub fn arity(&self) -> usize {
        match self {
            GateFunction::Table(t) => t.num_vars() as usize,
            GateFunction::Cone(c) => c.arity(),
        }
    }

    pub fn eval_words(&self, ins: &[u64]) -> u64 {
        match self {
            GateFunction::Table(t) => eval_table_words(t, ins),
            GateFunction::Cone(c) => c.eval_words(ins),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            GateFunction::Table(t) => GateFunction::Table(!t.clone()),
            GateFunction::Cone(c) => GateFunction::Cone(c.complement()),
        }
    }

    pub fn to_table(&self) -> Option<TruthTable> {
        match self {
            GateFunction::Table(t) => Some(t.clone()),
            GateFunction::Cone(c) if c.arity() as u32 <= MAX_DENSE_VARS => Some(c.to_table()),
            GateFunction::Cone(_) => None,
        }
    }
}

/// Bit-parallel evaluation of a table over 64 lanes.
pub fn eval_table_words(t: &TruthTable, ins: &[u64]) -> u64 {
    let n = t.num_vars() as usize;
    debug_assert_eq!(n, ins.len());
    if n <= 4 {
        let mut out = 0u64;
        for r in 0..t.rows() {
            if t.get(r) {
                let mut m = !0u64;
                for (i, &w) in ins.iter().enumerate() {
                    m &= if (r >> i) & 1 == 1 { w } else { !w };
                }
                out |= m;
            }
        }
        out
    } else {
        let mut out = 0u64;
        for lane in 0..64 {
            let mut r = 0u64;
            for (i, &w) in ins.iter().enumerate() {
                r |= ((w >> lane) & 1) << i;
            }
            out |= (t.get(r) as u64) << lane;
        }
        out
    }
}

/// Build an `n`-variable table by evaluating a word-level function on all rows.
pub fn table_by_simulation(n: u32, f: impl Fn(&[u64]) -> u64) -> TruthTable {
    let rows = 1u64 << n;
    let mut t = TruthTable::zero(n);
    let mut base = 0u64;
    while base < rows {
        let ins: Vec<u64> = (0..n).map(|i| lane_pattern(base, i)).collect();
        let w = f(&ins);
        for lane in 0..64.min(rows - base) {
            if (w >> lane) & 1 == 1 {
                t.set(base + lane, true);
            }
        }
        base += 64;
    }
    t
}

/// Word holding bit `i` of rows `base..base+64`.
pub fn lane_pattern(base: u64, i: u32) -> u64 {
    if i < 6 {
        const M: [u64; 6] = [
            0xaaaa_aaaa_aaaa_aaaa,
            0xcccc_cccc_cccc_cccc,
            0xf0f0_f0f0_f0f0_f0f0,
            0xff00_ff00_ff00_ff00,
            0xffff_0000_ffff_0000,
            0xffff_ffff_0000_0000,
        ];
        M[i as usize]
    } else if (base >> i) & 1 == 1 {
        !0
    } else {
        0
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub kind: VertexKind,
    pub fanin: Vec<Signal>,
    pub function: Option<GateFunction>,
    pub name: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LogicNetwork {
    vertices: Vec<Vertex>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    lut_bound: Option<usize>,
    topo: OnceLock<Vec<VertexId>>,
}

impl LogicNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assemble from a vertex list that may contain forward references.
    pub fn from_vertices(vertices: Vec<Vertex>) -> Result<Self, NetworkError> {
        let mut net = LogicNetwork { vertices, ..Default::default() };
        for (id, v) in net.vertices.iter().enumerate() {
            for s in &v.fanin {
                if s.node >= net.vertices.len() {
                    return Err(NetworkError::UnknownVertex(s.node));
                }
                if net.vertices[s.node].kind == VertexKind::Output {
                    return Err(NetworkError::Malformed(format!("vertex {id} reads output {}", s.node)));
                }
            }
            match v.kind {
                VertexKind::Input => {
                    if !v.fanin.is_empty() {
                        return Err(NetworkError::Malformed(format!("input {id} has fanin")));
                    }
                    net.inputs.push(id);
                }
                VertexKind::Output => {
                    if v.fanin.len() != 1 {
                        return Err(NetworkError::Malformed(format!("output {id} needs exactly one fanin")));
                    }
                    net.outputs.push(id);
                }
                VertexKind::Gate => {
                    let f = v
                        .function
                        .as_ref()
                        .ok_or_else(|| NetworkError::Malformed(format!("gate {id} has no function")))?;
                    if f.arity() != v.fanin.len() {
                        return Err(NetworkError::ArityMismatch { vertex: id, arity: f.arity(), fanin: v.fanin.len() });
                    }
                }
            }
        }
        net.compute_topo()?;
        Ok(net)
    }

    fn compute_topo(&self) -> Result<&[VertexId], NetworkError> {
        if let Some(t) = self.topo.get() {
            return Ok(t);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.vertices.len()];
        let mut order = Vec::with_capacity(self.vertices.len());
        for start in 0..self.vertices.len() {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(s) = self.vertices[v].fanin.get(*next) {
                    *next += 1;
                    match state[s.node] {
                        0 => {
                            state[s.node] = 1;
                            stack.push((s.node, 0));
                        }
                        1 => return Err(NetworkError::Cycle(s.node)),
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    order.push(v);
                    stack.pop();
                }
            }
        }
        let _ = self.topo.set(order);
        Ok(self.topo.get().unwrap())
    }

    fn invalidate(&mut self) {
        self.topo = OnceLock::new();
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> VertexId {
        let id = self.vertices.len();
        self.vertices.push(Vertex { kind: VertexKind::Input, fanin: vec![], function: None, name: Some(name.into()) });
        self.inputs.push(id);
        self.invalidate();
        id
    }

    /// Fanins must already exist, which keeps the network acyclic.
    pub fn add_gate(&mut self, fanin: Vec<Signal>, function: GateFunction) -> Result<VertexId, NetworkError> {
        let id = self.vertices.len();
        if function.arity() != fanin.len() {
            return Err(NetworkError::ArityMismatch { vertex: id, arity: function.arity(), fanin: fanin.len() });
        }
        for s in &fanin {
            match self.vertices.get(s.node) {
                None => return Err(NetworkError::UnknownVertex(s.node)),
                Some(v) if v.kind == VertexKind::Output => {
                    return Err(NetworkError::Malformed(format!("gate reads output {}", s.node)))
                }
                _ => {}
            }
        }
        self.vertices.push(Vertex { kind: VertexKind::Gate, fanin, function: Some(function), name: None });
        self.invalidate();
        Ok(id)
    }

    pub fn add_output(&mut self, driver: Signal, name: impl Into<String>) -> Result<VertexId, NetworkError> {
        match self.vertices.get(driver.node) {
            None => return Err(NetworkError::UnknownVertex(driver.node)),
            Some(v) if v.kind == VertexKind::Output => {
                return Err(NetworkError::Malformed(format!("output reads output {}", driver.node)))
            }
            _ => {}
        }
        let id = self.vertices.len();
        self.vertices.push(Vertex {
            kind: VertexKind::Output,
            fanin: vec![driver],
            function: None,
            name: Some(name.into()),
        });
        self.outputs.push(id);
        self.invalidate();
        Ok(id)
    }

    pub fn set_name(&mut self, v: VertexId, name: impl Into<String>) {
        self.vertices[v].name = Some(name.into());
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn num_gates(&self) -> usize {
        self.vertices.len() - self.inputs.len() - self.outputs.len()
    }

    pub fn is_gate(&self, v: VertexId) -> bool {
        self.vertices[v].kind == VertexKind::Gate
    }

    pub fn fanin(&self, v: VertexId) -> &[Signal] {
        &self.vertices[v].fanin
    }

    pub fn function(&self, v: VertexId) -> Option<&GateFunction> {
        self.vertices[v].function.as_ref()
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.vertices[v].name.as_deref()
    }

    /// Gates in a topological order that follows vertex ids where possible.
    pub fn topo_order(&self) -> &[VertexId] {
        self.compute_topo().expect("network is acyclic by construction")
    }

    pub fn gates_topo(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.topo_order().iter().copied().filter(|&v| self.is_gate(v))
    }

    pub fn fanout_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.vertices.len()];
        for v in &self.vertices {
            for s in &v.fanin {
                c[s.node] += 1;
            }
        }
        c
    }

    pub fn max_fanin(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Gate)
            .map(|v| v.fanin.len())
            .max()
            .unwrap_or(0)
    }

    /// `Some(k)` when the network is annotated as a k-LUT cover.
    pub fn lut_bound(&self) -> Option<usize> {
        self.lut_bound
    }

    pub fn set_lut_bound(&mut self, k: Option<usize>) {
        if let Some(k) = k {
            assert!(self.max_fanin() <= k, "gate in-degree exceeds LUT bound {k}");
        }
        self.lut_bound = k;
    }

    /// All gates are 2-input ANDs, apart from constant nodes.
    pub fn is_aig(&self) -> bool {
        let and2 = TruthTable::from_u64(2, 0b1000);
        self.vertices.iter().filter(|v| v.kind == VertexKind::Gate).all(|v| match &v.function {
            Some(GateFunction::Table(t)) => *t == and2 || t.num_vars() == 0,
            _ => false,
        })
    }

    /// The unique fanin of a primary output.
    pub fn driver(&self, y: VertexId) -> Result<VertexId, NetworkError> {
        self.output_signal(y).map(|s| s.node)
    }

    pub fn output_signal(&self, y: VertexId) -> Result<Signal, NetworkError> {
        match self.vertices.get(y) {
            Some(v) if v.kind == VertexKind::Output => Ok(v.fanin[0]),
            Some(_) => Err(NetworkError::NotAnOutput(y)),
            None => Err(NetworkError::UnknownVertex(y)),
        }
    }

    /// Transitive fan-in: `v`, every gate on a path from `v` to the inputs,
    /// and every reachable input.
    pub fn tfi(&self, v: VertexId) -> Result<BTreeSet<VertexId>, NetworkError> {
        if v >= self.vertices.len() {
            return Err(NetworkError::UnknownVertex(v));
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if seen.insert(u) {
                stack.extend(self.vertices[u].fanin.iter().map(|s| s.node));
            }
        }
        Ok(seen)
    }

    /// Gates of `tfi(v)`, ignoring inputs and `v` itself when it is an output.
    pub fn cone_gates(&self, v: VertexId) -> Result<BTreeSet<VertexId>, NetworkError> {
        Ok(self.tfi(v)?.into_iter().filter(|&u| self.is_gate(u)).collect())
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|&v| self.name(v) == Some(name))
    }

    /// Simulate 64 patterns at once; `input_words[i]` feeds input `i`.
    /// Returns one word per vertex.
    pub fn simulate_words(&self, input_words: &[u64]) -> Vec<u64> {
        assert_eq!(input_words.len(), self.inputs.len());
        let mut val = vec![0u64; self.vertices.len()];
        for (i, &v) in self.inputs.iter().enumerate() {
            val[v] = input_words[i];
        }
        let read = |val: &[u64], s: &Signal| if s.neg { !val[s.node] } else { val[s.node] };
        for &v in self.topo_order() {
            let vx = &self.vertices[v];
            match vx.kind {
                VertexKind::Input => {}
                VertexKind::Output => val[v] = read(&val, &vx.fanin[0]),
                VertexKind::Gate => {
                    let ins: Vec<u64> = vx.fanin.iter().map(|s| read(&val, s)).collect();
                    val[v] = vx.function.as_ref().unwrap().eval_words(&ins);
                }
            }
        }
        val
    }

    /// Output words for 64 patterns.
    pub fn simulate_outputs(&self, input_words: &[u64]) -> Vec<u64> {
        let val = self.simulate_words(input_words);
        self.outputs.iter().map(|&y| val[y]).collect()
    }

    /// Truth tables of all outputs; only for <= 16 inputs.
    pub fn output_tables(&self) -> Vec<TruthTable> {
        let n = self.inputs.len() as u32;
        assert!(n <= MAX_DENSE_VARS);
        (0..self.outputs.len())
            .map(|o| table_by_simulation(n, |ins| self.simulate_outputs(ins)[o]))
            .collect()
    }

    /// Re-express every gate as 2-input ANDs with structural hashing.
    pub fn to_aig(&self) -> LogicNetwork {
        let mut b = AigBuilder::new();
        let mut map: Vec<Option<Signal>> = vec![None; self.vertices.len()];
        for &v in &self.inputs {
            map[v] = Some(b.input(self.name(v).unwrap_or("")));
        }
        for v in self.gates_topo() {
            let ins: Vec<Signal> = self.vertices[v]
                .fanin
                .iter()
                .map(|s| {
                    let m = map[s.node].unwrap();
                    if s.neg {
                        !m
                    } else {
                        m
                    }
                })
                .collect();
            let out = match self.vertices[v].function.as_ref().unwrap() {
                GateFunction::Table(t) => b.from_table(t, &ins),
                GateFunction::Cone(c) => b.from_cone(c, &ins),
            };
            map[v] = Some(out);
        }
        for &y in &self.outputs {
            let s = self.vertices[y].fanin[0];
            let m = map[s.node].unwrap();
            b.output(if s.neg { !m } else { m }, self.name(y).unwrap_or(""));
        }
        b.finish()
    }
}

//! Cut-based k-LUT mapping of AIGs.
//!
//! Priority cuts are enumerated once per node, ranked by (depth, area flow).
//! The initial cover takes the best-depth cut everywhere; area-flow rounds and
//! exact-area rounds then re-select cuts under the depth of the initial cover.
//! A round whose cover has more LUTs than the previous one is undone.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{ConeFunction, GateFunction, LogicNetwork, Signal, VertexId, VertexKind};
use crate::tt::MAX_DENSE_VARS;

pub const DEFAULT_CUT_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingParams {
    pub lut_size: usize,
    pub area_iters: usize,
    pub flow_iters: usize,
    pub cut_limit: usize,
}

impl Default for MappingParams {
    fn default() -> Self {
        MappingParams { lut_size: 16, area_iters: 2, flow_iters: 1, cut_limit: DEFAULT_CUT_LIMIT }
    }
}

impl MappingParams {
    pub fn with_lut_size(k: usize) -> Self {
        MappingParams { lut_size: k, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(3..=32).contains(&self.lut_size) {
            return Err(Error::Param(format!("LUT size {} outside [3, 32]", self.lut_size)));
        }
        for (name, v) in [("area iterations", self.area_iters), ("flow iterations", self.flow_iters)] {
            if !(1..=10).contains(&v) {
                return Err(Error::Param(format!("{name} {v} outside [1, 10]")));
            }
        }
        if self.cut_limit < 2 {
            return Err(Error::Param("cut limit must be at least 2".into()));
        }
        Ok(())
    }
}

/// Leaves are sorted vertex ids. The trivial cut of `v` is `{v}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub root: VertexId,
    pub leaves: Vec<VertexId>,
}

impl Cut {
    pub fn is_trivial(&self) -> bool {
        self.leaves == [self.root]
    }

    /// Function of the root over the leaves: a dense table up to 16 leaves,
    /// otherwise the AIG cone.
    pub fn function(&self, net: &LogicNetwork) -> GateFunction {
        let cone = ConeFunction::extract(net, Signal::pos(self.root), &self.leaves);
        if self.leaves.len() <= MAX_DENSE_VARS as usize {
            GateFunction::Table(cone.to_table())
        } else {
            GateFunction::Cone(cone)
        }
    }
}

fn merge(a: &[VertexId], b: &[VertexId], k: usize) -> Option<Vec<VertexId>> {
    let mut out = Vec::with_capacity(k);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.len() == k {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

fn is_subset(small: &[VertexId], big: &[VertexId]) -> bool {
    small.len() <= big.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}

struct Mapper<'a> {
    net: &'a LogicNetwork,
    /// Non-trivial cuts first, trivial cut last (absent for constants).
    cuts: Vec<Vec<Vec<VertexId>>>,
    choice: Vec<usize>,
    arrival: Vec<u32>,
    flow: Vec<f64>,
    est_refs: Vec<f64>,
    refs: Vec<u32>,
}

impl<'a> Mapper<'a> {
    fn new(net: &'a LogicNetwork) -> Self {
        let n = net.len();
        let est_refs = net.fanout_counts().into_iter().map(|c| (c as f64).max(1.0)).collect();
        Mapper {
            net,
            cuts: vec![Vec::new(); n],
            choice: vec![0; n],
            arrival: vec![0; n],
            flow: vec![0.0; n],
            est_refs,
            refs: vec![0; n],
        }
    }

    fn is_const(&self, v: VertexId) -> bool {
        self.net.is_gate(v) && self.net.fanin(v).is_empty()
    }

    fn cut_arrival(&self, leaves: &[VertexId]) -> u32 {
        1 + leaves.iter().map(|&l| self.arrival[l]).max().unwrap_or(0)
    }

    fn cut_flow(&self, leaves: &[VertexId]) -> f64 {
        1.0 + leaves.iter().map(|&l| self.flow[l] / self.est_refs[l]).sum::<f64>()
    }

    fn enumerate(&mut self, k: usize, limit: usize) {
        let net = self.net;
        for &v in net.topo_order() {
            match net.vertex(v).kind {
                VertexKind::Input => self.cuts[v] = vec![vec![v]],
                VertexKind::Output => {}
                VertexKind::Gate if self.is_const(v) => {
                    self.cuts[v] = vec![vec![]];
                }
                VertexKind::Gate => {
                    let mut acc: Vec<Vec<VertexId>> = vec![vec![]];
                    for s in net.fanin(v) {
                        let mut next = HashSet::new();
                        for a in &acc {
                            for b in &self.cuts[s.node] {
                                if let Some(m) = merge(a, b, k) {
                                    next.insert(m);
                                }
                            }
                        }
                        acc = next.into_iter().collect();
                    }
                    let mut ranked: Vec<(u32, f64, Vec<VertexId>)> =
                        acc.into_iter().map(|c| (self.cut_arrival(&c), self.cut_flow(&c), c)).collect();
                    ranked.sort_by(|x, y| {
                        x.0.cmp(&y.0)
                            .then(x.1.total_cmp(&y.1))
                            .then(x.2.len().cmp(&y.2.len()))
                            .then(x.2.cmp(&y.2))
                    });
                    let mut kept: Vec<Vec<VertexId>> = Vec::new();
                    for (_, _, c) in ranked {
                        if kept.len() + 1 >= limit {
                            break;
                        }
                        if !kept.iter().any(|q| is_subset(q, &c)) {
                            kept.push(c);
                        }
                    }
                    self.arrival[v] = self.cut_arrival(&kept[0]);
                    self.flow[v] = self.cut_flow(&kept[0]);
                    kept.push(vec![v]);
                    self.cuts[v] = kept;
                }
            }
        }
    }

    fn selected(&self, v: VertexId) -> &[VertexId] {
        &self.cuts[v][self.choice[v]]
    }

    /// Selectable cuts of a gate.
    fn options(&self, v: VertexId) -> usize {
        if self.is_const(v) {
            1
        } else {
            self.cuts[v].len() - 1
        }
    }

    fn output_drivers(&self) -> Vec<VertexId> {
        self.net.outputs().iter().map(|&y| self.net.fanin(y)[0].node).filter(|&d| self.net.is_gate(d)).collect()
    }

    fn ref_cut(&mut self, v: VertexId) -> u32 {
        let mut area = 1;
        for i in 0..self.selected(v).len() {
            let l = self.cuts[v][self.choice[v]][i];
            if self.net.is_gate(l) {
                self.refs[l] += 1;
                if self.refs[l] == 1 {
                    area += self.ref_cut(l);
                }
            }
        }
        area
    }

    fn deref_cut(&mut self, v: VertexId) -> u32 {
        let mut area = 1;
        for i in 0..self.selected(v).len() {
            let l = self.cuts[v][self.choice[v]][i];
            if self.net.is_gate(l) {
                self.refs[l] -= 1;
                if self.refs[l] == 0 {
                    area += self.deref_cut(l);
                }
            }
        }
        area
    }

    /// Reference the cover from the outputs; returns its LUT count.
    fn rebuild_refs(&mut self) -> u32 {
        self.refs.iter_mut().for_each(|r| *r = 0);
        let mut area = 0;
        for d in self.output_drivers() {
            self.refs[d] += 1;
            if self.refs[d] == 1 {
                area += self.ref_cut(d);
            }
        }
        area
    }

    fn recompute_arrivals(&mut self) {
        for v in self.net.gates_topo().collect::<Vec<_>>() {
            self.arrival[v] = if self.is_const(v) { 0 } else { self.cut_arrival(&self.cuts[v][self.choice[v]]) };
        }
    }

    /// Required times of the current cover against `target`.
    fn required(&self, target: u32) -> Vec<u32> {
        let mut req = vec![u32::MAX; self.net.len()];
        for d in self.output_drivers() {
            req[d] = target;
        }
        let order: Vec<VertexId> = self.net.gates_topo().collect();
        for &v in order.iter().rev() {
            if self.refs[v] == 0 || req[v] == u32::MAX {
                continue;
            }
            for &l in self.selected(v) {
                req[l] = req[l].min(req[v].saturating_sub(1));
            }
        }
        req
    }

    fn flow_round(&mut self, target: u32) {
        let req = self.required(target);
        for v in 0..self.net.len() {
            if self.net.is_gate(v) {
                let r = self.refs[v] as f64;
                self.est_refs[v] = ((self.est_refs[v] + 2.0 * r) / 3.0).max(1.0);
            }
        }
        for v in self.net.gates_topo().collect::<Vec<_>>() {
            if self.is_const(v) {
                continue;
            }
            let mut best: Option<(f64, u32, usize, usize)> = None;
            let mut fastest = (u32::MAX, 0);
            for i in 0..self.options(v) {
                let c = &self.cuts[v][i];
                let (a, f) = (self.cut_arrival(c), self.cut_flow(c));
                if a < fastest.0 {
                    fastest = (a, i);
                }
                if a > req[v] {
                    continue;
                }
                let key = (f, a, c.len(), i);
                let better = match best {
                    None => true,
                    Some(b) => key.0.total_cmp(&b.0).then(key.1.cmp(&b.1)).then(key.2.cmp(&b.2)).is_lt(),
                };
                if better {
                    best = Some(key);
                }
            }
            let i = best.map_or(fastest.1, |b| b.3);
            self.choice[v] = i;
            self.arrival[v] = self.cut_arrival(&self.cuts[v][i]);
            self.flow[v] = self.cut_flow(&self.cuts[v][i]);
        }
    }

    fn exact_round(&mut self, target: u32) {
        let req = self.required(target);
        for v in self.net.gates_topo().collect::<Vec<_>>() {
            if self.refs[v] == 0 || self.is_const(v) {
                continue;
            }
            let current = self.choice[v];
            let cur_area = self.deref_cut(v);
            let mut best = (cur_area, current);
            for i in 0..self.options(v) {
                if i == current || self.cut_arrival(&self.cuts[v][i]) > req[v] {
                    continue;
                }
                self.choice[v] = i;
                let a = self.ref_cut(v);
                self.deref_cut(v);
                let better = a < best.0
                    || (a == best.0 && best.1 != current && self.cuts[v][i].len() < self.cuts[v][best.1].len());
                if better {
                    best = (a, i);
                }
            }
            self.choice[v] = best.1;
            self.ref_cut(v);
            self.arrival[v] = self.cut_arrival(&self.cuts[v][best.1]);
        }
    }

    fn run(&mut self, p: &MappingParams) -> u32 {
        self.enumerate(p.lut_size, p.cut_limit);
        let mut area = self.rebuild_refs();
        // Area-oriented: recovery may trade depth for LUT count freely.
        let target = u32::MAX;
        let mut rounds: Vec<bool> = vec![true; p.flow_iters];
        rounds.extend(std::iter::repeat_n(false, p.area_iters));
        for flow in rounds {
            let saved = (self.choice.clone(), self.arrival.clone(), self.flow.clone(), self.est_refs.clone());
            if flow {
                self.flow_round(target);
            } else {
                self.exact_round(target);
            }
            self.recompute_arrivals();
            let a = self.rebuild_refs();
            if a > area {
                (self.choice, self.arrival, self.flow, self.est_refs) = saved;
                self.rebuild_refs();
            } else {
                area = a;
            }
        }
        area
    }

    fn build(&self, k: usize) -> Result<LogicNetwork> {
        let net = self.net;
        let mut out = LogicNetwork::new();
        let mut map: Vec<Option<VertexId>> = vec![None; net.len()];
        for &x in net.inputs() {
            map[x] = Some(out.add_input(net.name(x).unwrap_or("")));
        }
        for v in net.gates_topo() {
            if self.refs[v] == 0 {
                continue;
            }
            let cut = Cut { root: v, leaves: self.selected(v).to_vec() };
            let fanin = cut.leaves.iter().map(|&l| Signal::pos(map[l].expect("leaf mapped before root"))).collect();
            map[v] = Some(out.add_gate(fanin, cut.function(net))?);
        }
        for &y in net.outputs() {
            let s = net.fanin(y)[0];
            out.add_output(Signal::new(map[s.node].expect("driver mapped"), s.neg), net.name(y).unwrap_or(""))?;
        }
        out.set_lut_bound(Some(k));
        Ok(out)
    }
}

/// Priority cuts of every input and gate; outputs get none. Each gate keeps at
/// most `limit` cuts, its trivial cut last. Constant nodes have only the empty
/// cut.
pub fn enumerate_cuts(net: &LogicNetwork, k: usize, limit: usize) -> Result<Vec<Vec<Cut>>> {
    if !(1..=32).contains(&k) || limit < 2 {
        return Err(Error::Param(format!("invalid cut parameters k={k} limit={limit}")));
    }
    let mut m = Mapper::new(net);
    m.enumerate(k, limit);
    Ok(m.cuts
        .into_iter()
        .enumerate()
        .map(|(root, cs)| cs.into_iter().map(|leaves| Cut { root, leaves }).collect())
        .collect())
}

/// Map to a k-feasible network. A network already annotated with a LUT bound
/// of at most `k` is returned unchanged; other non-AIG networks are first
/// decomposed into an AIG.
pub fn map_to_k_lut(net: &LogicNetwork, p: &MappingParams) -> Result<LogicNetwork> {
    p.validate()?;
    if net.lut_bound().is_some_and(|b| b <= p.lut_size) {
        return Ok(net.clone());
    }
    let aig;
    let src = if net.is_aig() {
        net
    } else {
        aig = net.to_aig();
        &aig
    };
    let mut m = Mapper::new(src);
    m.run(p);
    m.build(p.lut_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::aiger::parse_aiger;
    use crate::logic::AigBuilder;

    fn full_adder() -> LogicNetwork {
        let mut b = AigBuilder::new();
        let (a, x, c) = (b.input("a"), b.input("b"), b.input("c"));
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
    fn input_has_only_trivial_cut() {
        let n = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n").unwrap();
        let cuts = enumerate_cuts(&n, 2, 8).unwrap();
        assert_eq!(cuts[0], vec![Cut { root: 0, leaves: vec![0] }]);
        let g: Vec<Vec<VertexId>> = cuts[2].iter().map(|c| c.leaves.clone()).collect();
        assert_eq!(g, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn full_adder_maps_to_two_luts() {
        let fa = full_adder();
        let m = map_to_k_lut(&fa, &MappingParams::with_lut_size(3)).unwrap();
        assert_eq!(m.num_gates(), 2);
        assert_eq!(m.lut_bound(), Some(3));
        assert_eq!(m.output_tables(), fa.output_tables());
    }

    #[test]
    fn merge_respects_bound() {
        assert_eq!(merge(&[1, 3], &[2, 3], 3), Some(vec![1, 2, 3]));
        assert_eq!(merge(&[1, 3], &[2, 4], 3), None);
    }

    #[test]
    fn passthrough_for_small_luts() {
        let mut n = full_adder().to_aig();
        n.set_lut_bound(Some(2));
        let m = map_to_k_lut(&n, &MappingParams::with_lut_size(4)).unwrap();
        assert_eq!(m.len(), n.len());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(map_to_k_lut(&full_adder(), &MappingParams::with_lut_size(2)).is_err());
        let p = MappingParams { area_iters: 0, ..Default::default() };
        assert!(p.validate().is_err());
    }
}

use std::collections::HashMap;

use super::{ConeFunction, GateFunction, LogicNetwork, Signal, VertexId};
use crate::tt::TruthTable;

/// Structurally hashed AIG construction.
pub struct AigBuilder {
    net: LogicNetwork,
    strash: HashMap<(Signal, Signal), VertexId>,
    const0: Option<VertexId>,
}

impl Default for AigBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl AigBuilder {
    pub fn new() -> Self {
        AigBuilder { net: LogicNetwork::new(), strash: HashMap::new(), const0: None }
    }

    pub fn input(&mut self, name: &str) -> Signal {
        Signal::pos(self.net.add_input(name))
    }

    pub fn output(&mut self, s: Signal, name: &str) {
        self.net.add_output(s, name).expect("builder signal exists");
    }

    pub fn constant(&mut self, v: bool) -> Signal {
        let id = match self.const0 {
            Some(id) => id,
            None => {
                let id = self
                    .net
                    .add_gate(vec![], GateFunction::Table(TruthTable::zero(0)))
                    .expect("constant node");
                self.const0 = Some(id);
                id
            }
        };
        Signal::new(id, v)
    }

    fn const_value(&self, s: Signal) -> Option<bool> {
        (Some(s.node) == self.const0).then_some(s.neg)
    }

    pub fn and(&mut self, a: Signal, b: Signal) -> Signal {
        match (self.const_value(a), self.const_value(b)) {
            (Some(false), _) | (_, Some(false)) => return self.constant(false),
            (Some(true), _) => return b,
            (_, Some(true)) => return a,
            _ => {}
        }
        if a == b {
            return a;
        }
        if a == !b {
            return self.constant(false);
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(&g) = self.strash.get(&key) {
            return Signal::pos(g);
        }
        let g = self
            .net
            .add_gate(vec![key.0, key.1], GateFunction::Table(TruthTable::from_u64(2, 0b1000)))
            .expect("builder signals exist");
        self.strash.insert(key, g);
        Signal::pos(g)
    }

    pub fn or(&mut self, a: Signal, b: Signal) -> Signal {
        !self.and(!a, !b)
    }

    pub fn xor(&mut self, a: Signal, b: Signal) -> Signal {
        let l = self.and(a, !b);
        let r = self.and(!a, b);
        self.or(l, r)
    }

    /// `s ? t : e`
    pub fn mux(&mut self, s: Signal, t: Signal, e: Signal) -> Signal {
        if t == e {
            return t;
        }
        if t == !e {
            return self.xor(s, e);
        }
        let l = self.and(s, t);
        let r = self.and(!s, e);
        self.or(l, r)
    }

    /// Shannon expansion of a dense table over the given leaf signals.
    pub fn from_table(&mut self, t: &TruthTable, leaves: &[Signal]) -> Signal {
        assert_eq!(t.num_vars() as usize, leaves.len());
        let mut memo = HashMap::new();
        self.shannon(t, leaves, t.num_vars(), &mut memo)
    }

    fn shannon(
        &mut self,
        t: &TruthTable,
        leaves: &[Signal],
        top: u32,
        memo: &mut HashMap<TruthTable, Signal>,
    ) -> Signal {
        if t.is_zero() {
            return self.constant(false);
        }
        if t.is_one() {
            return self.constant(true);
        }
        if let Some(&s) = memo.get(t) {
            return s;
        }
        let nt = !t.clone();
        if let Some(&s) = memo.get(&nt) {
            return !s;
        }
        let mut v = top;
        while v > 0 && !t.depends_on(v - 1) {
            v -= 1;
        }
        let v = v - 1;
        let hi = t.cofactor(v, true);
        let lo = t.cofactor(v, false);
        let h = self.shannon(&hi, leaves, v, memo);
        let l = self.shannon(&lo, leaves, v, memo);
        let s = self.mux(leaves[v as usize], h, l);
        memo.insert(t.clone(), s);
        s
    }

    /// Replay a stored cone over new leaf signals.
    pub fn from_cone(&mut self, c: &ConeFunction, leaves: &[Signal]) -> Signal {
        let mut vals: Vec<Signal> = leaves.to_vec();
        for n in &c.nodes {
            let ins: Vec<Signal> =
                n.fanin.iter().map(|&(i, neg)| if neg { !vals[i] } else { vals[i] }).collect();
            let s = self.from_table(&n.func, &ins);
            vals.push(s);
        }
        let r = vals[c.root.0];
        if c.root.1 {
            !r
        } else {
            r
        }
    }

    pub fn network(&self) -> &LogicNetwork {
        &self.net
    }

    pub fn finish(self) -> LogicNetwork {
        self.net
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shannon_reproduces_tables() {
        for n in 0..=6u32 {
            for seed in 0..20u64 {
                let t = TruthTable::from_fn(n, |r| (r.wrapping_mul(0x9e37_79b9) ^ seed.wrapping_mul(77)) % 3 == 0);
                let mut b = AigBuilder::new();
                let leaves: Vec<Signal> = (0..n).map(|i| b.input(&format!("x{i}"))).collect();
                let s = b.from_table(&t, &leaves);
                b.output(s, "f");
                let net = b.finish();
                assert!(net.is_aig());
                assert_eq!(net.output_tables()[0], t);
            }
        }
    }

    #[test]
    fn strash_dedups() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let g1 = b.and(x, y);
        let g2 = b.and(y, x);
        assert_eq!(g1, g2);
        assert_eq!(b.and(x, !x), b.constant(false));
        assert_eq!(b.network().num_gates(), 2);
    }
}

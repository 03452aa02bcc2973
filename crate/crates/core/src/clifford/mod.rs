//! Clifford+T circuits and the lowering of reversible gates into them.

pub mod direct;
pub mod mct;

use std::fmt::Write;

use serde::Serialize;

use crate::error::ParseError;

pub use direct::{map_stg_direct, mct_cascade};
pub use mct::{decompose_mct, lower_mct, AncillaContext, MctRoute};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CtGate {
    X(usize),
    Z(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Cx(usize, usize),
}

impl CtGate {
    pub fn inverse(self) -> CtGate {
        match self {
            CtGate::S(q) => CtGate::Sdg(q),
            CtGate::Sdg(q) => CtGate::S(q),
            CtGate::T(q) => CtGate::Tdg(q),
            CtGate::Tdg(q) => CtGate::T(q),
            g => g,
        }
    }

    pub fn is_t(self) -> bool {
        matches!(self, CtGate::T(_) | CtGate::Tdg(_))
    }

    pub fn qubits(self) -> (usize, Option<usize>) {
        match self {
            CtGate::X(q) | CtGate::Z(q) | CtGate::H(q) | CtGate::S(q) | CtGate::Sdg(q) | CtGate::T(q) | CtGate::Tdg(q) => {
                (q, None)
            }
            CtGate::Cx(c, t) => (c, Some(t)),
        }
    }

    pub fn map(self, f: impl Fn(usize) -> usize) -> CtGate {
        match self {
            CtGate::X(q) => CtGate::X(f(q)),
            CtGate::Z(q) => CtGate::Z(f(q)),
            CtGate::H(q) => CtGate::H(f(q)),
            CtGate::S(q) => CtGate::S(f(q)),
            CtGate::Sdg(q) => CtGate::Sdg(f(q)),
            CtGate::T(q) => CtGate::T(f(q)),
            CtGate::Tdg(q) => CtGate::Tdg(f(q)),
            CtGate::Cx(c, t) => CtGate::Cx(f(c), f(t)),
        }
    }

    fn qasm_name(self) -> &'static str {
        match self {
            CtGate::X(_) => "x",
            CtGate::Z(_) => "z",
            CtGate::H(_) => "h",
            CtGate::S(_) => "s",
            CtGate::Sdg(_) => "sdg",
            CtGate::T(_) => "t",
            CtGate::Tdg(_) => "tdg",
            CtGate::Cx(..) => "cx",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub x: usize,
    pub z: usize,
    pub h: usize,
    pub s: usize,
    pub t: usize,
    pub cnot: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordTNetwork {
    pub qubits: usize,
    pub gates: Vec<CtGate>,
}

impl CliffordTNetwork {
    pub fn new(qubits: usize) -> Self {
        CliffordTNetwork { qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, g: CtGate) {
        let (a, b) = g.qubits();
        assert!(a < self.qubits && b.is_none_or(|b| b < self.qubits && b != a), "bad gate {g:?} on {} qubits", self.qubits);
        self.gates.push(g);
    }

    pub fn x(&mut self, q: usize) {
        self.push(CtGate::X(q))
    }
    pub fn z(&mut self, q: usize) {
        self.push(CtGate::Z(q))
    }
    pub fn h(&mut self, q: usize) {
        self.push(CtGate::H(q))
    }
    pub fn s(&mut self, q: usize) {
        self.push(CtGate::S(q))
    }
    pub fn sdg(&mut self, q: usize) {
        self.push(CtGate::Sdg(q))
    }
    pub fn t(&mut self, q: usize) {
        self.push(CtGate::T(q))
    }
    pub fn tdg(&mut self, q: usize) {
        self.push(CtGate::Tdg(q))
    }
    pub fn cx(&mut self, c: usize, t: usize) {
        self.push(CtGate::Cx(c, t))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_t()).count()
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            match g {
                CtGate::X(_) => c.x += 1,
                CtGate::Z(_) => c.z += 1,
                CtGate::H(_) => c.h += 1,
                CtGate::S(_) | CtGate::Sdg(_) => c.s += 1,
                CtGate::T(_) | CtGate::Tdg(_) => c.t += 1,
                CtGate::Cx(..) => c.cnot += 1,
            }
        }
        c
    }

    pub fn inverse(&self) -> Self {
        CliffordTNetwork { qubits: self.qubits, gates: self.gates.iter().rev().map(|g| g.inverse()).collect() }
    }

    pub fn append(&mut self, other: &CliffordTNetwork) {
        assert!(other.qubits <= self.qubits);
        self.gates.extend_from_slice(&other.gates);
    }

    /// Append `other` with its qubit `i` placed on `map[i]`.
    pub fn append_mapped(&mut self, other: &CliffordTNetwork, map: &[usize]) {
        for g in &other.gates {
            self.push(g.map(|q| map[q]));
        }
    }

    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        writeln!(out, "qreg q[{}];", self.qubits).unwrap();
        for g in &self.gates {
            match g.qubits() {
                (q, None) => writeln!(out, "{} q[{q}];", g.qasm_name()).unwrap(),
                (c, Some(t)) => writeln!(out, "cx q[{c}],q[{t}];").unwrap(),
            }
        }
        out
    }

    /// Compact `;`-separated gate list, as used in database records.
    pub fn to_gate_list(&self) -> String {
        self.gates
            .iter()
            .map(|g| match g.qubits() {
                (q, None) => format!("{} q[{q}]", g.qasm_name()),
                (c, Some(t)) => format!("cx q[{c}],q[{t}]"),
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parse the OpenQASM subset written by [`to_qasm`](Self::to_qasm), or a
    /// bare `;`-separated gate list when `qubits` is given.
    pub fn from_qasm(text: &str, qubits: Option<usize>) -> Result<Self, ParseError> {
        let mut net = qubits.map(CliffordTNetwork::new);
        let mut line = 1;
        for stmt in text.split(';') {
            let here = line;
            line += stmt.matches('\n').count();
            let s = stmt.trim();
            if s.is_empty() || s.starts_with("OPENQASM") || s.starts_with("include") || s.starts_with("//") {
                continue;
            }
            if let Some(rest) = s.strip_prefix("qreg") {
                let n = bracket_index(rest).ok_or_else(|| ParseError::new(here, format!("bad qreg {s:?}")))?;
                net = Some(CliffordTNetwork::new(n));
                continue;
            }
            let net = net.as_mut().ok_or_else(|| ParseError::new(here, "gate before qreg"))?;
            let (name, args) = s.split_once(char::is_whitespace).ok_or_else(|| ParseError::new(here, format!("bad statement {s:?}")))?;
            let qs: Vec<usize> = args
                .split(',')
                .map(|a| bracket_index(a).ok_or_else(|| ParseError::new(here, format!("bad operand {a:?}"))))
                .collect::<Result<_, _>>()?;
            let g = match (name, qs.as_slice()) {
                ("x", [q]) => CtGate::X(*q),
                ("z", [q]) => CtGate::Z(*q),
                ("h", [q]) => CtGate::H(*q),
                ("s", [q]) => CtGate::S(*q),
                ("sdg", [q]) => CtGate::Sdg(*q),
                ("t", [q]) => CtGate::T(*q),
                ("tdg", [q]) => CtGate::Tdg(*q),
                ("cx", [c, t]) if c != t => CtGate::Cx(*c, *t),
                _ => return Err(ParseError::new(here, format!("unsupported gate {s:?}"))),
            };
            let (a, b) = g.qubits();
            if a.max(b.unwrap_or(0)) >= net.qubits {
                return Err(ParseError::new(here, format!("qubit out of range in {s:?}")));
            }
            net.push(g);
        }
        net.ok_or_else(|| ParseError::new(1, "missing qreg"))
    }
}

fn bracket_index(s: &str) -> Option<usize> {
    let s = s.trim();
    let open = s.find('[')?;
    let close = s.find(']')?;
    s[open + 1..close].trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qasm_roundtrip() {
        let mut c = CliffordTNetwork::new(3);
        c.h(2);
        c.cx(0, 2);
        c.tdg(2);
        c.s(1);
        let q = c.to_qasm();
        assert!(q.starts_with("OPENQASM 2.0;"));
        assert_eq!(CliffordTNetwork::from_qasm(&q, None).unwrap(), c);
        assert_eq!(CliffordTNetwork::from_qasm(&c.to_gate_list(), Some(3)).unwrap(), c);
        assert_eq!(c.t_count(), 1);
        assert_eq!(c.inverse().gates[1], CtGate::T(2));
    }

    #[test]
    fn qasm_rejects_unknown_gates() {
        assert!(CliffordTNetwork::from_qasm("qreg q[2];\nccx q[0],q[1];", None).is_err());
        assert!(CliffordTNetwork::from_qasm("cx q[0],q[5]", Some(2)).is_err());
    }
}

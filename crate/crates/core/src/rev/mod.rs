//! Reversible networks: a fixed set of lines and a cascade of
//! single-target and multiple-controlled Toffoli gates.

pub mod json;
pub mod real;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::RevError;
use crate::esop::EsopCover;
use crate::logic::{ConeFunction, GateFunction};
use crate::tt::TruthTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineInput {
    Name(String),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineOutput {
    Name(String),
    Zero,
    Garbage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub input: LineInput,
    pub output: LineOutput,
}

impl Line {
    pub fn is_constant_input(&self) -> bool {
        self.input == LineInput::Zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ControlFunction {
    Table(TruthTable),
    Esop(EsopCover),
    Cone(ConeFunction),
}

impl ControlFunction {
    pub fn arity(&self) -> usize {
        match self {
            ControlFunction::Table(t) => t.num_vars() as usize,
            ControlFunction::Esop(c) => c.num_vars as usize,
            ControlFunction::Cone(c) => c.arity(),
        }
    }

    pub fn eval_words(&self, ins: &[u64]) -> u64 {
        match self {
            ControlFunction::Table(t) => crate::logic::eval_table_words(t, ins),
            ControlFunction::Esop(c) => c.eval_words(ins),
            ControlFunction::Cone(c) => c.eval_words(ins),
        }
    }

    pub fn to_table(&self) -> Option<TruthTable> {
        match self {
            ControlFunction::Table(t) => Some(t.clone()),
            _ if self.arity() > crate::tt::MAX_DENSE_VARS as usize => None,
            ControlFunction::Esop(c) => Some(c.to_table()),
            ControlFunction::Cone(c) => Some(c.to_table()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ControlFunction::Esop(c) => c.is_empty(),
            _ => self.to_table().is_some_and(|t| t.is_zero()),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            ControlFunction::Table(t) => ControlFunction::Table(!t.clone()),
            ControlFunction::Esop(c) => {
                let mut c = c.clone();
                c.cubes.push(crate::esop::Cube::ONE);
                c.normalize();
                ControlFunction::Esop(c)
            }
            ControlFunction::Cone(c) => ControlFunction::Cone(c.complement()),
        }
    }
}

impl From<GateFunction> for ControlFunction {
    fn from(f: GateFunction) -> Self {
        match f {
            GateFunction::Table(t) => ControlFunction::Table(t),
            GateFunction::Cone(c) => ControlFunction::Cone(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevGate {
    /// `target ^= function(controls)`, control `i` feeding variable `i`.
    SingleTarget { controls: Vec<usize>, function: ControlFunction, target: usize },
    /// `target ^= AND of controls`, each `(line, positive)`.
    Mct { controls: Vec<(usize, bool)>, target: usize },
}

impl RevGate {
    pub fn stg(controls: Vec<usize>, function: ControlFunction, target: usize) -> Self {
        RevGate::SingleTarget { controls, function, target }
    }

    pub fn mct(controls: Vec<(usize, bool)>, target: usize) -> Self {
        RevGate::Mct { controls, target }
    }

    pub fn not(target: usize) -> Self {
        RevGate::Mct { controls: vec![], target }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        RevGate::Mct { controls: vec![(control, true)], target }
    }

    pub fn target(&self) -> usize {
        match self {
            RevGate::SingleTarget { target, .. } | RevGate::Mct { target, .. } => *target,
        }
    }

    pub fn control_lines(&self) -> Vec<usize> {
        match self {
            RevGate::SingleTarget { controls, .. } => controls.clone(),
            RevGate::Mct { controls, .. } => controls.iter().map(|c| c.0).collect(),
        }
    }

    pub fn is_mct(&self) -> bool {
        matches!(self, RevGate::Mct { .. })
    }

    /// Controls of an MCT, or of a single-target gate whose function is a
    /// single product term.
    pub fn mct_controls(&self) -> Option<Vec<(usize, bool)>> {
        match self {
            RevGate::Mct { controls, .. } => Some(controls.clone()),
            RevGate::SingleTarget { controls, function: ControlFunction::Esop(c), .. } if c.len() == 1 => {
                let cube = c.cubes[0];
                Some(
                    (0..controls.len() as u32)
                        .filter(|&v| cube.mask >> v & 1 == 1)
                        .map(|v| (controls[v as usize], cube.polarity >> v & 1 == 1))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn validate(&self, num_lines: usize) -> Result<(), RevError> {
        let t = self.target();
        if t >= num_lines {
            return Err(RevError::LineOutOfRange(t));
        }
        let ctrls = self.control_lines();
        for (i, &c) in ctrls.iter().enumerate() {
            if c >= num_lines {
                return Err(RevError::LineOutOfRange(c));
            }
            if c == t {
                return Err(RevError::TargetInControls(c));
            }
            if ctrls[..i].contains(&c) {
                return Err(RevError::DuplicateControl(c));
            }
        }
        if let RevGate::SingleTarget { controls, function, .. } = self {
            if function.arity() != controls.len() {
                return Err(RevError::ArityMismatch { arity: function.arity(), controls: controls.len() });
            }
        }
        Ok(())
    }

    /// Apply to 64 line-states at once.
    pub fn apply_words(&self, state: &mut [u64]) {
        let flip = match self {
            RevGate::SingleTarget { controls, function, .. } => {
                let ins: Vec<u64> = controls.iter().map(|&c| state[c]).collect();
                function.eval_words(&ins)
            }
            RevGate::Mct { controls, .. } => {
                controls.iter().fold(!0u64, |acc, &(l, pos)| acc & if pos { state[l] } else { !state[l] })
            }
        };
        state[self.target()] ^= flip;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RevNetwork {
    pub lines: Vec<Line>,
    pub gates: Vec<RevGate>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RevStats {
    pub lines: usize,
    pub gates: usize,
    pub single_target: usize,
    pub mct: usize,
    /// MCT gates keyed by number of controls.
    pub mct_by_controls: BTreeMap<usize, usize>,
    /// Single-target gates keyed by number of controls.
    pub stg_by_controls: BTreeMap<usize, usize>,
}

impl RevNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_line(&mut self, input: LineInput, output: LineOutput) -> usize {
        self.lines.push(Line { input, output });
        self.lines.len() - 1
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn append_gate(&mut self, g: RevGate) -> Result<(), RevError> {
        g.validate(self.lines.len())?;
        self.gates.push(g);
        Ok(())
    }

    pub fn statistics(&self) -> RevStats {
        let mut s = RevStats { lines: self.lines.len(), gates: self.gates.len(), ..Default::default() };
        for g in &self.gates {
            let k = g.control_lines().len();
            if g.is_mct() {
                s.mct += 1;
                *s.mct_by_controls.entry(k).or_default() += 1;
            } else {
                s.single_target += 1;
                *s.stg_by_controls.entry(k).or_default() += 1;
            }
        }
        s
    }

    /// Apply the cascade to 64 line-states at once.
    pub fn simulate_words(&self, state: &mut [u64]) {
        assert_eq!(state.len(), self.lines.len());
        for g in &self.gates {
            g.apply_words(state);
        }
    }

    /// Gates in reverse order; the inverse, since every gate is an involution.
    pub fn mirror(&self) -> RevNetwork {
        RevNetwork { lines: self.lines.clone(), gates: self.gates.iter().rev().cloned().collect() }
    }

    pub fn input_lines(&self) -> Vec<(String, usize)> {
        self.lines
            .iter()
            .enumerate()
            .filter_map(|(i, l)| match &l.input {
                LineInput::Name(n) => Some((n.clone(), i)),
                LineInput::Zero => None,
            })
            .collect()
    }

    pub fn output_lines(&self) -> Vec<(String, usize)> {
        self.lines
            .iter()
            .enumerate()
            .filter_map(|(i, l)| match &l.output {
                LineOutput::Name(n) => Some((n.clone(), i)),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: &str) -> LineInput {
        LineInput::Name(n.into())
    }

    fn out(n: &str) -> LineOutput {
        LineOutput::Name(n.into())
    }

    #[test]
    fn append_validates() {
        let mut r = RevNetwork::new();
        r.add_line(named("a"), out("a"));
        r.add_line(LineInput::Zero, out("y"));
        assert_eq!(r.append_gate(RevGate::cnot(0, 2)), Err(RevError::LineOutOfRange(2)));
        assert_eq!(r.append_gate(RevGate::cnot(1, 1)), Err(RevError::TargetInControls(1)));
        let bad = RevGate::stg(vec![0], ControlFunction::Table(TruthTable::one(2)), 1);
        assert!(matches!(r.append_gate(bad), Err(RevError::ArityMismatch { .. })));
        assert!(r.gates.is_empty());
    }

    #[test]
    fn not_and_involution() {
        let mut r = RevNetwork::new();
        r.add_line(named("a"), out("a"));
        r.add_line(named("b"), out("b"));
        r.append_gate(RevGate::not(1)).unwrap();
        let mut s = vec![0xf0, 0xcc];
        r.simulate_words(&mut s);
        assert_eq!(s, vec![0xf0, !0xccu64]);
        let g = RevGate::stg(vec![0], ControlFunction::Table(TruthTable::var(1, 0)), 1);
        r.append_gate(g.clone()).unwrap();
        r.append_gate(g).unwrap();
        let mut s = vec![0xf0, 0xcc];
        r.simulate_words(&mut s);
        assert_eq!(s, vec![0xf0, !0xccu64]);
    }

    #[test]
    fn empty_statistics() {
        let s = RevNetwork::new().statistics();
        assert_eq!((s.lines, s.gates), (0, 0));
    }
}

//! Simulation and equivalence checking.
//!
//! Sampled checks draw input patterns from xorshift64 (shifts 13, 7, 17)
//! seeded with the given seed (0 is replaced by `0x9e3779b97f4a7c15`). Each
//! 64-pattern batch takes one draw per primary input, in input order.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{CliffordTNetwork, CtGate};
use crate::error::{Error, Result};
use crate::logic::{lane_pattern, LogicNetwork};
use crate::rev::{LineInput, LineOutput, RevNetwork};

pub const UNITARY_MAX_QUBITS: usize = 8;
pub const TOLERANCE: f64 = 1e-9;

/// Dense `2^q × 2^q` matrix, column-major.
#[derive(Clone, Debug)]
pub struct Unitary {
    pub qubits: usize,
    data: Vec<Complex64>,
}

impl std::ops::Index<(usize, usize)> for Unitary {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[c * self.dim() + r]
    }
}

impl Unitary {
    pub fn identity(qubits: usize) -> Self {
        let dim = 1 << qubits;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Unitary { qubits, data }
    }

    /// Permutation matrix sending basis state `i` to `perm(i)`.
    pub fn permutation(qubits: usize, perm: impl Fn(usize) -> usize) -> Self {
        let dim = 1 << qubits;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for c in 0..dim {
            data[c * dim + perm(c)] = Complex64::new(1.0, 0.0);
        }
        Unitary { qubits, data }
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    /// `max |U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for r in 0..d {
                    s += self[(r, a)].conj() * self[(r, b)];
                }
                let e = if a == b { s - 1.0 } else { s };
                worst = worst.max(e.norm());
            }
        }
        worst
    }

    /// Equality up to global phase: the phase of the first entry (column-major)
    /// with magnitude above tolerance is normalized away.
    pub fn equals_up_to_phase(&self, o: &Unitary, tol: f64) -> bool {
        if self.qubits != o.qubits {
            return false;
        }
        let Some(k) = self.data.iter().position(|z| z.norm() > tol) else {
            return o.data.iter().all(|z| z.norm() <= tol);
        };
        if o.data[k].norm() <= tol {
            return false;
        }
        let phase = o.data[k] / self.data[k];
        let phase = phase / phase.norm();
        self.data.iter().zip(&o.data).all(|(a, b)| (a * phase - b).norm() <= tol)
    }
}

fn apply_gate(v: &mut [Complex64], g: CtGate) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let omega = Complex64::new(s, s);
    let diag = |v: &mut [Complex64], q: usize, f: Complex64| {
        for (i, z) in v.iter_mut().enumerate() {
            if i >> q & 1 == 1 {
                *z *= f;
            }
        }
    };
    match g {
        CtGate::X(q) => {
            for i in 0..v.len() {
                if i >> q & 1 == 0 {
                    v.swap(i, i | 1 << q);
                }
            }
        }
        CtGate::H(q) => {
            for i in 0..v.len() {
                if i >> q & 1 == 0 {
                    let (a, b) = (v[i], v[i | 1 << q]);
                    v[i] = (a + b) * s;
                    v[i | 1 << q] = (a - b) * s;
                }
            }
        }
        CtGate::Z(q) => diag(v, q, Complex64::new(-1.0, 0.0)),
        CtGate::S(q) => diag(v, q, Complex64::new(0.0, 1.0)),
        CtGate::Sdg(q) => diag(v, q, Complex64::new(0.0, -1.0)),
        CtGate::T(q) => diag(v, q, omega),
        CtGate::Tdg(q) => diag(v, q, omega.conj()),
        CtGate::Cx(c, t) => {
            for i in 0..v.len() {
                if i >> c & 1 == 1 && i >> t & 1 == 0 {
                    v.swap(i, i | 1 << t);
                }
            }
        }
    }
}

/// Product of the gate matrices in cascade order.
pub fn simulate_unitary(net: &CliffordTNetwork) -> Result<Unitary> {
    if net.qubits > UNITARY_MAX_QUBITS {
        return Err(Error::Param(format!(
            "unitary simulation limited to {UNITARY_MAX_QUBITS} qubits, network has {}",
            net.qubits
        )));
    }
    let mut u = Unitary::identity(net.qubits);
    let d = u.dim();
    for col in u.data.chunks_mut(d) {
        for &g in &net.gates {
            apply_gate(col, g);
        }
    }
    Ok(u)
}

/// Whether `net` equals the MCT with the given `(line, positive)` controls.
pub fn mct_permutation_matches(net: &CliffordTNetwork, controls: &[(usize, bool)], target: usize) -> bool {
    let u = match simulate_unitary(net) {
        Ok(u) => u,
        Err(_) => return false,
    };
    let expected = Unitary::permutation(net.qubits, |i| {
        if controls.iter().all(|&(l, pos)| (i >> l & 1 == 1) == pos) {
            i ^ 1 << target
        } else {
            i
        }
    });
    u.equals_up_to_phase(&expected, TOLERANCE)
}

/// Bit-level simulation of a logic network on one input assignment; returns
/// one bit per vertex.
pub fn simulate_logic_bits(net: &LogicNetwork, inputs: &[bool]) -> Result<Vec<bool>> {
    if inputs.len() != net.inputs().len() {
        return Err(Error::Param(format!("expected {} input bits, got {}", net.inputs().len(), inputs.len())));
    }
    let words: Vec<u64> = inputs.iter().map(|&b| b as u64).collect();
    Ok(net.simulate_words(&words).into_iter().map(|w| w & 1 == 1).collect())
}

/// Bit-level simulation of a reversible network on one line-state.
pub fn simulate_rev_bits(net: &RevNetwork, state: &[bool]) -> Result<Vec<bool>> {
    if state.len() != net.num_lines() {
        return Err(Error::Param(format!("expected {} line bits, got {}", net.num_lines(), state.len())));
    }
    let mut words: Vec<u64> = state.iter().map(|&b| b as u64).collect();
    net.simulate_words(&mut words);
    Ok(words.into_iter().map(|w| w & 1 == 1).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl CheckMode {
    /// Exhaustive up to 16 inputs, otherwise 10^4 samples with seed 42.
    pub fn auto(num_inputs: usize) -> Self {
        if num_inputs <= 16 {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled { count: 10_000, seed: 42 }
        }
    }
}

pub struct XorShift64(u64);

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64(if seed == 0 { 0x9e37_79b9_7f4a_7c15 } else { seed })
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Input batches of up to 64 patterns: (words per input, valid-lane mask).
fn batches(n: usize, mode: CheckMode) -> Box<dyn Iterator<Item = (Vec<u64>, u64)>> {
    match mode {
        CheckMode::Exhaustive => {
            let rows = 1u64 << n;
            Box::new((0..rows.div_ceil(64)).map(move |b| {
                let base = b * 64;
                let words = (0..n as u32).map(|i| lane_pattern(base, i)).collect();
                let valid = rows - base;
                (words, if valid >= 64 { !0 } else { (1 << valid) - 1 })
            }))
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = XorShift64::new(seed);
            Box::new((0..count.div_ceil(64)).map(move |b| {
                let words = (0..n).map(|_| rng.next_u64()).collect();
                let valid = count - b * 64;
                (words, if valid >= 64 { !0 } else { (1 << valid) - 1 })
            }))
        }
    }
}

fn patterns(n: usize, mode: CheckMode) -> u64 {
    match mode {
        CheckMode::Exhaustive => 1 << n,
        CheckMode::Sampled { count, .. } => count,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: BTreeMap<String, bool>,
    pub output: String,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub garbage_free: bool,
    pub inputs_preserved: bool,
    pub patterns_tested: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Compare a reversible implementation against its specification. Lines are
/// matched to inputs and outputs by name; constant lines start at 0.
pub fn check_equivalence(spec: &LogicNetwork, imp: &RevNetwork, mode: CheckMode) -> Result<EquivalenceReport> {
    let n = spec.inputs().len();
    let mut in_line = vec![usize::MAX; n];
    for (name, line) in imp.input_lines() {
        let i = spec
            .input_index(&name)
            .ok_or_else(|| Error::Verify(format!("line {line} input {name:?} is not a specification input")))?;
        in_line[i] = line;
    }
    if let Some(i) = in_line.iter().position(|&l| l == usize::MAX) {
        return Err(Error::Verify(format!("specification input {:?} has no line", spec.name(spec.inputs()[i]))));
    }
    let out_names: Vec<String> = spec.outputs().iter().map(|&y| spec.name(y).unwrap_or("").to_string()).collect();
    let imp_outputs = imp.output_lines();
    let mut out_line = Vec::new();
    for name in &out_names {
        let l = imp_outputs
            .iter()
            .find(|(n, l)| n == name && !matches!(&imp.lines[*l].input, LineInput::Name(i) if i == name && spec.input_index(name).is_none()))
            .map(|p| p.1)
            .ok_or_else(|| Error::Verify(format!("specification output {name:?} has no line")))?;
        out_line.push(l);
    }
    let ancillae: Vec<usize> = imp
        .lines
        .iter()
        .enumerate()
        .filter(|(i, l)| l.is_constant_input() && !out_line.contains(i))
        .map(|(i, _)| i)
        .collect();
    let mut report = EquivalenceReport {
        equivalent: true,
        garbage_free: true,
        inputs_preserved: true,
        patterns_tested: patterns(n, mode),
        counterexample: None,
    };
    for (words, valid) in batches(n, mode) {
        let expect = spec.simulate_outputs(&words);
        let mut state = vec![0u64; imp.num_lines()];
        for (i, &l) in in_line.iter().enumerate() {
            state[l] = words[i];
        }
        imp.simulate_words(&mut state);
        for (i, &l) in in_line.iter().enumerate() {
            if (state[l] ^ words[i]) & valid != 0 {
                report.inputs_preserved = false;
            }
        }
        for &a in &ancillae {
            if state[a] & valid != 0 {
                report.garbage_free = false;
            }
        }
        for (o, &l) in out_line.iter().enumerate() {
            let diff = (state[l] ^ expect[o]) & valid;
            if diff != 0 && report.counterexample.is_none() {
                let lane = diff.trailing_zeros();
                report.equivalent = false;
                report.counterexample = Some(Counterexample {
                    inputs: spec
                        .inputs()
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (spec.name(v).unwrap_or("").to_string(), words[i] >> lane & 1 == 1))
                        .collect(),
                    output: out_names[o].clone(),
                    expected: expect[o] >> lane & 1 == 1,
                    actual: state[l] >> lane & 1 == 1,
                });
            }
        }
    }
    Ok(report)
}

/// Constant-0 lines that are not named outputs but end nonzero on some
/// tested pattern.
pub fn garbage_lines(net: &RevNetwork, mode: CheckMode) -> Vec<usize> {
    let inputs: Vec<usize> = net.input_lines().into_iter().map(|p| p.1).collect();
    let watched: Vec<usize> = net
        .lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_constant_input() && !matches!(l.output, LineOutput::Name(_)))
        .map(|(i, _)| i)
        .collect();
    let mut dirty = vec![false; net.num_lines()];
    for (words, valid) in batches(inputs.len(), mode) {
        let mut state = vec![0u64; net.num_lines()];
        for (i, &l) in inputs.iter().enumerate() {
            state[l] = words[i];
        }
        net.simulate_words(&mut state);
        for &w in &watched {
            if state[w] & valid != 0 {
                dirty[w] = true;
            }
        }
    }
    watched.into_iter().filter(|&w| dirty[w]).collect()
}

/// Every constant-0 line without a named output ends at 0.
pub fn check_clean_ancillae(net: &RevNetwork, mode: CheckMode) -> bool {
    garbage_lines(net, mode).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_t8() {
        let u = simulate_unitary(&CliffordTNetwork::new(2)).unwrap();
        assert!(u.equals_up_to_phase(&Unitary::identity(2), TOLERANCE));
        let mut c = CliffordTNetwork::new(1);
        for _ in 0..8 {
            c.t(0);
        }
        let u = simulate_unitary(&c).unwrap();
        assert!(u.equals_up_to_phase(&Unitary::identity(1), TOLERANCE));
        let mut c = CliffordTNetwork::new(1);
        c.t(0);
        assert!(!simulate_unitary(&c).unwrap().equals_up_to_phase(&Unitary::identity(1), TOLERANCE));
    }

    #[test]
    fn global_phase_is_ignored() {
        // S·X·S·X = i·I
        let mut c = CliffordTNetwork::new(1);
        c.x(0);
        c.s(0);
        c.x(0);
        c.s(0);
        let u = simulate_unitary(&c).unwrap();
        assert!((u[(0, 0)] - Complex64::new(0.0, 1.0)).norm() < TOLERANCE);
        assert!(u.equals_up_to_phase(&Unitary::identity(1), TOLERANCE));
        assert!(u.unitarity_error() < TOLERANCE);
    }

    #[test]
    fn toffoli7_is_exact() {
        let mut c = CliffordTNetwork::new(3);
        crate::clifford::mct::toffoli7(&mut c, 0, 1, 2);
        assert_eq!(c.t_count(), 7);
        assert!(mct_permutation_matches(&c, &[(0, true), (1, true)], 2));
        assert!(!mct_permutation_matches(&c, &[(0, true), (2, true)], 1));
    }

    #[test]
    fn budget_enforced() {
        assert!(simulate_unitary(&CliffordTNetwork::new(9)).is_err());
    }

    #[test]
    fn xorshift_reference_values() {
        let mut r = XorShift64::new(1);
        assert_eq!(r.next_u64(), 1082269761);
        assert_eq!(r.next_u64(), 1152992998833853505);
    }
}

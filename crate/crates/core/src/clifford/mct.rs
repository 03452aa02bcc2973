//! Multiple-controlled Toffoli gates in Clifford+T.
//!
//! Notation used below: `ω = e^{iπ/4}` and, for wires `x, y, z`,
//! `Q(x; y, z) = x − (x⊕y) − (x⊕z) + (x⊕y⊕z) = 4xyz − 2yz`.
//! `ω^Q` costs 4 T on wire `x` and equals CCZ·CS†(y, z).
//!
//! Exact C^kX on target `t` is built as `H_t · D · V · D' · V† · H_t` where
//! `D, D'` are diagonal on an ancilla `a` and `V` toggles `a` by a product of
//! the remaining controls up to a diagonal phase, which `V†` undoes. Borrowed
//! lines may hold any value and are returned unchanged.

use std::collections::HashMap;

use serde::Serialize;

use super::CliffordTNetwork;
use crate::error::{Error, Result};

const INF: u32 = u32::MAX / 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AncillaContext {
    /// Lines of unknown value that must be restored.
    pub dirty: Vec<usize>,
    /// Lines known to hold 0. Used exactly like dirty lines.
    pub clean: Vec<usize>,
}

impl AncillaContext {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn dirty(lines: impl IntoIterator<Item = usize>) -> Self {
        AncillaContext { dirty: lines.into_iter().collect(), clean: vec![] }
    }

    fn pool(&self, exclude: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = Vec::new();
        for &l in self.clean.iter().chain(&self.dirty) {
            if !exclude.contains(&l) && !p.contains(&l) {
                p.push(l);
            }
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MctRoute {
    Not,
    Cnot,
    Toffoli,
    /// Ancilla ladder, `8(k−1)` T.
    Ladder,
    /// Recursive split around one borrowed line.
    Split,
}

/// Extra lines a non-restoring toggle over `m` controls borrows.
fn ladder_lines(m: usize) -> usize {
    if m <= 3 {
        0
    } else {
        1 + ladder_lines(m - 2)
    }
}

fn ladder_t(m: usize) -> u32 {
    if m <= 1 {
        0
    } else {
        4 * (m as u32 - 1)
    }
}

#[derive(Clone, Copy, Debug)]
enum ExactPlan {
    Ladder,
    Split(usize),
}

#[derive(Clone, Copy, Debug)]
enum TogglePlan {
    Base,
    Ladder,
    Exact,
}

#[derive(Default)]
struct Planner {
    exact: HashMap<(usize, usize), (u32, Option<ExactPlan>)>,
    toggle: HashMap<(usize, usize), (u32, Option<TogglePlan>)>,
}

impl Planner {
    fn exact(&mut self, k: usize, pool: usize) -> (u32, Option<ExactPlan>) {
        if k <= 1 {
            return (0, None);
        }
        if k == 2 {
            return (7, None);
        }
        let pool = pool.min(2 * k);
        if let Some(&r) = self.exact.get(&(k, pool)) {
            return r;
        }
        let mut best = (INF, None);
        if pool > ladder_lines(k - 1) {
            best = (8 * (k as u32 - 1), Some(ExactPlan::Ladder));
        }
        if pool >= 1 {
            for s in 1..=k - 2 {
                let p = k - s;
                let d = if s == 1 { 8 } else { 2 * self.exact(s + 1, p + pool - 1).0 };
                let tg = 2 * self.toggle(p, s + pool).0;
                if d + tg < best.0 {
                    best = (d + tg, Some(ExactPlan::Split(s)));
                }
            }
        }
        self.exact.insert((k, pool), best);
        best
    }

    /// Restoring toggle with a diagonal phase.
    fn toggle(&mut self, m: usize, pool: usize) -> (u32, Option<TogglePlan>) {
        match m {
            0 | 1 => return (0, Some(TogglePlan::Base)),
            2 => return (4, Some(TogglePlan::Base)),
            3 => return (8, Some(TogglePlan::Base)),
            _ => {}
        }
        let pool = pool.min(2 * m);
        if let Some(&r) = self.toggle.get(&(m, pool)) {
            return r;
        }
        let mut best = (INF, None);
        if pool >= ladder_lines(m) {
            best = (8 + 2 * ladder_t(m - 2), Some(TogglePlan::Ladder));
        }
        let e = self.exact(m, pool).0;
        if e < best.0 {
            best = (e, Some(TogglePlan::Exact));
        }
        self.toggle.insert((m, pool), best);
        best
    }
}

/// `ω^{±Q(x; y, z)}` on wire `x`.
fn phase_q(c: &mut CliffordTNetwork, x: usize, y: usize, z: usize, positive: bool) {
    type Op = fn(&mut CliffordTNetwork, usize);
    let (p, n): (Op, Op) =
        if positive { (CliffordTNetwork::t, CliffordTNetwork::tdg) } else { (CliffordTNetwork::tdg, CliffordTNetwork::t) };
    p(c, x);
    c.cx(y, x);
    n(c, x);
    c.cx(z, x);
    p(c, x);
    c.cx(y, x);
    n(c, x);
    c.cx(z, x);
}

pub(crate) fn toffoli7(c: &mut CliffordTNetwork, c1: usize, c2: usize, t: usize) {
    c.h(t);
    c.cx(c2, t);
    c.tdg(t);
    c.cx(c1, t);
    c.t(t);
    c.cx(c2, t);
    c.tdg(t);
    c.cx(c1, t);
    c.t(c2);
    c.t(t);
    c.h(t);
    c.cx(c1, c2);
    c.t(c1);
    c.tdg(c2);
    c.cx(c1, c2);
}

/// Relative-phase Toffoli, 4 T.
fn rtof(c: &mut CliffordTNetwork, c1: usize, c2: usize, t: usize) {
    c.h(t);
    phase_q(c, t, c1, c2, true);
    c.h(t);
}

/// Involution used to sandwich the 3-control relative-phase Toffoli.
fn rc3x_frame(c: &mut CliffordTNetwork, ctrl: usize, t: usize) {
    c.h(t);
    c.t(t);
    c.cx(ctrl, t);
    c.tdg(t);
    c.h(t);
}

/// Relative-phase 3-control Toffoli, 8 T.
fn rc3x(c: &mut CliffordTNetwork, c0: usize, c1: usize, c2: usize, t: usize) {
    rc3x_frame(c, c2, t);
    phase_q(c, t, c0, c1, false);
    rc3x_frame(c, c2, t);
}

/// `ω^{(b⊕y) − (b⊕y⊕c)}`, 2 T.
fn rung_phase(c: &mut CliffordTNetwork, b: usize, y: usize, ctl: usize) {
    c.cx(y, b);
    c.t(b);
    c.cx(ctl, b);
    c.tdg(b);
    c.cx(ctl, b);
    c.cx(y, b);
}

/// `ω^{2(−b + (b⊕c))}`, Clifford.
fn rung_clifford(c: &mut CliffordTNetwork, b: usize, ctl: usize) {
    c.sdg(b);
    c.cx(ctl, b);
    c.s(b);
    c.cx(ctl, b);
}

/// Rung around an inner toggle of `y`: the two 3-control relative-phase
/// Toffolis targeting `b` with `y, c0, c1` share their inner frames and
/// y-free phases, leaving 8 T.
fn rung(c: &mut CliffordTNetwork, b: usize, y: usize, c0: usize, c1: usize, inner: &CliffordTNetwork) {
    rc3x_frame(c, c1, b);
    rung_phase(c, b, y, c0);
    c.append(inner);
    rung_phase(c, b, y, c0);
    rung_clifford(c, b, c0);
    rc3x_frame(c, c1, b);
}

/// Toggle `b` by the product of `ctrls` up to a diagonal phase; borrowed
/// lines in `anc` are left modified. `4(m−1)` T.
fn ladder_toggle(c: &mut CliffordTNetwork, ctrls: &[usize], b: usize, anc: &[usize]) {
    match ctrls.len() {
        0 => c.x(b),
        1 => c.cx(ctrls[0], b),
        2 => rtof(c, ctrls[0], ctrls[1], b),
        3 => rc3x(c, ctrls[0], ctrls[1], ctrls[2], b),
        m => {
            let y = anc[0];
            let mut inner = CliffordTNetwork::new(c.qubits);
            ladder_toggle(&mut inner, &ctrls[..m - 2], y, &anc[1..]);
            rung(c, b, y, ctrls[m - 1], ctrls[m - 2], &inner);
        }
    }
}

fn emit_toggle(c: &mut CliffordTNetwork, pl: &mut Planner, ctrls: &[usize], b: usize, pool: &[usize]) {
    let m = ctrls.len();
    match pl.toggle(m, pool.len()).1.expect("toggle plan") {
        TogglePlan::Base => ladder_toggle(c, ctrls, b, &[]),
        TogglePlan::Ladder => {
            let y = pool[0];
            let mut inner = CliffordTNetwork::new(c.qubits);
            ladder_toggle(&mut inner, &ctrls[..m - 2], y, &pool[1..]);
            rung(c, b, y, ctrls[m - 1], ctrls[m - 2], &inner);
            c.append(&inner.inverse());
        }
        TogglePlan::Exact => emit_exact(c, pl, ctrls, b, pool),
    }
}

fn emit_exact(c: &mut CliffordTNetwork, pl: &mut Planner, ctrls: &[usize], t: usize, pool: &[usize]) {
    let k = ctrls.len();
    match k {
        0 => return c.x(t),
        1 => return c.cx(ctrls[0], t),
        2 => return toffoli7(c, ctrls[0], ctrls[1], t),
        _ => {}
    }
    let a = pool[0];
    match pl.exact(k, pool.len()).1.expect("caller checked feasibility") {
        ExactPlan::Ladder => {
            let mut v = CliffordTNetwork::new(c.qubits);
            ladder_toggle(&mut v, &ctrls[..k - 1], a, &pool[1..]);
            c.h(t);
            phase_q(c, a, ctrls[k - 1], t, true);
            c.append(&v);
            phase_q(c, a, ctrls[k - 1], t, false);
            c.append(&v.inverse());
            c.h(t);
        }
        ExactPlan::Split(s) => {
            let (cp, cs) = ctrls.split_at(k - s);
            let mut d = CliffordTNetwork::new(c.qubits);
            if s == 1 {
                phase_q(&mut d, a, cs[0], t, true);
            } else {
                let sub: Vec<usize> = std::iter::once(a).chain(cs.iter().copied()).collect();
                let sub_pool: Vec<usize> = cp.iter().chain(&pool[1..]).copied().collect();
                d.h(t);
                emit_exact(&mut d, pl, &sub, t, &sub_pool);
                d.h(t);
            }
            let mut v = CliffordTNetwork::new(c.qubits);
            let v_pool: Vec<usize> = cs.iter().chain(std::iter::once(&t)).chain(&pool[1..]).copied().collect();
            emit_toggle(&mut v, pl, cp, a, &v_pool);
            c.h(t);
            c.append(&d);
            c.append(&v);
            c.append(&d.inverse());
            c.append(&v.inverse());
            c.h(t);
        }
    }
}

/// T-count of the cheapest exact route for `k` controls with `pool` borrowable
/// lines, or `None` when no route exists.
pub fn mct_t_cost(k: usize, pool: usize) -> Option<u32> {
    let (c, _) = Planner::default().exact(k, pool);
    (c < INF).then_some(c)
}

/// Lower a multiple-controlled Toffoli. Controls are `(line, positive)`;
/// negative controls are conjugated with X. The network is `width` wide.
pub fn lower_mct(
    controls: &[(usize, bool)],
    target: usize,
    ctx: &AncillaContext,
    width: usize,
) -> Result<(CliffordTNetwork, MctRoute)> {
    let mut c = CliffordTNetwork::new(width);
    let lines: Vec<usize> = controls.iter().map(|&(l, _)| l).chain(std::iter::once(target)).collect();
    let pool = ctx.pool(&lines);
    let k = controls.len();
    let mut pl = Planner::default();
    let route = match k {
        0 => MctRoute::Not,
        1 => MctRoute::Cnot,
        2 => MctRoute::Toffoli,
        _ => match pl.exact(k, pool.len()) {
            (_, Some(ExactPlan::Ladder)) => MctRoute::Ladder,
            (_, Some(ExactPlan::Split(_))) => MctRoute::Split,
            (_, None) => return Err(Error::NoAncilla(k)),
        },
    };
    for &(l, pos) in controls {
        if !pos {
            c.x(l);
        }
    }
    let ctrls: Vec<usize> = controls.iter().map(|&(l, _)| l).collect();
    emit_exact(&mut c, &mut pl, &ctrls, target, &pool);
    for &(l, pos) in controls {
        if !pos {
            c.x(l);
        }
    }
    Ok((c, route))
}

/// Lower an MCT reversible gate.
pub fn decompose_mct(
    gate: &crate::rev::RevGate,
    ctx: &AncillaContext,
) -> Result<(CliffordTNetwork, MctRoute)> {
    let controls = gate.mct_controls().ok_or_else(|| Error::Param("decompose_mct expects an MCT gate".into()))?;
    let width = controls
        .iter()
        .map(|c| c.0)
        .chain([gate.target()])
        .chain(ctx.dirty.iter().copied())
        .chain(ctx.clean.iter().copied())
        .max()
        .unwrap()
        + 1;
    lower_mct(&controls, gate.target(), ctx, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{mct_permutation_matches, simulate_unitary};

    #[test]
    fn small_cases() {
        let (c, r) = lower_mct(&[], 0, &AncillaContext::none(), 1).unwrap();
        assert_eq!((c.len(), c.t_count(), r), (1, 0, MctRoute::Not));
        let (c, r) = lower_mct(&[(0, true)], 1, &AncillaContext::none(), 2).unwrap();
        assert_eq!((c.len(), c.t_count(), r), (1, 0, MctRoute::Cnot));
        let (c, _) = lower_mct(&[(0, true), (1, true)], 2, &AncillaContext::none(), 3).unwrap();
        assert_eq!(c.t_count(), 7);
        assert!(matches!(lower_mct(&[(0, true), (1, true), (2, true)], 3, &AncillaContext::none(), 4), Err(Error::NoAncilla(3))));
    }

    #[test]
    fn building_blocks_are_relative_phase_toffolis() {
        // A monomial matrix whose permutation is the Toffoli.
        for (k, build) in [
            (2usize, Box::new(|c: &mut CliffordTNetwork| rtof(c, 0, 1, 2)) as Box<dyn Fn(&mut CliffordTNetwork)>),
            (3, Box::new(|c: &mut CliffordTNetwork| rc3x(c, 0, 1, 2, 3))),
        ] {
            let mut c = CliffordTNetwork::new(k + 1);
            build(&mut c);
            let u = simulate_unitary(&c).unwrap();
            let dim = 1usize << (k + 1);
            let full = (1usize << k) - 1;
            for col in 0..dim {
                let row = if col & full == full { col ^ (1 << k) } else { col };
                assert!((u[(row, col)].norm() - 1.0).abs() < 1e-9, "k={k} col={col}");
            }
        }
    }

    #[test]
    fn exact_routes_match_permutation() {
        for k in 3..=5 {
            for pool in 1..=(k - 1) / 2 + 1 {
                if pool + k + 1 > 8 {
                    continue;
                }
                let ctrls: Vec<(usize, bool)> = (0..k).map(|i| (i, i % 2 == 0)).collect();
                let ctx = AncillaContext::dirty(k + 1..k + 1 + pool);
                let (c, _) = lower_mct(&ctrls, k, &ctx, k + 1 + pool).unwrap();
                assert!(mct_permutation_matches(&c, &ctrls, k), "k={k} pool={pool}");
            }
        }
    }

    #[test]
    fn t_costs_meet_bounds() {
        assert_eq!(mct_t_cost(2, 0), Some(7));
        assert_eq!(mct_t_cost(3, 1), Some(16));
        for k in 4..=10 {
            assert!(mct_t_cost(k, (k - 1) / 2).unwrap() <= 8 * (k as u32 - 1));
            assert!(mct_t_cost(k, 1).unwrap() <= 16 * (k as u32 - 1), "k={k}");
        }
    }
}

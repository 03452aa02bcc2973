//! Template database: one Clifford+T circuit per non-constant class.
//!
//! Record format, one per line:
//! `n <hex representative> <t-count> <baseline|imported> <template>` where the
//! template is `qreg q[m];` followed by `;`-separated gates. Qubits `0..n`
//! are the controls, `n` the target and the rest borrowed helper lines.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use super::{canonicalize_an, class_representatives, MAX_CLASS_VARS};
use crate::clifford::{map_stg_direct, AncillaContext, CliffordTNetwork};
use crate::error::{Error, Result};
use crate::esop::EsopHeuristic;
use crate::rev::{ControlFunction, RevGate};
use crate::tt::TruthTable;
use crate::verify::{simulate_unitary, Unitary, TOLERANCE, UNITARY_MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Baseline,
    Imported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbEntry {
    pub canonical: TruthTable,
    pub t_count: usize,
    pub provenance: Provenance,
    pub template: CliffordTNetwork,
}

impl DbEntry {
    pub fn helpers(&self) -> usize {
        self.template.qubits - self.canonical.num_vars() as usize - 1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnClassDb {
    entries: BTreeMap<(u32, u64), DbEntry>,
}

/// Whether `c` maps the target (qubit `n`) to `t ⊕ f(controls)` and leaves
/// every other qubit unchanged, up to global phase.
pub fn template_realizes(c: &CliffordTNetwork, f: &TruthTable) -> bool {
    let n = f.num_vars() as usize;
    if c.qubits < n + 1 || c.qubits > UNITARY_MAX_QUBITS {
        return false;
    }
    let Ok(u) = simulate_unitary(c) else { return false };
    let mask = (1usize << n) - 1;
    let expect = Unitary::permutation(c.qubits, |i| if f.get((i & mask) as u64) { i ^ 1 << n } else { i });
    u.equals_up_to_phase(&expect, TOLERANCE)
}

fn baseline_template(f: &TruthTable, heuristic: EsopHeuristic) -> Result<CliffordTNetwork> {
    let n = f.num_vars() as usize;
    let helpers = if n >= 3 { 1 } else { 0 };
    let gate = RevGate::stg((0..n).collect(), ControlFunction::Table(f.clone()), n);
    let ctx = AncillaContext::dirty(n + 1..n + 1 + helpers);
    Ok(map_stg_direct(&gate, heuristic, &ctx, n + 1 + helpers)?.0)
}

/// One baseline entry per non-constant class of 1..=`n_max` variables,
/// produced by direct mapping of the representative.
pub fn build_database(n_max: u32, heuristic: EsopHeuristic) -> Result<AnClassDb> {
    if n_max > MAX_CLASS_VARS {
        return Err(Error::TooManyVars(n_max));
    }
    let mut db = AnClassDb::default();
    for n in 1..=n_max {
        for rep in class_representatives(n)? {
            if rep.is_zero() || rep.is_one() {
                continue;
            }
            let template = baseline_template(&rep, heuristic)?;
            db.insert_checked(DbEntry { t_count: template.t_count(), canonical: rep, provenance: Provenance::Baseline, template })?;
        }
    }
    Ok(db)
}

impl AnClassDb {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &DbEntry> {
        self.entries.values()
    }

    pub fn get(&self, canonical: &TruthTable) -> Option<&DbEntry> {
        self.entries.get(&(canonical.num_vars(), canonical.as_u64()))
    }

    fn insert_checked(&mut self, e: DbEntry) -> Result<()> {
        let (c, _) = canonicalize_an(&e.canonical)?;
        if c != e.canonical {
            return Err(Error::Database(format!("{} is not a class representative", e.canonical.to_hex())));
        }
        if e.template.t_count() != e.t_count {
            return Err(Error::Database(format!(
                "class {}: recorded T-count {} but template has {}",
                e.canonical.to_hex(),
                e.t_count,
                e.template.t_count()
            )));
        }
        if !template_realizes(&e.template, &e.canonical) {
            return Err(Error::Database(format!("class {}: template fails the unitary check", e.canonical.to_hex())));
        }
        self.entries.insert((e.canonical.num_vars(), e.canonical.as_u64()), e);
        Ok(())
    }

    /// Replace an entry with a better circuit for the class of `f`. The
    /// circuit is verified against the representative; it must have strictly
    /// fewer T gates than the current entry.
    pub fn import(&mut self, canonical: &TruthTable, template: CliffordTNetwork) -> Result<()> {
        let t = template.t_count();
        if let Some(cur) = self.get(canonical) {
            if t >= cur.t_count {
                return Err(Error::Database(format!(
                    "class {}: imported T-count {t} does not improve on {}",
                    canonical.to_hex(),
                    cur.t_count
                )));
            }
        }
        self.insert_checked(DbEntry { canonical: canonical.clone(), t_count: t, provenance: Provenance::Imported, template })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in self.entries.values() {
            let prov = match e.provenance {
                Provenance::Baseline => "baseline",
                Provenance::Imported => "imported",
            };
            let mut tpl = format!("qreg q[{}];", e.template.qubits);
            tpl.push_str(&e.template.to_gate_list());
            writeln!(s, "{} {} {} {} {}", e.canonical.num_vars(), e.canonical.to_hex(), e.t_count, prov, tpl).unwrap();
        }
        s
    }

    /// Parse and verify every record.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut db = AnClassDb::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| Error::Database(format!("line {}: {m}", i + 1));
            let f: Vec<&str> = line.splitn(5, char::is_whitespace).collect();
            if f.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let n: u32 = f[0].parse().map_err(|_| bad("bad variable count"))?;
            if n == 0 || n > MAX_CLASS_VARS {
                return Err(bad("variable count outside 1..=4"));
            }
            let canonical = TruthTable::from_hex(n, f[1]).ok_or_else(|| bad("bad truth table"))?;
            let t_count = f[2].parse().map_err(|_| bad("bad T-count"))?;
            let provenance = match f[3] {
                "baseline" => Provenance::Baseline,
                "imported" => Provenance::Imported,
                _ => return Err(bad("unknown provenance")),
            };
            let template = CliffordTNetwork::from_qasm(f[4], None).map_err(|e| bad(&e.to_string()))?;
            db.insert_checked(DbEntry { canonical, t_count, provenance, template }).map_err(|e| bad(&e.to_string()))?;
        }
        Ok(db)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Load `path`, or build the baseline database and write it there.
    pub fn load_or_build(path: &Path, heuristic: EsopHeuristic) -> Result<Self> {
        if path.exists() {
            return Self::load(path);
        }
        let db = build_database(MAX_CLASS_VARS, heuristic)?;
        db.save(path)?;
        Ok(db)
    }
}

/// CNOTs realizing `x ↦ Mx` on `lines`, where bit `i` of `x` sits on
/// `lines[i]`.
pub fn linear_cnots(m: &[u8], lines: &[usize], c: &mut CliffordTNetwork) {
    let n = m.len();
    let mut a = m.to_vec();
    // Row operations reducing `a` to I; `M` is their product in reverse.
    let mut ops: Vec<(usize, usize)> = Vec::new();
    let mut add = |a: &mut Vec<u8>, dst: usize, src: usize| {
        a[dst] ^= a[src];
        ops.push((src, dst));
    };
    for col in 0..n {
        if a[col] >> col & 1 == 0 {
            let p = (col + 1..n).find(|&i| a[i] >> col & 1 == 1).expect("matrix is invertible");
            add(&mut a, col, p);
        }
        for i in 0..n {
            if i != col && a[i] >> col & 1 == 1 {
                add(&mut a, i, col);
            }
        }
    }
    for &(src, dst) in ops.iter().rev() {
        c.cx(lines[src], lines[dst]);
    }
}

/// Lower a single-target gate with at most 4 controls through the class
/// template, conjugated by the input transform: `U_b · U_{A⁻¹} · template ·
/// X^p · U_{A⁻¹}† · U_b`. Helper qubits of the template are mapped onto
/// `helpers`, which must be borrowable lines outside the gate.
pub fn lookup_and_instantiate(
    db: &AnClassDb,
    controls: &[usize],
    f: &TruthTable,
    target: usize,
    helpers: &[usize],
    width: usize,
) -> Result<CliffordTNetwork> {
    let n = f.num_vars() as usize;
    if controls.len() != n {
        return Err(Error::Param(format!("{} controls for a {n}-variable function", controls.len())));
    }
    let mut out = CliffordTNetwork::new(width);
    if f.is_zero() {
        return Ok(out);
    }
    if f.is_one() {
        out.x(target);
        return Ok(out);
    }
    let (canonical, w) = canonicalize_an(f)?;
    let entry = db
        .get(&canonical)
        .ok_or_else(|| Error::Database(format!("no entry for class {} of {} variables", canonical.to_hex(), n)))?;
    let helpers: Vec<usize> =
        helpers.iter().copied().filter(|h| *h != target && !controls.contains(h)).take(entry.helpers()).collect();
    if helpers.len() < entry.helpers() {
        return Err(Error::NoAncilla(n));
    }
    // canonical(x) = p ⊕ f(Ax ⊕ b), so f(y) = p ⊕ canonical(A⁻¹(y ⊕ b)).
    let inv = super::invert_matrix(&w.rows).expect("witness is invertible");
    let mut pre = CliffordTNetwork::new(width);
    for (i, &c) in controls.iter().enumerate().take(n) {
        if w.b >> i & 1 == 1 {
            pre.x(c);
        }
    }
    linear_cnots(&inv, controls, &mut pre);
    let map: Vec<usize> = controls.iter().copied().chain([target]).chain(helpers).collect();
    out.append(&pre);
    out.append_mapped(&entry.template, &map);
    if w.p {
        out.x(target);
    }
    out.append(&pre.inverse());
    Ok(out)
}

/// Convenience wrapper on a single-target gate.
pub fn instantiate_gate(db: &AnClassDb, gate: &RevGate, helpers: &[usize], width: usize) -> Result<CliffordTNetwork> {
    match gate {
        RevGate::SingleTarget { controls, function, target } => {
            let f = function.to_table().ok_or(Error::TooManyVars(controls.len() as u32))?;
            lookup_and_instantiate(db, controls, &f, *target, helpers, width)
        }
        RevGate::Mct { controls, target } => {
            let n = controls.len() as u32;
            let pol = controls.iter().enumerate().fold(0u64, |acc, (i, c)| acc | (c.1 as u64) << i);
            let f = TruthTable::from_fn(n, |x| x == pol);
            let lines: Vec<usize> = controls.iter().map(|c| c.0).collect();
            lookup_and_instantiate(db, &lines, &f, *target, helpers, width)
        }
    }
}

/// Witness-independent check used by tests: the transform's action as a
/// reversible map equals the CNOT network.
#[cfg(test)]
fn linear_matches(m: &[u8]) -> bool {
    let n = m.len();
    let mut c = CliffordTNetwork::new(n);
    linear_cnots(m, &(0..n).collect::<Vec<_>>(), &mut c);
    let u = simulate_unitary(&c).unwrap();
    let expect = Unitary::permutation(n, |x| super::mat_vec(m, x as u8) as usize);
    u.equals_up_to_phase(&expect, TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::general_linear_group;

    #[test]
    fn cnot_synthesis_realizes_matrices() {
        for n in 1..=3 {
            for m in general_linear_group(n) {
                assert!(linear_matches(m), "{m:?}");
            }
        }
    }

    #[test]
    fn small_database() {
        let db = build_database(2, EsopHeuristic::DefWo4).unwrap();
        assert_eq!(db.len(), 1 + 2);
        let and = canonicalize_an(&TruthTable::from_u64(2, 0x8)).unwrap().0;
        assert_eq!(db.get(&and).unwrap().t_count, 7);
        let x1 = TruthTable::var(1, 0);
        let e = db.get(&canonicalize_an(&x1).unwrap().0).unwrap();
        assert_eq!(e.t_count, 0);
        let text = db.to_text();
        assert_eq!(AnClassDb::from_text(&text).unwrap(), db);
    }

    #[test]
    fn instantiation_is_exact() {
        let db = build_database(3, EsopHeuristic::DefWo4).unwrap();
        for bits in [0x8u64, 0x1, 0x2, 0x7, 0x9, 0x6] {
            let f = TruthTable::from_u64(2, bits);
            let c = lookup_and_instantiate(&db, &[0, 1], &f, 2, &[], 3).unwrap();
            assert!(template_realizes(&c, &f), "{bits:x}");
        }
        for bits in [0xe8u64, 0x17, 0x80, 0x69, 0x35] {
            let f = TruthTable::from_u64(3, bits);
            let c = lookup_and_instantiate(&db, &[0, 1, 2], &f, 3, &[4], 5).unwrap();
            assert!(template_realizes(&c, &f), "{bits:x}");
        }
    }

    #[test]
    fn rejects_bad_records_and_non_improving_imports() {
        let mut db = build_database(2, EsopHeuristic::DefWo4).unwrap();
        let and = TruthTable::from_u64(2, 0x1);
        let mut wrong = CliffordTNetwork::new(3);
        wrong.cx(0, 2);
        assert!(db.import(&and, wrong).is_err());
        let same = db.get(&and).unwrap().template.clone();
        assert!(db.import(&and, same).is_err());
        assert!(AnClassDb::from_text("2 1 0 baseline qreg q[3];cx q[0],q[2]").is_err());
        assert!(AnClassDb::from_text("2 8 7 baseline qreg q[3];").is_err());
    }

    #[test]
    fn four_variable_database_round_trips() {
        let db = build_database(4, EsopHeuristic::DefWo4).unwrap();
        assert_eq!(db.len(), 1 + 2 + 5 + 17);
        let back = AnClassDb::from_text(&db.to_text()).unwrap();
        assert_eq!(back, db);
    }
}

//! Affine-under-negation classification of functions of up to 4 variables,
//! the template database keyed by class, and the LUT-based and hybrid
//! single-target gate mappings built on it.
//!
//! Two functions are equivalent when `g(x) = p ⊕ f(Ax ⊕ b)` for an invertible
//! GF(2) matrix `A`, a vector `b` and a bit `p`. The representative of a class
//! is its member with the smallest truth-table integer.

pub mod db;
pub mod lutmap;

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tt::TruthTable;

pub use db::{build_database, lookup_and_instantiate, AnClassDb, DbEntry, Provenance};
pub use lutmap::{map_stg_hybrid, map_stg_lut_based, HybridRoute, LutBasedOutcome};

pub const MAX_CLASS_VARS: u32 = 4;

/// `x ↦ Ax ⊕ b` on the inputs and `p` on the output. Row `i` of `A` is a bit
/// mask; `(Ax)_i` is the parity of `rows[i] & x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnTransform {
    pub n: u32,
    pub rows: Vec<u8>,
    pub b: u8,
    pub p: bool,
}

fn mat_vec(rows: &[u8], x: u8) -> u8 {
    rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | ((((r & x).count_ones() & 1) as u8) << i))
}

fn rank(rows: &[u8]) -> usize {
    let mut rs = rows.to_vec();
    let mut r = 0;
    for col in 0..8 {
        let Some(p) = (r..rs.len()).find(|&i| rs[i] >> col & 1 == 1) else { continue };
        rs.swap(r, p);
        for i in 0..rs.len() {
            if i != r && rs[i] >> col & 1 == 1 {
                rs[i] ^= rs[r];
            }
        }
        r += 1;
    }
    r
}

/// Inverse over GF(2) of an invertible matrix.
pub fn invert_matrix(rows: &[u8]) -> Option<Vec<u8>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u8> = (0..n).map(|i| 1 << i).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| a[i] >> col & 1 == 1)?;
        a.swap(col, p);
        inv.swap(col, p);
        for i in 0..n {
            if i != col && a[i] >> col & 1 == 1 {
                a[i] ^= a[col];
                inv[i] ^= inv[col];
            }
        }
    }
    Some(inv)
}

impl AnTransform {
    pub fn identity(n: u32) -> Self {
        AnTransform { n, rows: (0..n).map(|i| 1 << i).collect(), b: 0, p: false }
    }

    pub fn is_valid(&self) -> bool {
        self.rows.len() == self.n as usize
            && self.n <= MAX_CLASS_VARS
            && rank(&self.rows) == self.n as usize
            && (self.b as u32) < 1 << self.n
    }

    /// `p ⊕ f(Ax ⊕ b)`.
    pub fn apply(&self, f: &TruthTable) -> TruthTable {
        assert_eq!(f.num_vars(), self.n);
        TruthTable::from_fn(self.n, |x| self.p ^ f.get((mat_vec(&self.rows, x as u8) ^ self.b) as u64))
    }

    /// The transform undoing this one.
    pub fn inverse(&self) -> Self {
        let inv = invert_matrix(&self.rows).expect("transform matrix is invertible");
        let b = mat_vec(&inv, self.b);
        AnTransform { n: self.n, rows: inv, b, p: self.p }
    }
}

/// All invertible `n × n` matrices, in increasing order of their row tuple.
pub fn general_linear_group(n: u32) -> &'static [Vec<u8>] {
    static GL: [OnceLock<Vec<Vec<u8>>>; 5] = [const { OnceLock::new() }; 5];
    GL[n as usize].get_or_init(|| {
        let mut out = Vec::new();
        let total = 1usize << (n * n);
        for code in 0..total {
            let rows: Vec<u8> = (0..n).map(|i| ((code >> (i * n)) & ((1 << n) - 1)) as u8).collect();
            if rank(&rows) == n as usize {
                out.push(rows);
            }
        }
        out
    })
}

#[derive(Clone, Copy)]
struct Entry {
    rep: u16,
    matrix: u32,
    b: u8,
    p: bool,
}

/// Class of every function of `n` variables with the witness mapping it to
/// its representative.
fn class_table(n: u32) -> &'static [Entry] {
    static TABLES: [OnceLock<Vec<Entry>>; 5] = [const { OnceLock::new() }; 5];
    TABLES[n as usize].get_or_init(|| {
        let gl = general_linear_group(n);
        let rows = 1usize << n;
        let size = 1usize << rows;
        let mask = (size - 1) as u16;
        // perms[m][b][x] = A_m x ⊕ b
        let perms: Vec<Vec<u8>> = gl.iter().map(|a| (0..rows as u8).map(|x| mat_vec(a, x)).collect()).collect();
        let inverses: Vec<u32> = gl
            .iter()
            .map(|a| {
                let inv = invert_matrix(a).unwrap();
                gl.binary_search_by(|m| m.iter().rev().cmp(inv.iter().rev())).expect("inverse is in the group") as u32
            })
            .collect();
        let ident: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
        let id = gl.binary_search_by(|m| m.iter().rev().cmp(ident.iter().rev())).unwrap();
        let mut table: Vec<Option<Entry>> = vec![None; size];
        for f in 0..size {
            if table[f].is_some() {
                continue;
            }
            // Smallest unassigned function: the representative of its class,
            // reached from itself by the identity.
            table[f] = Some(Entry { rep: f as u16, matrix: id as u32, b: 0, p: false });
            for (mi, perm) in perms.iter().enumerate() {
                for b in 0..rows as u8 {
                    let mut g = 0u16;
                    for (x, &px) in perm.iter().enumerate().take(rows) {
                        g |= ((f >> (px ^ b)) as u16 & 1) << x;
                    }
                    for p in [false, true] {
                        let gp = if p { !g & mask } else { g };
                        if table[gp as usize].is_none() {
                            // gp(x) = p ⊕ f(Ax ⊕ b), so f(z) = p ⊕ gp(A⁻¹z ⊕ A⁻¹b).
                            let inv = inverses[mi];
                            let b_inv = mat_vec(&gl[inv as usize], b);
                            table[gp as usize] = Some(Entry { rep: f as u16, matrix: inv, b: b_inv, p });
                        }
                    }
                }
            }
        }
        table.into_iter().map(|e| e.expect("every function is classified")).collect()
    })
}

fn check_n(f: &TruthTable) -> Result<u32> {
    let n = f.num_vars();
    if n > MAX_CLASS_VARS {
        return Err(Error::TooManyVars(n));
    }
    Ok(n)
}

/// Class representative of `f` and a witness with `witness.apply(f) ==
/// canonical`.
pub fn canonicalize_an(f: &TruthTable) -> Result<(TruthTable, AnTransform)> {
    let n = check_n(f)?;
    let e = class_table(n)[f.as_u64() as usize];
    let w = AnTransform { n, rows: general_linear_group(n)[e.matrix as usize].clone(), b: e.b, p: e.p };
    Ok((TruthTable::from_u64(n, e.rep as u64), w))
}

/// Representatives of all classes of `n`-variable functions, constants
/// included, in increasing order.
pub fn class_representatives(n: u32) -> Result<Vec<TruthTable>> {
    if n > MAX_CLASS_VARS {
        return Err(Error::TooManyVars(n));
    }
    Ok(class_table(n)
        .iter()
        .enumerate()
        .filter(|(f, e)| e.rep as usize == *f)
        .map(|(f, _)| TruthTable::from_u64(n, f as u64))
        .collect())
}

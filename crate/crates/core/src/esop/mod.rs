//! ESOP covers: XORs of product terms over at most 32 variables.

pub mod exorcism;
pub mod extract;

use std::fmt::Write;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::tt::TruthTable;

pub use exorcism::{minimize, EsopHeuristic};
pub use extract::{esop_from_cone, esop_from_table, extract_esop_aig};

/// Product term. Bit `i` of `mask` says variable `i` appears; the matching
/// bit of `polarity` says it appears uncomplemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cube {
    pub mask: u32,
    pub polarity: u32,
}

/// Appearance of one variable in a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lit {
    Absent,
    Pos,
    Neg,
}

impl Lit {
    /// The literal whose function is the XOR of the two (distinct) inputs.
    pub fn xor(self, o: Lit) -> Lit {
        debug_assert_ne!(self, o);
        match (self, o) {
            (Lit::Pos, Lit::Neg) | (Lit::Neg, Lit::Pos) => Lit::Absent,
            (Lit::Absent, Lit::Pos) | (Lit::Pos, Lit::Absent) => Lit::Neg,
            _ => Lit::Pos,
        }
    }
}

impl Cube {
    /// The constant-1 product term.
    pub const ONE: Cube = Cube { mask: 0, polarity: 0 };

    pub fn new(mask: u32, polarity: u32) -> Self {
        Cube { mask, polarity: polarity & mask }
    }

    pub fn literal(var: u32, positive: bool) -> Self {
        Cube::new(1 << var, if positive { 1 << var } else { 0 })
    }

    pub fn num_literals(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn lit(self, v: u32) -> Lit {
        if self.mask >> v & 1 == 0 {
            Lit::Absent
        } else if self.polarity >> v & 1 == 1 {
            Lit::Pos
        } else {
            Lit::Neg
        }
    }

    pub fn with_lit(self, v: u32, l: Lit) -> Cube {
        let (m, p) = (self.mask & !(1 << v), self.polarity & !(1 << v));
        match l {
            Lit::Absent => Cube { mask: m, polarity: p },
            Lit::Pos => Cube { mask: m | 1 << v, polarity: p | 1 << v },
            Lit::Neg => Cube { mask: m | 1 << v, polarity: p },
        }
    }

    /// Conjunction, `None` when the product is empty.
    pub fn and(self, o: Cube) -> Option<Cube> {
        let common = self.mask & o.mask;
        if (self.polarity ^ o.polarity) & common != 0 {
            None
        } else {
            Some(Cube { mask: self.mask | o.mask, polarity: self.polarity | o.polarity })
        }
    }

    /// Variables whose appearance differs.
    pub fn diff_mask(self, o: Cube) -> u32 {
        (self.mask ^ o.mask) | (self.mask & o.mask & (self.polarity ^ o.polarity))
    }

    pub fn eval(self, x: u64) -> bool {
        (x as u32 ^ self.polarity) & self.mask == 0
    }

    /// 64 assignments at once; `vars[i]` holds variable `i`.
    pub fn eval_words(self, vars: &[u64]) -> u64 {
        let mut w = !0u64;
        let mut m = self.mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            w &= if self.polarity >> v & 1 == 1 { vars[v as usize] } else { !vars[v as usize] };
        }
        w
    }

    pub fn to_pla(self, n: u32) -> String {
        (0..n)
            .map(|v| match self.lit(v) {
                Lit::Absent => '-',
                Lit::Pos => '1',
                Lit::Neg => '0',
            })
            .collect()
    }
}

/// Number of variables whose appearance differs between the cubes.
pub fn cube_distance(a: Cube, b: Cube) -> u32 {
    a.diff_mask(b).count_ones()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExorlinkError {
    #[error("cubes are identical")]
    ZeroDistance,
    #[error("order is not a permutation of the differing variables")]
    BadOrder,
}

/// EXORLINK: rewrite a distance-k pair into k cubes. Cube `j` takes `b`'s
/// literals on `order[..j]`, the XOR literal on `order[j]`, and `a`'s literals
/// on `order[j+1..]`.
pub fn exorlink(a: Cube, b: Cube, order: &[u32]) -> Result<Vec<Cube>, ExorlinkError> {
    let diff = a.diff_mask(b);
    if diff == 0 {
        return Err(ExorlinkError::ZeroDistance);
    }
    let mut seen = 0u32;
    for &v in order {
        if v >= 32 || diff >> v & 1 == 0 || seen >> v & 1 == 1 {
            return Err(ExorlinkError::BadOrder);
        }
        seen |= 1 << v;
    }
    if seen != diff {
        return Err(ExorlinkError::BadOrder);
    }
    Ok(exorlink_unchecked(a, b, order))
}

pub(crate) fn exorlink_unchecked(a: Cube, b: Cube, order: &[u32]) -> Vec<Cube> {
    let mut out = Vec::with_capacity(order.len());
    let mut cur = a;
    for &v in order {
        out.push(cur.with_lit(v, a.lit(v).xor(b.lit(v))));
        cur = cur.with_lit(v, b.lit(v));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsopCover {
    pub num_vars: u32,
    pub cubes: Vec<Cube>,
}

impl EsopCover {
    pub fn new(num_vars: u32) -> Self {
        assert!(num_vars <= 32);
        EsopCover { num_vars, cubes: Vec::new() }
    }

    pub fn from_cubes(num_vars: u32, cubes: Vec<Cube>) -> Self {
        assert!(num_vars <= 32);
        EsopCover { num_vars, cubes }
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn eval(&self, x: u64) -> bool {
        self.cubes.iter().fold(false, |acc, c| acc ^ c.eval(x))
    }

    pub fn eval_words(&self, vars: &[u64]) -> u64 {
        self.cubes.iter().fold(0, |acc, c| acc ^ c.eval_words(vars))
    }

    pub fn to_table(&self) -> TruthTable {
        crate::logic::table_by_simulation(self.num_vars, |ins| self.eval_words(ins))
    }

    /// Cancel identical pairs; surviving cubes keep first-occurrence order.
    pub fn normalize(&mut self) {
        let mut count: FxHashMap<Cube, usize> = FxHashMap::default();
        for c in &self.cubes {
            *count.entry(*c).or_default() += 1;
        }
        let mut kept = Vec::new();
        for c in &self.cubes {
            if let Some(n) = count.remove(c) {
                if n % 2 == 1 {
                    kept.push(*c);
                }
            }
        }
        self.cubes = kept;
    }

    pub fn is_normalized(&self) -> bool {
        let mut seen = rustc_hash::FxHashSet::default();
        self.cubes.iter().all(|c| seen.insert(*c))
    }

    /// Bitmask of variables that appear in some cube.
    pub fn support_mask(&self) -> u32 {
        self.cubes.iter().fold(0, |m, c| m | c.mask)
    }

    pub fn literal_count(&self) -> u32 {
        self.cubes.iter().map(|c| c.num_literals()).sum()
    }

    /// ESOP-PLA text for debugging.
    pub fn to_pla(&self) -> String {
        let mut s = String::new();
        writeln!(s, ".i {}\n.o 1\n.type esop", self.num_vars).unwrap();
        for c in &self.cubes {
            writeln!(s, "{} 1", c.to_pla(self.num_vars)).unwrap();
        }
        s.push_str(".e\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(s: &str) -> Cube {
        // "1-0" style, variable 0 first
        s.chars().enumerate().fold(Cube::ONE, |c, (i, ch)| match ch {
            '1' => c.with_lit(i as u32, Lit::Pos),
            '0' => c.with_lit(i as u32, Lit::Neg),
            _ => c,
        })
    }

    #[test]
    fn distances() {
        assert_eq!(cube_distance(cube("1-1"), cube("101")), 1);
        assert_eq!(cube_distance(cube("11"), cube("11")), 0);
        assert_eq!(cube_distance(cube("11"), cube("00")), 2);
    }

    #[test]
    fn exorlink_examples() {
        assert_eq!(exorlink(cube("1-1"), cube("101"), &[1]).unwrap(), vec![cube("111")]);
        let r = exorlink(cube("11"), cube("00"), &[0, 1]).unwrap();
        assert_eq!(r, vec![cube("-1"), cube("0-")]);
        let cover = EsopCover::from_cubes(2, r);
        assert_eq!(cover.to_table().to_hex(), "9");
        assert_eq!(exorlink(cube("11"), cube("11"), &[]), Err(ExorlinkError::ZeroDistance));
        assert_eq!(exorlink(cube("11"), cube("00"), &[0]), Err(ExorlinkError::BadOrder));
    }

    #[test]
    fn normalize_cancels_pairs() {
        let mut c = EsopCover::from_cubes(2, vec![cube("11"), cube("1-"), cube("11"), cube("11")]);
        c.normalize();
        assert_eq!(c.cubes, vec![cube("11"), cube("1-")]);
        assert!(c.is_normalized());
    }

    #[test]
    fn pla_format() {
        let c = EsopCover::from_cubes(3, vec![cube("1-0")]);
        assert_eq!(c.to_pla(), ".i 3\n.o 1\n.type esop\n1-0 1\n.e\n");
    }
}

//! Bottom-up ESOP extraction over an AIG cone.

use rustc_hash::FxHashMap;

use super::{Cube, EsopCover, Lit};
use crate::error::{Error, Result};
use crate::logic::{AigBuilder, ConeFunction, LogicNetwork, Signal, VertexId};
use crate::tt::TruthTable;

/// Cube list with hashed lookup. Adding a cube cancels an identical one or
/// merges with a distance-1 partner, recursively.
#[derive(Clone, Debug, Default)]
pub(crate) struct CubeSet {
    n: u32,
    cubes: Vec<Cube>,
    index: FxHashMap<Cube, usize>,
}

impl CubeSet {
    pub fn new(n: u32) -> Self {
        CubeSet { n, cubes: Vec::new(), index: FxHashMap::default() }
    }

    pub fn from_cover(c: &EsopCover) -> Self {
        let mut s = CubeSet::new(c.num_vars);
        for &q in &c.cubes {
            s.toggle(q);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn contains(&self, c: Cube) -> bool {
        self.index.contains_key(&c)
    }

    pub fn remove(&mut self, c: Cube) -> bool {
        match self.index.remove(&c) {
            Some(i) => {
                self.cubes.swap_remove(i);
                if i < self.cubes.len() {
                    self.index.insert(self.cubes[i], i);
                }
                true
            }
            None => false,
        }
    }

    fn insert(&mut self, c: Cube) {
        self.index.insert(c, self.cubes.len());
        self.cubes.push(c);
    }

    /// Plain XOR with no merging.
    pub fn toggle(&mut self, c: Cube) {
        if !self.remove(c) {
            self.insert(c);
        }
    }

    /// A present cube at distance 1 from `c`, with the differing variable.
    pub fn partner(&self, c: Cube) -> Option<(Cube, u32)> {
        for v in 0..self.n {
            let here = c.lit(v);
            for l in [Lit::Absent, Lit::Pos, Lit::Neg] {
                if l != here {
                    let p = c.with_lit(v, l);
                    if self.index.contains_key(&p) {
                        return Some((p, v));
                    }
                }
            }
        }
        None
    }

    /// Whether some present cube other than `a` and `b` is at distance 1.
    pub fn has_partner_except(&self, c: Cube, a: Cube, b: Cube) -> bool {
        (0..self.n).any(|v| {
            let here = c.lit(v);
            [Lit::Absent, Lit::Pos, Lit::Neg].into_iter().any(|l| {
                l != here && {
                    let p = c.with_lit(v, l);
                    p != a && p != b && self.index.contains_key(&p)
                }
            })
        })
    }

    /// XOR `c` in, cancelling duplicates and merging distance-1 pairs.
    pub fn add(&mut self, c: Cube) {
        let mut c = c;
        loop {
            if self.remove(c) {
                return;
            }
            match self.partner(c) {
                Some((p, v)) => {
                    self.remove(p);
                    c = c.with_lit(v, c.lit(v).xor(p.lit(v)));
                }
                None => {
                    self.insert(c);
                    return;
                }
            }
        }
    }

    pub fn into_cover(self) -> EsopCover {
        EsopCover::from_cubes(self.n, self.cubes)
    }
}

fn product(a: &CubeSet, b: &CubeSet, n: u32) -> CubeSet {
    let mut out = CubeSet::new(n);
    for &x in a.cubes() {
        for &y in b.cubes() {
            if let Some(p) = x.and(y) {
                out.add(p);
            }
        }
    }
    out
}

fn complemented(a: &CubeSet) -> CubeSet {
    let mut c = a.clone();
    c.add(Cube::ONE);
    c
}

/// ESOP of a cone over its leaves. Cone nodes must be 2-input ANDs or
/// constants.
pub fn esop_from_cone(cone: &ConeFunction) -> Result<EsopCover> {
    let n = cone.leaves.len();
    if n > 32 {
        return Err(Error::EsopTooWide(n));
    }
    let n = n as u32;
    let and2 = TruthTable::from_u64(2, 0b1000);
    let mut covers: Vec<CubeSet> = (0..n)
        .map(|v| {
            let mut s = CubeSet::new(n);
            s.add(Cube::literal(v, true));
            s
        })
        .collect();
    let get = |covers: &Vec<CubeSet>, (i, neg): (usize, bool)| {
        if neg {
            complemented(&covers[i])
        } else {
            covers[i].clone()
        }
    };
    for node in &cone.nodes {
        let cover = match node.fanin.len() {
            0 => {
                let mut s = CubeSet::new(n);
                if node.func.get(0) {
                    s.add(Cube::ONE);
                }
                s
            }
            2 if node.func == and2 => {
                let a = get(&covers, node.fanin[0]);
                let b = get(&covers, node.fanin[1]);
                product(&a, &b, n)
            }
            _ => return Err(Error::Param("ESOP extraction expects an AND-inverter cone".into())),
        };
        covers.push(cover);
    }
    Ok(get(&covers, cone.root).into_cover())
}

/// ESOP of a dense table via its Shannon AIG.
pub fn esop_from_table(t: &TruthTable) -> EsopCover {
    let mut b = AigBuilder::new();
    let leaves: Vec<Signal> = (0..t.num_vars()).map(|i| b.input(&format!("x{i}"))).collect();
    let root = b.from_table(t, &leaves);
    let net = b.finish();
    let leaf_ids: Vec<VertexId> = net.inputs().to_vec();
    let cone = ConeFunction::extract(&net, root, &leaf_ids);
    esop_from_cone(&cone).expect("AIG cone over <= 16 leaves")
}

/// ESOP of `root` in an AIG, over the primary inputs of its cone (in input
/// order). Returns the cover and its variable-to-vertex map.
pub fn extract_esop_aig(net: &LogicNetwork, root: VertexId) -> Result<(EsopCover, Vec<VertexId>)> {
    let tfi = net.tfi(root)?;
    let support: Vec<VertexId> = net.inputs().iter().copied().filter(|v| tfi.contains(v)).collect();
    if support.len() > 32 {
        return Err(Error::EsopTooWide(support.len()));
    }
    let sig = if net.is_gate(root) || net.inputs().contains(&root) { Signal::pos(root) } else { net.output_signal(root)? };
    let cone = ConeFunction::extract(net, sig, &support);
    Ok((esop_from_cone(&cone)?, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::aiger::parse_aiger;

    #[test]
    fn and_gate() {
        let n = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n").unwrap();
        let (c, sup) = extract_esop_aig(&n, n.outputs()[0]).unwrap();
        assert_eq!(sup, vec![0, 1]);
        assert_eq!(c.cubes, vec![Cube::new(0b11, 0b11)]);
    }

    #[test]
    fn add_cancels_and_merges() {
        let mut s = CubeSet::new(3);
        let x1x2n_x3 = Cube::new(0b111, 0b101);
        s.add(x1x2n_x3);
        s.add(x1x2n_x3);
        assert_eq!(s.len(), 0);
        s.add(Cube::new(0b101, 0b101));
        s.add(x1x2n_x3);
        assert_eq!(s.cubes(), &[Cube::new(0b111, 0b111)]);
    }

    #[test]
    fn tables_roundtrip() {
        for n in 0..=6u32 {
            for seed in 1..30u64 {
                let t = TruthTable::from_fn(n, |r| (r.wrapping_add(seed).wrapping_mul(0x2545_f491) >> 7) & 1 == 1);
                let c = esop_from_table(&t);
                assert_eq!(c.to_table(), t, "n={n} seed={seed}");
                assert!(c.is_normalized());
            }
        }
    }
}

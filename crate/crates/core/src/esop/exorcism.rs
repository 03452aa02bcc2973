//! EXORLINK-based ESOP minimization.
//!
//! Schedule per iteration: `(d2)*`, then `(d3 d2*)*`, then for `Def` also
//! `(d4 d2* d3 d2*)*`. An iteration that does not shrink the cover ends the
//! run; at most [`MAX_ITERATIONS`] iterations are made. The smallest cover
//! seen is returned.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::extract::CubeSet;
use super::{exorlink_unchecked, Cube, EsopCover};

pub const MAX_ITERATIONS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EsopHeuristic {
    None,
    Def,
    DefWo4,
}

impl std::str::FromStr for EsopHeuristic {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(EsopHeuristic::None),
            "def" => Ok(EsopHeuristic::Def),
            "def_wo4" => Ok(EsopHeuristic::DefWo4),
            _ => Err(format!("unknown ESOP heuristic {s:?} (none, def, def_wo4)")),
        }
    }
}

impl std::fmt::Display for EsopHeuristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EsopHeuristic::None => "none",
            EsopHeuristic::Def => "def",
            EsopHeuristic::DefWo4 => "def_wo4",
        })
    }
}

struct Minimizer {
    set: CubeSet,
    /// Pairs already rewritten without gain in this iteration.
    neutral_used: FxHashSet<(Cube, Cube)>,
}

fn permutations(vars: &[u32]) -> Vec<Vec<u32>> {
    if vars.len() <= 1 {
        return vec![vars.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..vars.len() {
        let mut rest = vars.to_vec();
        let v = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, v);
            out.push(p);
        }
    }
    out
}

impl Minimizer {
    /// Count change from XOR-ing exorlink output `c` into the cover without
    /// `a` and `b`: -1 when it cancels, 0 when it merges, +1 otherwise.
    fn cube_gain(&self, c: Cube, a: Cube, b: Cube) -> i32 {
        if self.set.contains(c) {
            -1
        } else if self.set.has_partner_except(c, a, b) {
            0
        } else {
            1
        }
    }

    /// Best order for a pair and its estimated count change.
    fn best_rewrite(&self, a: Cube, b: Cube) -> (i32, Vec<u32>) {
        let diff = a.diff_mask(b);
        let vars: Vec<u32> = (0..32).filter(|v| diff >> v & 1 == 1).collect();
        // The cube at a slot depends only on which variables precede it.
        let mut memo: FxHashMap<(u32, u32), i32> = FxHashMap::default();
        let mut best = (i32::MAX, Vec::new());
        for order in permutations(&vars) {
            let cubes = exorlink_unchecked(a, b, &order);
            let mut prefix = 0u32;
            let mut delta = -2;
            for (j, &v) in order.iter().enumerate() {
                delta += *memo.entry((prefix, v)).or_insert_with(|| self.cube_gain(cubes[j], a, b));
                prefix |= 1 << v;
            }
            if delta < best.0 {
                best = (delta, order);
            }
        }
        best
    }

    /// One pass over all pairs at distance `d`. Returns true if the cover shrank.
    fn sweep(&mut self, d: u32) -> bool {
        let start = self.set.len();
        let mut neutral_budget = start;
        let mut i = 0;
        while i < self.set.len() {
            let mut restart = false;
            let mut j = i + 1;
            while j < self.set.len() {
                let (a, b) = (self.set.cubes()[i], self.set.cubes()[j]);
                if a.diff_mask(b).count_ones() == d {
                    let (delta, order) = self.best_rewrite(a, b);
                    let key = if a < b { (a, b) } else { (b, a) };
                    let neutral = d >= 3 && delta == 0 && neutral_budget > 0 && !self.neutral_used.contains(&key);
                    if delta < 0 || neutral {
                        let snapshot = self.set.clone();
                        let before = self.set.len();
                        self.set.remove(a);
                        self.set.remove(b);
                        for c in exorlink_unchecked(a, b, &order) {
                            self.set.add(c);
                        }
                        let after = self.set.len();
                        if after < before || (neutral && after == before) {
                            if after == before {
                                self.neutral_used.insert(key);
                                neutral_budget -= 1;
                            }
                            restart = true;
                            break;
                        }
                        self.set = snapshot;
                    }
                }
                j += 1;
            }
            if !restart {
                i += 1;
            }
        }
        self.set.len() < start
    }

    fn repeat(&mut self, d: u32) -> bool {
        let mut any = false;
        while self.sweep(d) {
            any = true;
        }
        any
    }
}

/// Minimize the cover; the result is XOR-equivalent and never larger.
pub fn minimize(cover: &EsopCover, heuristic: EsopHeuristic) -> EsopCover {
    let mut base = cover.clone();
    base.normalize();
    if heuristic == EsopHeuristic::None || base.len() < 2 {
        return base;
    }
    let mut set = CubeSet::new(base.num_vars);
    for &c in &base.cubes {
        set.add(c);
    }
    let mut m = Minimizer { set, neutral_used: FxHashSet::default() };
    let mut best = if m.set.len() <= base.len() { m.set.clone() } else { CubeSet::from_cover(&base) };
    for _ in 0..MAX_ITERATIONS {
        let start = m.set.len();
        m.neutral_used.clear();
        m.repeat(2);
        loop {
            if !m.sweep(3) {
                break;
            }
            m.repeat(2);
        }
        if heuristic == EsopHeuristic::Def {
            loop {
                let mut progress = m.sweep(4);
                m.repeat(2);
                if m.sweep(3) {
                    progress = true;
                }
                m.repeat(2);
                if !progress {
                    break;
                }
            }
        }
        if m.set.len() < best.len() {
            best = m.set.clone();
        }
        if m.set.len() >= start {
            break;
        }
    }
    best.into_cover()
}

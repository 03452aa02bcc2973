//! Dense bit-packed truth tables.
//!
//! Row `r` holds the function value for the assignment where variable `i`
//! takes bit `i` of `r`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

pub const MAX_DENSE_VARS: u32 = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

const VAR_MASKS: [u64; 6] = [
    0xaaaa_aaaa_aaaa_aaaa,
    0xcccc_cccc_cccc_cccc,
    0xf0f0_f0f0_f0f0_f0f0,
    0xff00_ff00_ff00_ff00,
    0xffff_0000_ffff_0000,
    0xffff_ffff_0000_0000,
];

fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: u32) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl TruthTable {
    pub fn zero(n: u32) -> Self {
        assert!(n <= 24, "dense truth table over {n} variables");
        TruthTable { n, words: vec![0; word_count(n)] }
    }

    pub fn one(n: u32) -> Self {
        !Self::zero(n)
    }

    /// Projection onto variable `i`.
    pub fn var(n: u32, i: u32) -> Self {
        assert!(i < n);
        let mut t = Self::zero(n);
        if i < 6 {
            for w in t.words.iter_mut() {
                *w = VAR_MASKS[i as usize];
            }
        } else {
            let stride = 1usize << (i - 6);
            for (k, w) in t.words.iter_mut().enumerate() {
                if (k / stride) & 1 == 1 {
                    *w = !0;
                }
            }
        }
        t.mask_tail();
        t
    }

    pub fn from_u64(n: u32, bits: u64) -> Self {
        assert!(n <= 6);
        let mut t = Self::zero(n);
        t.words[0] = bits;
        t.mask_tail();
        t
    }

    pub fn from_words(n: u32, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), word_count(n));
        let mut t = TruthTable { n, words };
        t.mask_tail();
        t
    }

    pub fn from_fn(n: u32, f: impl Fn(u64) -> bool) -> Self {
        let mut t = Self::zero(n);
        for r in 0..t.rows() {
            if f(r) {
                t.set(r, true);
            }
        }
        t
    }

    fn mask_tail(&mut self) {
        let m = tail_mask(self.n);
        if let Some(w) = self.words.last_mut() {
            *w &= m;
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 rows as an integer; exact for n <= 6.
    pub fn as_u64(&self) -> u64 {
        self.words[0]
    }

    pub fn get(&self, row: u64) -> bool {
        (self.words[(row >> 6) as usize] >> (row & 63)) & 1 == 1
    }

    pub fn set(&mut self, row: u64, v: bool) {
        let w = &mut self.words[(row >> 6) as usize];
        if v {
            *w |= 1 << (row & 63);
        } else {
            *w &= !(1 << (row & 63));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        (!self.clone()).is_zero()
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn depends_on(&self, i: u32) -> bool {
        self.cofactor(i, false) != self.cofactor(i, true)
    }

    /// Bitmask of variables the function actually depends on.
    pub fn support(&self) -> u32 {
        (0..self.n).filter(|&i| self.depends_on(i)).fold(0, |m, i| m | 1 << i)
    }

    /// Cofactor with variable `i` fixed; the result keeps all `n` variables.
    pub fn cofactor(&self, i: u32, v: bool) -> Self {
        let mut t = self.clone();
        if i < 6 {
            let s = 1u32 << i;
            let m = VAR_MASKS[i as usize];
            for w in t.words.iter_mut() {
                *w = if v {
                    let hi = *w & m;
                    hi | (hi >> s)
                } else {
                    let lo = *w & !m;
                    lo | (lo << s)
                };
            }
        } else {
            let stride = 1usize << (i - 6);
            for k in 0..t.words.len() {
                if (k / stride) & 1 == 0 {
                    let src = if v { self.words[k + stride] } else { self.words[k] };
                    t.words[k] = src;
                    t.words[k + stride] = src;
                }
            }
        }
        t.mask_tail();
        t
    }

    /// Re-express over `new_n` variables: variable `i` of `self` becomes
    /// variable `map[i]` of the result.
    pub fn remap(&self, new_n: u32, map: &[u32]) -> Self {
        assert_eq!(map.len(), self.n as usize);
        let mut out = Self::zero(new_n);
        for r in 0..out.rows() {
            let mut src = 0u64;
            for (i, &j) in map.iter().enumerate() {
                src |= ((r >> j) & 1) << i;
            }
            if self.get(src) {
                out.set(r, true);
            }
        }
        out
    }

    /// Drop variables outside `keep` (which must cover the support).
    pub fn shrink(&self, keep: &[u32]) -> Self {
        let mut out = Self::zero(keep.len() as u32);
        for r in 0..out.rows() {
            let mut src = 0u64;
            for (i, &j) in keep.iter().enumerate() {
                src |= ((r >> i) & 1) << j;
            }
            if self.get(src) {
                out.set(r, true);
            }
        }
        out
    }

    /// Hex string, most significant row first.
    pub fn to_hex(&self) -> String {
        let digits = std::cmp::max(1, (self.rows() / 4) as usize);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let w = self.words[d / 16];
            let nib = (w >> ((d % 16) * 4)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: u32, s: &str) -> Option<Self> {
        let s = s.trim_start_matches("0x");
        let digits = std::cmp::max(1, ((1u64 << n) / 4) as usize);
        if s.len() != digits {
            return None;
        }
        let mut t = Self::zero(n);
        for (k, c) in s.chars().rev().enumerate() {
            let nib = c.to_digit(16)? as u64;
            t.words[k / 16] |= nib << ((k % 16) * 4);
        }
        if t.words.last().copied().unwrap_or(0) & !tail_mask(n) != 0 {
            return None;
        }
        Some(t)
    }
}

impl Not for TruthTable {
    type Output = TruthTable;
    fn not(mut self) -> TruthTable {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self.mask_tail();
        self
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for &TruthTable {
            type Output = TruthTable;
            fn $f(self, o: &TruthTable) -> TruthTable {
                assert_eq!(self.n, o.n);
                TruthTable {
                    n: self.n,
                    words: self.words.iter().zip(&o.words).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr for TruthTable {
            type Output = TruthTable;
            fn $f(self, o: TruthTable) -> TruthTable {
                (&self).$f(&o)
            }
        }
    };
}

binop!(BitAnd, bitand, &);
binop!(BitOr, bitor, |);
binop!(BitXor, bitxor, ^);

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tt{}:{}", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

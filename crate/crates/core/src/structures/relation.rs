use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A `k`-ary relation on `{0, ..., n-1}` stored as a bitset over `A^k`. The
/// tuple `(d_0, ..., d_{k-1})` has index `Σ d_i n^i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    arity: u32,
    domain: u32,
    bits: Vec<u64>,
}

/// `n^k`, or `None` on overflow.
pub fn tuple_count(n: u32, k: u32) -> Option<usize> {
    (n as usize).checked_pow(k)
}

pub fn decode(n: u32, k: u32, mut index: usize) -> Vec<u32> {
    let mut t = Vec::with_capacity(k as usize);
    for _ in 0..k {
        t.push((index % n as usize) as u32);
        index /= n as usize;
    }
    t
}

pub fn encode(n: u32, tuple: &[u32]) -> usize {
    tuple.iter().rev().fold(0, |acc, &d| acc * n as usize + d as usize)
}

impl Relation {
    pub fn empty(arity: u32, domain: u32) -> Self {
        let len = tuple_count(domain, arity).expect("relation too large");
        Relation {
            arity,
            domain,
            bits: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(arity: u32, domain: u32) -> Self {
        let mut r = Self::empty(arity, domain);
        for i in 0..r.capacity() {
            r.set_index(i, true);
        }
        r
    }

    pub fn from_tuples<'a>(arity: u32, domain: u32, tuples: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut r = Self::empty(arity, domain);
        for t in tuples {
            r.insert(t);
        }
        r
    }

    /// The relation whose index set is the bit pattern `mask` (for
    /// enumerating all relations over tiny tuple spaces).
    pub fn from_mask(arity: u32, domain: u32, mask: u64) -> Self {
        let mut r = Self::empty(arity, domain);
        for i in 0..r.capacity().min(64) {
            if mask >> i & 1 == 1 {
                r.set_index(i, true);
            }
        }
        r
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn domain(&self) -> u32 {
        self.domain
    }

    /// `n^k`, the number of candidate tuples.
    pub fn capacity(&self) -> usize {
        tuple_count(self.domain, self.arity).unwrap_or(0)
    }

    pub fn get_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set_index(&mut self, i: usize, value: bool) {
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity as usize);
        self.get_index(encode(self.domain, tuple))
    }

    pub fn insert(&mut self, tuple: &[u32]) {
        assert_eq!(tuple.len(), self.arity as usize);
        assert!(tuple.iter().all(|&d| d < self.domain), "element out of domain");
        self.set_index(encode(self.domain, tuple), true);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.capacity())
            .filter(|i| self.get_index(*i))
            .map(|i| decode(self.domain, self.arity, i))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!((self.arity, self.domain), (other.arity, other.domain));
        Relation {
            arity: self.arity,
            domain: self.domain,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| op(*a, *b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn complement(&self) -> Self {
        let mut r = self.clone();
        for w in r.bits.iter_mut() {
            *w = !*w;
        }
        r.clear_padding();
        r
    }

    fn clear_padding(&mut self) {
        let cap = self.capacity();
        if !cap.is_multiple_of(64) {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << (cap % 64)) - 1;
            }
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Image under a permutation of the domain.
    pub fn permuted(&self, perm: &[u32]) -> Self {
        let mut r = Self::empty(self.arity, self.domain);
        for t in self.tuples() {
            let image: Vec<u32> = t.iter().map(|&d| perm[d as usize]).collect();
            r.insert(&image);
        }
        r
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.tuples().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if self.arity == 1 {
                write!(f, "{}", t[0])?;
            } else {
                f.write_str("(")?;
                for (j, d) in t.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str(")")?;
            }
        }
        f.write_str("}")
    }
}

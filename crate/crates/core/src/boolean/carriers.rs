use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{BooleanAlgebra, BooleanError};

fn show_set<'a>(items: impl IntoIterator<Item = &'a u64>) -> String {
    let parts: Vec<String> = items.into_iter().map(|i| alloc::format!("{i}")).collect();
    alloc::format!("{{{}}}", parts.join(","))
}

/// All subsets of `{0, ..., n-1}` as bit masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSet {
    n: u32,
}

impl PowerSet {
    pub const MAX_ATOMS: u32 = 5;

    pub fn new(n: u32) -> Result<Self, BooleanError> {
        if n > Self::MAX_ATOMS {
            return Err(BooleanError::SizeGuard(alloc::format!(
                "powerset of {n} atoms exceeds {}",
                Self::MAX_ATOMS
            )));
        }
        Ok(PowerSet { n })
    }

    pub fn atoms(&self) -> u32 {
        self.n
    }

    pub fn atom(&self, i: u32) -> u32 {
        1 << i
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Parses `{0,2}` or a bare mask.
    pub fn parse(&self, s: &str) -> Option<u32> {
        let s = s.trim();
        let mask = if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let mut m = 0u32;
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i: u32 = part.parse().ok()?;
                if i >= self.n {
                    return None;
                }
                m |= 1 << i;
            }
            m
        } else {
            s.parse().ok()?
        };
        (mask & !self.full() == 0).then_some(mask)
    }
}

impl BooleanAlgebra for PowerSet {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.full()
    }
    fn meet(&self, a: &u32, b: &u32) -> u32 {
        a & b
    }
    fn join(&self, a: &u32, b: &u32) -> u32 {
        a | b
    }
    fn complement(&self, a: &u32) -> u32 {
        !a & self.full()
    }
    fn equal(&self, a: &u32, b: &u32) -> bool {
        a == b
    }
    fn element(&self, i: usize) -> Option<u32> {
        (i < 1 << self.n).then_some(i as u32)
    }
    fn cardinality(&self) -> Option<u128> {
        Some(1u128 << self.n)
    }
    fn name(&self) -> String {
        alloc::format!("powerset:{}", self.n)
    }
    fn show(&self, a: &u32) -> String {
        let items: Vec<u64> = (0..self.n).filter(|i| a >> i & 1 == 1).map(u64::from).collect();
        show_set(&items)
    }
}

/// Propositional formulas over generators `p0, p1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Top,
    Bot,
    Var(u32),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn eval(&self, valuation: impl Fn(u32) -> bool + Copy) -> bool {
        match self {
            Prop::Top => true,
            Prop::Bot => false,
            Prop::Var(i) => valuation(*i),
            Prop::Not(a) => !a.eval(valuation),
            Prop::And(a, b) => a.eval(valuation) && b.eval(valuation),
            Prop::Or(a, b) => a.eval(valuation) || b.eval(valuation),
        }
    }

    pub fn generators(&self, out: &mut BTreeSet<u32>) {
        match self {
            Prop::Top | Prop::Bot => {}
            Prop::Var(i) => {
                out.insert(*i);
            }
            Prop::Not(a) => a.generators(out),
            Prop::And(a, b) | Prop::Or(a, b) => {
                a.generators(out);
                b.generators(out);
            }
        }
    }

    /// Parses `p0`, `1`, `0`, `~a`, `a & b`, `a | b` and parentheses, with
    /// `&` binding tighter than `|`.
    pub fn parse(s: &str) -> Option<Prop> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let p = parse_or(&chars, &mut pos)?;
        (pos == chars.len()).then_some(p)
    }
}

fn parse_or(c: &[char], pos: &mut usize) -> Option<Prop> {
    let mut left = parse_and(c, pos)?;
    while c.get(*pos) == Some(&'|') {
        *pos += 1;
        left = Prop::Or(Box::new(left), Box::new(parse_and(c, pos)?));
    }
    Some(left)
}

fn parse_and(c: &[char], pos: &mut usize) -> Option<Prop> {
    let mut left = parse_unary(c, pos)?;
    while c.get(*pos) == Some(&'&') {
        *pos += 1;
        left = Prop::And(Box::new(left), Box::new(parse_unary(c, pos)?));
    }
    Some(left)
}

fn parse_unary(c: &[char], pos: &mut usize) -> Option<Prop> {
    match c.get(*pos)? {
        '~' | '!' | '¬' => {
            *pos += 1;
            Some(Prop::Not(Box::new(parse_unary(c, pos)?)))
        }
        '(' => {
            *pos += 1;
            let p = parse_or(c, pos)?;
            (c.get(*pos) == Some(&')')).then(|| *pos += 1)?;
            Some(p)
        }
        '1' => {
            *pos += 1;
            Some(Prop::Top)
        }
        '0' => {
            *pos += 1;
            Some(Prop::Bot)
        }
        'p' => {
            *pos += 1;
            let start = *pos;
            while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = c[start..*pos].iter().collect();
            digits.parse().ok().map(Prop::Var)
        }
        _ => None,
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Top => f.write_str("1"),
            Prop::Bot => f.write_str("0"),
            Prop::Var(i) => write!(f, "p{i}"),
            Prop::Not(a) => write!(f, "~{a}"),
            Prop::And(a, b) => write!(f, "({a} & {b})"),
            Prop::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// The free Boolean algebra on `g` generators: propositional formulas up to
/// equivalence, decided by trying every valuation of the generators that
/// occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Free {
    g: u32,
}

impl Free {
    pub const MAX_GENERATORS: u32 = 16;
    /// Largest generator count whose elements are enumerated.
    pub const ENUMERABLE: u32 = 6;

    pub fn new(g: u32) -> Result<Self, BooleanError> {
        if g > Self::MAX_GENERATORS {
            return Err(BooleanError::SizeGuard(alloc::format!(
                "free algebra on {g} generators exceeds {}",
                Self::MAX_GENERATORS
            )));
        }
        Ok(Free { g })
    }

    pub fn generators(&self) -> u32 {
        self.g
    }

    pub fn generator(&self, i: u32) -> Prop {
        assert!(i < self.g, "generator out of range");
        Prop::Var(i)
    }

    pub fn parse(&self, s: &str) -> Option<Prop> {
        let p = Prop::parse(s)?;
        let mut gens = BTreeSet::new();
        p.generators(&mut gens);
        gens.iter().all(|&i| i < self.g).then_some(p)
    }
}

impl BooleanAlgebra for Free {
    type Elem = Prop;

    fn zero(&self) -> Prop {
        Prop::Bot
    }
    fn one(&self) -> Prop {
        Prop::Top
    }
    fn meet(&self, a: &Prop, b: &Prop) -> Prop {
        Prop::And(Box::new(a.clone()), Box::new(b.clone()))
    }
    fn join(&self, a: &Prop, b: &Prop) -> Prop {
        Prop::Or(Box::new(a.clone()), Box::new(b.clone()))
    }
    fn complement(&self, a: &Prop) -> Prop {
        Prop::Not(Box::new(a.clone()))
    }
    fn equal(&self, a: &Prop, b: &Prop) -> bool {
        let mut gens = BTreeSet::new();
        a.generators(&mut gens);
        b.generators(&mut gens);
        let gens: Vec<u32> = gens.into_iter().collect();
        (0..1u64 << gens.len()).all(|v| {
            let val = |i: u32| {
                let pos = gens.iter().position(|&g| g == i).expect("collected");
                v >> pos & 1 == 1
            };
            a.eval(val) == b.eval(val)
        })
    }
    /// The `i`-th truth table as a disjunctive normal form.
    fn element(&self, i: usize) -> Option<Prop> {
        if self.g > Self::ENUMERABLE {
            return None;
        }
        let rows = 1u32 << self.g;
        if rows < 64 && (i as u64) >> rows != 0 {
            return None;
        }
        let mut out = Prop::Bot;
        for row in (0..rows).filter(|r| (i as u64) >> r & 1 == 1) {
            let mut conj = Prop::Top;
            for j in 0..self.g {
                let lit = if row >> j & 1 == 1 {
                    Prop::Var(j)
                } else {
                    Prop::Not(Box::new(Prop::Var(j)))
                };
                conj = if conj == Prop::Top {
                    lit
                } else {
                    Prop::And(Box::new(conj), Box::new(lit))
                };
            }
            out = if out == Prop::Bot {
                conj
            } else {
                Prop::Or(Box::new(out), Box::new(conj))
            };
        }
        Some(out)
    }
    fn cardinality(&self) -> Option<u128> {
        (self.g <= Self::ENUMERABLE).then(|| 1u128 << (1u32 << self.g))
    }
    fn name(&self) -> String {
        alloc::format!("free:{}", self.g)
    }
    fn show(&self, a: &Prop) -> String {
        alloc::format!("{a}")
    }
}

/// An element of the finite-cofinite algebra on the naturals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FinCofSet {
    Finite(BTreeSet<u64>),
    /// The complement of the listed finite set.
    Cofinite(BTreeSet<u64>),
}

impl FinCofSet {
    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        FinCofSet::Finite(items.into_iter().collect())
    }

    pub fn cofinite(missing: impl IntoIterator<Item = u64>) -> Self {
        FinCofSet::Cofinite(missing.into_iter().collect())
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            FinCofSet::Finite(s) => s.contains(&n),
            FinCofSet::Cofinite(s) => !s.contains(&n),
        }
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, FinCofSet::Cofinite(_))
    }

    /// Parses `{1,2}` (finite) or `~{1,2}` (cofinite).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (co, body) = match s.strip_prefix('~') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let inner = body.strip_prefix('{')?.strip_suffix('}')?;
        let mut items = BTreeSet::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            items.insert(part.parse().ok()?);
        }
        Some(if co {
            FinCofSet::Cofinite(items)
        } else {
            FinCofSet::Finite(items)
        })
    }
}

impl fmt::Display for FinCofSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinCofSet::Finite(s) => f.write_str(&show_set(s)),
            FinCofSet::Cofinite(s) => write!(f, "~{}", show_set(s)),
        }
    }
}

/// Finite and cofinite subsets of the naturals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinCof;

impl FinCof {
    /// The singleton `{n}`.
    pub fn atom(n: u64) -> FinCofSet {
        FinCofSet::finite([n])
    }
}

impl BooleanAlgebra for FinCof {
    type Elem = FinCofSet;

    fn zero(&self) -> FinCofSet {
        FinCofSet::Finite(BTreeSet::new())
    }
    fn one(&self) -> FinCofSet {
        FinCofSet::Cofinite(BTreeSet::new())
    }
    fn meet(&self, a: &FinCofSet, b: &FinCofSet) -> FinCofSet {
        use FinCofSet::*;
        match (a, b) {
            (Finite(x), Finite(y)) => Finite(x & y),
            (Finite(x), Cofinite(y)) | (Cofinite(y), Finite(x)) => Finite(x - y),
            (Cofinite(x), Cofinite(y)) => Cofinite(x | y),
        }
    }
    fn join(&self, a: &FinCofSet, b: &FinCofSet) -> FinCofSet {
        self.complement(&self.meet(&self.complement(a), &self.complement(b)))
    }
    fn complement(&self, a: &FinCofSet) -> FinCofSet {
        match a {
            FinCofSet::Finite(x) => FinCofSet::Cofinite(x.clone()),
            FinCofSet::Cofinite(x) => FinCofSet::Finite(x.clone()),
        }
    }
    fn equal(&self, a: &FinCofSet, b: &FinCofSet) -> bool {
        a == b
    }
    /// Even positions list finite sets by the bits of `i/2`, odd positions
    /// their complements.
    fn element(&self, i: usize) -> Option<FinCofSet> {
        let bits = (i / 2) as u64;
        let items = (0..64).filter(|b| bits >> b & 1 == 1);
        Some(if i.is_multiple_of(2) {
            FinCofSet::finite(items)
        } else {
            FinCofSet::cofinite(items)
        })
    }
    fn cardinality(&self) -> Option<u128> {
        None
    }
    fn name(&self) -> String {
        "fincof".into()
    }
    fn show(&self, a: &FinCofSet) -> String {
        alloc::format!("{a}")
    }
}

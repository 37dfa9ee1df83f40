//! Fully enumerated finite commutative rings and their ideal lattices.
//!
//! Elements are labels `0..n`, with `0` the zero element. Ideals are bitsets
//! over the labels. Every prime ideal of a finite commutative ring is maximal,
//! which the prime enumeration cross-checks.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::arith::is_prime;

pub const MAX_RING_SIZE: usize = 256;
pub const DEFAULT_LATTICE_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("Z/{0}: modulus must be at least 2")]
    BadModulus(u64),
    #[error("GF({0}): only prime fields GF(p) with p <= 31 are supported")]
    BadField(u64),
    #[error("a product needs 2 or 3 components, got {0}")]
    BadProduct(usize),
    #[error("ring of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
    #[error("ideal lattice exceeds the bound {0}")]
    LatticeTooLarge(usize),
    #[error("element {0} is not in the ring")]
    BadElement(String),
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("{0} is not a prime ideal")]
    NotPrime(String),
    #[error("prime enumeration disagrees with the maximal-ideal characterization")]
    Inconsistent,
}

/// How a ring was described.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u64),
    Gf(u64),
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn size(&self) -> Option<usize> {
        match self {
            RingSpec::Zmod(n) | RingSpec::Gf(n) => usize::try_from(*n).ok(),
            RingSpec::Product(parts) => parts
                .iter()
                .try_fold(1usize, |acc, p| p.size().and_then(|s| acc.checked_mul(s))),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z/{n}"),
            RingSpec::Gf(p) => write!(f, "GF({p})"),
            RingSpec::Product(parts) => {
                write!(f, "product ")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    match p {
                        RingSpec::Product(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// A ring element written as an integer or a `<a, b, …>` tuple for products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementLiteral {
    Int(i64),
    Tuple(Vec<ElementLiteral>),
}

impl fmt::Display for ElementLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLiteral::Int(n) => write!(f, "{n}"),
            ElementLiteral::Tuple(parts) => {
                write!(f, "<")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ">")
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RingLimits {
    pub max_size: usize,
    pub max_ideals: usize,
}

impl Default for RingLimits {
    fn default() -> Self {
        RingLimits {
            max_size: MAX_RING_SIZE,
            max_ideals: DEFAULT_LATTICE_BOUND,
        }
    }
}

struct PrimeData {
    set: FixedBitSet,
    gens: Arc<[usize]>,
    witness: Arc<[(usize, usize)]>,
}

pub struct FiniteRing {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: usize,
    spec: Option<RingSpec>,
    limits: RingLimits,
    lattice: OnceLock<Result<Vec<FixedBitSet>, RingError>>,
    primes: OnceLock<Result<Vec<PrimeData>, RingError>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            Some(s) => write!(f, "FiniteRing({s})"),
            None => write!(f, "FiniteRing(table, {} elements)", self.n),
        }
    }
}

pub fn build_ring(spec: &RingSpec) -> Result<Arc<FiniteRing>, RingError> {
    FiniteRing::build(spec, RingLimits::default())
}

type Tables = (Vec<u16>, Vec<u16>, usize);

fn tables_for(spec: &RingSpec, bound: usize) -> Result<(usize, Tables), RingError> {
    let size = spec.size().unwrap_or(usize::MAX);
    if size > bound {
        return Err(RingError::TooLarge { size, bound });
    }
    match spec {
        RingSpec::Zmod(n) | RingSpec::Gf(n) => {
            if let RingSpec::Gf(p) = spec {
                if !is_prime(*p) || *p > 31 {
                    return Err(RingError::BadField(*p));
                }
            } else if *n < 2 {
                return Err(RingError::BadModulus(*n));
            }
            let n = *n as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    add[a * n + b] = ((a + b) % n) as u16;
                    mul[a * n + b] = ((a * b) % n) as u16;
                }
            }
            Ok((n, (add, mul, 1)))
        }
        RingSpec::Product(parts) => {
            if !(2..=3).contains(&parts.len()) {
                return Err(RingError::BadProduct(parts.len()));
            }
            let comps = parts
                .iter()
                .map(|p| tables_for(p, bound))
                .collect::<Result<Vec<_>, _>>()?;
            let sizes: Vec<usize> = comps.iter().map(|c| c.0).collect();
            let n: usize = sizes.iter().product();
            let split = |mut x: usize| {
                let mut digits = vec![0; sizes.len()];
                for (i, s) in sizes.iter().enumerate().rev() {
                    digits[i] = x % s;
                    x /= s;
                }
                digits
            };
            let join = |digits: &[usize]| digits.iter().zip(&sizes).fold(0, |acc, (d, s)| acc * s + d);
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..n {
                let da = split(a);
                for b in 0..n {
                    let db = split(b);
                    let s: Vec<usize> = comps
                        .iter()
                        .enumerate()
                        .map(|(i, (k, (t, _, _)))| t[da[i] * k + db[i]] as usize)
                        .collect();
                    let m: Vec<usize> = comps
                        .iter()
                        .enumerate()
                        .map(|(i, (k, (_, t, _)))| t[da[i] * k + db[i]] as usize)
                        .collect();
                    add[a * n + b] = join(&s) as u16;
                    mul[a * n + b] = join(&m) as u16;
                }
            }
            let one: Vec<usize> = comps.iter().map(|c| c.1 .2).collect();
            Ok((n, (add, mul, join(&one))))
        }
    }
}

impl FiniteRing {
    pub fn build(spec: &RingSpec, limits: RingLimits) -> Result<Arc<FiniteRing>, RingError> {
        let (n, (add, mul, one)) = tables_for(spec, limits.max_size)?;
        Self::assemble(n, add, mul, one, Some(spec.clone()), limits)
    }

    /// Ring from explicit Cayley tables; element `0` must be the additive identity.
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, one: usize) -> Result<Arc<FiniteRing>, RingError> {
        let n = add.len();
        let limits = RingLimits::default();
        if n > limits.max_size {
            return Err(RingError::TooLarge { size: n, bound: limits.max_size });
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n));
        if n < 2 || !square(&add) || !square(&mul) || one >= n {
            return Err(RingError::AxiomViolation("tables must be square over 0..n with n >= 2".into()));
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().map(|x| x as u16).collect();
        Self::assemble(n, flat(add), flat(mul), one, None, limits)
    }

    fn assemble(
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        one: usize,
        spec: Option<RingSpec>,
        limits: RingLimits,
    ) -> Result<Arc<FiniteRing>, RingError> {
        let mut neg = vec![0u16; n];
        for a in 0..n {
            match (0..n).find(|&b| add[a * n + b] == 0) {
                Some(b) => neg[a] = b as u16,
                None => return Err(RingError::AxiomViolation(format!("{a} has no additive inverse"))),
            }
        }
        let ring = FiniteRing {
            n,
            add,
            mul,
            neg,
            one,
            spec,
            limits,
            lattice: OnceLock::new(),
            primes: OnceLock::new(),
        };
        ring.verify_axioms()?;
        Ok(Arc::new(ring))
    }

    fn verify_axioms(&self) -> Result<(), RingError> {
        let n = self.n;
        let bad = |what: &str| Err(RingError::AxiomViolation(what.to_string()));
        if self.one == 0 {
            return bad("1 = 0");
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return bad("0 is not an additive identity");
            }
            if self.mul(a, self.one) != a {
                return bad("1 is not a multiplicative identity");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return bad("addition is not commutative");
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return bad("multiplication is not commutative");
                }
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return bad("addition is not associative");
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return bad("multiplication is not associative");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(mab, self.mul(a, c)) {
                        return bad("multiplication does not distribute over addition");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.spec.as_ref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Renders an element label in the literal syntax of its ring spec.
    pub fn render_elem(&self, e: usize) -> String {
        fn go(spec: &RingSpec, e: usize) -> String {
            match spec {
                RingSpec::Zmod(_) | RingSpec::Gf(_) => e.to_string(),
                RingSpec::Product(parts) => {
                    let sizes: Vec<usize> = parts.iter().map(|p| p.size().unwrap()).collect();
                    let mut rest = e;
                    let mut digits = vec![0; parts.len()];
                    for i in (0..parts.len()).rev() {
                        digits[i] = rest % sizes[i];
                        rest /= sizes[i];
                    }
                    let inner: Vec<String> = parts.iter().zip(digits).map(|(p, d)| go(p, d)).collect();
                    format!("<{}>", inner.join(","))
                }
            }
        }
        match &self.spec {
            Some(s) => go(s, e),
            None => e.to_string(),
        }
    }

    pub fn element(&self, lit: &ElementLiteral) -> Result<usize, RingError> {
        fn go(spec: &RingSpec, lit: &ElementLiteral) -> Option<usize> {
            match (spec, lit) {
                (RingSpec::Zmod(n) | RingSpec::Gf(n), ElementLiteral::Int(v)) => {
                    Some(v.rem_euclid(*n as i64) as usize)
                }
                (RingSpec::Product(parts), ElementLiteral::Tuple(items)) if parts.len() == items.len() => {
                    let mut acc = 0;
                    for (p, it) in parts.iter().zip(items) {
                        acc = acc * p.size()? + go(p, it)?;
                    }
                    Some(acc)
                }
                _ => None,
            }
        }
        let bad = || RingError::BadElement(lit.to_string());
        match (&self.spec, lit) {
            (Some(s), _) => go(s, lit).ok_or_else(bad),
            (None, ElementLiteral::Int(v)) if *v >= 0 && (*v as usize) < self.n => Ok(*v as usize),
            _ => Err(bad()),
        }
    }

    pub fn literal(&self, e: usize) -> ElementLiteral {
        fn go(spec: &RingSpec, e: usize) -> ElementLiteral {
            match spec {
                RingSpec::Zmod(_) | RingSpec::Gf(_) => ElementLiteral::Int(e as i64),
                RingSpec::Product(parts) => {
                    let sizes: Vec<usize> = parts.iter().map(|p| p.size().unwrap()).collect();
                    let mut rest = e;
                    let mut digits = vec![0; parts.len()];
                    for i in (0..parts.len()).rev() {
                        digits[i] = rest % sizes[i];
                        rest /= sizes[i];
                    }
                    ElementLiteral::Tuple(parts.iter().zip(digits).map(|(p, d)| go(p, d)).collect())
                }
            }
        }
        match &self.spec {
            Some(s) => go(s, e),
            None => ElementLiteral::Int(e as i64),
        }
    }

    pub fn zero_ideal(self: &Arc<Self>) -> FiniteIdeal {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert(0);
        FiniteIdeal { ring: self.clone(), set }
    }

    pub fn unit_ideal(self: &Arc<Self>) -> FiniteIdeal {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert_range(..);
        FiniteIdeal { ring: self.clone(), set }
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(self: &Arc<Self>, gens: &[usize]) -> FiniteIdeal {
        let mut seeds = FixedBitSet::with_capacity(self.n);
        for &g in gens {
            for r in 0..self.n {
                seeds.insert(self.mul(r, g));
            }
        }
        let seeds: Vec<usize> = seeds.ones().collect();
        FiniteIdeal {
            ring: self.clone(),
            set: additive_closure(self.n, &seeds, |a, b| self.add(a, b)),
        }
    }

    fn from_set(self: &Arc<Self>, set: FixedBitSet) -> FiniteIdeal {
        FiniteIdeal { ring: self.clone(), set }
    }

    /// The full ideal lattice, sorted by (cardinality, element list).
    pub fn all_ideals(self: &Arc<Self>) -> Result<Vec<FiniteIdeal>, RingError> {
        let sets = self
            .lattice
            .get_or_init(|| self.compute_lattice(self.limits.max_ideals))
            .clone()?;
        Ok(sets.into_iter().map(|s| self.from_set(s)).collect())
    }

    pub fn all_ideals_bounded(self: &Arc<Self>, bound: usize) -> Result<Vec<FiniteIdeal>, RingError> {
        Ok(self
            .compute_lattice(bound)?
            .into_iter()
            .map(|s| self.from_set(s))
            .collect())
    }

    fn compute_lattice(self: &Arc<Self>, bound: usize) -> Result<Vec<FixedBitSet>, RingError> {
        let mut found: Vec<FixedBitSet> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for x in 0..self.n {
            let ideal = self.ideal_closure(&[x]).set;
            if seen.insert(ideal.clone()) {
                found.push(ideal);
            }
        }
        // join-closure: sums of pairs until nothing new appears
        let mut start = 0;
        loop {
            let len = found.len();
            let mut fresh = Vec::new();
            for i in 0..len {
                for j in start.max(i + 1)..len {
                    let sum = self.from_set(found[i].clone()).sum_set(&found[j]);
                    if seen.insert(sum.clone()) {
                        fresh.push(sum);
                        if seen.len() > bound {
                            return Err(RingError::LatticeTooLarge(bound));
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            start = len;
            found.extend(fresh);
        }
        if found.len() > bound {
            return Err(RingError::LatticeTooLarge(bound));
        }
        found.sort_by(canonical_cmp);
        Ok(found)
    }

    /// All prime ideals, ordered by their minimal generator lists.
    pub fn primes(self: &Arc<Self>) -> Result<Vec<PrimeIdealFin>, RingError> {
        let data = self.primes.get_or_init(|| self.compute_primes());
        match data {
            Ok(ps) => Ok(ps
                .iter()
                .map(|d| PrimeIdealFin {
                    ideal: self.from_set(d.set.clone()),
                    gens: d.gens.clone(),
                    witness: d.witness.clone(),
                })
                .collect()),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_primes(self: &Arc<Self>) -> Result<Vec<PrimeData>, RingError> {
        let ideals = self.all_ideals()?;
        let proper: Vec<&FiniteIdeal> = ideals.iter().filter(|i| i.is_proper()).collect();
        let mut out = Vec::new();
        for p in &proper {
            let outside: Vec<usize> = (0..self.n).filter(|&a| !p.contains(a)).collect();
            let prime = outside
                .iter()
                .all(|&a| outside.iter().all(|&b| !p.contains(self.mul(a, b))));
            let maximal = !proper.iter().any(|q| q.set != p.set && p.set.is_subset(&q.set));
            if prime != maximal {
                return Err(RingError::Inconsistent);
            }
            if !prime {
                continue;
            }
            // R/p is a field: every a outside p has an inverse modulo p
            let mut witness = Vec::with_capacity(outside.len());
            for &a in &outside {
                let b = (0..self.n)
                    .find(|&b| p.contains(self.sub(self.mul(a, b), self.one)))
                    .ok_or(RingError::Inconsistent)?;
                witness.push((a, b));
            }
            out.push(PrimeData {
                set: p.set.clone(),
                gens: p.min_generators().into(),
                witness: witness.into(),
            });
        }
        out.sort_by(|a, b| a.gens.cmp(&b.gens));
        Ok(out)
    }

    /// The prime equal to `ideal`, if it is prime.
    pub fn as_prime(self: &Arc<Self>, ideal: &FiniteIdeal) -> Result<PrimeIdealFin, RingError> {
        self.primes()?
            .into_iter()
            .find(|p| p.ideal.set == ideal.set)
            .ok_or_else(|| RingError::NotPrime(ideal.to_string()))
    }
}

/// Subgroup generated by `seeds` under `add`, as a bitset over `0..n`.
pub(crate) fn additive_closure(n: usize, seeds: &[usize], add: impl Fn(usize, usize) -> usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    set.insert(0);
    let mut frontier = vec![0usize];
    while let Some(e) = frontier.pop() {
        for &s in seeds {
            let f = add(e, s);
            if !set.contains(f) {
                set.insert(f);
                frontier.push(f);
            }
        }
    }
    set
}

/// Compares by cardinality, then lexicographically by sorted element lists.
pub(crate) fn canonical_cmp(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

#[derive(Clone)]
pub struct FiniteIdeal {
    ring: Arc<FiniteRing>,
    set: FixedBitSet,
}

impl fmt::Debug for FiniteIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for FiniteIdeal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.set == other.set
    }
}

impl Eq for FiniteIdeal {}

impl std::hash::Hash for FiniteIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state)
    }
}

impl PartialOrd for FiniteIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.set, &other.set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Colon,
}

pub fn fin_ideal_ops(a: &FiniteIdeal, b: &FiniteIdeal, op: IdealOp) -> Result<FiniteIdeal, RingError> {
    if !Arc::ptr_eq(&a.ring, &b.ring) {
        return Err(RingError::RingMismatch);
    }
    Ok(match op {
        IdealOp::Sum => a.sum(b),
        IdealOp::Product => a.product(b),
        IdealOp::Intersection => a.intersection(b),
        IdealOp::Colon => a.colon(b),
    })
}

impl FiniteIdeal {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn contains(&self, e: usize) -> bool {
        self.set.contains(e)
    }

    pub fn len(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.ones()
    }

    pub fn is_proper(&self) -> bool {
        !self.set.contains(self.ring.one)
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.set.is_subset(&other.set)
    }

    fn sum_set(&self, other: &FixedBitSet) -> FixedBitSet {
        let mut seeds = self.set.clone();
        seeds.union_with(other);
        let seeds: Vec<usize> = seeds.ones().collect();
        additive_closure(self.ring.n, &seeds, |a, b| self.ring.add(a, b))
    }

    pub fn sum(&self, other: &FiniteIdeal) -> FiniteIdeal {
        self.ring.from_set(self.sum_set(&other.set))
    }

    pub fn product(&self, other: &FiniteIdeal) -> FiniteIdeal {
        let mut seeds = FixedBitSet::with_capacity(self.ring.n);
        for a in self.set.ones() {
            for b in other.set.ones() {
                seeds.insert(self.ring.mul(a, b));
            }
        }
        let seeds: Vec<usize> = seeds.ones().collect();
        let set = additive_closure(self.ring.n, &seeds, |a, b| self.ring.add(a, b));
        self.ring.from_set(set)
    }

    pub fn intersection(&self, other: &FiniteIdeal) -> FiniteIdeal {
        let mut set = self.set.clone();
        set.intersect_with(&other.set);
        self.ring.from_set(set)
    }

    /// `(self : other) = {x : x·other ⊆ self}`.
    pub fn colon(&self, other: &FiniteIdeal) -> FiniteIdeal {
        let mut set = FixedBitSet::with_capacity(self.ring.n);
        for x in 0..self.ring.n {
            if other.set.ones().all(|b| self.set.contains(self.ring.mul(x, b))) {
                set.insert(x);
            }
        }
        self.ring.from_set(set)
    }

    /// `self^r`, with `self^0 = R`.
    pub fn power(&self, r: u32) -> FiniteIdeal {
        let mut acc = self.ring.unit_ideal();
        for _ in 0..r {
            acc = acc.product(self);
        }
        acc
    }

    /// A generating set of minimal size (lexicographically first among those
    /// of size ≤ 2; beyond that a greedy generating set).
    pub fn min_generators(&self) -> Vec<usize> {
        let elems: Vec<usize> = self.set.ones().filter(|&e| e != 0).collect();
        if elems.is_empty() {
            return vec![0];
        }
        for &a in &elems {
            if self.ring.ideal_closure(&[a]).set == self.set {
                return vec![a];
            }
        }
        for (i, &a) in elems.iter().enumerate() {
            for &b in &elems[i + 1..] {
                if self.ring.ideal_closure(&[a, b]).set == self.set {
                    return vec![a, b];
                }
            }
        }
        let mut gens = Vec::new();
        let mut span = self.ring.zero_ideal();
        for &a in &elems {
            if !span.contains(a) {
                gens.push(a);
                span = self.ring.ideal_closure(&gens);
            }
        }
        gens
    }
}

impl fmt::Display for FiniteIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.min_generators().iter().map(|&g| self.ring.render_elem(g)).collect();
        write!(f, "({})", gens.join(","))
    }
}

/// A prime ideal together with evidence that `R/p` is a field: for every
/// `a ∉ p`, an element `b` with `ab − 1 ∈ p`.
#[derive(Clone)]
pub struct PrimeIdealFin {
    ideal: FiniteIdeal,
    gens: Arc<[usize]>,
    witness: Arc<[(usize, usize)]>,
}

impl PrimeIdealFin {
    pub fn ideal(&self) -> &FiniteIdeal {
        &self.ideal
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn witness(&self) -> &[(usize, usize)] {
        &self.witness
    }
}

impl std::ops::Deref for PrimeIdealFin {
    type Target = FiniteIdeal;
    fn deref(&self) -> &FiniteIdeal {
        &self.ideal
    }
}

impl PartialEq for PrimeIdealFin {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for PrimeIdealFin {}

impl std::hash::Hash for PrimeIdealFin {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ideal.hash(state)
    }
}

impl PartialOrd for PrimeIdealFin {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Primes sort by their minimal generator lists, so `(2)` precedes `(3)` in `Z/6`.
impl Ord for PrimeIdealFin {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gens.cmp(&other.gens).then_with(|| self.ideal.cmp(&other.ideal))
    }
}

impl fmt::Debug for PrimeIdealFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

impl fmt::Display for PrimeIdealFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingSpec::Zmod(n)).unwrap()
    }

    fn elems(i: &FiniteIdeal) -> Vec<usize> {
        i.elements().collect()
    }

    /// Ideals of Z/n are exactly the multiples of divisors d of n.
    fn divisor_oracle(n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| (0..n).step_by(d).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn build_examples() {
        assert_eq!(zmod(6).size(), 6);
        assert_eq!(build_ring(&RingSpec::Gf(4)).unwrap_err(), RingError::BadField(4));
        let r = build_ring(&RingSpec::Product(vec![RingSpec::Zmod(4), RingSpec::Gf(3)])).unwrap();
        assert_eq!(r.size(), 12);
        // componentwise: <1,2> * <3,2> = <3,1>, <1,2> + <3,2> = <0,1>
        let a = r.element(&ElementLiteral::Tuple(vec![ElementLiteral::Int(1), ElementLiteral::Int(2)])).unwrap();
        let b = r.element(&ElementLiteral::Tuple(vec![ElementLiteral::Int(3), ElementLiteral::Int(2)])).unwrap();
        assert_eq!(r.render_elem(r.mul(a, b)), "<3,1>");
        assert_eq!(r.render_elem(r.add(a, b)), "<0,1>");
        assert_eq!(r.render_elem(r.one()), "<1,1>");
        assert!(matches!(
            build_ring(&RingSpec::Product(vec![RingSpec::Zmod(32), RingSpec::Zmod(16)])),
            Err(RingError::TooLarge { size: 512, .. })
        ));
        assert_eq!(build_ring(&RingSpec::Zmod(1)).unwrap_err(), RingError::BadModulus(1));
    }

    #[test]
    fn table_input_checks_axioms() {
        // Z/2 given explicitly
        let ok = FiniteRing::from_tables(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 1]], 1);
        assert!(ok.is_ok());
        let bad = FiniteRing::from_tables(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![1, 1]], 1);
        assert!(matches!(bad, Err(RingError::AxiomViolation(_))));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(elems(&zmod(6).ideal_closure(&[2])), vec![0, 2, 4]);
        assert_eq!(elems(&zmod(6).ideal_closure(&[])), vec![0]);
        assert_eq!(elems(&zmod(12).ideal_closure(&[8, 6])), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn lattice_matches_divisor_oracle() {
        for n in 2..=40 {
            let got: Vec<Vec<usize>> = zmod(n as u64).all_ideals().unwrap().iter().map(elems).collect();
            assert_eq!(got, divisor_oracle(n), "Z/{n}");
        }
        let gf7 = build_ring(&RingSpec::Gf(7)).unwrap();
        assert_eq!(gf7.all_ideals().unwrap().len(), 2);
        let z8: Vec<String> = zmod(8).all_ideals().unwrap().iter().map(|i| i.to_string()).collect();
        assert_eq!(z8, ["(0)", "(4)", "(2)", "(1)"]);
        assert!(matches!(zmod(12).all_ideals_bounded(3), Err(RingError::LatticeTooLarge(3))));
    }

    #[test]
    fn prime_examples() {
        let show = |n| zmod(n).primes().unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(show(12), ["(2)", "(3)"]);
        assert_eq!(show(8), ["(2)"]);
        assert_eq!(show(30), ["(2)", "(3)", "(5)"]);
        let gf5 = build_ring(&RingSpec::Gf(5)).unwrap();
        assert_eq!(gf5.primes().unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["(0)"]);
    }

    #[test]
    fn primes_match_definition_exhaustively() {
        let specs = [
            RingSpec::Zmod(36),
            RingSpec::Product(vec![RingSpec::Zmod(4), RingSpec::Zmod(6)]),
            RingSpec::Product(vec![RingSpec::Gf(2), RingSpec::Gf(2), RingSpec::Zmod(4)]),
        ];
        for spec in specs {
            let r = build_ring(&spec).unwrap();
            let primes = r.primes().unwrap();
            for ideal in r.all_ideals().unwrap() {
                let by_def = ideal.is_proper()
                    && (0..r.size()).all(|a| {
                        (0..r.size()).all(|b| ideal.contains(a) || ideal.contains(b) || !ideal.contains(r.mul(a, b)))
                    });
                assert_eq!(primes.iter().any(|p| p.ideal() == &ideal), by_def, "{spec} {ideal}");
            }
            for p in &primes {
                for &(a, b) in p.witness() {
                    assert!(p.contains(r.sub(r.mul(a, b), r.one())));
                }
                // distinct primes are incomparable
                for q in &primes {
                    assert!(p == q || !p.is_subset(q));
                }
            }
        }
    }

    #[test]
    fn ops_examples() {
        let r = zmod(8);
        let two = r.ideal_closure(&[2]);
        assert_eq!(elems(&two.power(2)), vec![0, 4]);
        assert_eq!(elems(&fin_ideal_ops(&r.zero_ideal(), &two, IdealOp::Colon).unwrap()), vec![0, 4]);
        assert_eq!(two.product(&r.unit_ideal()), two);
        assert_eq!(two.power(0), r.unit_ideal());
        let other = zmod(8);
        assert_eq!(fin_ideal_ops(&two, &other.unit_ideal(), IdealOp::Sum).unwrap_err(), RingError::RingMismatch);
    }

    #[test]
    fn lattice_laws_exhaustive() {
        let specs = [
            RingSpec::Zmod(12),
            RingSpec::Zmod(16),
            RingSpec::Product(vec![RingSpec::Zmod(4), RingSpec::Zmod(4)]),
            RingSpec::Product(vec![RingSpec::Gf(2), RingSpec::Zmod(9)]),
        ];
        for spec in specs {
            let r = build_ring(&spec).unwrap();
            let ideals = r.all_ideals().unwrap();
            for a in &ideals {
                for b in &ideals {
                    let meet = a.intersection(b);
                    assert!(a.product(b).is_subset(&meet));
                    assert!(meet.is_subset(a) && a.is_subset(&a.sum(b)));
                    assert!(a.colon(b).product(b).is_subset(a));
                    assert!(ideals.contains(&a.colon(b)));
                }
            }
        }
    }

    #[test]
    fn literals_round_trip() {
        let r = build_ring(&RingSpec::Product(vec![
            RingSpec::Zmod(3),
            RingSpec::Product(vec![RingSpec::Gf(2), RingSpec::Zmod(4)]),
        ]))
        .unwrap();
        for e in 0..r.size() {
            assert_eq!(r.element(&r.literal(e)).unwrap(), e);
        }
        assert!(r.element(&ElementLiteral::Int(3)).is_err());
    }
}

//! Finite modules over finite rings, regular prime extensions, RPE filtrations
//! and generalized prime ideal factorizations.
//!
//! Algorithms that walk a filtration take an ambient [`Submodule`] so that
//! `P_K(N)` for an intermediate `K` is computed without building `K` as a
//! module of its own.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::finring::{additive_closure, canonical_cmp, FiniteIdeal, FiniteRing, PrimeIdealFin, RingError};

pub const MAX_MODULE_SIZE: usize = 4096;
const ADD_TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("modules or ideals over different rings")]
    RingMismatch,
    #[error("relation row has {got} entries, expected {rank}")]
    BadRow { rank: usize, got: usize },
    #[error("element {0} is not in the module")]
    BadElement(String),
    #[error("submodules belong to different modules")]
    ModuleMismatch,
    #[error("{0} is not contained in the ambient submodule")]
    NotContained(String),
    #[error("the submodule equals the ambient module; factorization needs a proper submodule")]
    NotProper,
    #[error("{0} is not an associated prime of the quotient")]
    NotAssociated(String),
    #[error("{0} is not maximal among the associated primes")]
    NotMaximal(String),
    #[error("step index {index} out of range for a filtration of length {len}")]
    BadIndex { index: usize, len: usize },
    #[error("cannot interchange: {next} is contained in {prev}")]
    NotInterchangeable { prev: String, next: String },
    #[error("target order {target} does not match the factorization primes {actual}")]
    OrderMismatch { target: String, actual: String },
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("direct sum needs at least two summands with matching submodules")]
    BadDirectSum,
    #[error("submodule lattice exceeds the bound {0}")]
    LatticeTooLarge(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

enum Repr {
    Presented {
        rank: usize,
        reps: Vec<u32>,
        coset_of: Vec<u16>,
    },
    Sum {
        parts: Vec<Arc<FiniteModule>>,
    },
}

/// How a module was constructed; used to serialize instances back to scripts.
#[derive(Debug, Clone)]
pub enum ModuleSpec {
    Presented { rank: usize, relations: Vec<Vec<usize>> },
    Sum(Vec<Arc<FiniteModule>>),
}

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    n: usize,
    repr: Repr,
    spec: ModuleSpec,
    add_table: Option<Vec<u16>>,
    act: Vec<u16>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({} elements over {:?})", self.n, self.ring)
    }
}

fn encode(ring_size: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * ring_size + d)
}

fn decode(ring_size: usize, rank: usize, mut v: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for slot in out.iter_mut().rev() {
        *slot = v % ring_size;
        v /= ring_size;
    }
    out
}

pub fn build_module(ring: &Arc<FiniteRing>, rank: usize, relations: &[Vec<usize>]) -> Result<Arc<FiniteModule>, ModuleError> {
    FiniteModule::presented(ring, rank, relations)
}

impl FiniteModule {
    /// `R^rank / (row closure of relations)`, cosets labelled in order of
    /// their least representative tuple.
    pub fn presented(ring: &Arc<FiniteRing>, rank: usize, relations: &[Vec<usize>]) -> Result<Arc<FiniteModule>, ModuleError> {
        let q = ring.size();
        let ambient = (0..rank).try_fold(1usize, |acc, _| acc.checked_mul(q)).unwrap_or(usize::MAX);
        if ambient > MAX_MODULE_SIZE {
            return Err(ModuleError::TooLarge { size: ambient, bound: MAX_MODULE_SIZE });
        }
        for row in relations {
            if row.len() != rank {
                return Err(ModuleError::BadRow { rank, got: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= q) {
                return Err(ModuleError::BadElement(bad.to_string()));
            }
        }
        let vadd = |a: usize, b: usize| {
            let (da, db) = (decode(q, rank, a), decode(q, rank, b));
            let s: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| ring.add(x, y)).collect();
            encode(q, &s)
        };
        let mut seeds = FixedBitSet::with_capacity(ambient);
        for row in relations {
            for r in 0..q {
                let scaled: Vec<usize> = row.iter().map(|&e| ring.mul(r, e)).collect();
                seeds.insert(encode(q, &scaled));
            }
        }
        let seeds: Vec<usize> = seeds.ones().collect();
        let rel: Vec<usize> = additive_closure(ambient, &seeds, vadd).ones().collect();

        let mut coset_of = vec![u16::MAX; ambient];
        let mut reps = Vec::new();
        for v in 0..ambient {
            if coset_of[v] != u16::MAX {
                continue;
            }
            let label = reps.len() as u16;
            reps.push(v as u32);
            for &w in &rel {
                coset_of[vadd(v, w)] = label;
            }
        }
        let spec = ModuleSpec::Presented {
            rank,
            relations: relations.to_vec(),
        };
        Ok(Self::finish(ring, reps.len(), Repr::Presented { rank, reps, coset_of }, spec))
    }

    /// External direct sum; labels are mixed-radix with the first summand most significant.
    pub fn sum_of(parts: &[Arc<FiniteModule>]) -> Result<Arc<FiniteModule>, ModuleError> {
        if parts.len() < 2 {
            return Err(ModuleError::BadDirectSum);
        }
        let ring = parts[0].ring.clone();
        if parts.iter().any(|p| !Arc::ptr_eq(&p.ring, &ring)) {
            return Err(ModuleError::RingMismatch);
        }
        let size = parts
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.n))
            .unwrap_or(usize::MAX);
        if size > MAX_MODULE_SIZE {
            return Err(ModuleError::TooLarge { size, bound: MAX_MODULE_SIZE });
        }
        Ok(Self::finish(
            &ring,
            size,
            Repr::Sum { parts: parts.to_vec() },
            ModuleSpec::Sum(parts.to_vec()),
        ))
    }

    fn finish(ring: &Arc<FiniteRing>, n: usize, repr: Repr, spec: ModuleSpec) -> Arc<FiniteModule> {
        let mut m = FiniteModule {
            ring: ring.clone(),
            n,
            repr,
            spec,
            add_table: None,
            act: Vec::new(),
        };
        let q = ring.size();
        let mut act = vec![0u16; q * n];
        for r in 0..q {
            for x in 0..n {
                act[r * n + x] = m.act_slow(r, x) as u16;
            }
        }
        m.act = act;
        if n <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = m.add_slow(a, b) as u16;
                }
            }
            m.add_table = Some(table);
        }
        Arc::new(m)
    }

    fn split(&self, parts: &[Arc<FiniteModule>], mut x: usize) -> Vec<usize> {
        let mut out = vec![0; parts.len()];
        for (i, p) in parts.iter().enumerate().rev() {
            out[i] = x % p.n;
            x /= p.n;
        }
        out
    }

    fn join(parts: &[Arc<FiniteModule>], digits: &[usize]) -> usize {
        parts.iter().zip(digits).fold(0, |acc, (p, &d)| acc * p.n + d)
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Presented { rank, reps, coset_of } => {
                let q = self.ring.size();
                let (mut x, mut y) = (reps[a] as usize, reps[b] as usize);
                let (mut out, mut place) = (0, 1);
                for _ in 0..*rank {
                    out += self.ring.add(x % q, y % q) * place;
                    place *= q;
                    x /= q;
                    y /= q;
                }
                coset_of[out] as usize
            }
            Repr::Sum { parts } => {
                let (mut x, mut y) = (a, b);
                let (mut out, mut place) = (0, 1);
                for p in parts.iter().rev() {
                    out += p.add(x % p.n, y % p.n) * place;
                    place *= p.n;
                    x /= p.n;
                    y /= p.n;
                }
                out
            }
        }
    }

    fn act_slow(&self, r: usize, x: usize) -> usize {
        match &self.repr {
            Repr::Presented { rank, reps, coset_of } => {
                let q = self.ring.size();
                let mut x = reps[x] as usize;
                let (mut out, mut place) = (0, 1);
                for _ in 0..*rank {
                    out += self.ring.mul(r, x % q) * place;
                    place *= q;
                    x /= q;
                }
                coset_of[out] as usize
            }
            Repr::Sum { parts } => {
                let mut x = x;
                let (mut out, mut place) = (0, 1);
                for p in parts.iter().rev() {
                    out += p.act(r, x % p.n) * place;
                    place *= p.n;
                    x /= p.n;
                }
                out
            }
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// The summands of an external direct sum.
    pub fn summands(&self) -> Option<&[Arc<FiniteModule>]> {
        match &self.repr {
            Repr::Sum { parts } => Some(parts),
            Repr::Presented { .. } => None,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    /// Number of coordinates of an element (the rank of the free module it is a quotient of).
    pub fn rank(&self) -> usize {
        match &self.repr {
            Repr::Presented { rank, .. } => *rank,
            Repr::Sum { parts } => parts.iter().map(|p| p.rank()).sum(),
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.n + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.n + x] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        self.act(self.ring.neg(self.ring.one()), x)
    }

    /// Canonical coordinates (ring element labels) of an element.
    pub fn coords(&self, x: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Presented { rank, reps, .. } => decode(self.ring.size(), *rank, reps[x] as usize),
            Repr::Sum { parts } => {
                let d = self.split(parts, x);
                parts.iter().zip(d).flat_map(|(p, e)| p.coords(e)).collect()
            }
        }
    }

    /// Element with the given coordinates (any representative of the coset).
    pub fn from_coords(&self, coords: &[usize]) -> Result<usize, ModuleError> {
        let bad = || ModuleError::BadElement(format!("{coords:?}"));
        if coords.len() != self.rank() || coords.iter().any(|&c| c >= self.ring.size()) {
            return Err(bad());
        }
        match &self.repr {
            Repr::Presented { coset_of, .. } => Ok(coset_of[encode(self.ring.size(), coords)] as usize),
            Repr::Sum { parts } => {
                let mut digits = Vec::with_capacity(parts.len());
                let mut rest = coords;
                for p in parts {
                    let (head, tail) = rest.split_at(p.rank());
                    digits.push(p.from_coords(head)?);
                    rest = tail;
                }
                Ok(Self::join(parts, &digits))
            }
        }
    }

    /// Generators of the module: images of the standard basis vectors.
    pub fn generators(&self) -> Vec<usize> {
        let g = self.rank();
        (0..g)
            .map(|i| {
                let mut c = vec![0; g];
                c[i] = self.ring.one();
                self.from_coords(&c).unwrap()
            })
            .collect()
    }

    pub fn render_elem(&self, x: usize) -> String {
        let c: Vec<String> = self.coords(x).iter().map(|&e| self.ring.render_elem(e)).collect();
        if c.len() == 1 {
            c[0].clone()
        } else {
            format!("[{}]", c.join(","))
        }
    }

    /// Exhaustive check of the module axioms over the full tables.
    pub fn verify_axioms(&self) -> Result<(), String> {
        let r = &self.ring;
        let q = r.size();
        for x in 0..self.n {
            if self.act(r.one(), x) != x {
                return Err(format!("1·{x} != {x}"));
            }
            if self.add(x, 0) != x || self.add(x, self.neg(x)) != 0 {
                return Err(format!("additive identity or inverse fails at {x}"));
            }
            for y in 0..self.n {
                if self.add(x, y) != self.add(y, x) {
                    return Err("addition is not commutative".into());
                }
                for a in 0..q {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err("action does not distribute over module addition".into());
                    }
                }
            }
            for a in 0..q {
                for b in 0..q {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return Err("action does not distribute over ring addition".into());
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err("action is not associative".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero_submodule(self: &Arc<Self>) -> Submodule {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert(0);
        Submodule { module: self.clone(), set }
    }

    pub fn full(self: &Arc<Self>) -> Submodule {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert_range(..);
        Submodule { module: self.clone(), set }
    }

    pub fn submodule_closure(self: &Arc<Self>, gens: &[usize]) -> Submodule {
        let mut seeds = FixedBitSet::with_capacity(self.n);
        for &g in gens {
            for r in 0..self.ring.size() {
                seeds.insert(self.act(r, g));
            }
        }
        let seeds: Vec<usize> = seeds.ones().collect();
        Submodule {
            module: self.clone(),
            set: additive_closure(self.n, &seeds, |a, b| self.add(a, b)),
        }
    }

    /// `I·M` for an ideal `I`.
    pub fn ideal_times(self: &Arc<Self>, ideal: &FiniteIdeal, within: &Submodule) -> Submodule {
        let mut seeds = FixedBitSet::with_capacity(self.n);
        for a in ideal.elements() {
            for x in within.elements() {
                seeds.insert(self.act(a, x));
            }
        }
        let seeds: Vec<usize> = seeds.ones().collect();
        Submodule {
            module: self.clone(),
            set: additive_closure(self.n, &seeds, |a, b| self.add(a, b)),
        }
    }
}

/// A submodule, stored as the set of its elements.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    set: FixedBitSet,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.module, &other.module) && self.set == other.set
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state)
    }
}

impl Submodule {
    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.module.n
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.ones()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        Submodule {
            module: self.module.clone(),
            set: coset_union(&self.module, &large.set, &small.set),
        }
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        let mut set = self.set.clone();
        set.intersect_with(&other.set);
        Submodule { module: self.module.clone(), set }
    }

    /// A small generating set, chosen greedily in label order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.module.zero_submodule();
        for x in self.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = self.module.submodule_closure(&gens);
            }
        }
        gens
    }
}

/// `S + T` for subgroups `S`, `T`: the union of the cosets `t + S`.
pub(crate) fn coset_union(m: &FiniteModule, s: &FixedBitSet, t: &FixedBitSet) -> FixedBitSet {
    let elems: Vec<usize> = s.ones().collect();
    let mut out = s.clone();
    for b in t.ones() {
        if out.contains(b) {
            continue;
        }
        for &a in &elems {
            out.insert(m.add(a, b));
        }
    }
    out
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.module;
        if self.len() <= 16 {
            let e: Vec<String> = self.elements().map(|x| m.render_elem(x)).collect();
            write!(f, "{{{}}}", e.join(","))
        } else {
            let g: Vec<String> = self.generators().iter().map(|&x| m.render_elem(x)).collect();
            write!(f, "span[{}]", g.join(","))
        }
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[doc(hidden)]
pub mod testing {
    use std::cell::Cell;

    thread_local! {
        static COLON_MUTATION: Cell<bool> = const { Cell::new(false) };
    }

    /// Test-only fault injection: a colon by a prime ideal inside the whole
    /// module overshoots by one extra colon step.
    pub fn set_colon_mutation(on: bool) {
        COLON_MUTATION.with(|c| c.set(on));
    }

    pub fn colon_mutation() -> bool {
        COLON_MUTATION.with(|c| c.get())
    }
}

fn check_same(n: &Submodule, ambient: &Submodule) -> Result<(), ModuleError> {
    if !Arc::ptr_eq(&n.module, &ambient.module) {
        return Err(ModuleError::ModuleMismatch);
    }
    if !n.is_subset(ambient) {
        return Err(ModuleError::NotContained(n.to_string()));
    }
    Ok(())
}

fn raw_colon(n: &Submodule, a: &FiniteIdeal, ambient: &Submodule) -> Submodule {
    let m = &n.module;
    let elems: Vec<usize> = a.elements().collect();
    let mut set = FixedBitSet::with_capacity(m.n);
    for x in ambient.elements() {
        if elems.iter().all(|&r| n.contains(m.act(r, x))) {
            set.insert(x);
        }
    }
    Submodule { module: m.clone(), set }
}

/// `(N : a) = {x ∈ M : a·x ⊆ N}` in the whole module `M`.
pub fn colon_submodule(n: &Submodule, a: &FiniteIdeal) -> Submodule {
    colon_within(n, a, &n.module.full())
}

/// `(N : a) ∩ L` for an ambient submodule `L ⊇ N`.
pub fn colon_within(n: &Submodule, a: &FiniteIdeal, ambient: &Submodule) -> Submodule {
    let out = raw_colon(n, a, ambient);
    if testing::colon_mutation()
        && ambient.is_full()
        && out != *n
        && out != *ambient
        && a.ring().as_prime(a).is_ok()
    {
        return raw_colon(&out, a, ambient);
    }
    out
}

/// `(N : m) = {a ∈ R : a·m ∈ N}`.
pub fn annihilator_of(m: usize, n: &Submodule) -> FiniteIdeal {
    let module = &n.module;
    let ring = module.ring.clone();
    let members: Vec<usize> = (0..ring.size()).filter(|&r| n.contains(module.act(r, m))).collect();
    // the members form an ideal; closing over them returns it unchanged
    ring.ideal_closure(&members)
}

fn annihilator_into(m: usize, n: &Submodule, set: &mut FixedBitSet) {
    let module = &n.module;
    set.clear();
    for r in 0..module.ring.size() {
        if n.contains(module.act(r, m)) {
            set.insert(r);
        }
    }
}

/// `Ass(L/N)`: the prime ideals of the form `(N : m)`, `m ∈ L \ N`, canonically sorted.
pub fn associated_primes_within(ambient: &Submodule, n: &Submodule) -> Result<Vec<PrimeIdealFin>, ModuleError> {
    check_same(n, ambient)?;
    let primes = ambient.module.ring.primes()?;
    let mut found = vec![false; primes.len()];
    let mut remaining = primes.len();
    let mut ann = FixedBitSet::with_capacity(ambient.module.ring.size());
    for m in ambient.elements() {
        if remaining == 0 {
            break;
        }
        if n.contains(m) {
            continue;
        }
        annihilator_into(m, n, &mut ann);
        if let Some(i) = primes.iter().position(|p| *p.set() == ann) {
            if !found[i] {
                found[i] = true;
                remaining -= 1;
            }
        }
    }
    let mut out: Vec<PrimeIdealFin> = primes.into_iter().zip(found).filter(|(_, f)| *f).map(|(p, _)| p).collect();
    out.sort();
    Ok(out)
}

pub fn associated_primes(module: &Arc<FiniteModule>, n: &Submodule) -> Result<Vec<PrimeIdealFin>, ModuleError> {
    associated_primes_within(&module.full(), n)
}

/// Primes not strictly contained in another prime of the list.
pub fn maximal_elements(primes: &[PrimeIdealFin]) -> Vec<PrimeIdealFin> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && p.is_subset(q)))
        .cloned()
        .collect()
}

/// The regular `p`-prime extension `(N : p)` of `N` inside `ambient`.
pub fn regular_prime_extension(ambient: &Submodule, n: &Submodule, p: &PrimeIdealFin) -> Result<Submodule, ModuleError> {
    check_same(n, ambient)?;
    if !Arc::ptr_eq(p.ring(), &n.module.ring) {
        return Err(ModuleError::RingMismatch);
    }
    if n == ambient {
        return Err(ModuleError::NotProper);
    }
    let ass = associated_primes_within(ambient, n)?;
    if !ass.contains(p) {
        return Err(ModuleError::NotAssociated(p.to_string()));
    }
    if !maximal_elements(&ass).contains(p) {
        return Err(ModuleError::NotMaximal(p.to_string()));
    }
    Ok(colon_within(n, p, ambient))
}

/// Rule for choosing among several maximal associated primes.
#[derive(Debug, Clone, Default)]
pub enum TieBreak {
    /// The smallest prime in the canonical prime order.
    #[default]
    Canonical,
    /// The first available prime of this list; canonical when none applies.
    Preferred(Vec<PrimeIdealFin>),
}

/// `N = M_0 ⊊ M_1 ⊊ … ⊊ M_n = L`, each step a regular prime extension.
#[derive(Clone, Debug)]
pub struct RpeFiltration {
    ambient: Submodule,
    base: Submodule,
    steps: Vec<(PrimeIdealFin, Submodule)>,
}

impl RpeFiltration {
    pub fn ambient(&self) -> &Submodule {
        &self.ambient
    }

    pub fn base(&self) -> &Submodule {
        &self.base
    }

    pub fn steps(&self) -> &[(PrimeIdealFin, Submodule)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn primes(&self) -> Vec<PrimeIdealFin> {
        self.steps.iter().map(|(p, _)| p.clone()).collect()
    }

    /// `M_i` for `0 ≤ i ≤ len`, with `M_0 = N`.
    pub fn stage(&self, i: usize) -> &Submodule {
        if i == 0 {
            &self.base
        } else {
            &self.steps[i - 1].1
        }
    }

    pub fn factorization(&self) -> PrimeFactorization {
        PrimeFactorization::from_primes(self.primes())
    }

    /// Checks strict inclusions, the colon step rule, maximality of each prime
    /// and that the last stage is the ambient submodule.
    pub fn validate(&self) -> Result<(), ModuleError> {
        self.validate_steps(1..=self.steps.len())
    }

    fn validate_steps(&self, range: std::ops::RangeInclusive<usize>) -> Result<(), ModuleError> {
        let fail = |msg: String| Err(ModuleError::InvalidFiltration(msg));
        if self.steps.is_empty() {
            return fail("no steps".into());
        }
        for i in range {
            let (prev, (p, cur)) = (self.stage(i - 1), &self.steps[i - 1]);
            if !prev.is_subset(cur) || prev == cur {
                return fail(format!("step {i} is not a strict inclusion"));
            }
            let ass = associated_primes_within(&self.ambient, prev)?;
            if !maximal_elements(&ass).contains(p) {
                return fail(format!("step {i}: {p} is not maximal in the associated primes"));
            }
            if *cur != colon_within(prev, p, &self.ambient) {
                return fail(format!("step {i} is not the colon by {p}"));
            }
        }
        if *self.stage(self.steps.len()) != self.ambient {
            return fail("last stage is not the ambient module".into());
        }
        Ok(())
    }
}

impl fmt::Display for RpeFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, s)) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if s == &self.ambient {
                write!(f, "{p}:M")?;
            } else {
                write!(f, "{p}:{s}")?;
            }
        }
        write!(f, "]")
    }
}

fn pick(maximal: &[PrimeIdealFin], tie: &TieBreak) -> PrimeIdealFin {
    if let TieBreak::Preferred(order) = tie {
        if let Some(p) = order.iter().find(|p| maximal.contains(p)) {
            return p.clone();
        }
    }
    maximal.iter().min().unwrap().clone()
}

pub fn rpe_filtration_within(ambient: &Submodule, n: &Submodule, tie: &TieBreak) -> Result<RpeFiltration, ModuleError> {
    check_same(n, ambient)?;
    if n == ambient {
        return Err(ModuleError::NotProper);
    }
    let mut steps = Vec::new();
    let mut current = n.clone();
    while current != *ambient {
        let ass = associated_primes_within(ambient, &current)?;
        let p = pick(&maximal_elements(&ass), tie);
        let next = colon_within(&current, &p, ambient);
        if next == current {
            return Err(ModuleError::InvalidFiltration(format!("colon by {p} did not grow {current}")));
        }
        steps.push((p, next.clone()));
        current = next;
    }
    Ok(RpeFiltration {
        ambient: ambient.clone(),
        base: n.clone(),
        steps,
    })
}

pub fn rpe_filtration(module: &Arc<FiniteModule>, n: &Submodule, tie: &TieBreak) -> Result<RpeFiltration, ModuleError> {
    rpe_filtration_within(&module.full(), n, tie)
}

/// `P_L(N)` for `N ⊊ L`.
pub fn factorize_within(ambient: &Submodule, n: &Submodule) -> Result<PrimeFactorization, ModuleError> {
    Ok(rpe_filtration_within(ambient, n, &TieBreak::Canonical)?.factorization())
}

pub fn factorize(module: &Arc<FiniteModule>, n: &Submodule) -> Result<PrimeFactorization, ModuleError> {
    factorize_within(&module.full(), n)
}

/// `(⊕ M_i, ⊕ N_i)`.
pub fn direct_sum(modules: &[Arc<FiniteModule>], subs: &[Submodule]) -> Result<(Arc<FiniteModule>, Submodule), ModuleError> {
    if modules.len() != subs.len() {
        return Err(ModuleError::BadDirectSum);
    }
    for (m, s) in modules.iter().zip(subs) {
        if !Arc::ptr_eq(m, &s.module) {
            return Err(ModuleError::ModuleMismatch);
        }
    }
    let sum = FiniteModule::sum_of(modules)?;
    let set = embed(&sum, subs);
    Ok((sum.clone(), Submodule { module: sum, set }))
}

/// `⊕ S_i` as a submodule of an existing direct sum of the `S_i`'s modules.
pub fn sum_submodule(sum: &Arc<FiniteModule>, subs: &[Submodule]) -> Result<Submodule, ModuleError> {
    match &sum.repr {
        Repr::Sum { parts } if parts.len() == subs.len() && parts.iter().zip(subs).all(|(p, s)| Arc::ptr_eq(p, &s.module)) => {
            Ok(Submodule {
                module: sum.clone(),
                set: embed(sum, subs),
            })
        }
        _ => Err(ModuleError::ModuleMismatch),
    }
}

/// Splits a submodule of a direct sum into its projections, provided it is
/// their direct sum.
pub fn decompose_sum(sub: &Submodule) -> Option<Vec<Submodule>> {
    let module = &sub.module;
    let parts = module.summands()?;
    let mut sets: Vec<FixedBitSet> = parts.iter().map(|p| FixedBitSet::with_capacity(p.n)).collect();
    for x in sub.elements() {
        for (i, d) in module.split(parts, x).into_iter().enumerate() {
            sets[i].insert(d);
        }
    }
    let subs: Vec<Submodule> = parts
        .iter()
        .zip(sets)
        .map(|(p, set)| Submodule { module: p.clone(), set })
        .collect();
    let total: usize = subs.iter().map(|s| s.len()).product();
    (total == sub.len()).then_some(subs)
}

fn embed(sum: &Arc<FiniteModule>, subs: &[Submodule]) -> FixedBitSet {
    let mut labels = vec![0usize];
    for s in subs {
        let k = s.module.n;
        labels = labels.iter().flat_map(|&l| s.elements().map(move |e| l * k + e)).collect();
    }
    let mut set = FixedBitSet::with_capacity(sum.n);
    for l in labels {
        set.insert(l);
    }
    set
}

/// Swaps the primes at 1-based positions `i` and `i + 1`, replacing `M_i`
/// with `K_i = (M_{i−1} : p_{i+1})`.
pub fn interchange_step(f: &RpeFiltration, i: usize) -> Result<RpeFiltration, ModuleError> {
    if i == 0 || i >= f.len() {
        return Err(ModuleError::BadIndex { index: i, len: f.len() });
    }
    let (p, q) = (&f.steps[i - 1].0, &f.steps[i].0);
    if q.is_subset(p) {
        return Err(ModuleError::NotInterchangeable {
            prev: p.to_string(),
            next: q.to_string(),
        });
    }
    let k = colon_within(f.stage(i - 1), q, &f.ambient);
    let mut steps = f.steps.clone();
    steps[i - 1] = (q.clone(), k);
    steps[i].0 = p.clone();
    let out = RpeFiltration {
        ambient: f.ambient.clone(),
        base: f.base.clone(),
        steps,
    };
    out.validate_steps(i..=i + 1)?;
    Ok(out)
}

/// A filtration whose primes appear grouped in `order`, reached from the
/// canonical filtration by adjacent interchanges.
pub fn reorder_filtration(ambient: &Submodule, n: &Submodule, order: &[PrimeIdealFin]) -> Result<RpeFiltration, ModuleError> {
    let mut f = rpe_filtration_within(ambient, n, &TieBreak::Canonical)?;
    let distinct: HashSet<&PrimeIdealFin> = order.iter().collect();
    let actual = f.factorization();
    let present: HashSet<&PrimeIdealFin> = actual.factors.iter().map(|(p, _)| p).collect();
    if distinct.len() != order.len() || distinct != present {
        let names: Vec<String> = order.iter().map(|p| p.to_string()).collect();
        return Err(ModuleError::OrderMismatch {
            target: names.join(", "),
            actual: actual.to_string(),
        });
    }
    let rank: HashMap<&PrimeIdealFin, usize> = order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    loop {
        let swap = (1..f.len()).find(|&i| rank[&f.steps[i - 1].0] > rank[&f.steps[i].0]);
        match swap {
            Some(i) => f = interchange_step(&f, i)?,
            None => return Ok(f),
        }
    }
}

/// All submodules between `lower` and `ambient` (inclusive), sorted by size then elements.
pub fn submodules_between(lower: &Submodule, ambient: &Submodule, bound: usize) -> Result<Vec<Submodule>, ModuleError> {
    check_same(lower, ambient)?;
    let m = &ambient.module;
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found = Vec::new();
    for x in ambient.elements() {
        if x != 0 && lower.contains(x) {
            continue;
        }
        let s = m.submodule_closure(&[x]).sum(lower);
        if seen.insert(s.set.clone()) {
            found.push(s);
        }
    }
    // every submodule between is a sum of the cyclic extensions of `lower`
    let cyclic = found.clone();
    let mut k = 0;
    while k < found.len() {
        for c in &cyclic {
            if c.set.is_subset(&found[k].set) {
                continue;
            }
            let s = found[k].sum(c);
            if seen.insert(s.set.clone()) {
                if seen.len() > bound {
                    return Err(ModuleError::LatticeTooLarge(bound));
                }
                found.push(s);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| canonical_cmp(&a.set, &b.set));
    Ok(found)
}

/// `P_M(N)` as a multiset of primes, sorted in the canonical prime order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(PrimeIdealFin, u32)>,
}

impl PrimeFactorization {
    pub fn from_primes(primes: impl IntoIterator<Item = PrimeIdealFin>) -> Self {
        let mut factors: Vec<(PrimeIdealFin, u32)> = Vec::new();
        for p in primes {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, e)) => *e += 1,
                None => factors.push((p, 1)),
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        PrimeFactorization { factors }
    }

    pub fn from_factors(pairs: impl IntoIterator<Item = (PrimeIdealFin, u32)>) -> Self {
        Self::from_primes(pairs.into_iter().flat_map(|(p, e)| std::iter::repeat_n(p, e as usize)))
    }

    pub fn factors(&self) -> &[(PrimeIdealFin, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> Vec<PrimeIdealFin> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn exponent(&self, p: &PrimeIdealFin) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    pub fn total(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// The ideal `∏ p_i^{r_i}`.
    pub fn ideal(&self, ring: &Arc<FiniteRing>) -> FiniteIdeal {
        self.factors
            .iter()
            .fold(ring.unit_ideal(), |acc, (p, e)| acc.product(&p.power(*e)))
    }

    /// Multiset union (exponents add).
    pub fn combine(&self, other: &PrimeFactorization) -> PrimeFactorization {
        Self::from_factors(self.factors.iter().chain(&other.factors).cloned())
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build_ring, RingSpec};

    fn zmod(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingSpec::Zmod(n)).unwrap()
    }

    fn cyclic(n: u64) -> Arc<FiniteModule> {
        build_module(&zmod(n), 1, &[]).unwrap()
    }

    fn prime(r: &Arc<FiniteRing>, g: usize) -> PrimeIdealFin {
        r.as_prime(&r.ideal_closure(&[g])).unwrap()
    }

    fn elems(s: &Submodule) -> Vec<usize> {
        s.elements().collect()
    }

    #[test]
    fn axioms_hold_for_every_small_presentation() {
        for n in [4, 6, 8] {
            let r = zmod(n as u64);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let rows = [vec![a, b], vec![c, 0]];
                        let m = build_module(&r, 2, &rows).unwrap();
                        m.verify_axioms().unwrap();
                        let free = build_module(&r, 2, &[]).unwrap();
                        let gens: Vec<usize> = rows.iter().map(|row| free.from_coords(row).unwrap()).collect();
                        assert_eq!(m.size() * free.submodule_closure(&gens).len(), n * n);
                    }
                }
            }
        }
        let r = zmod(12);
        let parts = [build_module(&r, 1, &[vec![4]]).unwrap(), build_module(&r, 1, &[vec![6]]).unwrap()];
        let s = FiniteModule::sum_of(&parts).unwrap();
        assert_eq!(s.size(), 24);
        s.verify_axioms().unwrap();
    }

    #[test]
    fn presentation_sizes() {
        let r = zmod(4);
        let m = build_module(&r, 2, &[vec![2, 0]]).unwrap();
        assert_eq!(m.size(), 8);
        m.verify_axioms().unwrap();
        // Z/2 ⊕ Z/4: the orders of elements are 1, 2 and 4
        let orders: Vec<usize> = (0..8).map(|x| m.submodule_closure(&[x]).len()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 4);
        assert_eq!(cyclic(6).size(), 6);
        assert_eq!(build_module(&r, 2, &[vec![1, 0], vec![0, 1]]).unwrap().size(), 1);
        assert!(matches!(
            build_module(&zmod(128), 2, &[]),
            Err(ModuleError::TooLarge { .. })
        ));
    }

    #[test]
    fn closures_and_colons() {
        let m = cyclic(8);
        assert_eq!(elems(&m.submodule_closure(&[])), vec![0]);
        assert_eq!(m.submodule_closure(&m.generators()), m.full());
        assert_eq!(elems(&m.submodule_closure(&[2])), vec![0, 2, 4, 6]);
        let r = m.ring().clone();
        let zero = m.zero_submodule();
        assert_eq!(elems(&colon_submodule(&zero, &r.ideal_closure(&[2]))), vec![0, 4]);
        assert_eq!(colon_submodule(&zero, &r.unit_ideal()), zero);
        assert_eq!(colon_submodule(&zero, &r.zero_ideal()), m.full());
    }

    #[test]
    fn annihilators_and_ass() {
        let m = cyclic(6);
        let zero = m.zero_submodule();
        assert_eq!(annihilator_of(3, &zero).to_string(), "(2)");
        assert_eq!(annihilator_of(1, &zero).to_string(), "(0)");
        assert_eq!(annihilator_of(0, &zero).to_string(), "(1)");
        let ass: Vec<String> = associated_primes(&m, &zero).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(ass, ["(2)", "(3)"]);
        assert!(associated_primes(&m, &m.full()).unwrap().is_empty());
        let gf5 = build_module(&build_ring(&RingSpec::Gf(5)).unwrap(), 1, &[]).unwrap();
        let ass: Vec<String> = associated_primes(&gf5, &gf5.zero_submodule()).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(ass, ["(0)"]);
    }

    #[test]
    fn regular_extensions() {
        let m = cyclic(8);
        let r = m.ring().clone();
        let k = regular_prime_extension(&m.full(), &m.zero_submodule(), &prime(&r, 2)).unwrap();
        assert_eq!(elems(&k), vec![0, 4]);
        let m6 = cyclic(6);
        let r6 = m6.ring().clone();
        let k = regular_prime_extension(&m6.full(), &m6.zero_submodule(), &prime(&r6, 2)).unwrap();
        assert_eq!(elems(&k), vec![0, 3]);
        // (3) is not even a proper ideal class of Z/8 here; (3) = R
        assert!(r.as_prime(&r.ideal_closure(&[3])).is_err());
        let r12 = zmod(12);
        let m12 = build_module(&r12, 1, &[vec![4]]).unwrap();
        let err = regular_prime_extension(&m12.full(), &m12.zero_submodule(), &prime(&r12, 3)).unwrap_err();
        assert!(matches!(err, ModuleError::NotAssociated(_)));
        assert_eq!(
            regular_prime_extension(&m.full(), &m.full(), &prime(&r, 2)).unwrap_err(),
            ModuleError::NotProper
        );
    }

    #[test]
    fn filtrations() {
        let m = cyclic(8);
        let f = rpe_filtration(&m, &m.zero_submodule(), &TieBreak::Canonical).unwrap();
        assert_eq!(f.to_string(), "[(2):{0,4}, (2):{0,2,4,6}, (2):M]");
        f.validate().unwrap();
        let m6 = cyclic(6);
        let r6 = m6.ring().clone();
        let f = rpe_filtration(&m6, &m6.zero_submodule(), &TieBreak::Canonical).unwrap();
        assert_eq!(f.to_string(), "[(2):{0,3}, (3):M]");
        let pref = TieBreak::Preferred(vec![prime(&r6, 3)]);
        let g = rpe_filtration(&m6, &m6.zero_submodule(), &pref).unwrap();
        assert_eq!(g.to_string(), "[(3):{0,2,4}, (2):M]");
        assert_eq!(f.factorization(), g.factorization());
        assert_eq!(
            rpe_filtration(&m6, &m6.full(), &TieBreak::Canonical).unwrap_err(),
            ModuleError::NotProper
        );
    }

    #[test]
    fn factorizations() {
        let m12 = cyclic(12);
        assert_eq!(factorize(&m12, &m12.zero_submodule()).unwrap().to_string(), "(2)^2 * (3)^1");
        let m8 = cyclic(8);
        let four = m8.submodule_closure(&[4]);
        assert_eq!(factorize(&m8, &four).unwrap().to_string(), "(2)^2");
        assert_eq!(factorize(&m8, &m8.zero_submodule()).unwrap().to_string(), "(2)^3");
        let gf7 = build_module(&build_ring(&RingSpec::Gf(7)).unwrap(), 1, &[]).unwrap();
        assert_eq!(factorize(&gf7, &gf7.zero_submodule()).unwrap().to_string(), "(0)^1");
    }

    #[test]
    fn direct_sums() {
        let r2 = zmod(2);
        let z2 = build_module(&r2, 1, &[]).unwrap();
        let (s, n) = direct_sum(&[z2.clone(), z2.clone()], &[z2.full(), z2.full()]).unwrap();
        assert_eq!(s.size(), 4);
        assert_eq!(n, s.full());
        let r4 = zmod(4);
        let z4 = build_module(&r4, 1, &[]).unwrap();
        let two = build_module(&r4, 1, &[vec![2]]).unwrap();
        let (s, n) = direct_sum(&[z4.clone(), two.clone()], &[z4.zero_submodule(), two.zero_submodule()]).unwrap();
        assert_eq!(s.size(), 8);
        assert_eq!(n, s.zero_submodule());
        s.verify_axioms().unwrap();
        assert_eq!(s.coords(s.from_coords(&[3, 1]).unwrap()), vec![3, 1]);
        assert_eq!(factorize(&s, &n).unwrap().to_string(), "(2)^2");
        let other = zmod(4);
        let z4b = build_module(&other, 1, &[]).unwrap();
        assert_eq!(
            FiniteModule::sum_of(&[z4, z4b]).unwrap_err(),
            ModuleError::RingMismatch
        );
    }

    #[test]
    fn interchange_and_reorder() {
        let m6 = cyclic(6);
        let f = rpe_filtration(&m6, &m6.zero_submodule(), &TieBreak::Canonical).unwrap();
        let g = interchange_step(&f, 1).unwrap();
        assert_eq!(g.to_string(), "[(3):{0,2,4}, (2):M]");
        let back = interchange_step(&g, 1).unwrap();
        assert_eq!(back.to_string(), f.to_string());
        let m8 = cyclic(8);
        let f8 = rpe_filtration(&m8, &m8.zero_submodule(), &TieBreak::Canonical).unwrap();
        assert!(matches!(interchange_step(&f8, 1), Err(ModuleError::NotInterchangeable { .. })));
        assert!(matches!(interchange_step(&f8, 3), Err(ModuleError::BadIndex { .. })));

        let m12 = cyclic(12);
        let r12 = m12.ring().clone();
        let (p2, p3) = (prime(&r12, 2), prime(&r12, 3));
        let full = m12.full();
        let zero = m12.zero_submodule();
        let seq = |f: RpeFiltration| f.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(seq(reorder_filtration(&full, &zero, &[p3.clone(), p2.clone()]).unwrap()), ["(3)", "(2)", "(2)"]);
        assert_eq!(seq(reorder_filtration(&full, &zero, &[p2.clone(), p3.clone()]).unwrap()), ["(2)", "(2)", "(3)"]);
        assert!(matches!(
            reorder_filtration(&full, &zero, std::slice::from_ref(&p2)),
            Err(ModuleError::OrderMismatch { .. })
        ));
        let f8 = reorder_filtration(&m8.full(), &m8.zero_submodule(), &[prime(m8.ring(), 2)]).unwrap();
        assert_eq!(f8.to_string(), "[(2):{0,4}, (2):{0,2,4,6}, (2):M]");
    }

    #[test]
    fn factor_product_on_intermediate_stage() {
        let m = cyclic(24);
        let zero = m.zero_submodule();
        let f = rpe_filtration(&m, &zero, &TieBreak::Canonical).unwrap();
        let whole = f.factorization();
        for i in 1..f.len() {
            let k = f.stage(i);
            let split = factorize_within(&m.full(), k).unwrap().combine(&factorize_within(k, &zero).unwrap());
            assert_eq!(split, whole);
        }
    }

    #[test]
    fn submodule_lattice_of_cyclic() {
        let m = cyclic(12);
        let subs = submodules_between(&m.zero_submodule(), &m.full(), 100).unwrap();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs.first().unwrap(), &m.zero_submodule());
        assert_eq!(subs.last().unwrap(), &m.full());
    }

    #[test]
    fn mutation_hook_changes_colons() {
        let m = cyclic(8);
        let p = prime(m.ring(), 2);
        testing::set_colon_mutation(true);
        let mutated = colon_submodule(&m.zero_submodule(), &p);
        testing::set_colon_mutation(false);
        assert_eq!(elems(&mutated), vec![0, 2, 4, 6]);
        assert_eq!(elems(&colon_submodule(&m.zero_submodule(), &p)), vec![0, 4]);
    }
}

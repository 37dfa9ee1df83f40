//! Executable checks of the factorization theorems over enumerated families
//! of finite rings and modules, with counterexample shrinking.
//!
//! | id | statement checked |
//! |----|-------------------|
//! | `UNIQUE-MULTISET` | every choice sequence of maximal associated primes yields the same prime multiset |
//! | `ASS-CHAIN` | `Ass(M/M_{i−1}) = {p_i, …, p_n}` along a filtration |
//! | `COLON-CHAR` | `M_i = (N : p_1⋯p_i)` |
//! | `FACTOR-PRODUCT` | `P_M(N) = P_M(K)·P_K(N)` for every stage `K` of a filtration |
//! | `INTERCHANGE` | adjacent distinct primes can be swapped, and swapping back restores the filtration |
//! | `REORDER` | every order of the distinct primes is reachable by interchanges |
//! | `POWER-DISTINCT` | an exponent `r` of `p` in `P_M(N)` has `p^r ≠ p^{r−1}` |
//! | `SELF-FACTOR-IFF` | `P_R(p^r) = p^r` iff `p^r ≠ p^{r−1}` and `Ass(R/p^r) = {p}` |
//! | `MINIMAL-EXPONENT` | lowering the exponent of a minimal prime changes the product ideal |
//! | `DSUM-REGULAR` | regular extensions of a direct sum are direct sums of componentwise ones |
//! | `DSUM-MAX` | exponents of `P_{⊕M_i}(⊕N_i)` are componentwise maxima |
//! | `EXIST-IFF` | `P_{R^n}(⊕ p_i^{r_i}) = ∏ p_i^{r_i}` when each `p_i^{r_i}` is self-factoring |
//! | `OBSTRUCTION-SOUND` | no `P_M(N)` equals a prime power `p^r` that has `p^r = p^{r−1}` or an obstruction ideal |
//!
//! Sampling uses SplitMix64 so that seeds reproduce across implementations.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde_json::json;
use thiserror::Error;

use crate::cli::ast::{CheckTarget, ModElem, ModuleDef, Query, Script, Statement, SubmoduleDef};
use crate::finmod::{
    associated_primes_within, colon_within, factorize_within, interchange_step, maximal_elements, reorder_filtration,
    rpe_filtration_within, submodules_between, testing, FiniteModule, PrimeFactorization, Submodule, TieBreak,
};
use crate::finring::{build_ring, FiniteRing, PrimeIdealFin, RingError, RingSpec};

pub const REPORT_SCHEMA: &str = "gpif.property/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    UniqueMultiset,
    AssChain,
    ColonChar,
    FactorProduct,
    Interchange,
    Reorder,
    PowerDistinct,
    SelfFactorIff,
    MinimalExponent,
    DsumRegular,
    DsumMax,
    ExistIff,
    ObstructionSound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// A module `M` with a proper submodule `N`.
    Module,
    /// A direct sum `⊕M_i` with the submodule `⊕N_i`.
    Sum,
    /// A list of prime powers `p_i^{r_i}` in the ring.
    PrimePowers,
}

impl PropertyId {
    pub const ALL: [PropertyId; 13] = [
        PropertyId::UniqueMultiset,
        PropertyId::AssChain,
        PropertyId::ColonChar,
        PropertyId::FactorProduct,
        PropertyId::Interchange,
        PropertyId::Reorder,
        PropertyId::PowerDistinct,
        PropertyId::SelfFactorIff,
        PropertyId::MinimalExponent,
        PropertyId::DsumRegular,
        PropertyId::DsumMax,
        PropertyId::ExistIff,
        PropertyId::ObstructionSound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::UniqueMultiset => "UNIQUE-MULTISET",
            PropertyId::AssChain => "ASS-CHAIN",
            PropertyId::ColonChar => "COLON-CHAR",
            PropertyId::FactorProduct => "FACTOR-PRODUCT",
            PropertyId::Interchange => "INTERCHANGE",
            PropertyId::Reorder => "REORDER",
            PropertyId::PowerDistinct => "POWER-DISTINCT",
            PropertyId::SelfFactorIff => "SELF-FACTOR-IFF",
            PropertyId::MinimalExponent => "MINIMAL-EXPONENT",
            PropertyId::DsumRegular => "DSUM-REGULAR",
            PropertyId::DsumMax => "DSUM-MAX",
            PropertyId::ExistIff => "EXIST-IFF",
            PropertyId::ObstructionSound => "OBSTRUCTION-SOUND",
        }
    }

    pub fn kind(self) -> InstanceKind {
        match self {
            PropertyId::DsumRegular | PropertyId::DsumMax => InstanceKind::Sum,
            PropertyId::SelfFactorIff | PropertyId::ExistIff => InstanceKind::PrimePowers,
            _ => InstanceKind::Module,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = PropsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| PropsError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropsError {
    #[error("unknown property id `{0}`")]
    UnknownId(String),
    #[error("the instance family lists no rings")]
    EmptyFamily,
    #[error("family out of bounds: {0}")]
    Bounds(String),
    #[error("{id} does not apply to this instance: {reason}")]
    WrongInstance { id: PropertyId, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// SplitMix64 (Steele, Lea, Flood 2014): `state += 0x9E3779B97F4A7C15`, then
/// the output is mixed with multipliers `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB` and shifts 30, 27, 31. `below(n)` reduces modulo `n`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// The rings and module shapes a property is checked over.
#[derive(Debug, Clone)]
pub struct InstanceFamily {
    pub rings: Vec<RingSpec>,
    /// Largest module `|M|` considered.
    pub module_cap: usize,
    pub max_generators: usize,
    pub max_relations: usize,
    /// Largest exponent `r` tried for prime powers.
    pub max_exponent: u32,
    /// Enumerate every presentation; otherwise draw `samples` instances.
    pub exhaustive: bool,
    pub samples: usize,
    pub seed: u64,
    /// Direct-sum pairs checked per ring in exhaustive mode.
    pub pair_cap: usize,
    #[doc(hidden)]
    pub mutate_colon: bool,
}

impl InstanceFamily {
    /// Z/n for n in 2..=16, 18, 24, 27, 32; GF(p) for p in 2, 3, 5, 7; and
    /// products of two Z/n of size at most 64.
    pub fn default_family() -> Self {
        let mut moduli: Vec<u64> = (2..=16).collect();
        moduli.extend([18, 24, 27, 32]);
        let mut rings: Vec<RingSpec> = moduli.iter().map(|&n| RingSpec::Zmod(n)).collect();
        rings.extend([2, 3, 5, 7].map(RingSpec::Gf));
        for (i, &a) in moduli.iter().enumerate() {
            for &b in &moduli[i..] {
                if a * b <= 64 {
                    rings.push(RingSpec::Product(vec![RingSpec::Zmod(a), RingSpec::Zmod(b)]));
                }
            }
        }
        Self::with_rings(rings)
    }

    pub fn with_rings(rings: Vec<RingSpec>) -> Self {
        InstanceFamily {
            rings,
            module_cap: 64,
            max_generators: 2,
            max_relations: 2,
            max_exponent: 4,
            exhaustive: true,
            samples: 0,
            seed: 0,
            pair_cap: 24,
            mutate_colon: false,
        }
    }

    pub fn sampled(mut self, samples: usize, seed: u64) -> Self {
        self.exhaustive = false;
        self.samples = samples;
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<(), PropsError> {
        if self.rings.is_empty() {
            return Err(PropsError::EmptyFamily);
        }
        let bad = |m: &str| Err(PropsError::Bounds(m.to_string()));
        if self.module_cap > crate::finmod::MAX_MODULE_SIZE {
            return bad("module cap above 4096");
        }
        if !(1..=3).contains(&self.max_generators) || self.max_relations > 3 {
            return bad("at most 3 generators and 3 relation rows");
        }
        if !(1..=8).contains(&self.max_exponent) {
            return bad("exponents must lie in 1..=8");
        }
        if !self.exhaustive && self.samples == 0 {
            return bad("sampled mode needs a positive sample count");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub message: String,
    /// A standalone script whose final query replays the failing check.
    pub script: String,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub id: PropertyId,
    pub instances: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub wall_time: Duration,
}

impl PropertyReport {
    /// One JSON record; wall time is left out so records are reproducible.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": REPORT_SCHEMA,
            "id": self.id.name(),
            "instances": self.instances,
            "pass": self.passed,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "message": c.message,
                "script": c.script,
            })),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:<18} {} {:>7} instances  {:.2}s",
            self.id.name(),
            if self.passed { "pass" } else { "FAIL" },
            self.instances,
            self.wall_time.as_secs_f64()
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!("\n  violation: {}\n  replay:\n", c.message));
            for line in c.script.lines() {
                s.push_str(&format!("    {line}\n"));
            }
        }
        s
    }
}

/// Outcome of one instance: `Err` carries a description of the violation.
pub type Verdict = Result<(), String>;

fn fact_of(ambient: &Submodule, n: &Submodule) -> Result<PrimeFactorization, String> {
    if n == ambient {
        return Ok(PrimeFactorization::from_primes([]));
    }
    factorize_within(ambient, n).map_err(|e| e.to_string())
}

fn unique_multiset(ambient: &Submodule, n: &Submodule) -> Verdict {
    fn explore(
        ambient: &Submodule,
        current: &Submodule,
        memo: &mut HashMap<FixedBitSet, PrimeFactorization>,
    ) -> Result<PrimeFactorization, String> {
        if current == ambient {
            return Ok(PrimeFactorization::from_primes([]));
        }
        if let Some(f) = memo.get(current.set()) {
            return Ok(f.clone());
        }
        let ass = associated_primes_within(ambient, current).map_err(|e| e.to_string())?;
        let mut result: Option<(PrimeIdealFin, PrimeFactorization)> = None;
        for p in maximal_elements(&ass) {
            let next = colon_within(current, &p, ambient);
            if next == *current {
                return Err(format!("colon of {current} by {p} does not grow"));
            }
            let total = explore(ambient, &next, memo)?.combine(&PrimeFactorization::from_primes([p.clone()]));
            match &result {
                Some((q, other)) if *other != total => {
                    return Err(format!("over {current}, choosing {q} gives {other} but choosing {p} gives {total}"));
                }
                Some(_) => {}
                None => result = Some((p, total)),
            }
        }
        let (_, f) = result.ok_or_else(|| format!("no associated prime over {current}"))?;
        memo.insert(current.set().clone(), f.clone());
        Ok(f)
    }
    let all = explore(ambient, n, &mut HashMap::new())?;
    let canonical = fact_of(ambient, n)?;
    if all != canonical {
        return Err(format!("canonical filtration gives {canonical}, choice tree gives {all}"));
    }
    Ok(())
}

fn ass_chain(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = rpe_filtration_within(ambient, n, &TieBreak::Canonical).map_err(|e| e.to_string())?;
    let primes = f.primes();
    for i in 0..f.len() {
        let got: HashSet<PrimeIdealFin> = associated_primes_within(ambient, f.stage(i))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let want: HashSet<PrimeIdealFin> = primes[i..].iter().cloned().collect();
        if got != want {
            return Err(format!("Ass(M/M_{i}) with M_{i} = {} differs from the remaining primes of {f}", f.stage(i)));
        }
    }
    Ok(())
}

fn colon_char(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = rpe_filtration_within(ambient, n, &TieBreak::Canonical).map_err(|e| e.to_string())?;
    let ring = ambient.module().ring().clone();
    let mut product = ring.unit_ideal();
    for i in 1..=f.len() {
        product = product.product(&f.steps()[i - 1].0);
        let direct = colon_within(n, &product, ambient);
        if direct != *f.stage(i) {
            return Err(format!(
                "M_{i} = {} but (N : {product}) = {direct} in filtration {f}",
                f.stage(i)
            ));
        }
    }
    Ok(())
}

fn factor_product(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = rpe_filtration_within(ambient, n, &TieBreak::Canonical).map_err(|e| e.to_string())?;
    let whole = f.factorization();
    for i in 1..f.len() {
        let k = f.stage(i);
        let upper = fact_of(ambient, k)?;
        let lower = fact_of(k, n)?;
        if upper.combine(&lower) != whole {
            return Err(format!("P_M(N) = {whole} but P_M(K) = {upper}, P_K(N) = {lower} for K = {k}"));
        }
    }
    Ok(())
}

fn interchange(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = rpe_filtration_within(ambient, n, &TieBreak::Canonical).map_err(|e| e.to_string())?;
    for i in 1..f.len() {
        let (p, q) = (&f.steps()[i - 1].0, &f.steps()[i].0);
        if q.is_subset(p) {
            continue;
        }
        let g = interchange_step(&f, i).map_err(|e| format!("interchange at {i} in {f}: {e}"))?;
        if g.steps()[i - 1].0 != *q || g.steps()[i].0 != *p {
            return Err(format!("interchange at {i} in {f} did not swap the primes"));
        }
        let back = interchange_step(&g, i).map_err(|e| format!("swapping back at {i} in {g}: {e}"))?;
        if back.steps() != f.steps() {
            return Err(format!("swapping twice at {i} changed {f} into {back}"));
        }
    }
    Ok(())
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn reorder(ambient: &Submodule, n: &Submodule) -> Verdict {
    let whole = fact_of(ambient, n)?;
    for order in permutations(&whole.primes()) {
        let g = reorder_filtration(ambient, n, &order).map_err(|e| e.to_string())?;
        g.validate().map_err(|e| e.to_string())?;
        let seq = g.primes();
        let expected: Vec<PrimeIdealFin> = order
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.clone(), whole.exponent(p) as usize))
            .collect();
        if seq != expected {
            return Err(format!("reordering towards {order:?} produced {g}"));
        }
    }
    Ok(())
}

fn power_distinct(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = fact_of(ambient, n)?;
    for (p, r) in f.factors() {
        if p.power(*r) == p.power(r - 1) {
            return Err(format!("P_M(N) = {f} yet {p}^{r} = {p}^{}", r - 1));
        }
    }
    Ok(())
}

fn minimal_exponent(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = fact_of(ambient, n)?;
    let ring = ambient.module().ring();
    let primes = f.primes();
    let full = f.ideal(ring);
    for p in &primes {
        if primes.iter().any(|q| q != p && q.is_subset(p)) {
            continue;
        }
        let lowered = PrimeFactorization::from_factors(
            f.factors().iter().map(|(q, e)| (q.clone(), if q == p { e - 1 } else { *e })),
        );
        if lowered.ideal(ring) == full {
            return Err(format!("P_M(N) = {f} equals {lowered} as an ideal"));
        }
    }
    Ok(())
}

fn obstructed(p: &PrimeIdealFin, r: u32) -> Result<bool, String> {
    let (pr, prev) = (p.power(r), p.power(r - 1));
    if pr == prev {
        return Ok(true);
    }
    let ideals = p.ring().all_ideals().map_err(|e| e.to_string())?;
    Ok(ideals
        .iter()
        .any(|a| p.is_subset(a) && a != p.ideal() && prev.product(a).is_subset(&pr)))
}

fn obstruction_sound(ambient: &Submodule, n: &Submodule) -> Verdict {
    let f = fact_of(ambient, n)?;
    if let [(p, r)] = f.factors() {
        if obstructed(p, *r)? {
            return Err(format!("P_M(N) = {f} although {p}^{r} is obstructed"));
        }
    }
    Ok(())
}

/// Components of a direct-sum instance.
fn sum_parts(ambient: &Submodule, n: &Submodule) -> Result<(Vec<Arc<FiniteModule>>, Vec<Submodule>), String> {
    let module = ambient.module();
    let parts = module
        .summands()
        .ok_or_else(|| "the module is not a direct sum".to_string())?
        .to_vec();
    let subs = crate::finmod::decompose_sum(n).ok_or_else(|| "the submodule is not a direct sum of submodules".to_string())?;
    if !ambient.is_full() {
        return Err("direct-sum checks run in the whole module".into());
    }
    Ok((parts, subs))
}

fn dsum_regular(ambient: &Submodule, n: &Submodule) -> Verdict {
    let (parts, subs) = sum_parts(ambient, n)?;
    let mut union: Vec<PrimeIdealFin> = Vec::new();
    let mut per_part = Vec::new();
    for (m, s) in parts.iter().zip(&subs) {
        let ass = associated_primes_within(&m.full(), s).map_err(|e| e.to_string())?;
        for p in &ass {
            if !union.contains(p) {
                union.push(p.clone());
            }
        }
        per_part.push(ass);
    }
    union.sort();
    let whole: Vec<PrimeIdealFin> = associated_primes_within(ambient, n).map_err(|e| e.to_string())?;
    if whole != union {
        return Err(format!("Ass of the sum is {whole:?}, union of the parts is {union:?}"));
    }
    for p in maximal_elements(&union) {
        let ks: Vec<Submodule> = parts
            .iter()
            .zip(&subs)
            .zip(&per_part)
            .map(|((m, s), ass)| if ass.contains(&p) { colon_within(s, &p, &m.full()) } else { s.clone() })
            .collect();
        let expected = crate::finmod::sum_submodule(ambient.module(), &ks).map_err(|e| e.to_string())?;
        let got = crate::finmod::regular_prime_extension(ambient, n, &p).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("the regular {p}-extension of the sum is {got}, componentwise gives {expected}"));
        }
    }
    Ok(())
}

fn dsum_max(ambient: &Submodule, n: &Submodule) -> Verdict {
    let (parts, subs) = sum_parts(ambient, n)?;
    let facts: Vec<PrimeFactorization> = parts
        .iter()
        .zip(&subs)
        .map(|(m, s)| fact_of(&m.full(), s))
        .collect::<Result<_, _>>()?;
    let mut primes: Vec<PrimeIdealFin> = facts.iter().flat_map(|f| f.primes()).collect();
    primes.sort();
    primes.dedup();
    let expected = PrimeFactorization::from_factors(
        primes
            .iter()
            .map(|p| (p.clone(), facts.iter().map(|f| f.exponent(p)).max().unwrap_or(0))),
    );
    let got = fact_of(ambient, n)?;
    if got != expected {
        let shown: Vec<String> = facts.iter().map(|f| f.to_string()).collect();
        return Err(format!("P of the sum is {got}, componentwise maximum of [{}] is {expected}", shown.join(", ")));
    }
    Ok(())
}

/// Checks a module-level or direct-sum property on one instance `N ⊊ M`.
pub fn check_instance(id: PropertyId, module: &Arc<FiniteModule>, n: &Submodule) -> Result<Verdict, PropsError> {
    let wrong = |reason: &str| PropsError::WrongInstance {
        id,
        reason: reason.to_string(),
    };
    if !Arc::ptr_eq(n.module(), module) {
        return Err(wrong("the submodule belongs to another module"));
    }
    let ambient = module.full();
    if *n == ambient {
        return Err(wrong("the submodule must be proper"));
    }
    Ok(match id {
        PropertyId::UniqueMultiset => unique_multiset(&ambient, n),
        PropertyId::AssChain => ass_chain(&ambient, n),
        PropertyId::ColonChar => colon_char(&ambient, n),
        PropertyId::FactorProduct => factor_product(&ambient, n),
        PropertyId::Interchange => interchange(&ambient, n),
        PropertyId::Reorder => reorder(&ambient, n),
        PropertyId::PowerDistinct => power_distinct(&ambient, n),
        PropertyId::MinimalExponent => minimal_exponent(&ambient, n),
        PropertyId::ObstructionSound => obstruction_sound(&ambient, n),
        PropertyId::DsumRegular | PropertyId::DsumMax => {
            if module.summands().is_none() {
                return Err(wrong("needs a direct-sum module"));
            }
            if id == PropertyId::DsumMax {
                dsum_max(&ambient, n)
            } else {
                dsum_regular(&ambient, n)
            }
        }
        PropertyId::SelfFactorIff | PropertyId::ExistIff => return Err(wrong("needs prime powers")),
    })
}

fn self_factoring(p: &PrimeIdealFin, r: u32) -> Result<bool, String> {
    let ring = p.ring();
    let pr = p.power(r);
    if pr == p.power(r - 1) {
        return Ok(false);
    }
    let rmod = FiniteModule::presented(ring, 1, &[]).map_err(|e| e.to_string())?;
    let sub = rmod.submodule_closure(&pr.elements().collect::<Vec<_>>());
    let ass = associated_primes_within(&rmod.full(), &sub).map_err(|e| e.to_string())?;
    Ok(ass.len() == 1 && ass[0] == *p)
}

/// Checks `SELF-FACTOR-IFF` (one prime power) or `EXIST-IFF` (distinct primes).
pub fn check_prime_powers(id: PropertyId, ring: &Arc<FiniteRing>, powers: &[(PrimeIdealFin, u32)]) -> Result<Verdict, PropsError> {
    let wrong = |reason: &str| PropsError::WrongInstance {
        id,
        reason: reason.to_string(),
    };
    if powers.is_empty() || powers.iter().any(|(p, r)| *r == 0 || !Arc::ptr_eq(p.ring(), ring)) {
        return Err(wrong("needs positive exponents of primes of this ring"));
    }
    let distinct: HashSet<&PrimeIdealFin> = powers.iter().map(|(p, _)| p).collect();
    if distinct.len() != powers.len() {
        return Err(wrong("primes must be distinct"));
    }
    match id {
        PropertyId::SelfFactorIff => {
            let [(p, r)] = powers else {
                return Err(wrong("needs exactly one prime power"));
            };
            Ok(self_factor_iff(ring, p, *r))
        }
        PropertyId::ExistIff => Ok(exist_iff(ring, powers)),
        _ => Err(wrong("needs a module instance")),
    }
}

fn self_factor_iff(ring: &Arc<FiniteRing>, p: &PrimeIdealFin, r: u32) -> Verdict {
    let condition = self_factoring(p, r)?;
    let rmod = FiniteModule::presented(ring, 1, &[]).map_err(|e| e.to_string())?;
    let pr = p.power(r);
    let sub = rmod.submodule_closure(&pr.elements().collect::<Vec<_>>());
    let target = PrimeFactorization::from_factors([(p.clone(), r)]);
    let realized = fact_of(&rmod.full(), &sub)? == target;
    if realized != condition {
        return Err(format!(
            "P_R({p}^{r}) = {p}^{r} is {realized}, but the power condition is {condition}"
        ));
    }
    Ok(())
}

fn exist_iff(ring: &Arc<FiniteRing>, powers: &[(PrimeIdealFin, u32)]) -> Verdict {
    for (p, r) in powers {
        if !self_factoring(p, *r)? {
            return Ok(());
        }
    }
    let (sum, sub) = powers_module(ring, powers).map_err(|e| e.to_string())?;
    let target = PrimeFactorization::from_factors(powers.iter().cloned());
    let got = fact_of(&sum.full(), &sub)?;
    if got != target {
        return Err(format!("P_(R^n)(⊕ p_i^r_i) = {got}, expected {target}"));
    }
    Ok(())
}

/// `(R^n, ⊕ p_i^{r_i})`, or `(R, p^r)` for a single power.
fn powers_module(ring: &Arc<FiniteRing>, powers: &[(PrimeIdealFin, u32)]) -> Result<(Arc<FiniteModule>, Submodule), crate::finmod::ModuleError> {
    let rmod = FiniteModule::presented(ring, 1, &[])?;
    let subs: Vec<Submodule> = powers
        .iter()
        .map(|(p, r)| rmod.submodule_closure(&p.power(*r).elements().collect::<Vec<_>>()))
        .collect();
    if subs.len() == 1 {
        return Ok((rmod, subs[0].clone()));
    }
    crate::finmod::direct_sum(&vec![rmod; subs.len()], &subs)
}

// ---------------------------------------------------------------------------
// instance generation

#[derive(Clone)]
struct Presentation {
    rank: usize,
    relations: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct ModInstance {
    pres: Presentation,
    module: Arc<FiniteModule>,
    sub: Submodule,
}

impl ModInstance {
    fn build(ring: &Arc<FiniteRing>, pres: Presentation, sub_gens: &[Vec<usize>]) -> Option<ModInstance> {
        let module = FiniteModule::presented(ring, pres.rank, &pres.relations).ok()?;
        let gens: Vec<usize> = sub_gens
            .iter()
            .map(|c| module.from_coords(c))
            .collect::<Result<_, _>>()
            .ok()?;
        let sub = module.submodule_closure(&gens);
        if sub.is_full() {
            return None;
        }
        Some(ModInstance { pres, module, sub })
    }

    fn sub_gens(&self) -> Vec<Vec<usize>> {
        self.sub.generators().iter().map(|&g| self.module.coords(g)).collect()
    }
}

struct RingCorpus {
    ring: Arc<FiniteRing>,
    instances: Vec<ModInstance>,
}

/// Distinct relation submodules of `R^rank` spanned by at most `max_rows`
/// rows, each with the first row list (in enumeration order) that spans it.
fn relation_spans(ring: &Arc<FiniteRing>, rank: usize, max_rows: usize) -> Vec<(FixedBitSet, Vec<Vec<usize>>)> {
    let free = FiniteModule::presented(ring, rank, &[]).expect("checked size");
    let zero = free.zero_submodule().set().clone();
    let mut seen: HashSet<FixedBitSet> = HashSet::from([zero.clone()]);
    let mut out = vec![(zero, Vec::new())];
    if max_rows == 0 {
        return out;
    }
    let mut cyclic: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    for v in 1..free.size() {
        let s = free.submodule_closure(&[v]).set().clone();
        if seen.insert(s.clone()) {
            cyclic.push((s, free.coords(v)));
        }
    }
    out.extend(cyclic.iter().map(|(s, row)| (s.clone(), vec![row.clone()])));
    // (span, rows, index of the last cyclic summand)
    let mut frontier: Vec<(FixedBitSet, Vec<Vec<usize>>, usize)> =
        cyclic.iter().enumerate().map(|(i, (s, row))| (s.clone(), vec![row.clone()], i)).collect();
    for _ in 2..=max_rows {
        let mut next = Vec::new();
        for (s, rows, last) in &frontier {
            for (j, (c, row)) in cyclic.iter().enumerate().skip(last + 1) {
                if c.is_subset(s) || s.is_subset(c) {
                    continue;
                }
                let sum = crate::finmod::coset_union(&free, s, c);
                if seen.insert(sum.clone()) {
                    let mut rs = rows.clone();
                    rs.push(row.clone());
                    out.push((sum.clone(), rs.clone()));
                    next.push((sum, rs, j));
                }
            }
        }
        frontier = next;
    }
    out
}

fn exhaustive_corpus(ring: &Arc<FiniteRing>, family: &InstanceFamily) -> RingCorpus {
    let q = ring.size();
    let mut instances = Vec::new();
    for rank in 1..=family.max_generators {
        let total = q.checked_pow(rank as u32).unwrap_or(usize::MAX);
        if total > crate::finmod::MAX_MODULE_SIZE {
            break;
        }
        for (rel, rows) in relation_spans(ring, rank, family.max_relations) {
            let size = total / rel.count_ones(..);
            if size > family.module_cap || size < 2 {
                continue;
            }
            let module = FiniteModule::presented(ring, rank, &rows).expect("bounded");
            let subs = submodules_between(&module.zero_submodule(), &module.full(), 1 << 16).expect("bounded");
            for sub in subs.into_iter().filter(|s| !s.is_full()) {
                instances.push(ModInstance {
                    pres: Presentation {
                        rank,
                        relations: rows.clone(),
                    },
                    module: module.clone(),
                    sub,
                });
            }
        }
    }
    RingCorpus {
        ring: ring.clone(),
        instances,
    }
}

fn random_instance(ring: &Arc<FiniteRing>, family: &InstanceFamily, rng: &mut SplitMix64) -> Option<ModInstance> {
    let q = ring.size();
    let max_rank = (1..=family.max_generators)
        .take_while(|&g| q.checked_pow(g as u32).is_some_and(|t| t <= crate::finmod::MAX_MODULE_SIZE))
        .last()?;
    for _ in 0..64 {
        let rank = 1 + rng.below(max_rank);
        let rows = rng.below(family.max_relations + 1);
        let relations: Vec<Vec<usize>> = (0..rows).map(|_| (0..rank).map(|_| rng.below(q)).collect()).collect();
        let gens = rng.below(3);
        let sub_gens: Vec<Vec<usize>> = (0..gens).map(|_| (0..rank).map(|_| rng.below(q)).collect()).collect();
        if let Some(inst) = ModInstance::build(ring, Presentation { rank, relations }, &sub_gens) {
            if inst.module.size() <= family.module_cap {
                return Some(inst);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// running

struct Failure {
    message: String,
    script: String,
}

fn module_script(ring: &Arc<FiniteRing>, inst: &ModInstance, prefix: &str, out: &mut Vec<Statement>) -> (String, String) {
    let lit = |e: usize| ring.literal(e);
    let (m, n) = (format!("M{prefix}"), format!("N{prefix}"));
    out.push(Statement::Module {
        name: m.clone(),
        def: ModuleDef::Free {
            rank: inst.pres.rank,
            relations: inst.pres.relations.iter().map(|r| r.iter().map(|&e| lit(e)).collect()).collect(),
        },
    });
    let elems = inst
        .sub_gens()
        .into_iter()
        .map(|c| {
            if c.len() == 1 {
                ModElem::Scalar(lit(c[0]))
            } else {
                ModElem::Vector(c.into_iter().map(lit).collect())
            }
        })
        .collect();
    out.push(Statement::Submodule {
        name: n.clone(),
        module: m.clone(),
        def: SubmoduleDef::Span(elems),
    });
    (m, n)
}

fn ring_statement(ring: &Arc<FiniteRing>) -> Statement {
    Statement::Ring(crate::cli::ast::RingDecl::Finite(ring.spec().expect("generated rings carry a spec").clone()))
}

fn check_statement(id: PropertyId, target: CheckTarget) -> Statement {
    Statement::Query(Query::Check {
        id,
        target,
        expect: Some(true),
    })
}

fn render(statements: Vec<Statement>) -> String {
    Script {
        statements,
        lines: Vec::new(),
    }
    .to_string()
}

fn instance_script(id: PropertyId, ring: &Arc<FiniteRing>, inst: &ModInstance) -> String {
    let mut st = vec![ring_statement(ring)];
    let (m, n) = module_script(ring, inst, "", &mut st);
    st.push(check_statement(id, CheckTarget::Instance { sub: n, module: m }));
    render(st)
}

fn sum_script(id: PropertyId, ring: &Arc<FiniteRing>, parts: &[&ModInstance]) -> String {
    let mut st = vec![ring_statement(ring)];
    let mut ms = Vec::new();
    let mut ns = Vec::new();
    for (i, inst) in parts.iter().enumerate() {
        let (m, n) = module_script(ring, inst, &(i + 1).to_string(), &mut st);
        ms.push(m);
        ns.push(n);
    }
    st.push(Statement::Module {
        name: "D".into(),
        def: ModuleDef::Dsum(ms),
    });
    st.push(Statement::Submodule {
        name: "ND".into(),
        module: "D".into(),
        def: SubmoduleDef::Dsum(ns),
    });
    st.push(check_statement(
        id,
        CheckTarget::Instance {
            sub: "ND".into(),
            module: "D".into(),
        },
    ));
    render(st)
}

fn powers_script(id: PropertyId, ring: &Arc<FiniteRing>, powers: &[(PrimeIdealFin, u32)]) -> String {
    let mut st = vec![ring_statement(ring)];
    let mut refs = Vec::new();
    for (i, (p, r)) in powers.iter().enumerate() {
        let name = format!("p{}", i + 1);
        st.push(Statement::Ideal {
            name: name.clone(),
            gens: p
                .generators()
                .iter()
                .map(|&g| crate::cli::ast::Item::Elem(ring.literal(g)))
                .collect(),
            prime: true,
        });
        refs.push((name, *r));
    }
    st.push(check_statement(id, CheckTarget::Powers(refs)));
    render(st)
}

fn module_verdict(id: PropertyId, inst: &ModInstance) -> Verdict {
    check_instance(id, &inst.module, &inst.sub).unwrap_or_else(|e| Err(e.to_string()))
}

fn sum_instance(parts: &[&ModInstance]) -> Option<(Arc<FiniteModule>, Submodule)> {
    let modules: Vec<Arc<FiniteModule>> = parts.iter().map(|i| i.module.clone()).collect();
    let subs: Vec<Submodule> = parts.iter().map(|i| i.sub.clone()).collect();
    crate::finmod::direct_sum(&modules, &subs).ok()
}

fn sum_verdict(id: PropertyId, parts: &[&ModInstance]) -> Verdict {
    match sum_instance(parts) {
        Some((d, nd)) => check_instance(id, &d, &nd).unwrap_or_else(|e| Err(e.to_string())),
        None => Ok(()),
    }
}

/// Greedy shrinking: drop relation rows, then lower entries, then drop
/// submodule generators, keeping the instance failing throughout.
fn shrink(ring: &Arc<FiniteRing>, inst: &ModInstance, fails: &dyn Fn(&ModInstance) -> bool) -> ModInstance {
    let mut best = inst.clone();
    let mut gens = best.sub_gens();
    let try_candidate = |pres: Presentation, g: Vec<Vec<usize>>, best: &mut ModInstance, gens: &mut Vec<Vec<usize>>| {
        if let Some(c) = ModInstance::build(ring, pres, &g) {
            if fails(&c) {
                *best = c;
                *gens = g;
                return true;
            }
        }
        false
    };
    let mut i = 0;
    while i < best.pres.relations.len() {
        let mut pres = best.pres.clone();
        pres.relations.remove(i);
        let g = gens.clone();
        if !try_candidate(pres, g, &mut best, &mut gens) {
            i += 1;
        }
    }
    for row in 0..best.pres.relations.len() {
        for col in 0..best.pres.rank {
            for v in 0..best.pres.relations[row][col] {
                let mut pres = best.pres.clone();
                pres.relations[row][col] = v;
                if try_candidate(pres, gens.clone(), &mut best, &mut gens) {
                    break;
                }
            }
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let mut g = gens.clone();
        g.remove(i);
        if !try_candidate(best.pres.clone(), g, &mut best, &mut gens) {
            i += 1;
        }
    }
    for gi in 0..gens.len() {
        for col in 0..best.pres.rank {
            for v in 0..gens[gi][col] {
                let mut g = gens.clone();
                g[gi][col] = v;
                if try_candidate(best.pres.clone(), g, &mut best, &mut gens) {
                    break;
                }
            }
        }
    }
    best
}

struct Harness {
    family: InstanceFamily,
    rings: Vec<Arc<FiniteRing>>,
    corpus: Vec<RingCorpus>,
}

fn parallel_map<T: Send, R: Send>(items: Vec<T>, mutate: bool, f: impl Fn(T) -> R + Sync) -> Vec<R> {
    let n = items.len();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(n.max(1));
    let queue: Mutex<std::vec::IntoIter<(usize, T)>> = Mutex::new(items.into_iter().enumerate().collect::<Vec<_>>().into_iter());
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..n).map(|_| None).collect());
    let done = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                testing::set_colon_mutation(mutate);
                loop {
                    let next = queue.lock().unwrap().next();
                    let Some((i, item)) = next else { break };
                    let r = f(item);
                    results.lock().unwrap()[i] = Some(r);
                    done.fetch_add(1, Ordering::Relaxed);
                }
                testing::set_colon_mutation(false);
            });
        }
    });
    results.into_inner().unwrap().into_iter().map(|r| r.expect("every item processed")).collect()
}

impl Harness {
    fn new(family: &InstanceFamily) -> Result<Harness, PropsError> {
        family.validate()?;
        let rings = family.rings.iter().map(build_ring).collect::<Result<Vec<_>, _>>()?;
        let corpus = if family.exhaustive {
            let fam = family.clone();
            parallel_map(rings.clone(), false, |r| exhaustive_corpus(&r, &fam))
        } else {
            let mut rng = SplitMix64::new(family.seed);
            let mut per_ring: Vec<Vec<ModInstance>> = vec![Vec::new(); rings.len()];
            for _ in 0..family.samples {
                let k = rng.below(rings.len());
                if let Some(inst) = random_instance(&rings[k], family, &mut rng) {
                    per_ring[k].push(inst);
                }
            }
            rings
                .iter()
                .zip(per_ring)
                .map(|(r, instances)| RingCorpus { ring: r.clone(), instances })
                .collect()
        };
        Ok(Harness {
            family: family.clone(),
            rings,
            corpus,
        })
    }

    fn run(&self, id: PropertyId) -> PropertyReport {
        let start = Instant::now();
        let (instances, failure) = match id.kind() {
            InstanceKind::Module => self.run_modules(id),
            InstanceKind::Sum => self.run_sums(id),
            InstanceKind::PrimePowers => self.run_powers(id),
        };
        PropertyReport {
            id,
            instances,
            passed: failure.is_none(),
            counterexample: failure.map(|f| Counterexample {
                message: f.message,
                script: f.script,
            }),
            wall_time: start.elapsed(),
        }
    }

    fn with_mutation<R>(&self, f: impl FnOnce() -> R) -> R {
        testing::set_colon_mutation(self.family.mutate_colon);
        let r = f();
        testing::set_colon_mutation(false);
        r
    }

    fn run_modules(&self, id: PropertyId) -> (u64, Option<Failure>) {
        let results = parallel_map(self.corpus.iter().collect(), self.family.mutate_colon, |c| {
            let count = c.instances.len() as u64;
            let fail = c
                .instances
                .iter()
                .find_map(|inst| module_verdict(id, inst).err().map(|m| (inst.clone(), m)));
            (count, fail)
        });
        let total = results.iter().map(|r| r.0).sum();
        let failure = self
            .corpus
            .iter()
            .zip(results)
            .find_map(|(c, (_, f))| f.map(|f| (c.ring.clone(), f)))
            .map(|(ring, (inst, _))| {
                self.with_mutation(|| {
                    let small = shrink(&ring, &inst, &|i| module_verdict(id, i).is_err());
                    Failure {
                        message: module_verdict(id, &small).unwrap_err(),
                        script: instance_script(id, &ring, &small),
                    }
                })
            });
        (total, failure)
    }

    /// Direct-sum instances: per ring, pairs of module instances and a
    /// few triples when the sum stays within the module bound.
    fn sum_instances(&self) -> Vec<(usize, Vec<ModInstance>)> {
        let mut out = Vec::new();
        if self.family.exhaustive {
            for (k, c) in self.corpus.iter().enumerate() {
                let n = c.instances.len();
                if n == 0 {
                    continue;
                }
                let mut chosen: Vec<Vec<usize>> = Vec::new();
                if n * (n + 1) / 2 <= self.family.pair_cap {
                    for i in 0..n {
                        for j in i..n {
                            chosen.push(vec![i, j]);
                        }
                    }
                } else {
                    let mut rng = SplitMix64::new(self.family.seed ^ (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    for _ in 0..self.family.pair_cap {
                        chosen.push(vec![rng.below(n), rng.below(n)]);
                    }
                    for _ in 0..self.family.pair_cap / 8 {
                        chosen.push(vec![rng.below(n), rng.below(n), rng.below(n)]);
                    }
                }
                for idx in chosen {
                    let parts: Vec<ModInstance> = idx.iter().map(|&i| c.instances[i].clone()).collect();
                    let size: usize = parts.iter().map(|p| p.module.size()).product();
                    if size <= crate::finmod::MAX_MODULE_SIZE {
                        out.push((k, parts));
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(self.family.seed);
            let mut attempts = 0;
            while out.len() < self.family.samples && attempts < 64 * self.family.samples {
                attempts += 1;
                let k = rng.below(self.rings.len());
                let a = random_instance(&self.rings[k], &self.family, &mut rng);
                let b = random_instance(&self.rings[k], &self.family, &mut rng);
                if let (Some(a), Some(b)) = (a, b) {
                    if a.module.size() * b.module.size() <= crate::finmod::MAX_MODULE_SIZE {
                        out.push((k, vec![a, b]));
                    }
                }
            }
        }
        out
    }

    fn run_sums(&self, id: PropertyId) -> (u64, Option<Failure>) {
        let items = self.sum_instances();
        let mut by_ring: Vec<Vec<Vec<ModInstance>>> = vec![Vec::new(); self.rings.len()];
        for (k, parts) in items {
            by_ring[k].push(parts);
        }
        let jobs: Vec<(usize, Vec<Vec<ModInstance>>)> = by_ring.into_iter().enumerate().collect();
        let results = parallel_map(jobs, self.family.mutate_colon, |(k, sums)| {
            let count = sums.len() as u64;
            let fail = sums.into_iter().find(|parts| {
                let refs: Vec<&ModInstance> = parts.iter().collect();
                sum_verdict(id, &refs).is_err()
            });
            (k, count, fail)
        });
        let total = results.iter().map(|r| r.1).sum();
        let failure = results.into_iter().find_map(|(k, _, f)| f.map(|f| (k, f))).map(|(k, mut parts)| {
            let ring = self.rings[k].clone();
            self.with_mutation(|| {
                for i in 0..parts.len() {
                    let others = parts.clone();
                    let fails = |cand: &ModInstance| {
                        let mut refs: Vec<&ModInstance> = others.iter().collect();
                        refs[i] = cand;
                        sum_verdict(id, &refs).is_err()
                    };
                    parts[i] = shrink(&ring, &parts[i], &fails);
                }
                let refs: Vec<&ModInstance> = parts.iter().collect();
                Failure {
                    message: sum_verdict(id, &refs).unwrap_err(),
                    script: sum_script(id, &ring, &refs),
                }
            })
        });
        (total, failure)
    }

    fn power_instances(&self, id: PropertyId, ring: &Arc<FiniteRing>) -> Vec<Vec<(PrimeIdealFin, u32)>> {
        let Ok(primes) = ring.primes() else { return Vec::new() };
        let max_r = self.family.max_exponent;
        let mut out = Vec::new();
        match id {
            PropertyId::SelfFactorIff => {
                for p in &primes {
                    for r in 1..=max_r {
                        out.push(vec![(p.clone(), r)]);
                    }
                }
            }
            _ => {
                let k_max = (1..=primes.len())
                    .take_while(|&k| ring.size().checked_pow(k as u32).is_some_and(|t| t <= crate::finmod::MAX_MODULE_SIZE))
                    .last()
                    .unwrap_or(0);
                for mask in 1u32..(1 << primes.len()) {
                    let chosen: Vec<&PrimeIdealFin> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| &primes[i]).collect();
                    if chosen.len() > k_max {
                        continue;
                    }
                    let mut exps = vec![1u32; chosen.len()];
                    loop {
                        out.push(chosen.iter().zip(&exps).map(|(p, &r)| ((*p).clone(), r)).collect());
                        let Some(pos) = exps.iter().position(|&r| r < max_r) else { break };
                        for e in &mut exps[..pos] {
                            *e = 1;
                        }
                        exps[pos] += 1;
                    }
                }
            }
        }
        if !self.family.exhaustive {
            let mut rng = SplitMix64::new(self.family.seed ^ ring.size() as u64);
            let n = out.len();
            if n > self.family.samples {
                out = (0..self.family.samples).map(|_| out[rng.below(n)].clone()).collect();
            }
        }
        out
    }

    fn run_powers(&self, id: PropertyId) -> (u64, Option<Failure>) {
        let results = parallel_map(self.rings.clone(), self.family.mutate_colon, |ring| {
            let cases = self.power_instances(id, &ring);
            let count = cases.len() as u64;
            let fail = cases.into_iter().find_map(|powers| {
                let v = check_prime_powers(id, &ring, &powers).unwrap_or_else(|e| Err(e.to_string()));
                v.err().map(|m| (powers, m))
            });
            (ring, count, fail)
        });
        let total = results.iter().map(|r| r.1).sum();
        let failure = results.into_iter().find_map(|(ring, _, f)| {
            f.map(|(powers, message)| Failure {
                message,
                script: powers_script(id, &ring, &powers),
            })
        });
        (total, failure)
    }
}

/// Checks one property over a family and reports the first (shrunk)
/// counterexample found in canonical ring order.
pub fn check_property(id: PropertyId, family: &InstanceFamily) -> Result<PropertyReport, PropsError> {
    Ok(Harness::new(family)?.run(id))
}

/// Checks every property over the family, sharing the generated corpus.
pub fn run_suite(family: &InstanceFamily) -> Result<Vec<PropertyReport>, PropsError> {
    let h = Harness::new(family)?;
    Ok(PropertyId::ALL.iter().map(|&id| h.run(id)).collect())
}

/// Every module instance `(M, N)` the family generates, in ring order.
pub fn module_instances(family: &InstanceFamily) -> Result<Vec<(Arc<FiniteModule>, Submodule)>, PropsError> {
    let h = Harness::new(family)?;
    Ok(h.corpus
        .into_iter()
        .flat_map(|c| c.instances.into_iter().map(|i| (i.module, i.sub)))
        .collect())
}

/// The module instance `(M, N)` rebuilt from a presentation, as used in
/// counterexample scripts.
pub fn instance_from_presentation(
    ring: &Arc<FiniteRing>,
    rank: usize,
    relations: &[Vec<usize>],
    sub_gens: &[Vec<usize>],
) -> Option<(Arc<FiniteModule>, Submodule)> {
    ModInstance::build(ring, Presentation { rank, relations: relations.to_vec() }, sub_gens).map(|i| (i.module, i.sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        let mut r = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| r.next_u64()).collect();
        assert_eq!(got, [6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn ids_round_trip() {
        for id in PropertyId::ALL {
            assert_eq!(id.name().parse::<PropertyId>().unwrap(), id);
        }
        assert!(matches!("NOPE".parse::<PropertyId>(), Err(PropsError::UnknownId(_))));
    }

    #[test]
    fn empty_family_rejected() {
        let fam = InstanceFamily::with_rings(vec![]);
        assert_eq!(check_property(PropertyId::AssChain, &fam).unwrap_err(), PropsError::EmptyFamily);
    }

    #[test]
    fn small_family_passes_everything() {
        let fam = InstanceFamily::with_rings(vec![RingSpec::Zmod(4), RingSpec::Zmod(6), RingSpec::Gf(2)]);
        for r in run_suite(&fam).unwrap() {
            assert!(r.passed, "{}", r.to_text());
            assert!(r.instances > 0, "{}", r.id);
        }
    }

    #[test]
    fn mutation_breaks_colon_char_on_z8() {
        let mut fam = InstanceFamily::with_rings(vec![RingSpec::Zmod(8)]);
        fam.mutate_colon = true;
        let r = check_property(PropertyId::ColonChar, &fam).unwrap();
        assert!(!r.passed);
        let c = r.counterexample.unwrap();
        assert!(c.script.starts_with("ring Z/8\n"), "{}", c.script);
        assert!(c.script.trim_end().ends_with("expect true"));
        assert!(!testing::colon_mutation());
    }

    #[test]
    fn sampled_runs_are_reproducible() {
        let fam = InstanceFamily::with_rings(vec![RingSpec::Zmod(12), RingSpec::Zmod(8)]).sampled(30, 7);
        let a = check_property(PropertyId::DsumMax, &fam).unwrap();
        let b = check_property(PropertyId::DsumMax, &fam).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed && a.instances > 0);
    }
}

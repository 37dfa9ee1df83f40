//! Brute-force reference for free modules `(Z/n)^g` with at most 16
//! elements: submodules are found by testing every subset, and filtrations
//! are enumerated from the definitions with no shared library code.

use std::collections::BTreeSet;

pub struct Oracle {
    pub n: usize,
    pub g: usize,
    pub size: usize,
    submodules: Vec<u64>,
    primes: Vec<u64>,
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn closed(mask: u64, size: usize, add: impl Fn(usize, usize) -> usize, act: impl Fn(usize, usize) -> usize, n: usize) -> bool {
    if mask & 1 == 0 {
        return false;
    }
    for a in members(mask) {
        for b in members(mask) {
            if mask >> add(a, b) & 1 == 0 {
                return false;
            }
        }
        for r in 0..n {
            if mask >> act(r, a) & 1 == 0 {
                return false;
            }
        }
    }
    let _ = size;
    true
}

impl Oracle {
    pub fn new(n: usize, g: usize) -> Oracle {
        let size = n.pow(g as u32);
        assert!(size <= 16, "oracle limited to 16 elements");
        let mut o = Oracle {
            n,
            g,
            size,
            submodules: Vec::new(),
            primes: Vec::new(),
        };
        o.submodules = (0u64..1 << size)
            .filter(|&m| closed(m, size, |a, b| o.add(a, b), |r, x| o.act(r, x), n))
            .collect();
        let ideals: Vec<u64> = (0u64..1 << n)
            .filter(|&m| closed(m, n, |a, b| (a + b) % n, |r, x| r * x % n, n))
            .collect();
        let full_ring = (1u64 << n) - 1;
        o.primes = ideals
            .into_iter()
            .filter(|&p| p != full_ring)
            .filter(|&p| (0..n).all(|a| (0..n).all(|b| p >> (a * b % n) & 1 == 0 || p >> a & 1 == 1 || p >> b & 1 == 1)))
            .collect();
        o
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.g];
        for slot in d.iter_mut().rev() {
            *slot = x % self.n;
            x /= self.n;
        }
        d
    }

    fn encode(&self, d: &[usize]) -> usize {
        d.iter().fold(0, |acc, &v| acc * self.n + v)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.n).collect();
        self.encode(&s)
    }

    pub fn act(&self, r: usize, x: usize) -> usize {
        let s: Vec<usize> = self.digits(x).iter().map(|v| r * v % self.n).collect();
        self.encode(&s)
    }

    pub fn full(&self) -> u64 {
        if self.size == 64 {
            u64::MAX
        } else {
            (1 << self.size) - 1
        }
    }

    pub fn submodules(&self) -> &[u64] {
        &self.submodules
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Encodes a coordinate vector.
    pub fn element(&self, coords: &[usize]) -> usize {
        self.encode(coords)
    }

    /// `(N : m)` as a set of ring elements.
    pub fn ann(&self, m: usize, n: u64) -> u64 {
        (0..self.n).filter(|&r| n >> self.act(r, m) & 1 == 1).fold(0, |acc, r| acc | 1 << r)
    }

    /// `Ass(K/N)`.
    pub fn ass(&self, k: u64, n: u64) -> BTreeSet<u64> {
        members(k & !n)
            .map(|m| self.ann(m, n))
            .filter(|a| self.primes.contains(a))
            .collect()
    }

    /// `N` is a `p`-prime submodule of `K ⊋ N`: every `x ∈ K \ N` has `(N : x) = p`.
    pub fn is_prime_extension(&self, n: u64, k: u64, p: u64) -> bool {
        k != n && members(k & !n).all(|x| self.ann(x, n) == p)
    }

    /// The largest `p`-prime extension `K` of `N` inside `M`; panics if the
    /// maximal such extensions are not unique.
    pub fn regular_extension(&self, n: u64, p: u64, m: u64) -> u64 {
        let exts: Vec<u64> = self
            .submodules
            .iter()
            .copied()
            .filter(|&k| k & n == n && k & m == k && k != n)
            .filter(|&k| self.is_prime_extension(n, k, p))
            .collect();
        let maximal: Vec<u64> = exts.iter().copied().filter(|&k| !exts.iter().any(|&o| o != k && o & k == k)).collect();
        assert_eq!(maximal.len(), 1, "regular extension is not unique");
        maximal[0]
    }

    /// Prime multisets (as sorted lists of ideal masks) over every RPE
    /// filtration of `M` over `N`.
    pub fn factorizations(&self, n: u64, m: u64) -> BTreeSet<Vec<u64>> {
        if n == m {
            return BTreeSet::from([Vec::new()]);
        }
        let ass = self.ass(m, n);
        let maximal: Vec<u64> = ass.iter().copied().filter(|&p| !ass.iter().any(|&q| q != p && q & p == p)).collect();
        let mut out = BTreeSet::new();
        for p in maximal {
            let k = self.regular_extension(n, p, m);
            for mut rest in self.factorizations(k, m) {
                rest.push(p);
                rest.sort();
                out.insert(rest);
            }
        }
        out
    }

    /// The ideal of `Z/n` generated by `g`.
    pub fn principal(&self, g: usize) -> u64 {
        (0..self.n).map(|r| r * g % self.n).fold(0, |acc, e| acc | 1 << e)
    }
}

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::config::RunConfig;
use crate::error::{Error, Result};

/// Default seed for every randomised step (random Schreier generators, generator reduction).
pub const DEFAULT_SEED: u64 = 0x5EED_CAFE;

const MAX_IDLE_SIFTS: usize = 20_000;

/// A permutation group with a verified stabilizer chain.
///
/// Values are immutable once built. Every constructor either runs deterministic
/// Schreier–Sims or certifies a randomised chain against an independently known order.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    seed: u64,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn from_generators(gens: &[Permutation], degree: usize) -> Result<Group> {
        Self::from_generators_with_base(gens, degree, &[])
    }

    /// Same as [`Group::from_generators`] but with prescribed leading base points.
    pub fn from_generators_with_base(gens: &[Permutation], degree: usize, prefix: &[u32]) -> Result<Group> {
        for (index, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation {
                    index,
                    reason: format!("degree {} differs from group degree {degree}", g.degree()),
                });
            }
        }
        let chain = StabChain::schreier_sims(gens, degree, prefix);
        Ok(Group { degree, generators: gens.to_vec(), chain, seed: DEFAULT_SEED })
    }

    /// Validates raw image arrays and builds the group, reporting the offending generator index.
    pub fn from_image_arrays(arrays: &[Vec<u32>], degree: usize) -> Result<Group> {
        let mut gens = Vec::with_capacity(arrays.len());
        for (index, imgs) in arrays.iter().enumerate() {
            if imgs.len() != degree {
                return Err(Error::MalformedPermutation {
                    index,
                    reason: format!("length {} differs from degree {degree}", imgs.len()),
                });
            }
            let p = Permutation::from_images(imgs.clone()).map_err(|e| match e {
                Error::MalformedPermutation { reason, .. } => Error::MalformedPermutation { index, reason },
                other => other,
            })?;
            gens.push(p);
        }
        Self::from_generators(&gens, degree)
    }

    pub fn trivial(degree: usize) -> Group {
        Group { degree, generators: Vec::new(), chain: StabChain::trivial(degree), seed: DEFAULT_SEED }
    }

    /// Subgroup of `self` generated by `gens`, whose order is known to be `order`.
    ///
    /// The chain is built by randomised Schreier–Sims from random products of `gens`
    /// and certified by reaching `order`.
    pub fn subgroup_with_order(&self, gens: &[Permutation], order: u128) -> Result<Group> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ order as u64);
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if order == 1 || gens.is_empty() {
            if order != 1 {
                return Err(Error::InternalInconsistency("empty generating set for nontrivial order".into()));
            }
            return Ok(self.with_chain(Vec::new(), StabChain::trivial(self.degree)));
        }
        let mut state = ProductReplacement::new(&gens, &mut rng);
        let chain = StabChain::random_schreier_sims(
            || state.next(&mut rng),
            order,
            self.degree,
            &[],
            MAX_IDLE_SIFTS,
        )?;
        Ok(self.with_chain(gens, chain))
    }

    /// Subgroup with a chain built from elements of an external random source.
    pub(crate) fn subgroup_from_source(
        &self,
        source: impl FnMut() -> Permutation,
        order: u128,
    ) -> Result<Group> {
        let chain = StabChain::random_schreier_sims(source, order, self.degree, &[], MAX_IDLE_SIFTS)?;
        let gens = chain.strong_generators().to_vec();
        Ok(self.with_chain(gens, chain))
    }

    pub(crate) fn with_chain(&self, generators: Vec<Permutation>, chain: StabChain) -> Group {
        Group { degree: self.degree, generators, chain, seed: self.seed }
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Group {
        self.seed = seed;
        self
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    /// Lengths of the basic orbits; their product is the group order.
    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain.contains(g))
    }

    pub(crate) fn has(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub(crate) fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        Ok(())
    }

    pub(crate) fn require_member(&self, g: &Permutation, what: &str) -> Result<()> {
        if !self.contains(g)? {
            return Err(Error::NotMember(format!("{what} {g}")));
        }
        Ok(())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub(crate) fn require_subgroup_of(&self, other: &Group) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: other.degree, found: self.degree });
        }
        if let Some(g) = self.generators.iter().find(|g| !other.has(g)) {
            return Err(Error::NotSubgroup(format!("generator {g} lies outside the ambient group")));
        }
        Ok(())
    }

    /// Equality as subgroups of the symmetric group.
    pub fn same_subgroup(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Whether `self` is normalised by all generators of `ambient`.
    pub fn is_normal_in(&self, ambient: &Group) -> bool {
        ambient.generators.iter().all(|t| self.generators.iter().all(|h| self.has(&h.conjugate_by(t))))
    }

    pub fn random_element(&self, rng: &mut impl rand::Rng) -> Permutation {
        self.chain.random_element(rng)
    }

    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
    }

    /// Rank of an element in the streaming enumeration order, `None` if not a member.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        self.chain.rank(g)
    }

    pub(crate) fn rank_of_member(&self, g: &Permutation) -> u64 {
        self.chain.rank_of_member(g)
    }

    pub fn unrank(&self, rank: u64) -> Permutation {
        self.chain.unrank(rank)
    }

    /// Streams all elements in rank order. Refuses groups larger than the enumeration bound.
    pub fn elements(&self, config: &RunConfig) -> Result<impl Iterator<Item = Permutation> + '_> {
        let n = self.order();
        if n > config.enumeration_bound && !config.allow_large {
            return Err(Error::bound("element enumeration", n, config.enumeration_bound));
        }
        Ok((0..n as u64).map(move |r| self.chain.unrank(r)))
    }

    /// Group generated by `self` and `extra`; generators already contained are skipped.
    pub fn closure(&self, extra: &[Permutation]) -> Result<Group> {
        let mut gens = self.generators.clone();
        let mut current = self.clone();
        for g in extra {
            self.check_degree(g)?;
            if current.has(g) {
                continue;
            }
            gens.push(g.clone());
            current = Group::from_generators(&gens, self.degree)?.with_seed(self.seed);
        }
        Ok(current)
    }

    /// The conjugate subgroup `self^t`.
    pub fn conjugate(&self, t: &Permutation) -> Group {
        Group {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.conjugate_by(t)).collect(),
            chain: self.chain.conjugate(t),
            seed: self.seed,
        }
    }

    pub fn moved_points(&self) -> Vec<u32> {
        let mut moved = vec![false; self.degree];
        for g in &self.generators {
            for i in 0..self.degree {
                if g.image(i as u32) != i as u32 {
                    moved[i] = true;
                }
            }
        }
        (0..self.degree as u32).filter(|&i| moved[i as usize]).collect()
    }

    /// Orbits of the group on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut label = vec![u32::MAX; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree as u32 {
            if label[start as usize] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            let mut orbit = vec![start];
            label[start as usize] = id;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                for g in &self.generators {
                    let q = g.image(p);
                    if label[q as usize] == u32::MAX {
                        label[q as usize] = id;
                        orbit.push(q);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The same abstract group acting on its moved points only, plus the point map used.
    pub fn compress(&self) -> Result<(Group, Vec<u32>)> {
        let points = self.moved_points();
        if points.len() == self.degree {
            return Ok((self.clone(), points));
        }
        let mut index_of = vec![u32::MAX; self.degree];
        for (k, &p) in points.iter().enumerate() {
            index_of[p as usize] = k as u32;
        }
        let gens: Vec<Permutation> = self.generators.iter().map(|g| g.restrict(&points, &index_of)).collect();
        let g = Group::from_generators(&gens, points.len())?.with_seed(self.seed);
        if g.order() != self.order() {
            return Err(Error::InternalInconsistency("compression changed the group order".into()));
        }
        Ok((g, points))
    }

    /// A generating set of at most three elements when one is found among seeded random tries.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        if self.generators.len() <= 2 || self.order() == 1 {
            return self.generators.clone();
        }
        let mut rng = self.rng(0x6E6E);
        for size in 2..=3usize {
            for _ in 0..12 {
                let cand: Vec<Permutation> = (0..size).map(|_| self.random_element(&mut rng)).collect();
                let chain = StabChain::schreier_sims(&cand, self.degree, &[]);
                if chain.order() == self.order() {
                    return cand;
                }
            }
        }
        self.generators.clone()
    }

    /// Same group with a reduced generating set (when one is found).
    pub fn with_small_generators(&self) -> Group {
        let gens = self.small_generating_set();
        Group { degree: self.degree, generators: gens, chain: self.chain.clone(), seed: self.seed }
    }

    /// Exponent (lcm of element orders) restricted to prime divisors; the prime factors of the order.
    pub fn order_primes(&self) -> Vec<u64> {
        prime_factors(self.order())
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let mut n = n;
    let mut out = 1u128;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        out *= p as u128;
    }
    out
}

/// Product replacement random elements.
pub(crate) struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new(gens: &[Permutation], rng: &mut impl rand::Rng) -> ProductReplacement {
        let mut slots: Vec<Permutation> = gens.to_vec();
        while slots.len() < 10 {
            let k = slots.len() % gens.len();
            slots.push(gens[k].clone());
        }
        let acc = Permutation::identity(gens[0].degree());
        let mut pr = ProductReplacement { slots, acc };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub fn next(&mut self, rng: &mut impl rand::Rng) -> Permutation {
        let n = self.slots.len();
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        self.slots[s] = if rng.gen_bool(0.5) {
            self.slots[s].compose(&self.slots[t])
        } else {
            self.slots[t].compose(&self.slots[s])
        };
        self.acc = self.acc.compose(&self.slots[s]);
        self.acc.clone()
    }
}

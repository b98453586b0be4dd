//! Stabilizer chains with explicit transversals.
//!
//! Level `l` stores the base point `β_l`, the strong generators fixing `β_0 … β_{l-1}`,
//! the basic orbit and, for every orbit point `γ`, a transversal element `u_γ` with
//! `β_l^{u_γ} = γ`. An element `g` is decomposed as `g = u_{k-1} ⋯ u_1 u_0` by sifting.

use rand::Rng;

use super::permutation::Permutation;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    pub pos: Vec<u32>,
    pub reps: Vec<Permutation>,
    pub reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, gens: Vec<Permutation>, degree: usize) -> Level {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            pos: Vec::new(),
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        level.recompute(degree);
        level
    }

    /// Rebuilds the orbit and transversal by breadth-first search over `gens`.
    fn recompute(&mut self, degree: usize) {
        self.pos = vec![NONE; degree];
        self.orbit = vec![self.base];
        self.pos[self.base as usize] = 0;
        self.reps = vec![Permutation::identity(degree)];
        let mut head = 0;
        while head < self.orbit.len() {
            let gamma = self.orbit[head];
            for s in &self.gens {
                let img = s.image(gamma);
                if self.pos[img as usize] == NONE {
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    let rep = self.reps[head].compose(s);
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
        self.reps_inv = self.reps.iter().map(Permutation::inverse).collect();
    }

    /// Extends the orbit after `gens` gained new elements, keeping existing transversal entries.
    fn extend(&mut self) {
        let mut head = 0;
        while head < self.orbit.len() {
            let gamma = self.orbit[head];
            for s in &self.gens {
                let img = s.image(gamma);
                if self.pos[img as usize] == NONE {
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    let rep = self.reps[head].compose(s);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    #[inline]
    pub fn position(&self, point: u32) -> Option<usize> {
        let p = self.pos[point as usize];
        (p != NONE).then_some(p as usize)
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> StabChain {
        StabChain { degree, levels: Vec::new() }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level where sifting stopped.
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.image(level.base);
            match level.position(img) {
                Some(j) => h = h.compose(&level.reps_inv[j]),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (h, l) = self.strip(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Deterministic Schreier–Sims. `prefix` fixes the first base points.
    pub fn schreier_sims(gens: &[Permutation], degree: usize, prefix: &[u32]) -> StabChain {
        let mut gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.dedup();
        let mut base: Vec<u32> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.first_moved_point().expect("nontrivial"));
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let lg = gens.iter().filter(|g| base[..i].iter().all(|&c| g.fixes(c))).cloned().collect();
            levels.push(Level::new(b, lg, degree));
        }
        let mut chain = StabChain { degree, levels };
        if chain.levels.is_empty() {
            return chain;
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            match chain.find_nonsifting_schreier_generator(iu) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.first_moved_point().expect("nontrivial residue");
                        chain.levels.push(Level::new(b, Vec::new(), degree));
                    }
                    for l in iu + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].extend();
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    fn find_nonsifting_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for (oi, &gamma) in level.orbit.iter().enumerate() {
            for s in &level.gens {
                let img = s.image(gamma);
                let j = level.position(img).expect("orbit closed");
                let g = level.reps[oi].compose(s).compose(&level.reps_inv[j]);
                if g.is_identity() {
                    continue;
                }
                let (h, stop) = self.strip(&g, i + 1);
                if !h.is_identity() {
                    return Some((h, stop));
                }
            }
        }
        None
    }

    /// Randomised Schreier–Sims for a group whose order is known in advance.
    ///
    /// `source` must produce elements of the target group, and the target group must contain
    /// every produced element. Since the product of basic orbit lengths of a partial chain never
    /// exceeds the order of the group it describes, reaching `target` certifies completeness.
    pub fn random_schreier_sims(
        mut source: impl FnMut() -> Permutation,
        target: u128,
        degree: usize,
        prefix: &[u32],
        max_idle: usize,
    ) -> Result<StabChain> {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, Vec::new(), degree)).collect(),
        };
        let mut idle = 0usize;
        while chain.order() < target {
            let g = source();
            let (h, j) = chain.strip(&g, 0);
            if h.is_identity() {
                idle += 1;
                if idle > max_idle {
                    return Err(Error::InternalInconsistency(format!(
                        "random Schreier-Sims stalled at order {} below target {}",
                        chain.order(),
                        target
                    )));
                }
                continue;
            }
            idle = 0;
            if j == chain.levels.len() {
                let b = h.first_moved_point().expect("nontrivial residue");
                chain.levels.push(Level::new(b, Vec::new(), degree));
            }
            for l in 0..=j {
                chain.levels[l].gens.push(h.clone());
                chain.levels[l].extend();
            }
        }
        if chain.order() != target {
            return Err(Error::InternalInconsistency(format!(
                "random Schreier-Sims overshot: order {} but target {}",
                chain.order(),
                target
            )));
        }
        Ok(chain)
    }

    /// Uniformly random element: a random transversal element on every level.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let j = rng.gen_range(0..level.orbit.len());
            g = g.compose(&level.reps[j]);
        }
        g
    }

    /// Mixed-radix rank of a group element (level 0 is the least significant digit).
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let mut h = g.clone();
        let mut rank = 0u64;
        let mut stride = 1u64;
        for level in &self.levels {
            let j = level.position(h.image(level.base))?;
            rank += j as u64 * stride;
            stride *= level.orbit.len() as u64;
            h = h.compose(&level.reps_inv[j]);
        }
        h.is_identity().then_some(rank)
    }

    /// Rank of an element already known to lie in the group; reads base images only.
    pub fn rank_of_member(&self, g: &Permutation) -> u64 {
        self.rank_from_base_images(self.levels.iter().map(|l| g.image(l.base)).collect())
    }

    /// Rank of the member whose base images are `imgs`.
    pub fn rank_from_base_images(&self, mut imgs: Vec<u32>) -> u64 {
        let mut rank = 0u64;
        let mut stride = 1u64;
        for l in 0..self.levels.len() {
            let level = &self.levels[l];
            let j = level.pos[imgs[l] as usize];
            debug_assert!(j != NONE, "element not in group");
            let j = j as usize;
            rank += j as u64 * stride;
            stride *= level.orbit.len() as u64;
            let inv = &level.reps_inv[j];
            for img in imgs.iter_mut().skip(l + 1) {
                *img = inv.image(*img);
            }
        }
        rank
    }

    /// Mixed-radix digits of a rank, level 0 first.
    pub fn digits(&self, mut rank: u64) -> Vec<usize> {
        self.levels
            .iter()
            .map(|level| {
                let n = level.orbit.len() as u64;
                let d = (rank % n) as usize;
                rank /= n;
                d
            })
            .collect()
    }

    /// Image of `p` under the element with the given digits, without building the element.
    #[inline]
    pub fn image_from_digits(&self, digits: &[usize], p: u32) -> u32 {
        let mut q = p;
        for (level, &d) in self.levels.iter().zip(digits.iter()).rev() {
            q = level.reps[d].image(q);
        }
        q
    }

    /// Rank of `x^s` where `x` has rank `rank`; `s` must normalise the group.
    pub fn conjugate_rank(&self, rank: u64, s: &Permutation, s_inv: &Permutation) -> u64 {
        let digits = self.digits(rank);
        let imgs = self
            .levels
            .iter()
            .map(|l| s.image(self.image_from_digits(&digits, s_inv.image(l.base))))
            .collect();
        self.rank_from_base_images(imgs)
    }

    pub fn unrank(&self, rank: u64) -> Permutation {
        let digits = self.digits(rank);
        let mut g = Permutation::identity(self.degree);
        for (level, &d) in self.levels.iter().zip(digits.iter()).rev() {
            g = g.compose(&level.reps[d]);
        }
        g
    }

    /// Chain of the conjugate group `H^t`.
    pub fn conjugate(&self, t: &Permutation) -> StabChain {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let mut pos = vec![NONE; self.degree];
                let orbit: Vec<u32> = l.orbit.iter().map(|&p| t.image(p)).collect();
                for (j, &p) in orbit.iter().enumerate() {
                    pos[p as usize] = j as u32;
                }
                Level {
                    base: t.image(l.base),
                    gens: l.gens.iter().map(|g| g.conjugate_by(t)).collect(),
                    orbit,
                    pos,
                    reps: l.reps.iter().map(|g| g.conjugate_by(t)).collect(),
                    reps_inv: l.reps_inv.iter().map(|g| g.conjugate_by(t)).collect(),
                }
            })
            .collect();
        StabChain { degree: self.degree, levels }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(n: usize) -> Vec<Permutation> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&cycle]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_orders() {
        let mut fact = 1u128;
        for n in 2..=8 {
            fact *= n as u128;
            let chain = StabChain::schreier_sims(&sym(n), n, &[]);
            assert_eq!(chain.order(), fact, "S_{n}");
        }
    }

    #[test]
    fn rank_unrank_bijection() {
        let chain = StabChain::schreier_sims(&sym(5), 5, &[]);
        let mut seen = std::collections::HashSet::new();
        for r in 0..chain.order() as u64 {
            let g = chain.unrank(r);
            assert_eq!(chain.rank(&g), Some(r));
            assert_eq!(chain.rank_of_member(&g), r);
            assert!(seen.insert(g));
        }
    }

    #[test]
    fn base_prefix_respected() {
        let chain = StabChain::schreier_sims(&sym(5), 5, &[4, 3]);
        assert_eq!(&chain.base()[..2], &[4, 3]);
        assert_eq!(chain.order(), 120);
    }

    #[test]
    fn random_schreier_sims_reaches_known_order() {
        let full = StabChain::schreier_sims(&sym(6), 6, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let chain =
            StabChain::random_schreier_sims(|| full.random_element(&mut rng), 720, 6, &[], 1000).unwrap();
        assert_eq!(chain.order(), 720);
        for r in 0..720u64 {
            assert!(chain.contains(&full.unrank(r)));
        }
    }
}

//! Permutation representations of factor groups.

use std::collections::HashMap;

use super::chain::StabChain;
use super::group::Group;
use super::permutation::Permutation;
use crate::config::RunConfig;
use crate::error::{Error, Result};

/// How quotient points are obtained from the source group.
#[derive(Clone, Debug)]
enum Points {
    /// Orbits of the kernel, as a block label per source point.
    Blocks { block_of: Vec<u32>, reps: Vec<u32> },
    /// Right cosets of the kernel, keyed by the base images of their canonical representative.
    Cosets { kernel_chain: StabChain, index: HashMap<Vec<u32>, u32>, base: Vec<u32>, reps: Vec<Permutation> },
}

/// The factor group `G/N` acting faithfully on blocks of `N`-orbits or on right cosets of `N`.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    source: Group,
    kernel: Group,
    image: Group,
    points: Points,
    /// The diagonal group `{(g, ḡ)}` with the image base first; used for lifting.
    diagonal: Group,
}

impl QuotientAction {
    /// Builds the quotient `G/N`. Fails if `N` is not a normal subgroup of `G`.
    pub fn new(source: &Group, kernel: &Group, config: &RunConfig) -> Result<QuotientAction> {
        kernel.require_subgroup_of(source)?;
        if !kernel.is_normal_in(source) {
            return Err(Error::NotNormal("kernel is not normalised by the source group".into()));
        }
        let index = source.order() / kernel.order();
        let (points, image_gens, image_degree) = match block_action(source, kernel)? {
            Some(found) => found,
            None => {
                config.check("coset action degree", index, config.orbit_bound)?;
                coset_action(source, kernel)?
            }
        };
        let image = Group::from_generators(&image_gens, image_degree)?.with_seed(source.seed());
        if image.order() != index {
            return Err(Error::InternalInconsistency(format!(
                "quotient image has order {} but the index is {index}",
                image.order()
            )));
        }
        let n = source.degree();
        let diag_gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(image_gens.iter())
            .map(|(g, q)| {
                let mut imgs: Vec<u32> = g.images().to_vec();
                imgs.extend(q.images().iter().map(|&i| i + n as u32));
                Permutation::from_images_unchecked(imgs)
            })
            .collect();
        let prefix: Vec<u32> = image.base().iter().map(|&b| b + n as u32).collect();
        let diagonal = Group::from_generators_with_base(&diag_gens, n + image_degree, &prefix)?;
        if diagonal.order() != source.order() {
            return Err(Error::InternalInconsistency("diagonal group order differs from source order".into()));
        }
        Ok(QuotientAction { source: source.clone(), kernel: kernel.clone(), image, points, diagonal })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kernel(&self) -> &Group {
        &self.kernel
    }

    pub fn image(&self) -> &Group {
        &self.image
    }

    /// Whether the action is on blocks of kernel orbits rather than on cosets.
    pub fn is_block_action(&self) -> bool {
        matches!(self.points, Points::Blocks { .. })
    }

    /// Image `gN` of an element of the source group.
    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        self.source.require_member(g, "element")?;
        Ok(match &self.points {
            Points::Blocks { block_of, reps } => {
                let images = reps.iter().map(|&r| block_of[g.image(r) as usize]).collect();
                Permutation::from_images_unchecked(images)
            }
            Points::Cosets { kernel_chain, index, base, reps } => {
                let images = reps
                    .iter()
                    .map(|r| index[&coset_key(base, &canonical_rep(kernel_chain, &r.compose(g)))])
                    .collect();
                Permutation::from_images_unchecked(images)
            }
        })
    }

    /// Some preimage of an element of the image group.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        self.image.require_member(q, "quotient element")?;
        let n = self.source.degree();
        let mut imgs: Vec<u32> = (0..n as u32).collect();
        imgs.extend(q.images().iter().map(|&i| i + n as u32));
        let w = Permutation::from_images_unchecked(imgs);
        let chain = self.diagonal.chain();
        let mut h = w;
        for level in &chain.levels {
            if (level.base as usize) < n {
                break;
            }
            let j = level.position(h.image(level.base)).ok_or_else(|| {
                Error::InternalInconsistency("quotient element failed to sift through the diagonal group".into())
            })?;
            h = h.compose(&level.reps_inv[j]);
        }
        let source_part: Vec<u32> = h.images()[..n].to_vec();
        Ok(Permutation::from_images_unchecked(source_part).inverse())
    }

    /// Image `HN/N` of a subgroup of the source.
    pub fn project_subgroup(&self, h: &Group) -> Result<Group> {
        h.require_subgroup_of(&self.source)?;
        let gens = h.generators().iter().map(|g| self.project(g)).collect::<Result<Vec<_>>>()?;
        Ok(Group::from_generators(&gens, self.image.degree())?.with_seed(self.source.seed()))
    }

    /// Full preimage `HN` of a subgroup of the image.
    pub fn preimage(&self, h: &Group) -> Result<Group> {
        h.require_subgroup_of(&self.image)?;
        let lifted = h.generators().iter().map(|q| self.lift(q)).collect::<Result<Vec<_>>>()?;
        self.kernel.closure(&lifted)
    }
}

/// Action on the orbits of `N`, dropping blocks fixed by all of `G`. `None` if it is not faithful on `G/N`.
#[allow(clippy::type_complexity)]
fn block_action(source: &Group, kernel: &Group) -> Result<Option<(Points, Vec<Permutation>, usize)>> {
    let n = source.degree();
    let moved_by_source: Vec<bool> = {
        let mut m = vec![false; n];
        for p in source.moved_points() {
            m[p as usize] = true;
        }
        m
    };
    let mut block_of_orbit = vec![u32::MAX; n];
    let mut orbit_blocks: Vec<Vec<u32>> = Vec::new();
    for orbit in kernel.orbits() {
        let id = orbit_blocks.len() as u32;
        for &p in &orbit {
            block_of_orbit[p as usize] = id;
        }
        orbit_blocks.push(orbit);
    }
    // keep only blocks that some generator moves
    let moved_block: Vec<bool> = orbit_blocks
        .iter()
        .map(|b| {
            let b0 = b[0];
            moved_by_source[b0 as usize]
                && source.generators().iter().any(|g| block_of_orbit[g.image(b0) as usize] != block_of_orbit[b0 as usize])
        })
        .collect();
    let kept: Vec<usize> = (0..orbit_blocks.len()).filter(|&i| moved_block[i]).collect();
    let mut label = vec![u32::MAX; orbit_blocks.len()];
    for (k, &i) in kept.iter().enumerate() {
        label[i] = k as u32;
    }
    let block_of: Vec<u32> = (0..n).map(|p| label[block_of_orbit[p] as usize]).collect();
    let reps: Vec<u32> = kept.iter().map(|&i| orbit_blocks[i][0]).collect();
    let gens: Vec<Permutation> = source
        .generators()
        .iter()
        .map(|g| Permutation::from_images_unchecked(reps.iter().map(|&r| block_of[g.image(r) as usize]).collect()))
        .collect();
    let image = Group::from_generators(&gens, reps.len())?;
    if image.order() * kernel.order() != source.order() {
        return Ok(None);
    }
    Ok(Some((Points::Blocks { block_of, reps: reps.clone() }, gens, reps.len())))
}

/// Canonical representative of the coset `N·g`: the member with lexicographically least base images.
///
/// `kernel_chain` must use the source base as its base, so the minimum is taken level by level.
fn canonical_rep(kernel_chain: &StabChain, g: &Permutation) -> Permutation {
    let mut h = g.clone();
    for level in &kernel_chain.levels {
        let j = (0..level.orbit.len()).min_by_key(|&j| h.image(level.orbit[j])).expect("nonempty orbit");
        if j != 0 {
            h = level.reps[j].compose(&h);
        }
    }
    h
}

fn coset_key(base: &[u32], g: &Permutation) -> Vec<u32> {
    base.iter().map(|&b| g.image(b)).collect()
}

#[allow(clippy::type_complexity)]
fn coset_action(source: &Group, kernel: &Group) -> Result<(Points, Vec<Permutation>, usize)> {
    let base = source.base();
    let kernel_chain = StabChain::schreier_sims(kernel.generators(), source.degree(), &base);
    if kernel_chain.levels.len() != base.len() || kernel_chain.order() != kernel.order() {
        return Err(Error::InternalInconsistency("kernel chain does not follow the source base".into()));
    }
    let start = canonical_rep(&kernel_chain, &source.identity());
    let mut index = HashMap::new();
    index.insert(coset_key(&base, &start), 0u32);
    let mut reps = vec![start];
    let gens = source.generators();
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < reps.len() {
        for (gi, s) in gens.iter().enumerate() {
            let c = canonical_rep(&kernel_chain, &reps[head].compose(s));
            let key = coset_key(&base, &c);
            let next = reps.len() as u32;
            let idx = *index.entry(key).or_insert(next);
            if idx == next {
                reps.push(c);
            }
            images[gi].push(idx);
        }
        head += 1;
    }
    let degree = reps.len();
    let gens = images.into_iter().map(Permutation::from_images_unchecked).collect();
    Ok((Points::Cosets { kernel_chain, index, base, reps }, gens, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s4() -> Group {
        Group::from_generators(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], 4).unwrap()
    }

    #[test]
    fn s4_mod_klein_is_s3_on_cosets() {
        let g = s4();
        let v = Group::from_generators(&[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])], 4).unwrap();
        let q = QuotientAction::new(&g, &v, &RunConfig::default()).unwrap();
        assert!(!q.is_block_action());
        assert_eq!(q.image().order(), 6);
        for s in q.image().generators() {
            let l = q.lift(s).unwrap();
            assert_eq!(&q.project(&l).unwrap(), s);
        }
        for k in v.generators() {
            assert!(q.project(k).unwrap().is_identity());
        }
    }

    #[test]
    fn trivial_kernel_gives_isomorphic_copy() {
        let g = s4();
        let q = QuotientAction::new(&g, &Group::trivial(4), &RunConfig::default()).unwrap();
        assert_eq!(q.image().order(), 24);
        assert!(q.is_block_action());
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let h = Group::from_generators(&[perm(4, &[&[0, 1]])], 4).unwrap();
        assert!(matches!(QuotientAction::new(&s4(), &h, &RunConfig::default()), Err(Error::NotNormal(_))));
    }

    #[test]
    fn block_quotient_of_product() {
        // C2 x S3 with kernel C2: blocks are the C2 orbit and the fixed S3 points
        let g = Group::from_generators(&[perm(5, &[&[0, 1]]), perm(5, &[&[2, 3, 4]]), perm(5, &[&[2, 3]])], 5).unwrap();
        let k = Group::from_generators(&[perm(5, &[&[0, 1]])], 5).unwrap();
        let q = QuotientAction::new(&g, &k, &RunConfig::default()).unwrap();
        assert!(q.is_block_action());
        assert_eq!(q.image().order(), 6);
        assert_eq!(q.image().degree(), 3);
        let pre = q.preimage(q.image()).unwrap();
        assert_eq!(pre.order(), 12);
    }
}

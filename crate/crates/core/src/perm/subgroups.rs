//! Centralizers, normalizers, normal closures, subnormality and cores.

use super::group::Group;
use super::orbit::{orbit_stabilizer, Action};
use super::permutation::Permutation;
use crate::config::RunConfig;
use crate::error::{Error, Result};

/// Subgroups up to this order are keyed by a hash over all their elements.
const ELEMENT_KEY_LIMIT: u128 = 4096;

/// Conjugation on the elements of a group, with points stored as ranks.
struct ElementConjugation<'a> {
    group: &'a Group,
}

impl Action for ElementConjugation<'_> {
    type Point = u64;
    type Key = u64;

    fn act(&self, p: &u64, g: &Permutation) -> u64 {
        self.group.chain().conjugate_rank(*p, g, &g.inverse())
    }

    fn key(&self, p: &u64) -> u64 {
        *p
    }
}

/// Conjugation on subgroups, each conjugate `H^t` represented by a conjugator `t`.
struct SubgroupConjugation<'a> {
    subgroup: &'a Group,
    elements: Vec<Permutation>,
    orbits: Vec<Vec<u32>>,
}

impl<'a> SubgroupConjugation<'a> {
    fn new(subgroup: &'a Group) -> Self {
        let elements = if subgroup.order() <= ELEMENT_KEY_LIMIT {
            (0..subgroup.order() as u64).map(|r| subgroup.unrank(r)).collect()
        } else {
            Vec::new()
        };
        SubgroupConjugation { subgroup, elements, orbits: subgroup.orbits() }
    }
}

pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn hash_images(images: &[u32]) -> u64 {
    images.iter().fold(0xCBF2_9CE4_8422_2325u64, |h, &x| mix64(h ^ x as u64))
}

impl Action for SubgroupConjugation<'_> {
    type Point = Permutation;
    type Key = u64;

    fn act(&self, t: &Permutation, g: &Permutation) -> Permutation {
        t.compose(g)
    }

    fn key(&self, t: &Permutation) -> u64 {
        if !self.elements.is_empty() {
            let mut buf = vec![0u32; t.degree()];
            self.elements.iter().fold(0u64, |acc, e| {
                for (i, &img) in e.images().iter().enumerate() {
                    buf[t.image(i as u32) as usize] = t.image(img);
                }
                acc.wrapping_add(hash_images(&buf))
            })
        } else {
            let mut label = vec![0u32; t.degree()];
            for orbit in &self.orbits {
                let min = orbit.iter().map(|&p| t.image(p)).min().expect("nonempty orbit");
                for &p in orbit {
                    label[t.image(p) as usize] = min;
                }
            }
            hash_images(&label)
        }
    }

    fn same(&self, a: &Permutation, b: &Permutation) -> bool {
        let c = a.compose(&b.inverse());
        self.subgroup.generators().iter().all(|h| self.subgroup.has(&h.conjugate_by(&c)))
    }
}

/// `C_G(g)`, by orbit–stabilizer on the conjugacy class of `g`.
pub fn centralizer(group: &Group, g: &Permutation, config: &RunConfig) -> Result<Group> {
    group.require_member(g, "element")?;
    if group.generators().iter().all(|s| s.compose(g) == g.compose(s)) {
        return Ok(group.clone());
    }
    let action = ElementConjugation { group };
    let root = group.rank_of_member(g);
    let (_, stab) = orbit_stabilizer(group, &action, root, config.orbit_bound, 0xC3)?;
    Ok(stab)
}

/// Size of the conjugacy class of `g` in `group`.
pub fn class_size(group: &Group, g: &Permutation, config: &RunConfig) -> Result<u128> {
    Ok(group.order() / centralizer(group, g, config)?.order())
}

/// `N_G(H)`, by orbit–stabilizer on the conjugates of `H`.
pub fn normalizer(group: &Group, subgroup: &Group, config: &RunConfig) -> Result<Group> {
    subgroup.require_subgroup_of(group)?;
    if subgroup.is_normal_in(group) {
        return Ok(group.clone());
    }
    let (_, stab) = conjugates_of(group, subgroup, config)?;
    Ok(stab)
}

/// Conjugators `t` giving each conjugate `H^t` exactly once, together with `N_G(H)`.
pub fn conjugates_of(group: &Group, subgroup: &Group, config: &RunConfig) -> Result<(Vec<Permutation>, Group)> {
    let action = SubgroupConjugation::new(subgroup);
    let bound = config.conjugate_scan_bound.min(config.orbit_bound);
    let bound = if config.allow_large { u128::MAX } else { bound };
    let (orbit, stab) = orbit_stabilizer(group, &action, group.identity(), bound, 0x4E)?;
    Ok((orbit.points, stab))
}

/// Normal closure of `H` in `G`: the smallest normal subgroup of `G` containing `H`.
pub fn normal_closure(group: &Group, subgroup: &Group) -> Result<Group> {
    subgroup.require_subgroup_of(group)?;
    let mut current = subgroup.clone();
    loop {
        let fresh: Vec<Permutation> = current
            .generators()
            .iter()
            .flat_map(|h| group.generators().iter().map(move |s| h.conjugate_by(s)))
            .filter(|c| !current.has(c))
            .collect();
        if fresh.is_empty() {
            return Ok(current);
        }
        current = current.closure(&fresh[..1])?;
    }
}

/// The descending series `K₀ = G`, `K_{i+1} = H^{K_i}` until it stabilises.
pub fn normal_closure_series(group: &Group, subgroup: &Group) -> Result<Vec<Group>> {
    subgroup.require_subgroup_of(group)?;
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = normal_closure(last, subgroup)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Whether `H` is subnormal in `G`: the normal-closure series descends all the way to `H`.
pub fn is_subnormal(group: &Group, subgroup: &Group) -> Result<bool> {
    let series = normal_closure_series(group, subgroup)?;
    Ok(series.last().expect("nonempty").order() == subgroup.order())
}

/// The ascending chain `H, N_G(H), N_G(N_G(H)), …` up to its first repetition.
pub fn normalizer_chain(group: &Group, subgroup: &Group, config: &RunConfig) -> Result<Vec<Group>> {
    let mut chain = vec![subgroup.clone()];
    loop {
        let last = chain.last().expect("nonempty");
        let next = normalizer(group, last, config)?;
        if next.order() == last.order() {
            return Ok(chain);
        }
        chain.push(next);
    }
}

/// `A ∩ B`, by scanning the smaller group.
pub fn intersection(a: &Group, b: &Group, config: &RunConfig) -> Result<Group> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree(), found: b.degree() });
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    config.check("intersection scan", small.order(), config.exhaustive_bound)?;
    let mut result = Group::trivial(a.degree()).with_seed(a.seed());
    for r in 0..small.order() as u64 {
        let g = small.unrank(r);
        if !result.has(&g) && large.has(&g) {
            result = result.closure(&[g])?;
        }
    }
    Ok(result)
}

/// The largest normal subgroup of `G` contained in `H`.
pub fn core(group: &Group, subgroup: &Group, config: &RunConfig) -> Result<Group> {
    subgroup.require_subgroup_of(group)?;
    let mut current = subgroup.clone();
    loop {
        if current.is_normal_in(group) {
            return Ok(current);
        }
        let mut next = current.clone();
        for s in group.generators() {
            next = intersection(&next, &current.conjugate(s), config)?;
        }
        current = next;
    }
}

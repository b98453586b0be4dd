//! Conjugacy classes by breadth-first search over element ranks.

use std::collections::BTreeMap;

use super::group::{prime_factors, Group};
use super::permutation::Permutation;
use crate::config::RunConfig;
use crate::error::{Error, Result};

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// The member of smallest rank.
    pub representative: Permutation,
    pub size: u128,
    pub centralizer_order: u128,
    pub element_order: u64,
}

/// All conjugacy classes of a group with a rank-indexed class lookup and prime power maps.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group: Group,
    classes: Vec<ConjugacyClass>,
    class_of_rank: Vec<u32>,
    power_maps: BTreeMap<u64, Vec<usize>>,
}

/// Enumerates the conjugacy classes of `group`.
///
/// Classes are ordered by element order, then size, then the image array of the representative.
pub fn conjugacy_classes(group: &Group, config: &RunConfig) -> Result<ClassTable> {
    let n = group.order();
    config.check("class enumeration", n, config.enumeration_bound)?;
    if n > u32::MAX as u128 {
        return Err(Error::bound("class enumeration", n, u32::MAX as u128));
    }
    let chain = group.chain();
    let gens = group.small_generating_set();
    let gens: Vec<(Permutation, Permutation)> = gens.iter().map(|g| (g.clone(), g.inverse())).collect();
    let mut class_of_rank = vec![UNSEEN; n as usize];
    let mut raw: Vec<(u64, u128)> = Vec::new();
    let mut queue: Vec<u64> = Vec::new();
    for start in 0..n as u64 {
        if class_of_rank[start as usize] != UNSEEN {
            continue;
        }
        let id = raw.len() as u32;
        class_of_rank[start as usize] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let r = queue[head];
            head += 1;
            for (g, g_inv) in &gens {
                let c = chain.conjugate_rank(r, g, g_inv);
                if class_of_rank[c as usize] == UNSEEN {
                    class_of_rank[c as usize] = id;
                    queue.push(c);
                }
            }
        }
        raw.push((start, queue.len() as u128));
    }
    let mut classes: Vec<(u32, ConjugacyClass)> = raw
        .iter()
        .enumerate()
        .map(|(id, &(rank, size))| {
            let representative = group.unrank(rank);
            let element_order = representative.order();
            (id as u32, ConjugacyClass { representative, size, centralizer_order: n / size, element_order })
        })
        .collect();
    classes.sort_by(|(_, a), (_, b)| {
        (a.element_order, a.size, a.representative.images()).cmp(&(b.element_order, b.size, b.representative.images()))
    });
    let mut relabel = vec![0u32; classes.len()];
    for (new, (old, _)) in classes.iter().enumerate() {
        relabel[*old as usize] = new as u32;
    }
    for c in class_of_rank.iter_mut() {
        *c = relabel[*c as usize];
    }
    let classes: Vec<ConjugacyClass> = classes.into_iter().map(|(_, c)| c).collect();
    let mut table = ClassTable { group: group.clone(), classes, class_of_rank, power_maps: BTreeMap::new() };
    for p in prime_factors(n) {
        let map = (0..table.classes.len()).map(|k| table.power_class(k, p as i64)).collect();
        table.power_maps.insert(p, map);
    }
    if table.classes.iter().map(|c| c.size).sum::<u128>() != n {
        return Err(Error::InternalInconsistency("class sizes do not sum to the group order".into()));
    }
    Ok(table)
}

impl ClassTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, k: usize) -> &ConjugacyClass {
        &self.classes[k]
    }

    /// Index of the class containing `g`, `None` if `g` is not a member.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.group.degree() {
            return None;
        }
        self.group.rank(g).map(|r| self.class_of_rank[r as usize] as usize)
    }

    pub(crate) fn class_of_member(&self, g: &Permutation) -> usize {
        self.class_of_rank[self.group.rank_of_member(g) as usize] as usize
    }

    /// Class of `x_k^e` for the representative `x_k`.
    pub fn power_class(&self, k: usize, e: i64) -> usize {
        self.class_of_member(&self.classes[k].representative.pow(e))
    }

    /// Power maps for every prime dividing the group order.
    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    /// Ranks of the members of class `k`, in increasing order.
    pub fn member_ranks(&self, k: usize) -> impl Iterator<Item = u64> + '_ {
        self.class_of_rank
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c as usize == k)
            .map(|(r, _)| r as u64)
    }

    /// Members of class `k`.
    pub fn members(&self, k: usize) -> impl Iterator<Item = Permutation> + '_ {
        self.member_ranks(k).map(|r| self.group.unrank(r))
    }

    /// Index of the identity class.
    pub fn identity_class(&self) -> usize {
        0
    }

    /// Classes whose representatives are nontrivial `p`-elements.
    pub fn p_element_classes(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&k| self.classes[k].element_order > 1 && self.classes[k].representative.is_p_element(p))
            .collect()
    }

    /// Class of the inverse of the representative of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.power_class(k, -1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        let a = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        Group::from_generators(&[a, b], 4).unwrap()
    }

    #[test]
    fn s4_has_five_classes() {
        let t = conjugacy_classes(&s4(), &RunConfig::default()).unwrap();
        let mut sizes: Vec<u128> = t.classes().iter().map(|c| c.size).collect();
        assert_eq!(t.len(), 5);
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(t.class(0).element_order, 1);
    }

    #[test]
    fn power_maps_send_four_cycles_to_double_transpositions() {
        let t = conjugacy_classes(&s4(), &RunConfig::default()).unwrap();
        let four = (0..t.len()).find(|&k| t.class(k).element_order == 4).unwrap();
        let sq = t.power_maps()[&2][four];
        assert_eq!(t.class(sq).element_order, 2);
        assert_eq!(t.class(sq).size, 3);
    }

    #[test]
    fn abelian_group_has_singleton_classes() {
        let g = Group::from_generators(&[Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()], 5).unwrap();
        let t = conjugacy_classes(&g, &RunConfig::default()).unwrap();
        assert_eq!(t.len(), 5);
        assert!(t.classes().iter().all(|c| c.size == 1));
    }
}

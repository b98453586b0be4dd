//! `O_p`, and exhaustive enumeration of `p`-subgroups and radical `p`-subgroups through an element.

use std::collections::BTreeSet;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{core, normalizer, Group, Permutation};

const SUBGROUP_LIMIT: usize = 20_000;

/// The largest normal `p`-subgroup.
pub fn o_p(group: &Group, prime: u64, config: &RunConfig) -> Result<Group> {
    let p = super::sylow(group, prime, config)?;
    core(group, &p, config)
}

fn element_key(group: &Group, sub: &Group) -> Vec<u64> {
    let mut ranks: Vec<u64> = (0..sub.order() as u64).map(|r| group.rank_of_member(&sub.unrank(r))).collect();
    ranks.sort_unstable();
    ranks
}

/// Every `p`-subgroup of `group` containing `x`, found by extending through normalisers one factor `p` at a time.
pub fn p_subgroups_containing(group: &Group, prime: u64, x: &Permutation, config: &RunConfig) -> Result<Vec<Group>> {
    group.require_member(x, "element")?;
    if !x.is_p_element(prime) {
        return Err(Error::NotPElement { p: prime });
    }
    config.check("p-subgroup enumeration", group.order(), config.exhaustive_bound.min(2000))?;
    let start = Group::from_generators(std::slice::from_ref(x), group.degree())?.with_seed(group.seed());
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(element_key(group, &start));
    let mut found = vec![start];
    let mut head = 0;
    while head < found.len() {
        let q = found[head].clone();
        head += 1;
        let n = normalizer(group, &q, config)?;
        for r in 0..n.order() as u64 {
            let y = n.unrank(r);
            if q.has(&y) || !q.has(&y.pow(prime as i64)) {
                continue;
            }
            let bigger = q.closure(&[y])?;
            if seen.insert(element_key(group, &bigger)) {
                found.push(bigger);
                if found.len() > SUBGROUP_LIMIT {
                    return Err(Error::bound("p-subgroups containing x", found.len() as u128, SUBGROUP_LIMIT as u128));
                }
            }
        }
    }
    found.sort_by_key(|q| (q.order(), element_key(group, q)));
    Ok(found)
}

/// The radical `p`-subgroups `Q = O_p(N_G(Q))` containing `x`.
pub fn radical_subgroups_containing(
    group: &Group,
    prime: u64,
    x: &Permutation,
    config: &RunConfig,
) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    for q in p_subgroups_containing(group, prime, x, config)? {
        let n = normalizer(group, &q, config)?;
        if o_p(&n, prime, config)?.order() == q.order() {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn o_2_of_s4_is_klein() {
        let g = Group::from_generators(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], 4).unwrap();
        assert_eq!(o_p(&g, 2, &RunConfig::default()).unwrap().order(), 4);
        assert_eq!(o_p(&g, 3, &RunConfig::default()).unwrap().order(), 1);
    }

    #[test]
    fn two_subgroups_of_s4_through_a_transposition() {
        let g = Group::from_generators(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], 4).unwrap();
        let x = perm(4, &[&[0, 1]]);
        let subs = p_subgroups_containing(&g, 2, &x, &RunConfig::default()).unwrap();
        let orders: Vec<u128> = subs.iter().map(Group::order).collect();
        // <x>, the non-normal Klein group <x, (2 3)>, and the unique D8 containing x
        assert_eq!(orders, vec![2, 4, 8]);
        let radicals = radical_subgroups_containing(&g, 2, &x, &RunConfig::default()).unwrap();
        assert_eq!(radicals.iter().map(Group::order).collect::<Vec<_>>(), vec![8]);
    }
}

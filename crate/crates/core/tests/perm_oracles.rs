mod common;

use std::collections::{BTreeSet, HashMap, HashSet};

use proptest::prelude::*;

use common::{cfg, groups, Table};
use subnorm::perm::{centralizer, is_subnormal, normal_closure, normalizer, QuotientAction};
use subnorm::sylow::{o_p, sylow};
use subnorm::zoo::center;
use subnorm::{Group, Permutation};

#[test]
fn transversal_product_counts_distinct_elements() {
    for (name, g) in groups() {
        let product: u128 = g.transversal_lengths().iter().map(|&l| l as u128).product();
        let distinct: HashSet<Permutation> = g.elements(&cfg()).unwrap().collect();
        assert_eq!(product, distinct.len() as u128, "{name}");
        assert_eq!(product, g.order(), "{name}");
    }
}

fn scan_centralizer(g: &Group, x: &Permutation) -> usize {
    g.elements(&cfg()).unwrap().filter(|h| h.compose(x) == x.compose(h)).count()
}

fn scan_normalizer(g: &Group, h: &Group) -> usize {
    g.elements(&cfg()).unwrap().filter(|t| h.generators().iter().all(|a| h.contains(&a.conjugate_by(t)).unwrap())).count()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn centralizer_and_normalizer_match_scans(gi in 0usize..25, seed in any::<u64>()) {
        let (name, g) = &groups()[gi];
        let mut rng = g.rng(seed);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        let c = centralizer(g, &x, &cfg()).unwrap();
        prop_assert_eq!(c.order(), scan_centralizer(g, &x) as u128, "{}", name);
        prop_assert!(c.generators().iter().all(|h| h.compose(&x) == x.compose(h)));
        let h = Group::from_generators(&[x, y], g.degree()).unwrap();
        let n = normalizer(g, &h, &cfg()).unwrap();
        prop_assert_eq!(n.order(), scan_normalizer(g, &h) as u128, "{}", name);
        prop_assert!(n.generators().iter().all(|t| h.generators().iter().all(|a| h.contains(&a.conjugate_by(t)).unwrap())));
    }
}

/// Whether a chain `H = H_0 ⊴ H_1 ⊴ … ⊴ G` exists in the subgroup lattice.
fn chain_exists(t: &Table, lattice: &[BTreeSet<u32>], h: usize, memo: &mut HashMap<usize, bool>) -> bool {
    if lattice[h].len() == t.n {
        return true;
    }
    if let Some(&v) = memo.get(&h) {
        return v;
    }
    let found = (0..lattice.len()).any(|k| {
        lattice[k].len() > lattice[h].len()
            && lattice[h].is_subset(&lattice[k])
            && t.is_normal(&lattice[h], &lattice[k])
            && chain_exists(t, lattice, k, memo)
    });
    memo.insert(h, found);
    found
}

#[test]
fn subnormality_matches_lattice_search() {
    let mut pairs = 0;
    for (name, g) in groups().into_iter().filter(|(_, g)| g.order() <= 120) {
        let t = Table::new(&g);
        let lattice = t.subgroups();
        let mut memo = HashMap::new();
        for (i, h) in lattice.iter().enumerate() {
            let expected = chain_exists(&t, &lattice, i, &mut memo);
            let hg = t.group_of(h, g.degree());
            assert_eq!(is_subnormal(&g, &hg).unwrap(), expected, "{name}, subgroup of order {}", h.len());
            pairs += 1;
        }
    }
    assert!(pairs > 500);
}

#[test]
fn quotients_have_the_right_kernel() {
    for (name, g) in groups() {
        let mut kernels = vec![center(&g, &cfg()).unwrap()];
        for p in g.order_primes() {
            kernels.push(o_p(&g, p, &cfg()).unwrap());
            kernels.push(normal_closure(&g, &sylow(&g, p, &cfg()).unwrap()).unwrap());
        }
        for k in kernels.into_iter().filter(|k| k.order() > 1 && k.order() < g.order()) {
            let q = QuotientAction::new(&g, &k, &cfg()).unwrap();
            assert_eq!(q.image().order() * k.order(), g.order(), "{name}");
            for gen in q.image().generators() {
                assert_eq!(&q.project(&q.lift(gen).unwrap()).unwrap(), gen, "{name}");
            }
            for h in g.elements(&cfg()).unwrap() {
                assert_eq!(q.project(&h).unwrap().is_identity(), k.contains(&h).unwrap(), "{name}");
            }
        }
    }
}

//! Sylow subgroups, subnormalisers by three independent methods, and picky elements.

mod radical;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{
    centralizer, conjugacy_classes, conjugates_of, is_subnormal, normalizer, orbit_stabilizer, p_part, Action,
    ClassTable, Group, Permutation,
};

pub use radical::{o_p, p_subgroups_containing, radical_subgroups_containing};

/// Sylow subgroups containing a given `p`-element.
#[derive(Clone, Debug)]
pub struct SylowWitness {
    pub p: u64,
    pub sylow: Group,
    /// `N_G(P)` for the stored Sylow subgroup `P`.
    pub normalizer: Group,
    /// Number of Sylow `p`-subgroups of the group.
    pub sylow_count: usize,
    pub count_containing_x: usize,
    /// Conjugators `t` with `x ∈ P^t`, one per Sylow subgroup containing `x`.
    pub conjugator_reps: Vec<Permutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Generation,
    Fusion,
    Bruteforce,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Generation => "generation",
            Method::Fusion => "fusion",
            Method::Bruteforce => "bruteforce",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubnormaliserResult {
    pub subject: Permutation,
    pub p: u64,
    pub subgroup: Group,
    pub method: Method,
    /// Whether the subgroup equals `N_G(P)` for a Sylow `P` containing the subject.
    pub is_picky: bool,
}

fn require_p_element(group: &Group, p: u64, x: &Permutation) -> Result<()> {
    group.require_member(x, "element")?;
    if !x.is_p_element(p) {
        return Err(Error::NotPElement { p });
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidInput(format!("{p} is not a prime")));
    }
    Ok(())
}

/// An element `y ∈ N` outside `P` with `y^p ∈ P`, taken from the `p`-part of the first suitable candidate.
fn extension_element(n: &Group, p: &Group, prime: u64, config: &RunConfig) -> Option<Permutation> {
    let candidate = |g: Permutation| -> Option<Permutation> {
        let (mut y, _) = g.p_parts(prime);
        if p.has(&y) {
            return None;
        }
        loop {
            let next = y.pow(prime as i64);
            if p.has(&next) {
                return Some(y);
            }
            y = next;
        }
    };
    if n.order() <= config.exhaustive_bound {
        (0..n.order() as u64).find_map(|r| candidate(n.unrank(r)))
    } else {
        let mut rng = n.rng(0x5170);
        (0..1_000_000).find_map(|_| candidate(n.random_element(&mut rng)))
    }
}

/// Grows the `p`-subgroup `start` to a Sylow `p`-subgroup of `group` containing it.
pub fn sylow_containing(group: &Group, prime: u64, start: &Group, config: &RunConfig) -> Result<Group> {
    check_prime(prime)?;
    start.require_subgroup_of(group)?;
    if p_part(start.order(), prime) != start.order() {
        return Err(Error::InvalidInput("starting subgroup is not a p-group".into()));
    }
    grow(group, prime, start.clone(), config)
}

/// Grows inside `N_G(P)` while it is proper, since a Sylow subgroup of `N_G(P)` containing `P`
/// is strictly larger than `P` until `P` is Sylow in `G`.
fn grow(group: &Group, prime: u64, mut p: Group, config: &RunConfig) -> Result<Group> {
    let target = p_part(group.order(), prime);
    while p.order() < target {
        let n = normalizer(group, &p, config)?;
        if n.order() < group.order() {
            let bigger = grow(&n, prime, p.clone(), config)?;
            if bigger.order() <= p.order() {
                return Err(Error::InternalInconsistency("Sylow growth inside the normalizer stalled".into()));
            }
            p = bigger;
            continue;
        }
        let y = extension_element(group, &p, prime, config).ok_or_else(|| {
            Error::InternalInconsistency(format!("no element of order {prime} found in N(P)/P below the Sylow order"))
        })?;
        let bigger = p.closure(&[y])?;
        if bigger.order() != p.order() * prime as u128 {
            return Err(Error::InternalInconsistency("Sylow growth step did not multiply the order by p".into()));
        }
        p = bigger;
    }
    Ok(p)
}

/// A Sylow `p`-subgroup, grown from the `p`-part of the first `p`-singular element in rank order.
pub fn sylow(group: &Group, prime: u64, config: &RunConfig) -> Result<Group> {
    check_prime(prime)?;
    if !group.order().is_multiple_of(prime as u128) {
        return Ok(Group::trivial(group.degree()).with_seed(group.seed()));
    }
    let first = p_singular_element(group, prime)?;
    let start = Group::from_generators(&[first.p_parts(prime).0], group.degree())?.with_seed(group.seed());
    sylow_containing(group, prime, &start, config)
}

fn p_singular_element(group: &Group, prime: u64) -> Result<Permutation> {
    let scan = group.order().min(100_000) as u64;
    if let Some(g) = (1..scan).map(|r| group.unrank(r)).find(|g| g.order() % prime == 0) {
        return Ok(g);
    }
    let mut rng = group.rng(0x51);
    (0..1_000_000)
        .map(|_| group.random_element(&mut rng))
        .find(|g| g.order() % prime == 0)
        .ok_or_else(|| Error::InternalInconsistency("no p-singular element found".into()))
}

/// The Sylow `p`-subgroups containing the `p`-element `x`, found among all conjugates of one Sylow subgroup.
pub fn sylows_containing(group: &Group, prime: u64, x: &Permutation, config: &RunConfig) -> Result<SylowWitness> {
    check_prime(prime)?;
    require_p_element(group, prime, x)?;
    let p = sylow(group, prime, config)?;
    let (conjugators, normalizer) = conjugates_of(group, &p, config)?;
    let conjugator_reps: Vec<Permutation> =
        conjugators.iter().filter(|t| p.has(&x.conjugate_by(&t.inverse()))).cloned().collect();
    Ok(SylowWitness {
        p: prime,
        sylow: p,
        normalizer,
        sylow_count: conjugators.len(),
        count_containing_x: conjugator_reps.len(),
        conjugator_reps,
    })
}

fn closure_of_conjugates(group: &Group, base: &Group, conjugators: &[Permutation]) -> Result<Group> {
    let mut sub = base.conjugate(&conjugators[0]);
    for t in &conjugators[1..] {
        if sub.order() == group.order() {
            break;
        }
        let extra: Vec<Permutation> =
            base.generators().iter().map(|g| g.conjugate_by(t)).filter(|g| !sub.has(g)).collect();
        if !extra.is_empty() {
            sub = sub.closure(&extra)?;
        }
    }
    Ok(sub)
}

/// `Sub_G(x)` generated by the normalisers of the Sylow subgroups containing `x`.
pub fn subnormaliser(group: &Group, prime: u64, x: &Permutation, config: &RunConfig) -> Result<SubnormaliserResult> {
    let w = sylows_containing(group, prime, x, config)?;
    let subgroup = closure_of_conjugates(group, &w.normalizer, &w.conjugator_reps)?;
    let is_picky = subgroup.order() == w.normalizer.order();
    Ok(SubnormaliserResult { subject: x.clone(), p: prime, subgroup, method: Method::Generation, is_picky })
}

/// Conjugation of elements by rank in a fixed group.
struct RankConjugation<'a> {
    group: &'a Group,
}

impl Action for RankConjugation<'_> {
    type Point = u64;
    type Key = u64;

    fn act(&self, r: &u64, g: &Permutation) -> u64 {
        self.group.rank_of_member(&self.group.unrank(*r).conjugate_by(g))
    }

    fn key(&self, r: &u64) -> u64 {
        *r
    }
}

/// `Sub_G(x)` generated by the elements `g` with `x^g ∈ P` for a Sylow `P` containing `x`.
///
/// Small groups are scanned element by element. Larger groups use the conjugacy class of `x` with a
/// Schreier tree: the elements conjugating `x` into `P` are `C_G(x)·u_y` for `y ∈ P ∩ x^G`.
pub fn subnormaliser_fusion(
    group: &Group,
    prime: u64,
    x: &Permutation,
    config: &RunConfig,
) -> Result<SubnormaliserResult> {
    check_prime(prime)?;
    require_p_element(group, prime, x)?;
    let start = Group::from_generators(std::slice::from_ref(x), group.degree())?.with_seed(group.seed());
    let p = sylow_containing(group, prime, &start, config)?;
    let subgroup = if group.order() <= config.fusion_scan_bound {
        let mut sub = Group::trivial(group.degree()).with_seed(group.seed());
        for r in 0..group.order() as u64 {
            let g = group.unrank(r);
            if !sub.has(&g) && p.has(&x.conjugate_by(&g)) {
                sub = sub.closure(&[g])?;
            }
        }
        sub
    } else {
        let action = RankConjugation { group };
        let (orbit, cent) = orbit_stabilizer(group, &action, group.rank_of_member(x), config.orbit_bound, 0xF5)?;
        let mut extra = Vec::new();
        for (idx, &y) in orbit.points.iter().enumerate() {
            if p.has(&group.unrank(y)) {
                extra.push(orbit.transversal(idx));
            }
        }
        let mut sub = cent;
        for u in extra {
            if !sub.has(&u) {
                sub = sub.closure(&[u])?;
            }
        }
        sub
    };
    let n = normalizer(group, &p, config)?;
    let is_picky = subgroup.order() == n.order();
    Ok(SubnormaliserResult { subject: x.clone(), p: prime, subgroup, method: Method::Fusion, is_picky })
}

/// Necessary condition for `⟨x⟩ ⊴⊴ ⟨g, x⟩`: both `x` and `x^g` then lie in `O_p(⟨g, x⟩)`.
fn passes_p_filter(x: &Permutation, g: &Permutation, prime: u64) -> bool {
    x.compose(&x.conjugate_by(g)).is_p_element(prime)
}

/// Whether `⟨x⟩` is subnormal in `⟨g, x⟩`.
pub fn is_subnormal_pair(x: &Permutation, g: &Permutation) -> Result<bool> {
    let degree = x.degree();
    let h = Group::from_generators(&[g.clone(), x.clone()], degree)?;
    let cyc = Group::from_generators(std::slice::from_ref(x), degree)?;
    is_subnormal(&h, &cyc)
}

/// `Sub_G(x)` straight from the definition: the closure of all `g` with `⟨x⟩ ⊴⊴ ⟨g, x⟩`.
pub fn subnormaliser_bruteforce(
    group: &Group,
    prime: u64,
    x: &Permutation,
    config: &RunConfig,
) -> Result<SubnormaliserResult> {
    check_prime(prime)?;
    require_p_element(group, prime, x)?;
    config.check("brute-force subnormaliser", group.order(), config.brute_force_bound)?;
    let mut sub = Group::trivial(group.degree()).with_seed(group.seed());
    for r in 0..group.order() as u64 {
        let g = group.unrank(r);
        if sub.has(&g) || !passes_p_filter(x, &g, prime) {
            continue;
        }
        if is_subnormal_pair(x, &g)? {
            sub = sub.closure(&[g])?;
        }
    }
    let p = sylow(group, prime, config)?;
    let n = normalizer(group, &p, config)?;
    let is_picky = sub.order() == n.order();
    Ok(SubnormaliserResult { subject: x.clone(), p: prime, subgroup: sub, method: Method::Bruteforce, is_picky })
}

/// The raw set `S_G(⟨x⟩) = {g : ⟨x⟩ ⊴⊴ ⟨g, x⟩}` as element ranks, without taking a closure.
pub fn subnormal_witness_ranks(group: &Group, x: &Permutation, config: &RunConfig) -> Result<Vec<u64>> {
    group.require_member(x, "element")?;
    config.check("subnormal witness scan", group.order(), config.brute_force_bound)?;
    let mut out = Vec::new();
    for r in 0..group.order() as u64 {
        if is_subnormal_pair(x, &group.unrank(r))? {
            out.push(r);
        }
    }
    Ok(out)
}

/// Whether `x` lies in exactly one Sylow `p`-subgroup.
///
/// Both the count of Sylow subgroups containing `x` and the comparison `Sub_G(x) = N_G(P)` are
/// computed; disagreement is reported as an internal inconsistency.
pub fn is_picky(group: &Group, prime: u64, x: &Permutation, config: &RunConfig) -> Result<bool> {
    let w = sylows_containing(group, prime, x, config)?;
    let sub = closure_of_conjugates(group, &w.normalizer, &w.conjugator_reps)?;
    let by_count = w.count_containing_x == 1;
    let by_sub = sub.order() == w.normalizer.order();
    if by_count != by_sub {
        return Err(Error::InternalInconsistency(format!(
            "picky criteria disagree: {} Sylow subgroups contain x but |Sub| = {} and |N(P)| = {}",
            w.count_containing_x,
            sub.order(),
            w.normalizer.order()
        )));
    }
    Ok(by_count)
}

/// One row of the picky report: a conjugacy class of nontrivial `p`-elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PickyRow {
    pub class: usize,
    pub representative: Vec<u32>,
    pub element_order: u64,
    pub class_size: u128,
    pub centralizer_order: u128,
    pub sylows_containing: usize,
    pub subnormaliser_order: u128,
    pub normalizer_order: u128,
    pub picky: bool,
    /// Methods run on this class; all returned the same subgroup when `methods_agree` holds.
    pub methods: Vec<Method>,
    pub methods_agree: bool,
}

/// Classes of nontrivial `p`-elements with their picky flag and subnormaliser orders.
///
/// Rows follow the class order (element order, then class size). Fusion always runs alongside the
/// generation method; the brute-force method runs when the group is within `brute_force_bound`.
pub fn picky_classes(group: &Group, prime: u64, config: &RunConfig) -> Result<Vec<PickyRow>> {
    let table = conjugacy_classes(group, config)?;
    picky_rows(group, &table, prime, config, group.order() <= config.brute_force_bound)
}

pub(crate) fn picky_rows(
    group: &Group,
    table: &ClassTable,
    prime: u64,
    config: &RunConfig,
    brute: bool,
) -> Result<Vec<PickyRow>> {
    check_prime(prime)?;
    let mut rows = Vec::new();
    for k in table.p_element_classes(prime) {
        let class = table.class(k);
        let x = &class.representative;
        let w = sylows_containing(group, prime, x, config)?;
        let sub = closure_of_conjugates(group, &w.normalizer, &w.conjugator_reps)?;
        let picky = w.count_containing_x == 1;
        if picky != (sub.order() == w.normalizer.order()) {
            return Err(Error::InternalInconsistency(format!("picky criteria disagree on class {k}")));
        }
        let mut methods = vec![Method::Generation, Method::Fusion];
        let fusion = subnormaliser_fusion(group, prime, x, config)?;
        let mut agree = fusion.subgroup.same_subgroup(&sub);
        if brute {
            methods.push(Method::Bruteforce);
            let b = subnormaliser_bruteforce(group, prime, x, config)?;
            agree &= b.subgroup.same_subgroup(&sub);
        }
        rows.push(PickyRow {
            class: k,
            representative: x.images().to_vec(),
            element_order: class.element_order,
            class_size: class.size,
            centralizer_order: class.centralizer_order,
            sylows_containing: w.count_containing_x,
            subnormaliser_order: sub.order(),
            normalizer_order: w.normalizer.order(),
            picky,
            methods,
            methods_agree: agree,
        });
    }
    Ok(rows)
}

/// Whether `Sub_G(x) = G` for every `p`-element `x`, checked on class representatives.
pub fn almost_normal(group: &Group, prime: u64, config: &RunConfig) -> Result<bool> {
    check_prime(prime)?;
    let p = sylow(group, prime, config)?;
    if p.is_normal_in(group) {
        return Ok(true);
    }
    let table = conjugacy_classes(group, config)?;
    for k in table.p_element_classes(prime) {
        let sub = subnormaliser(group, prime, &table.class(k).representative, config)?;
        if sub.subgroup.order() != group.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨C_G(x), N_G(P)⟩` for a Sylow `P` containing `x`.
pub fn centralizer_normalizer_join(group: &Group, prime: u64, x: &Permutation, config: &RunConfig) -> Result<Group> {
    require_p_element(group, prime, x)?;
    let start = Group::from_generators(std::slice::from_ref(x), group.degree())?.with_seed(group.seed());
    let p = sylow_containing(group, prime, &start, config)?;
    let n = normalizer(group, &p, config)?;
    let c = centralizer(group, x, config)?;
    n.closure(c.generators())
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
    fn sylow_orders_in_s4() {
        let cfg = RunConfig::default();
        assert_eq!(sylow(&s4(), 2, &cfg).unwrap().order(), 8);
        assert_eq!(sylow(&s4(), 3, &cfg).unwrap().order(), 3);
        assert_eq!(sylow(&s4(), 5, &cfg).unwrap().order(), 1);
    }

    #[test]
    fn sylows_containing_counts_in_s4() {
        let cfg = RunConfig::default();
        let w = sylows_containing(&s4(), 2, &perm(4, &[&[0, 1], &[2, 3]]), &cfg).unwrap();
        assert_eq!(w.count_containing_x, 3);
        assert_eq!(w.sylow_count, 3);
        let w = sylows_containing(&s4(), 2, &perm(4, &[&[0, 1]]), &cfg).unwrap();
        assert_eq!(w.count_containing_x, 1);
    }

    #[test]
    fn not_a_p_element_is_rejected() {
        let err = sylows_containing(&s4(), 2, &perm(4, &[&[0, 1, 2]]), &RunConfig::default()).unwrap_err();
        assert_eq!(err, Error::NotPElement { p: 2 });
    }

    #[test]
    fn three_methods_in_s4() {
        let cfg = RunConfig::default();
        let g = s4();
        for (x, p, order) in [
            (perm(4, &[&[0, 1], &[2, 3]]), 2, 24),
            (perm(4, &[&[0, 1]]), 2, 8),
            (perm(4, &[&[0, 1, 2]]), 3, 6),
        ] {
            let a = subnormaliser(&g, p, &x, &cfg).unwrap();
            let b = subnormaliser_fusion(&g, p, &x, &cfg).unwrap();
            let c = subnormaliser_bruteforce(&g, p, &x, &cfg).unwrap();
            assert_eq!(a.subgroup.order(), order);
            assert!(a.subgroup.same_subgroup(&b.subgroup));
            assert!(a.subgroup.same_subgroup(&c.subgroup));
        }
    }

    #[test]
    fn identity_has_whole_group_as_subnormaliser() {
        let g = s4();
        let s = subnormaliser(&g, 2, &g.identity(), &RunConfig::default()).unwrap();
        assert_eq!(s.subgroup.order(), 24);
    }

    #[test]
    fn s4_is_not_almost_normal_at_two() {
        assert!(!almost_normal(&s4(), 2, &RunConfig::default()).unwrap());
    }
}

use proptest::prelude::*;

use super::*;
use crate::cyclo::PPart;
use crate::perm::direct_product;
use crate::zoo::{alternating, dihedral, symmetric};

fn cfg() -> RunConfig {
    RunConfig::default()
}

fn ctx(g: &Group) -> TableContext {
    TableContext::new(g, &cfg()).unwrap()
}

#[test]
fn trivial_character_tag() {
    let c = ctx(&symmetric(4).unwrap());
    let t = c.table();
    let row = (0..t.num_characters()).find(|&i| t.values[i].iter().all(|v| *v == crate::Cyclo::one())).unwrap();
    for k in 0..t.num_classes() {
        let tag = char_tag(t, row, k, 2, Level::Plus).unwrap();
        assert_eq!(tag.degree_p_part, PPart::integer(2, 0));
        assert_eq!(tag.value_field, AbelianFieldTag::rational());
        assert_eq!(tag.value_p_part, Some(PPart::integer(2, 0)));
    }
}

#[test]
fn degree_twelve_has_two_part_four() {
    let g = direct_product(&alternating(5).unwrap(), &alternating(4).unwrap()).unwrap();
    let c = ctx(&g);
    let degrees = c.table().degrees().unwrap();
    let row = degrees.iter().position(|&d| d == 12).unwrap();
    assert_eq!(char_tag(c.table(), row, 0, 2, Level::Basic).unwrap().degree_p_part, PPart::integer(2, 2));
}

#[test]
fn a5_degree_three_at_order_five() {
    let c = ctx(&alternating(5).unwrap());
    let t = c.table();
    let degrees = t.degrees().unwrap();
    let k = (0..t.num_classes()).find(|&k| t.classes[k].element_order == 5).unwrap();
    for row in (0..t.num_characters()).filter(|&i| degrees[i] == 3) {
        let tag = char_tag(t, row, k, 5, Level::Plus).unwrap();
        assert_eq!(tag.value_field, AbelianFieldTag { conductor: 5, stabilizer: vec![1, 4] });
        assert_eq!(tag.value_p_part, Some(PPart::integer(5, 0)));
        assert_eq!(tag.degree_p_part, PPart::integer(5, 0));
    }
}

#[test]
fn vanishing_value_is_rejected() {
    let c = ctx(&alternating(5).unwrap());
    let t = c.table();
    let (row, k) = (0..t.num_characters())
        .flat_map(|i| (0..t.num_classes()).map(move |k| (i, k)))
        .find(|&(i, k)| t.values[i][k].is_zero())
        .unwrap();
    assert!(char_tag(t, row, k, 5, Level::Basic).is_err());
}

#[test]
fn whole_group_subnormaliser_gives_identical_multisets() {
    // The Sylow 3-subgroup of S3 is normal, so Sub = S3.
    let g = symmetric(3).unwrap();
    let x = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let r = check_conjecture(&g, 3, &x, Level::Plus, &cfg()).unwrap();
    assert_eq!(r.subnormaliser_order, 6);
    assert_eq!(r.tags_group, r.tags_subnormaliser);
    assert!(r.verdict && r.basic_verdict && r.verdict_flipped_convention);
    assert!(r.witness.is_none());
}

#[test]
fn non_p_element_is_rejected() {
    let g = symmetric(4).unwrap();
    let x = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
    assert!(check_conjecture(&g, 2, &x, Level::Basic, &cfg()).is_err());
}

#[test]
fn mismatch_witness_is_first_differing_tag() {
    let a = CharTag {
        degree_p_part: PPart::integer(2, 0),
        value_field: AbelianFieldTag::rational(),
        value_p_part: None,
        char_local_tag: None,
    };
    let b = CharTag { degree_p_part: PPart::integer(2, 1), ..a.clone() };
    let w = first_mismatch(&[a.clone(), b.clone()], &[a.clone(), a.clone()]).unwrap();
    assert_eq!((w.tag, w.in_group, w.in_subnormaliser), (a.clone(), 1, 2));
    assert!(first_mismatch(&[a.clone(), b.clone()], &[a, b]).is_none());
}

fn small_corpus() -> Vec<Group> {
    vec![
        symmetric(3).unwrap(),
        symmetric(4).unwrap(),
        alternating(4).unwrap(),
        alternating(5).unwrap(),
        dihedral(8).unwrap(),
        dihedral(10).unwrap(),
        direct_product(&symmetric(3).unwrap(), &dihedral(4).unwrap()).unwrap(),
    ]
}

#[test]
fn levels_refine_and_conventions_agree() {
    for g in small_corpus() {
        let c = ctx(&g);
        for p in g.order_primes() {
            for k in c.classes().p_element_classes(p) {
                let x = c.classes().class(k).representative.clone();
                let plus = check_in_context(&c, "g", p, &x, Level::Plus, &cfg()).unwrap();
                let basic = check_in_context(&c, "g", p, &x, Level::Basic, &cfg()).unwrap();
                assert_eq!(plus.basic_verdict, basic.verdict);
                assert!(!plus.verdict || basic.verdict);
                assert_eq!(plus.verdict, plus.verdict_flipped_convention);
                assert_eq!(basic.verdict, basic.verdict_flipped_convention);
                assert_eq!(plus.verdict, plus.witness.is_none());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_are_conjugation_invariant(gi in 0usize..7, seed in any::<u64>()) {
        let g = &small_corpus()[gi];
        let c = ctx(g);
        let mut rng = g.rng(seed);
        for p in g.order_primes() {
            for k in c.classes().p_element_classes(p) {
                let x = c.classes().class(k).representative.clone();
                let y = x.conjugate_by(&g.random_element(&mut rng));
                let rx = check_in_context(&c, "g", p, &x, Level::Plus, &cfg()).unwrap();
                let ry = check_in_context(&c, "g", p, &y, Level::Plus, &cfg()).unwrap();
                prop_assert_eq!(rx.class, ry.class);
                prop_assert_eq!(rx.subnormaliser_order, ry.subnormaliser_order);
                prop_assert_eq!(rx.picky, ry.picky);
                prop_assert_eq!(&rx.tags_group, &ry.tags_group);
                prop_assert_eq!(&rx.tags_subnormaliser, &ry.tags_subnormaliser);
                prop_assert_eq!(rx.verdict, ry.verdict);
            }
        }
    }
}

#[test]
fn claims_parse_and_name_their_files() {
    let ids = claim_ids().unwrap();
    assert!(ids.len() >= 14);
    for id in ids {
        let c = load_claim(&id).unwrap();
        assert!(!c.statement.is_empty());
        assert!(c.prime >= 2);
    }
    assert!(load_claim("no-such-claim").is_err());
}

#[test]
fn tight_bound_skips_claim() {
    let config = RunConfig { enumeration_bound: 10, chartab_order_bound: 10, ..cfg() };
    let r = reproduce_claim("PSL2_8-conjecture-plus-p3", &config).unwrap();
    assert_eq!(r.status, ClaimStatus::SkippedBound);
    assert!(r.skipped.is_some());
}

#[test]
fn small_claim_passes() {
    let r = reproduce_claim("PSL2_8-conjecture-plus-p3", &cfg()).unwrap();
    assert_eq!(r.status, ClaimStatus::Pass, "{}", r.to_json());
    assert_eq!(r.group_order, Some(504));
}

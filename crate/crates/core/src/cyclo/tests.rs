use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::numtheory::{divisors, euler_phi, lcm, units};
use crate::Cyclo;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn z(n: u64, k: i64) -> Cyclo {
    Cyclo::root_of_unity(n, k)
}

/// `Φ_n` as integer coefficients, lowest degree first.
fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    let mut num = vec![q(0); n as usize + 1];
    num[0] = q(-1);
    num[n as usize] = q(1);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![q(0); r.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = r[i + dd].clone() / den[dd].clone();
        for (j, dj) in den.iter().enumerate() {
            r[i + j] = r[i + j].clone() - c.clone() * dj.clone();
        }
        quot[i] = c;
    }
    assert!(r.iter().all(Zero::is_zero));
    quot
}

/// Elements of `Q(ζ_n)` as polynomials reduced modulo `Φ_n`.
struct PowerBasis {
    n: u64,
    phi: Vec<BigRational>,
}

impl PowerBasis {
    fn new(n: u64) -> Self {
        PowerBasis { n, phi: cyclotomic_polynomial(n) }
    }

    fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.dim();
        for i in (d..v.len()).rev() {
            let c = v[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, pj) in self.phi.iter().enumerate() {
                v[i - d + j] = v[i - d + j].clone() - c.clone() * pj.clone();
            }
        }
        v.truncate(d);
        v.resize(d, q(0));
        v
    }

    fn from_terms(&self, terms: &[(u64, i64)]) -> Vec<BigRational> {
        let mut v = vec![q(0); self.n as usize];
        for &(e, c) in terms {
            let i = (e % self.n) as usize;
            v[i] = v[i].clone() + q(c);
        }
        self.reduce(v)
    }

    fn from_cyclo(&self, a: &Cyclo) -> Vec<BigRational> {
        assert_eq!(self.n % a.conductor(), 0);
        let k = self.n / a.conductor();
        let mut v = vec![q(0); self.n as usize];
        for (e, c) in a.terms() {
            let i = (e * k % self.n) as usize;
            v[i] = v[i].clone() + c.clone();
        }
        self.reduce(v)
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut v = vec![q(0); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = v[i + j].clone() + x.clone() * y.clone();
            }
        }
        self.reduce(v)
    }

    /// Degree of the minimal polynomial of `a`, by rank of its powers over `Q`.
    fn minimal_degree(&self, a: &[BigRational]) -> usize {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut power = {
            let mut one = vec![q(0); self.dim()];
            one[0] = q(1);
            one
        };
        loop {
            if !independent_after_adding(&mut rows, power.clone()) {
                return rows.len();
            }
            power = self.mul(&power, a);
        }
    }
}

/// Fraction-free elimination keeping `rows` primitive and in echelon form; returns false if `v` is dependent.
fn independent_after_adding(rows: &mut Vec<Vec<BigRational>>, v: Vec<BigRational>) -> bool {
    assert!(v.iter().all(|c| c.is_integer()));
    let mut v: Vec<BigInt> = v.into_iter().map(|c| c.to_integer()).collect();
    for r in rows.iter() {
        let r: Vec<BigInt> = r.iter().map(|c| c.to_integer()).collect();
        let pivot = r.iter().position(|c| !c.is_zero()).unwrap();
        if !v[pivot].is_zero() {
            let (a, b) = (r[pivot].clone(), v[pivot].clone());
            v = v.iter().zip(&r).map(|(x, y)| x * &a - y * &b).collect();
            let g = v.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() {
                v.iter_mut().for_each(|x| *x /= &g);
            }
        }
    }
    if v.iter().all(Zero::is_zero) {
        return false;
    }
    rows.push(v.into_iter().map(BigRational::from_integer).collect());
    rows.sort_by_key(|r| r.iter().position(|c| !c.is_zero()).unwrap());
    true
}

#[test]
fn vanishing_sum_of_cube_roots() {
    let s = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
    assert!(s.is_zero());
    assert_eq!(s.conductor(), 1);
}

#[test]
fn square_of_eighth_root_is_i() {
    let i = z(8, 1).pow(2).unwrap();
    assert_eq!(i.conductor(), 4);
    assert_eq!(i, z(4, 1));
    assert_eq!(i.pow(2).unwrap(), Cyclo::from_i64(-1));
}

#[test]
fn golden_ratio_conjugate_product() {
    let a = &z(5, 1) + &z(5, 4);
    let b = &z(5, 2) + &z(5, 3);
    assert_eq!(&a * &b, Cyclo::from_i64(-1));
}

#[test]
fn galois_examples() {
    let a = &z(5, 1) + &z(5, 4);
    assert_eq!(a.galois(1).unwrap(), a);
    assert_eq!(a.galois(2).unwrap(), &z(5, 2) + &z(5, 3));
    assert!(matches!(a.galois(5), Err(crate::Error::NotUnit(0, 5))));
    let r = Cyclo::from_rational(BigRational::new(BigInt::from(3), BigInt::from(7)));
    for u in [1, 2, 5, 11] {
        assert_eq!(r.galois(u).unwrap(), r);
    }
}

#[test]
fn inverse_and_zero() {
    assert!(matches!(Cyclo::zero().inverse(), Err(crate::Error::DivisionByZero)));
    let a = &z(7, 1) + &Cyclo::from_i64(2);
    assert_eq!(&a * &a.inverse().unwrap(), Cyclo::one());
}

#[test]
fn value_field_examples() {
    assert_eq!(value_field(&Cyclo::from_i64(5)), AbelianFieldTag::rational());
    let a = &z(5, 1) + &z(5, 4);
    assert_eq!(value_field(&a), AbelianFieldTag { conductor: 5, stabilizer: vec![1, 4] });
    assert_eq!(value_field(&a).degree(), 2);
    assert_eq!(value_field(&z(3, 1)), AbelianFieldTag { conductor: 3, stabilizer: vec![1] });
}

#[test]
fn character_field_examples() {
    let rat = [Cyclo::from_i64(1), Cyclo::from_i64(-2)];
    assert_eq!(character_field(&rat), AbelianFieldTag::rational());
    let vals = [Cyclo::one(), z(3, 1)];
    assert_eq!(character_field(&vals).conductor, 3);
    let vals = [&z(5, 1) + &z(5, 4), z(3, 1)];
    let k = character_field(&vals);
    assert_eq!(k.conductor, 15);
    assert_eq!(k.degree(), 4);
    assert_eq!(k.stabilizer, vec![1, 4]);
}

#[test]
fn field_tag_canonicalises_conductor() {
    // Q(ζ_15) fixed by everything ≡ 1 mod 5 is Q(ζ_5)
    let h: Vec<u64> = units(15).into_iter().filter(|u| u % 5 == 1).collect();
    assert_eq!(AbelianFieldTag::from_subgroup(15, &h), AbelianFieldTag { conductor: 5, stabilizer: vec![1] });
    // sqrt(-3) has conductor 3 even if presented inside Q(ζ_12)
    let h: Vec<u64> = units(12).into_iter().filter(|u| u % 3 == 1).collect();
    assert_eq!(AbelianFieldTag::from_subgroup(12, &h).conductor, 3);
    assert!(AbelianFieldTag::rational().is_subfield_of(&value_field(&z(7, 1))));
}

#[test]
fn p_part_examples() {
    assert_eq!(p_part(&Cyclo::from_i64(12), 2).unwrap(), PPart::integer(2, 2));
    assert_eq!(p_part(&z(3, 1), 3).unwrap(), PPart::integer(3, 0));
    let sqrt2 = &z(8, 1) + &z(8, -1);
    assert_eq!(&sqrt2 * &sqrt2, Cyclo::from_i64(2));
    assert_eq!(sqrt2.norm(), q(-2));
    assert_eq!(p_part(&sqrt2, 2).unwrap(), PPart::new(2, BigRational::new(BigInt::from(1), BigInt::from(2))));
    assert!(p_part(&Cyclo::zero(), 2).is_err());
    let half = Cyclo::from_rational(BigRational::new(BigInt::from(3), BigInt::from(4)));
    assert_eq!(p_part(&half, 2).unwrap(), PPart::integer(2, -2));
}

#[test]
fn p_part_serialises_exponent_exactly() {
    let x = PPart::new(2, BigRational::new(BigInt::from(-3), BigInt::from(2)));
    let s = serde_json::to_string(&x).unwrap();
    assert_eq!(s, r#"{"p":2,"exponent":"-3/2"}"#);
    assert_eq!(serde_json::from_str::<PPart>(&s).unwrap(), x);
}

#[test]
fn local_tag_examples() {
    let qp = |p| local_field_tag(&AbelianFieldTag::rational(), p);
    assert_eq!(qp(2), LocalFieldTag { p: 2, ramification_level: 0, unramified_degree: 1, subgroup: vec![(0, 0)] });

    let root5 = value_field(&(&z(5, 1) + &z(5, 4)));
    // 11 splits in Q(√5)
    assert_eq!(local_subgroup_at(&root5, 11, 5), vec![1]);
    assert_eq!(decomposition_group(5, 11), vec![1]);
    assert_eq!(local_field_tag(&root5, 11), qp(11));

    // 2 is inert: the completion is the unramified quadratic extension of Q_2
    assert_eq!(decomposition_group(5, 2), vec![1, 2, 3, 4]);
    assert_eq!(local_subgroup_at(&root5, 2, 5), vec![1, 4]);
    let t = local_field_tag(&root5, 2);
    assert_eq!((t.ramification_level, t.unramified_degree, t.degree()), (0, 2, 2));
    assert_eq!(t, local_field_tag(&value_field(&z(3, 1)), 2));

    // 5 ramifies
    let t = local_field_tag(&root5, 5);
    assert_eq!((t.ramification_level, t.unramified_degree, t.degree()), (1, 1, 2));

    // Q_2(i) and Q_2(√-3) differ
    assert_ne!(local_field_tag(&value_field(&z(4, 1)), 2), t_q2_sqrt_minus3());
}

fn t_q2_sqrt_minus3() -> LocalFieldTag {
    let s = &z(3, 1) - &z(3, 2);
    assert_eq!(&s * &s, Cyclo::from_i64(-3));
    local_field_tag(&value_field(&s), 2)
}

#[test]
fn text_form_round_trips() {
    let a = &(&z(12, 1) + &z(12, 5)).scale(&BigRational::new(BigInt::from(-2), BigInt::from(3))) + &z(3, 1);
    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Cyclo>(&s).unwrap(), a);
    let small: cyclo_small::Small = a.convert().unwrap();
    assert_eq!(small.convert::<BigRational>().unwrap(), a);
}

mod cyclo_small {
    pub type Small = super::Cyclotomic<num_rational::Rational64>;
}

fn element() -> impl Strategy<Value = (u64, Vec<(u64, i64)>)> {
    (1u64..=60).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, -3i64..=3), 0..6)))
}

fn pair() -> impl Strategy<Value = (u64, Vec<(u64, i64)>, Vec<(u64, i64)>)> {
    (1u64..=60).prop_flat_map(|n| {
        let terms = prop::collection::vec((0..n, -3i64..=3), 0..6);
        (Just(n), terms.clone(), terms)
    })
}

fn build(n: u64, terms: &[(u64, i64)]) -> Cyclo {
    Cyclo::from_terms(n, terms.iter().map(|&(e, c)| (e, q(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_denotes_the_same_number((n, t) in element()) {
        let a = build(n, &t);
        prop_assert_eq!(n % a.conductor(), 0);
        let pb = PowerBasis::new(n);
        prop_assert_eq!(pb.from_cyclo(&a), pb.from_terms(&t));
        let again = Cyclo::from_terms(a.conductor(), a.terms().map(|(e, c)| (e, c.clone())));
        prop_assert_eq!(again, a);
    }

    #[test]
    fn equality_matches_power_basis((n, s, t) in pair()) {
        let pb = PowerBasis::new(n);
        prop_assert_eq!(build(n, &s) == build(n, &t), pb.from_terms(&s) == pb.from_terms(&t));
    }

    #[test]
    fn arithmetic_matches_power_basis((n, s, t) in pair()) {
        let pb = PowerBasis::new(n);
        let (a, b) = (build(n, &s), build(n, &t));
        let (pa, pt) = (pb.from_terms(&s), pb.from_terms(&t));
        let sum: Vec<BigRational> = pa.iter().zip(&pt).map(|(x, y)| x + y).collect();
        prop_assert_eq!(pb.from_cyclo(&(&a + &b)), sum);
        prop_assert_eq!(pb.from_cyclo(&(&a * &b)), pb.mul(&pa, &pt));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclo::one());
        }
    }

    #[test]
    fn galois_is_an_action((n, t) in element(), i in 0usize..64, j in 0usize..64) {
        let a = build(n, &t);
        let us = units(n.max(2));
        let (u, v) = (us[i % us.len()], us[j % us.len()]);
        let lhs = a.galois(u as i64).unwrap().galois(v as i64).unwrap();
        prop_assert_eq!(lhs, a.galois((u * v % n.max(2)) as i64).unwrap());
        let b = build(n, &t[..t.len() / 2]);
        prop_assert_eq!((&a * &b).galois(u as i64).unwrap(), &a.galois(u as i64).unwrap() * &b.galois(u as i64).unwrap());
        prop_assert_eq!(value_field(&a.galois(u as i64).unwrap()), value_field(&a));
    }

    #[test]
    fn degree_matches_minimal_polynomial((n, t) in element()) {
        let a = build(n, &t);
        let k = value_field(&a);
        prop_assert_eq!(k.degree() as usize, a.conjugates().len());
        prop_assert_eq!(euler_phi(k.conductor) % k.degree(), 0);
        let pb = PowerBasis::new(n);
        prop_assert_eq!(pb.minimal_degree(&pb.from_terms(&t)), k.degree() as usize);
    }

    #[test]
    fn norm_is_rational((n, t) in element()) {
        let a = build(n, &t);
        let prod = a.conjugates().into_iter().fold(Cyclo::one(), |acc, (_, c)| &acc * &c);
        prop_assert!(prod.is_rational());
        if !a.is_zero() {
            let e = p_part(&a, 2).unwrap();
            prop_assert_eq!(e.flipped().flipped(), e);
        }
    }

    #[test]
    fn compositum_contains_each_field((n, s, t) in pair()) {
        let (a, b) = (build(n, &s), build(n, &t));
        let k = character_field([&a, &b]);
        prop_assert!(value_field(&a).is_subfield_of(&k));
        prop_assert!(value_field(&b).is_subfield_of(&k));
    }

    #[test]
    fn local_tags_agree_with_subgroup_comparison((n, s, t) in pair(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let (k1, k2) = (value_field(&build(n, &s)), value_field(&build(n, &t)));
        let mut m = lcm(k1.conductor, k2.conductor);
        if !m.is_multiple_of(p) {
            m *= p;
        }
        let same_local = local_subgroup_at(&k1, p, m) == local_subgroup_at(&k2, p, m);
        let (t1, t2) = (local_field_tag(&k1, p), local_field_tag(&k2, p));
        prop_assert_eq!(t1 == t2, same_local);
        let d = decomposition_group(m, p).len();
        prop_assert_eq!(t1.degree() as usize, d / local_subgroup_at(&k1, p, m).len());
    }
}

#[test]
fn conductor_is_minimal_for_all_roots_up_to_60() {
    for n in 1..=60u64 {
        for k in 0..n {
            let g = num_integer::Integer::gcd(&n, &k);
            let order = n / g;
            let expected = if order % 4 == 2 { order / 2 } else { order };
            assert_eq!(z(n, k as i64).conductor(), expected.max(1), "ζ_{n}^{k}");
        }
    }
}

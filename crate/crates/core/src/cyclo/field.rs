use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::number::Cyclotomic;
use super::scalar::ExactRational;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, lcm, mod_pow, mult_order, split_prime, units};

/// An abelian number field as the fixed field of a subgroup of `(Z/f)^*` in `Q(ζ_f)`.
///
/// `f` is the conductor of the field, which makes the pair canonical. Units modulo 1 are
/// represented by the single residue 0, so `Q` is `(1, [0])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianFieldTag {
    pub conductor: u64,
    pub stabilizer: Vec<u64>,
}

impl AbelianFieldTag {
    pub fn rational() -> Self {
        AbelianFieldTag { conductor: 1, stabilizer: vec![0] }
    }

    /// The fixed field of a subgroup `H ≤ (Z/M)^*`, reduced to its conductor.
    pub fn from_subgroup(modulus: u64, subgroup: &[u64]) -> Self {
        let h: BTreeSet<u64> = subgroup.iter().map(|&u| u % modulus.max(1)).collect();
        let all = units(modulus);
        for d in divisors(modulus) {
            let kernel_inside = all.iter().filter(|&&u| u % d == 1 % d).all(|u| h.contains(u));
            if kernel_inside {
                let stabilizer: BTreeSet<u64> = h.iter().map(|&u| u % d).collect();
                return AbelianFieldTag { conductor: d, stabilizer: stabilizer.into_iter().collect() };
            }
        }
        unreachable!("the full modulus always qualifies")
    }

    /// `[K : Q]`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.stabilizer.len() as u64
    }

    /// The stabilizer lifted to `(Z/M)^*` for a multiple `M` of the conductor.
    pub fn lift(&self, modulus: u64) -> Vec<u64> {
        assert_eq!(modulus % self.conductor, 0, "modulus must be a multiple of the conductor");
        let s: BTreeSet<u64> = self.stabilizer.iter().copied().collect();
        units(modulus).into_iter().filter(|u| s.contains(&(u % self.conductor))).collect()
    }

    /// The field generated by all the given fields.
    pub fn compositum<'a>(tags: impl IntoIterator<Item = &'a AbelianFieldTag>) -> Self {
        let tags: Vec<&AbelianFieldTag> = tags.into_iter().collect();
        let m = tags.iter().fold(1, |acc, t| lcm(acc, t.conductor));
        let mut h: BTreeSet<u64> = units(m).into_iter().collect();
        for t in tags {
            let lifted: BTreeSet<u64> = t.lift(m).into_iter().collect();
            h = h.intersection(&lifted).copied().collect();
        }
        Self::from_subgroup(m, &h.into_iter().collect::<Vec<_>>())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subfield_of(&self, other: &AbelianFieldTag) -> bool {
        let m = lcm(self.conductor, other.conductor);
        let mine: BTreeSet<u64> = self.lift(m).into_iter().collect();
        other.lift(m).iter().all(|u| mine.contains(u))
    }
}

/// The field of values `Q(α)`.
pub fn value_field<Q: ExactRational>(alpha: &Cyclotomic<Q>) -> AbelianFieldTag {
    if alpha.is_rational() {
        return AbelianFieldTag::rational();
    }
    AbelianFieldTag { conductor: alpha.conductor(), stabilizer: alpha.stabilizer() }
}

/// The field generated by all the given values.
pub fn character_field<'a, Q: ExactRational + 'a>(values: impl IntoIterator<Item = &'a Cyclotomic<Q>>) -> AbelianFieldTag {
    let tags: BTreeSet<AbelianFieldTag> = values.into_iter().map(value_field).collect();
    AbelianFieldTag::compositum(tags.iter())
}

/// The real number `p^e` with exact rational `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PPart {
    pub p: u64,
    pub exponent: BigRational,
}

impl PPart {
    pub fn new(p: u64, exponent: BigRational) -> Self {
        PPart { p, exponent }
    }

    pub fn integer(p: u64, e: i64) -> Self {
        PPart { p, exponent: BigRational::from_integer(BigInt::from(e)) }
    }

    /// The same quantity under the inverse valuation convention `p^{-v_p}`.
    pub fn flipped(&self) -> Self {
        PPart { p: self.p, exponent: -self.exponent.clone() }
    }
}

impl fmt::Display for PPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.p, self.exponent)
    }
}

#[derive(Serialize, Deserialize)]
struct PPartDoc {
    p: u64,
    exponent: String,
}

impl Serialize for PPart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PPartDoc { p: self.p, exponent: self.exponent.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PPart {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PPartDoc::deserialize(d)?;
        let exponent = BigRational::from_str(&doc.exponent).map_err(serde::de::Error::custom)?;
        Ok(PPart { p: doc.p, exponent })
    }
}

fn valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `α_p = |N(α)|_p^{1/[Q(α):Q]}`, read as `p^{v_p(N(α)) / [Q(α):Q]}`.
pub fn p_part<Q: ExactRational>(alpha: &Cyclotomic<Q>, p: u64) -> Result<PPart> {
    if alpha.is_zero() {
        return Err(Error::InvalidInput("the p-part of zero is undefined".into()));
    }
    let conjugates = alpha.conjugates();
    let degree = conjugates.len() as i64;
    let norm = conjugates.into_iter().fold(Cyclotomic::<Q>::one(), |acc, (_, c)| &acc * &c);
    let norm = norm
        .to_rational()
        .ok_or_else(|| Error::InternalInconsistency("norm has an irrational component".into()))?
        .to_big();
    let v = valuation(norm.numer(), p) - valuation(norm.denom(), p);
    Ok(PPart { p, exponent: BigRational::new(BigInt::from(v), BigInt::from(degree)) })
}

/// The `p`-adic completion `Q_p·K` of an abelian field, in a form independent of any modulus.
///
/// `Gal(Q_p(ζ_M)/Q_p)` is identified with `(Z/p^a)^* × Z/f`, where `M = p^a m` with `p ∤ m`,
/// `f` is the order of `p` modulo `m`, and the second factor is the Frobenius exponent. The
/// completion is the fixed field of `subgroup`; `ramification_level` and `unramified_degree`
/// are the least `a'` and `f'` such that it lies in `Q_p(ζ_{p^{a'}})·Q_{p^{f'}}`, and
/// `subgroup` is given modulo `(p^{a'}, f')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalFieldTag {
    pub p: u64,
    pub ramification_level: u32,
    pub unramified_degree: u64,
    pub subgroup: Vec<(u64, u64)>,
}

impl LocalFieldTag {
    /// `[Q_p K : Q_p]`.
    pub fn degree(&self) -> u64 {
        let pa = self.p.pow(self.ramification_level);
        euler_phi(pa) * self.unramified_degree / self.subgroup.len() as u64
    }
}

/// The decomposition group of `p` in `(Z/M)^*`: units whose `p′`-part residue is a power of `p`.
pub fn decomposition_group(modulus: u64, p: u64) -> Vec<u64> {
    let (_, m) = split_prime(modulus, p);
    let powers: BTreeSet<u64> = (0..mult_order(p, m)).map(|j| mod_pow(p, j, m)).collect();
    units(modulus).into_iter().filter(|u| powers.contains(&(u % m))).collect()
}

/// `H ∩ D` for the field's stabilizer `H` lifted to `(Z/M)^*` and the decomposition group `D` of `p`.
///
/// Two abelian fields have the same `p`-adic completion iff these subgroups agree at a common modulus.
pub fn local_subgroup_at(field: &AbelianFieldTag, p: u64, modulus: u64) -> Vec<u64> {
    let h: BTreeSet<u64> = field.lift(modulus).into_iter().collect();
    decomposition_group(modulus, p).into_iter().filter(|u| h.contains(u)).collect()
}

/// Canonical tag of `Q_p·K`.
pub fn local_field_tag(field: &AbelianFieldTag, p: u64) -> LocalFieldTag {
    let modulus = field.conductor;
    let (a, m) = split_prime(modulus, p);
    let pa = p.pow(a);
    let f = mult_order(p, m);
    let frobenius_exponent = |u: u64| -> u64 {
        (0..f).find(|&j| mod_pow(p, j, m) == u % m).expect("u lies in the decomposition group")
    };
    let s: BTreeSet<(u64, u64)> =
        local_subgroup_at(field, p, modulus).into_iter().map(|u| (u % pa, frobenius_exponent(u))).collect();
    let ramification_level = (0..=a)
        .find(|&a2| {
            let q = p.pow(a2);
            units(pa).into_iter().filter(|v| v % q == 1 % q).all(|v| s.contains(&(v, 0)))
        })
        .expect("full level qualifies");
    let unramified_degree = divisors(f)
        .into_iter()
        .find(|&f2| (0..f).filter(|j| j % f2 == 0).all(|j| s.contains(&(1 % pa, j))))
        .expect("full degree qualifies");
    let q = p.pow(ramification_level);
    let subgroup: BTreeSet<(u64, u64)> = s.iter().map(|&(v, j)| (v % q, j % unramified_degree)).collect();
    LocalFieldTag { p, ramification_level, unramified_degree, subgroup: subgroup.into_iter().collect() }
}

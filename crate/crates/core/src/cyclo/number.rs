use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::ExactRational;
use crate::error::{Error, Result};
use crate::numtheory::{factor, lcm, mod_inverse, units};

/// An element of `Q(ζ_f)` in canonical form.
///
/// The conductor `f` is minimal and the coefficients refer to the Zumbroich basis of `Q(ζ_f)`:
/// writing `ζ_f^e = ∏ ζ_{q^b}^{c_q}` over the prime powers `q^b ∥ f`, the exponent `e` is a basis
/// exponent when, for every odd `q`, the leading base-`q` digit of `c_q` is nonzero and, for
/// `q = 2`, the leading binary digit of `c_2` is zero. Two elements are equal exactly when their
/// canonical forms are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic<Q: ExactRational> {
    conductor: u64,
    terms: BTreeMap<u64, Q>,
}

/// Per-prime data for reducing exponents modulo `n`.
struct PrimeSlot {
    q: u64,
    b: u32,
    qb: u64,
    /// `(n / q^b)^{-1} mod q^b`
    cofactor_inv: u64,
}

fn prime_slots(n: u64) -> Vec<PrimeSlot> {
    factor(n)
        .into_iter()
        .map(|(q, b)| {
            let qb = q.pow(b);
            let cofactor_inv = mod_inverse((n / qb) % qb, qb).expect("coprime cofactor");
            PrimeSlot { q, b, qb, cofactor_inv }
        })
        .collect()
}

impl PrimeSlot {
    /// Leading base-`q` digit of the `q`-component of exponent `e`.
    #[inline]
    fn top_digit(&self, e: u64) -> u64 {
        let c = (e % self.qb) * self.cofactor_inv % self.qb;
        c / (self.qb / self.q)
    }
}

/// Rewrites a dense coefficient vector over `Z/n` in the Zumbroich basis.
fn zumbroich_reduce<Q: ExactRational>(n: u64, coeffs: &mut [Q]) {
    for slot in prime_slots(n) {
        let step = n / slot.q;
        for e in 0..n {
            if coeffs[e as usize].is_zero() {
                continue;
            }
            let digit = slot.top_digit(e);
            if slot.q == 2 {
                if digit == 1 {
                    let c = std::mem::replace(&mut coeffs[e as usize], Q::zero());
                    let t = ((e + step) % n) as usize;
                    coeffs[t] = coeffs[t].clone() - c;
                }
            } else if digit == 0 {
                let c = std::mem::replace(&mut coeffs[e as usize], Q::zero());
                for k in 1..slot.q {
                    let t = ((e + k * step) % n) as usize;
                    coeffs[t] = coeffs[t].clone() - c.clone();
                }
            }
        }
    }
}

/// Lowers `n` while the element (in Zumbroich form over `Z/n`) lies in a smaller cyclotomic field.
fn reduce_conductor<Q: ExactRational>(mut n: u64, mut terms: BTreeMap<u64, Q>) -> (u64, BTreeMap<u64, Q>) {
    'outer: loop {
        if terms.is_empty() {
            return (1, terms);
        }
        if n <= 2 {
            // Q(ζ_2) = Q: the only basis exponent is 0
            return (1, terms.into_values().map(|c| (0, c)).collect());
        }
        for slot in prime_slots(n) {
            let q = slot.q;
            if slot.b >= 2 || q == 2 {
                if terms.keys().all(|&e| e % q == 0) {
                    terms = terms.into_iter().map(|(e, c)| (e / q, c)).collect();
                    n /= q;
                    continue 'outer;
                }
            } else {
                // q ∥ n, q odd: each class e mod n/q must carry q-1 equal coefficients
                let m = n / q;
                let mut classes: BTreeMap<u64, (usize, Q)> = BTreeMap::new();
                let mut ok = true;
                for (&e, c) in &terms {
                    let entry = classes.entry(e % m).or_insert((0, c.clone()));
                    if entry.1 != *c {
                        ok = false;
                        break;
                    }
                    entry.0 += 1;
                }
                if ok && classes.values().all(|(count, _)| *count as u64 == q - 1) {
                    let q_inv = mod_inverse(q % m, m).expect("coprime");
                    terms = classes.into_iter().map(|(r, (_, c))| (r * q_inv % m, -c)).collect();
                    n = m;
                    continue 'outer;
                }
            }
        }
        return (n, terms);
    }
}

impl<Q: ExactRational> Cyclotomic<Q> {
    /// Canonical form of `Σ coeffs[e] ζ_n^e`.
    fn from_dense(n: u64, mut coeffs: Vec<Q>) -> Self {
        zumbroich_reduce(n, &mut coeffs);
        let terms: BTreeMap<u64, Q> =
            coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u64, c)).collect();
        let (conductor, terms) = reduce_conductor(n, terms);
        Cyclotomic { conductor, terms }
    }

    /// `Σ c ζ_n^e` over the given terms; exponents are taken modulo `n`.
    pub fn from_terms(n: u64, terms: impl IntoIterator<Item = (u64, Q)>) -> Self {
        assert!(n >= 1, "cyclotomic modulus must be positive");
        let mut coeffs = vec![Q::zero(); n as usize];
        for (e, c) in terms {
            let i = (e % n) as usize;
            coeffs[i] = coeffs[i].clone() + c;
        }
        Self::from_dense(n, coeffs)
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Q::from_i64(n))
    }

    pub fn from_rational(q: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        Cyclotomic { conductor: 1, terms }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as u64;
        Self::from_terms(n, [(e, Q::one())])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero coefficients on the Zumbroich basis of `Q(ζ_f)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Q)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Q> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&0).cloned().unwrap_or_else(Q::zero))
    }

    /// Coefficients on exponents modulo a multiple `m` of the conductor (not reduced).
    fn lifted(&self, m: u64) -> impl Iterator<Item = (u64, &Q)> {
        let k = m / self.conductor;
        self.terms.iter().map(move |(&e, c)| (e * k, c))
    }

    /// Image under `ζ ↦ ζ^u`. `u` must be a unit modulo the conductor.
    pub fn galois(&self, u: i64) -> Result<Self> {
        let f = self.conductor;
        let u = u.rem_euclid(f as i64) as u64;
        if f > 1 && u.gcd(&f) != 1 {
            return Err(Error::NotUnit(u, f));
        }
        Ok(self.galois_unit(u))
    }

    pub(crate) fn galois_unit(&self, u: u64) -> Self {
        let f = self.conductor;
        if f == 1 {
            return self.clone();
        }
        let u = u % f;
        Self::from_terms(f, self.terms.iter().map(|(&e, c)| (e * u % f, c.clone())))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_unit(self.conductor - 1)
    }

    /// Units `u` modulo the conductor with `σ_u(α) = α`.
    pub fn stabilizer(&self) -> Vec<u64> {
        units(self.conductor).into_iter().filter(|&u| self.conductor == 1 || self.galois_unit(u) == *self).collect()
    }

    /// The distinct Galois conjugates, indexed by coset representatives of the stabilizer.
    pub fn conjugates(&self) -> Vec<(u64, Self)> {
        let f = self.conductor;
        if f == 1 {
            return vec![(1, self.clone())];
        }
        let stab = self.stabilizer();
        let mut seen = vec![false; f as usize];
        let mut out = Vec::new();
        for u in units(f) {
            if seen[u as usize] {
                continue;
            }
            for &s in &stab {
                seen[(u * s % f) as usize] = true;
            }
            out.push((u, self.galois_unit(u)));
        }
        out
    }

    /// `N_{Q(α)/Q}(α)`.
    pub fn norm(&self) -> Q {
        let prod = self.conjugates().into_iter().fold(Self::one(), |acc, (_, c)| &acc * &c);
        prod.to_rational().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(Q::one() / q));
        }
        let others = self.conjugates().into_iter().skip(1).fold(Self::one(), |acc, (_, c)| &acc * &c);
        let norm = (self * &others).to_rational().expect("norm is rational");
        Ok(others.scale(&(Q::one() / norm)))
    }

    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(&e, c)| (e, c.clone() * q.clone())).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Converts the coefficients to another scalar type, failing when a coefficient does not fit.
    pub fn convert<R: ExactRational>(&self) -> Option<Cyclotomic<R>> {
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            let b = c.to_big();
            terms.insert(e, R::from_big(b.numer(), b.denom())?);
        }
        Some(Cyclotomic { conductor: self.conductor, terms })
    }

    /// The serialisable form `(conductor, [(exponent, numerator, denominator)])`.
    pub fn to_doc(&self) -> CycloDoc {
        CycloDoc {
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| {
                    let b = c.to_big();
                    (e, b.numer().to_string(), b.denom().to_string())
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &CycloDoc) -> Result<Self> {
        if doc.conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let mut terms = Vec::with_capacity(doc.terms.len());
        for (e, n, d) in &doc.terms {
            let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {s:?}")));
            let q = Q::from_big(&parse(n)?, &parse(d)?)
                .ok_or_else(|| Error::InvalidInput("coefficient is not representable".into()))?;
            terms.push((*e, q));
        }
        Ok(Self::from_terms(doc.conductor, terms))
    }
}

/// Exact text form of a cyclotomic number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloDoc {
    pub conductor: u64,
    pub terms: Vec<(u64, String, String)>,
}

impl<Q: ExactRational> Serialize for Cyclotomic<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de, Q: ExactRational> Deserialize<'de> for Cyclotomic<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CycloDoc::deserialize(d)?;
        Self::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

impl<Q: ExactRational> Add for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn add(self, rhs: &Cyclotomic<Q>) -> Cyclotomic<Q> {
        if self.conductor == rhs.conductor && self.conductor == 1 {
            let v = self.to_rational().unwrap() + rhs.to_rational().unwrap();
            return Cyclotomic::from_rational(v);
        }
        let m = lcm(self.conductor, rhs.conductor);
        let mut coeffs = vec![Q::zero(); m as usize];
        for (e, c) in self.lifted(m).chain(rhs.lifted(m)) {
            coeffs[e as usize] = coeffs[e as usize].clone() + c.clone();
        }
        Cyclotomic::from_dense(m, coeffs)
    }
}

impl<Q: ExactRational> Sub for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn sub(self, rhs: &Cyclotomic<Q>) -> Cyclotomic<Q> {
        self + &(-rhs)
    }
}

impl<Q: ExactRational> Mul for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn mul(self, rhs: &Cyclotomic<Q>) -> Cyclotomic<Q> {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let m = lcm(self.conductor, rhs.conductor);
        let mut coeffs = vec![Q::zero(); m as usize];
        let right: Vec<(u64, &Q)> = rhs.lifted(m).collect();
        for (e1, a) in self.lifted(m) {
            for &(e2, b) in &right {
                let i = ((e1 + e2) % m) as usize;
                coeffs[i] = coeffs[i].clone() + a.clone() * b.clone();
            }
        }
        Cyclotomic::from_dense(m, coeffs)
    }
}

impl<Q: ExactRational> Neg for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<Q: ExactRational> $tr for Cyclotomic<Q> {
            type Output = Cyclotomic<Q>;
            fn $m(self, rhs: Cyclotomic<Q>) -> Cyclotomic<Q> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<Q: ExactRational> Neg for Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        -&self
    }
}

impl<Q: ExactRational> fmt::Display for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let abs = c.abs().to_big();
            if self.conductor == 1 {
                write!(f, "{sign}{abs}")?;
            } else if c.abs().is_one() {
                write!(f, "{sign}E({})^{e}", self.conductor)?;
            } else {
                write!(f, "{sign}{abs}*E({})^{e}", self.conductor)?;
            }
        }
        Ok(())
    }
}

impl<Q: ExactRational> fmt::Debug for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

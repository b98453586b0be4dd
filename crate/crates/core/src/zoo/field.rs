//! Finite fields `F_q`, `q ≤ 81`, from the shipped table of primitive polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numtheory::factor;

const FIELD_TABLE: &str = include_str!("../../../../data/fields.json");

#[derive(Deserialize)]
struct TableDoc {
    version: u32,
    fields: Vec<TableEntry>,
}

#[derive(Clone, Deserialize)]
struct TableEntry {
    q: u32,
    p: u32,
    k: u32,
    modulus: Vec<u32>,
}

/// `F_q` as polynomials over `F_p` modulo a fixed monic irreducible of degree `k`.
///
/// The element `Σ c_i x^i` is encoded as the integer `Σ c_i p^i`, so `0` and `1` are the
/// field's zero and one and `F_p` is `0..p`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    generator: u32,
}

impl FiniteField {
    fn build(entry: &TableEntry) -> Result<FiniteField> {
        let TableEntry { q, p, k, ref modulus } = *entry;
        if k == 0 || p.checked_pow(k) != Some(q) || factor(p as u64).len() != 1 || factor(p as u64)[0].1 != 1 {
            return Err(Error::InvalidInput(format!("field table entry q = {q} is not p^k")));
        }
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!("modulus for q = {q} is not a monic polynomial of degree {k}")));
        }
        let digits = |a: u32| -> Vec<u32> { (0..k).map(|i| a / p.pow(i) % p).collect() };
        let encode = |c: &[u32]| -> u32 { c.iter().enumerate().map(|(i, &x)| x * p.pow(i as u32)).sum() };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u8;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (k as usize..prod.len()).rev() {
                    let c = prod[d];
                    if c != 0 {
                        for (i, m) in modulus[..k as usize].iter().enumerate() {
                            let t = d - k as usize + i;
                            prod[t] = (prod[t] + (p - c) * m) % p;
                        }
                        prod[d] = 0;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..k as usize]) as u8;
            }
        }
        let neg: Vec<u8> = (0..q).map(|a| encode(&digits(a).iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u8).collect();
        let mut inv = vec![0u8; qs];
        for a in 1..q {
            let b = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).ok_or_else(|| {
                Error::InvalidInput(format!("modulus for q = {q} is reducible: {a} has no inverse"))
            })?;
            inv[a as usize] = b as u8;
        }
        let mut field = FiniteField { p, k, q, modulus: modulus.clone(), add, mul, neg, inv, generator: 0 };
        field.generator = (1..q)
            .find(|&g| field.mult_order(g) == (q - 1) as u64)
            .ok_or_else(|| Error::InvalidInput(format!("F_{q}^* is not cyclic under the shipped modulus")))?;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least generator of `F_q^*`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize] as u32)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^times)`.
    pub fn frobenius(&self, a: u32, times: u32) -> u32 {
        (0..times).fold(a, |x, _| self.pow(x, self.p as u64))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        let (mut x, mut n) = (a, 1);
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn table() -> &'static HashMap<u32, Arc<FiniteField>> {
    static TABLE: OnceLock<HashMap<u32, Arc<FiniteField>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let doc: TableDoc = serde_json::from_str(FIELD_TABLE).expect("shipped field table parses");
        assert_eq!(doc.version, 1, "field table version");
        doc.fields
            .iter()
            .map(|e| (e.q, Arc::new(FiniteField::build(e).expect("shipped field table is valid"))))
            .collect()
    })
}

/// `F_q` for a prime power `q ≤ 81`.
pub fn field(q: u32) -> Result<Arc<FiniteField>> {
    table().get(&q).cloned().ok_or_else(|| Error::InvalidInput(format!("no field of order {q} in the shipped table")))
}

/// Field orders available in the shipped table.
pub fn field_orders() -> Vec<u32> {
    let mut qs: Vec<u32> = table().keys().copied().collect();
    qs.sort_unstable();
    qs
}

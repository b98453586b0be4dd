//! Dixon–Schneider: common eigenvectors of class matrices over `F_ℓ`, lifted to cyclotomic values.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::modular::{charpoly, dixon_prime, nullspace, roots, Fp, Subspace};
use super::{CharacterTable, ClassInfo};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::numtheory::lcm;
use crate::perm::{conjugacy_classes, ClassTable, Group};
use crate::Cyclo;

/// Structure constants `a_{ijk} = #{(a, b) ∈ K_i × K_j : ab = x_k}` reduced mod `ℓ`, indexed `[j][k]`.
pub(crate) fn class_matrix_mod(table: &ClassTable, i: usize, f: Option<Fp>) -> Vec<Vec<u64>> {
    let r = table.len();
    let mut m = vec![vec![0u64; r]; r];
    let inverses: Vec<_> = table.members(i).map(|a| a.inverse()).collect();
    for k in 0..r {
        let z = &table.class(k).representative;
        for a_inv in &inverses {
            let j = table.class_of_member(&a_inv.compose(z));
            m[j][k] += 1;
        }
    }
    if let Some(f) = f {
        for row in m.iter_mut() {
            row.iter_mut().for_each(|x| *x %= f.l);
        }
    }
    m
}

/// The integer class matrix of class `i`: entry `(j, k)` counts `(a, b) ∈ K_i × K_j` with `ab = x_k`.
pub fn class_matrix(table: &ClassTable, i: usize) -> Vec<Vec<u64>> {
    class_matrix_mod(table, i, None)
}

fn isqrt(n: u128) -> u128 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Splits `F_ℓ^r` into the common eigenlines of the class matrices.
fn central_characters(table: &ClassTable, f: Fp) -> Result<Vec<Vec<u64>>> {
    let r = table.len();
    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&i| (table.class(i).size, i));
    let mut pending = vec![Subspace::full(r)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for &i in &order {
        if pending.is_empty() {
            break;
        }
        let m = class_matrix_mod(table, i, Some(f));
        let mut next = Vec::new();
        for space in pending {
            let a = space.restrict(f, &m);
            let eigen = roots(f, &charpoly(f, a.clone()));
            for lambda in eigen {
                let mut shifted = a.clone();
                for (t, row) in shifted.iter_mut().enumerate() {
                    row[t] = f.sub(row[t], lambda);
                }
                let coords = nullspace(f, shifted);
                let vectors: Vec<Vec<u64>> = coords.iter().map(|c| space.combine(f, c)).collect();
                let sub = Subspace::span(f, vectors);
                if sub.dim() == 1 {
                    done.push(sub.basis[0].clone());
                } else {
                    next.push(sub);
                }
            }
        }
        pending = next;
    }
    if !pending.is_empty() || done.len() != r {
        return Err(Error::InternalInconsistency(format!(
            "class matrices split F_ℓ^{r} into {} lines and {} larger spaces",
            done.len(),
            pending.len()
        )));
    }
    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::InternalInconsistency("central character vanishes on the identity".into()));
            }
            let inv = f.inv(v[0]);
            Ok(v.into_iter().map(|x| f.mul(x, inv)).collect())
        })
        .collect()
}

/// The exact character table of `group`.
pub fn character_table(group: &Group, config: &RunConfig) -> Result<CharacterTable> {
    config.check("character table group order", group.order(), config.chartab_order_bound)?;
    let classes = conjugacy_classes(group, config)?;
    character_table_of(&classes, config)
}

/// The exact character table from precomputed classes.
pub fn character_table_of(table: &ClassTable, config: &RunConfig) -> Result<CharacterTable> {
    let n = table.group().order();
    let r = table.len();
    config.check("character table group order", n, config.chartab_order_bound)?;
    config.check("class count", r as u128, config.class_count_bound as u128)?;
    let exponent = table.classes().iter().fold(1, |e, c| lcm(e, c.element_order));
    let bound = 2 * isqrt(n) + 1;
    let l = dixon_prime(exponent, bound as u64, config.dixon_prime_search)
        .ok_or_else(|| Error::bound("Dixon prime search", config.dixon_prime_search as u128 + 1, config.dixon_prime_search as u128))?;
    if l >= 1 << 32 {
        return Err(Error::bound("Dixon prime", l as u128, 1 << 32));
    }
    let f = Fp { l };
    let z = f.pow(f.primitive_root(), (l - 1) / exponent);

    let omegas = central_characters(table, f)?;
    let sizes: Vec<u64> = table.classes().iter().map(|c| f.reduce_u128(c.size)).collect();
    let inverse: Vec<usize> = (0..r).map(|k| table.inverse_class(k)).collect();
    let powers: Vec<Vec<usize>> =
        (0..r).map(|k| (0..table.class(k).element_order as i64).map(|t| table.power_class(k, t)).collect()).collect();

    let max_degree = isqrt(n) as u64;
    let mut rows: Vec<(u64, Vec<Cyclo>)> = Vec::with_capacity(r);
    for w in &omegas {
        let s = (0..r).fold(0u64, |acc, k| f.add(acc, f.mul(f.mul(w[k], w[inverse[k]]), f.inv(sizes[k]))));
        let d2 = f.mul(f.reduce_u128(n), f.inv(s));
        let degree = (1..=max_degree)
            .find(|&d| f.mul(d, d) == d2 && n.is_multiple_of(d as u128))
            .ok_or_else(|| Error::InternalInconsistency("no integral degree for a central character".into()))?;
        let modular: Vec<u64> = (0..r).map(|k| f.mul(f.mul(w[k], degree), f.inv(sizes[k]))).collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = table.class(k).element_order;
            let zo = f.pow(z, exponent / o);
            let o_inv = f.inv(o % l);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..o {
                let mut acc = 0u64;
                for t in 0..o {
                    let root = f.pow(zo, (o - (j * t) % o) % o);
                    acc = f.add(acc, f.mul(modular[powers[k][t as usize]], root));
                }
                let mult = f.mul(acc, o_inv);
                if mult > degree {
                    return Err(Error::InternalInconsistency(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree} (ℓ = {l})"
                    )));
                }
                total += mult;
                if mult > 0 {
                    terms.push((j, BigRational::from_integer(BigInt::from(mult))));
                }
            }
            if total != degree {
                return Err(Error::InternalInconsistency("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclo::from_terms(o, terms));
        }
        rows.push((degree, values));
    }
    let mut keyed: Vec<(u64, String, Vec<Cyclo>)> = rows
        .into_iter()
        .map(|(d, v)| (d, serde_json::to_string(&v).expect("values serialise"), v))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let classes = table
        .classes()
        .iter()
        .map(|c| ClassInfo {
            size: c.size,
            centralizer_order: c.centralizer_order,
            element_order: c.element_order,
            representative: Some(c.representative.images().to_vec()),
        })
        .collect();
    Ok(CharacterTable {
        schema_version: super::SCHEMA_VERSION,
        provenance: format!("Dixon–Schneider over F_{l}"),
        group_order: n,
        degree: Some(table.group().degree()),
        exponent,
        classes,
        power_maps: table.power_maps().clone(),
        values: keyed.into_iter().map(|(_, _, v)| v).collect(),
    })
}

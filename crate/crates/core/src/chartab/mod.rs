//! Exact character tables by the Dixon–Schneider method, verification, and the table document format.

mod dixon;
mod modular;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use dixon::{character_table, character_table_of, class_matrix};

use crate::error::{Error, Result};
use crate::numtheory::{factor, units};
use crate::Cyclo;

pub const SCHEMA_VERSION: u32 = 1;

/// Column data of a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub size: u128,
    pub centralizer_order: u128,
    pub element_order: u64,
    /// Image array of the representative, when the table was computed from a permutation group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<Vec<u32>>,
}

/// Irreducible characters as rows of exact cyclotomic values over the classes.
///
/// Column 0 is the identity class. Rows are sorted by degree, then by their serialised values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub schema_version: u32,
    pub provenance: String,
    pub group_order: u128,
    /// Degree of the permutation representation the class representatives live in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    /// Class of `x_k^p` for each stored prime `p`.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub values: Vec<Vec<Cyclo>>,
}

/// Outcome of [`verify_table`]: every check with its verdict, and the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<(String, bool)>,
    pub first_failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_characters(&self) -> usize {
        self.values.len()
    }

    /// First-column integers; `None` if some entry is not a positive integer.
    pub fn degrees(&self) -> Option<Vec<u64>> {
        self.values
            .iter()
            .map(|row| {
                let v = row.first()?.to_rational()?;
                if !v.is_integer() || v <= num_rational::BigRational::from_integer(0.into()) {
                    return None;
                }
                v.to_integer().try_into().ok()
            })
            .collect()
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclo {
        &self.values[row][class]
    }

    /// Class of `x_k^e`, composed from the stored prime power maps; `None` if a needed prime map is missing.
    pub fn power_class(&self, k: usize, e: u64) -> Option<usize> {
        let o = self.classes[k].element_order;
        let e = e % o;
        if e == 0 {
            return Some(0);
        }
        let mut c = k;
        for (p, a) in factor(e) {
            let map = self.power_maps.get(&p)?;
            for _ in 0..a {
                c = map[c];
            }
        }
        Some(c)
    }

    /// Class of `x_k^u` for a unit `u` modulo the element order, using any representative of `u` whose
    /// prime factors all have stored power maps.
    pub fn galois_class(&self, k: usize, u: u64) -> Option<usize> {
        let o = self.classes[k].element_order;
        if o == 1 {
            return Some(k);
        }
        (0..64u64).map(|t| u % o + t * o).filter(|&v| v > 0).find_map(|v| self.power_class(k, v))
    }

    /// Rows whose value at class `k` is nonzero.
    pub fn irr_x(&self, k: usize) -> Result<Vec<usize>> {
        if k >= self.classes.len() {
            return Err(Error::InvalidInput(format!("class index {k} out of range")));
        }
        Ok((0..self.values.len()).filter(|&i| !self.values[i][k].is_zero()).collect())
    }

    /// Rows of degree prime to `p`.
    pub fn p_prime_degree_rows(&self, p: u64) -> Vec<usize> {
        let degrees = self.degrees().unwrap_or_default();
        (0..degrees.len()).filter(|&i| !degrees[i].is_multiple_of(p)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }

    /// Parses a table document and checks its shape.
    pub fn parse(text: &str) -> Result<CharacterTable> {
        let table: CharacterTable = serde_json::from_str(text)?;
        table.check_shape()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<CharacterTable> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    fn check_shape(&self) -> Result<()> {
        let r = self.classes.len();
        if r == 0 || self.values.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("value matrix does not match the class list".into()));
        }
        if self.classes[0].element_order != 1 {
            return Err(Error::InvalidInput("the first class must be the identity".into()));
        }
        for (p, map) in &self.power_maps {
            if map.len() != r || map.iter().any(|&c| c >= r) {
                return Err(Error::InvalidInput(format!("power map for {p} is malformed")));
            }
        }
        Ok(())
    }
}

/// A generating set of `(Z/m)^*`.
fn unit_generators(m: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut reached: BTreeSet<u64> = [1 % m.max(1)].into_iter().collect();
    for u in units(m) {
        if reached.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<u64> = reached.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g % m;
                if reached.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

struct Checks {
    checks: Vec<(String, bool)>,
    first_failure: Option<String>,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks.push((name.to_string(), ok));
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(format!("{name}: {}", detail()));
        }
    }
}

/// Checks every structural invariant of a character table exactly.
pub fn verify_table(table: &CharacterTable) -> VerificationReport {
    let mut c = Checks { checks: Vec::new(), first_failure: None };
    let shape = table.check_shape();
    c.record("shape", shape.is_ok() && table.values.len() == table.classes.len(), || match &shape {
        Err(e) => e.to_string(),
        Ok(()) => format!("{} rows for {} classes", table.values.len(), table.classes.len()),
    });
    if c.first_failure.is_some() {
        return VerificationReport { checks: c.checks, first_failure: c.first_failure };
    }
    let r = table.classes.len();
    let n = table.group_order;

    let sizes_ok = table.classes.iter().all(|k| k.size * k.centralizer_order == n)
        && table.classes.iter().map(|k| k.size).sum::<u128>() == n;
    c.record("class sizes", sizes_ok, || "sizes and centralizer orders are inconsistent with |G|".into());

    let degrees = table.degrees();
    c.record("positive integer degrees", degrees.is_some(), || "a first-column entry is not a positive integer".into());
    if let Some(d) = &degrees {
        let sum: u128 = d.iter().map(|&x| (x as u128) * (x as u128)).sum();
        c.record("sum of squared degrees", sum == n, || format!("Σ d² = {sum}, |G| = {n}"));
    }

    let conj: Vec<Vec<Cyclo>> = table.values.iter().map(|row| row.iter().map(Cyclo::conj).collect()).collect();
    let sizes: Vec<Cyclo> = table.classes.iter().map(|k| Cyclo::from_rational(big(k.size))).collect();

    let mut row_failure = None;
    'rows: for i in 0..r {
        let weighted: Vec<Cyclo> = (0..r).map(|k| &table.values[i][k] * &sizes[k]).collect();
        for j in i..r {
            let s = (0..r).fold(Cyclo::zero(), |acc, k| &acc + &(&weighted[k] * &conj[j][k]));
            let expected = if i == j { Cyclo::from_rational(big(n)) } else { Cyclo::zero() };
            if s != expected {
                row_failure = Some(format!("rows {i}, {j} give {s}"));
                break 'rows;
            }
        }
    }
    c.record("row orthogonality", row_failure.is_none(), || row_failure.clone().unwrap_or_default());

    let mut col_failure = None;
    'cols: for k in 0..r {
        for l in k..r {
            let s = (0..r).fold(Cyclo::zero(), |acc, i| &acc + &(&table.values[i][k] * &conj[i][l]));
            let expected = if k == l { Cyclo::from_rational(big(table.classes[k].centralizer_order)) } else { Cyclo::zero() };
            if s != expected {
                col_failure = Some(format!("columns {k}, {l} give {s}"));
                break 'cols;
            }
        }
    }
    c.record("column orthogonality", col_failure.is_none(), || col_failure.clone().unwrap_or_default());

    let mut power_failure = None;
    for (&p, map) in &table.power_maps {
        for k in 0..r {
            let o = table.classes[k].element_order;
            let expected = if o.is_multiple_of(p) { o / p } else { o };
            if table.classes[map[k]].element_order != expected {
                power_failure = Some(format!("{p}-power of class {k} has the wrong element order"));
            } else if !o.is_multiple_of(p) {
                let ok = (0..table.values.len())
                    .all(|i| table.values[i][map[k]] == table.values[i][k].galois_unit(p));
                if !ok {
                    power_failure = Some(format!("values at the {p}-power of class {k} are not Galois images"));
                }
            }
            if power_failure.is_some() {
                break;
            }
        }
    }
    c.record("power maps", power_failure.is_none(), || power_failure.clone().unwrap_or_default());

    let rows: HashMap<&[Cyclo], usize> = table.values.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut galois_failure = None;
    'units: for u in unit_generators(table.exponent) {
        let column_map: Option<Vec<usize>> = (0..r).map(|k| table.galois_class(k, u)).collect();
        for (i, row) in table.values.iter().enumerate() {
            let image: Vec<Cyclo> = row.iter().map(|v| v.galois_unit(u)).collect();
            if !rows.contains_key(image.as_slice()) {
                galois_failure = Some(format!("σ_{u} of row {i} is not a row"));
                break 'units;
            }
            if let Some(map) = &column_map {
                if (0..r).any(|k| row[map[k]] != image[k]) {
                    galois_failure = Some(format!("σ_{u} of row {i} disagrees with the {u}-power map"));
                    break 'units;
                }
            }
        }
    }
    c.record("Galois consistency", galois_failure.is_none(), || galois_failure.clone().unwrap_or_default());

    VerificationReport { checks: c.checks, first_failure: c.first_failure }
}

fn big(n: u128) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests;

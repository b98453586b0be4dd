//! Tag-multiset comparison of `Irr^x(G)` with `Irr^x(Sub_G(x))`, and the claim registry.

mod claims;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chartab::{character_table_of, CharacterTable};
use crate::config::RunConfig;
use crate::cyclo::{character_field, local_field_tag, p_part, value_field, AbelianFieldTag, LocalFieldTag, PPart};
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, normalizer, ClassTable, Group, Permutation};
use crate::sylow::{subnormaliser, sylow};

pub use claims::{
    claim_ids, load_claim, reproduce_claim, ClaimOutcome, ClaimRecord, ClaimResult, ClaimStatus, ClassOutcome,
    ClassSelection, Expectation,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Degree `p`-parts and value fields.
    Basic,
    /// Additionally value `p`-parts and `p`-adic character fields.
    Plus,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s {
            "basic" => Ok(Level::Basic),
            "plus" => Ok(Level::Plus),
            _ => Err(Error::InvalidInput(format!("unknown level {s}"))),
        }
    }
}

/// The invariants of `χ` at `x` that a conforming bijection must preserve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CharTag {
    pub degree_p_part: PPart,
    pub value_field: AbelianFieldTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_p_part: Option<PPart>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_local_tag: Option<LocalFieldTag>,
}

impl CharTag {
    /// The same tag under the opposite sign convention for `p`-parts.
    pub fn flipped(&self) -> CharTag {
        CharTag {
            degree_p_part: self.degree_p_part.flipped(),
            value_p_part: self.value_p_part.as_ref().map(PPart::flipped),
            ..self.clone()
        }
    }

    /// The coarser tag compared at the basic level.
    pub fn basic(&self) -> CharTag {
        CharTag { value_p_part: None, char_local_tag: None, ..self.clone() }
    }
}

fn valuation(mut n: u64, p: u64) -> i64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Tag of row `row` of a verified table at class `k`.
pub fn char_tag(table: &CharacterTable, row: usize, k: usize, p: u64, level: Level) -> Result<CharTag> {
    if row >= table.num_characters() || k >= table.num_classes() {
        return Err(Error::InvalidInput(format!("row {row} or class {k} out of range")));
    }
    let value = &table.values[row][k];
    if value.is_zero() {
        return Err(Error::InvalidInput(format!("character {row} vanishes on class {k}")));
    }
    let degree = table
        .degrees()
        .ok_or_else(|| Error::InvalidInput("table has a non-integral degree".into()))?[row];
    let degree_p_part = PPart::integer(p, valuation(degree, p));
    let (value_p_part, char_local_tag) = match level {
        Level::Basic => (None, None),
        Level::Plus => (
            Some(p_part(value, p)?),
            Some(local_field_tag(&character_field(table.values[row].iter()), p)),
        ),
    };
    Ok(CharTag { degree_p_part, value_field: value_field(value), value_p_part, char_local_tag })
}

/// A group together with its classes and character table.
#[derive(Clone, Debug)]
pub struct TableContext {
    classes: ClassTable,
    table: CharacterTable,
}

fn at_stage<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::BoundExceeded { what, value, bound } => Error::BoundExceeded { what: format!("{stage}: {what}"), value, bound },
        other => other,
    })
}

impl TableContext {
    pub fn new(group: &Group, config: &RunConfig) -> Result<TableContext> {
        let classes = conjugacy_classes(group, config)?;
        let table = character_table_of(&classes, config)?;
        Ok(TableContext { classes, table })
    }

    pub fn group(&self) -> &Group {
        self.classes.group()
    }

    pub fn classes(&self) -> &ClassTable {
        &self.classes
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// The class of a member of the group.
    pub fn class_of(&self, x: &Permutation) -> Result<usize> {
        self.classes.class_of(x).ok_or_else(|| Error::NotMember(format!("{x}")))
    }

    /// Sorted tags of `Irr^x` for `x` in class `k`.
    pub fn tags(&self, k: usize, p: u64, level: Level) -> Result<Vec<CharTag>> {
        let mut tags: Vec<CharTag> =
            self.table.irr_x(k)?.into_iter().map(|i| char_tag(&self.table, i, k, p, level)).collect::<Result<_>>()?;
        tags.sort();
        Ok(tags)
    }

    /// Number of irreducible characters of degree prime to `p`.
    pub fn p_prime_degree_count(&self, p: u64) -> usize {
        self.table.p_prime_degree_rows(p).len()
    }
}

/// A tag whose multiplicity differs between the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub tag: CharTag,
    pub in_group: usize,
    pub in_subnormaliser: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub schema_version: u32,
    pub group: String,
    pub group_order: u128,
    pub p: u64,
    pub class: usize,
    pub class_in_subnormaliser: usize,
    pub element_order: u64,
    pub representative: Vec<u32>,
    pub subnormaliser_order: u128,
    pub picky: bool,
    pub level: Level,
    pub tags_group: Vec<CharTag>,
    pub tags_subnormaliser: Vec<CharTag>,
    pub verdict: bool,
    /// Verdict on the basic-level projection of the same tags.
    pub basic_verdict: bool,
    /// Verdict with every `p`-part taken under the opposite sign convention.
    pub verdict_flipped_convention: bool,
    pub witness: Option<Mismatch>,
}

fn counts(tags: &[CharTag]) -> BTreeMap<&CharTag, usize> {
    let mut m = BTreeMap::new();
    for t in tags {
        *m.entry(t).or_insert(0) += 1;
    }
    m
}

fn first_mismatch(a: &[CharTag], b: &[CharTag]) -> Option<Mismatch> {
    let (ca, cb) = (counts(a), counts(b));
    let mut keys: Vec<&CharTag> = ca.keys().chain(cb.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|t| {
        let (x, y) = (ca.get(t).copied().unwrap_or(0), cb.get(t).copied().unwrap_or(0));
        (x != y).then(|| Mismatch { tag: t.clone(), in_group: x, in_subnormaliser: y })
    })
}

fn same_multiset(a: &[CharTag], b: &[CharTag], f: impl Fn(&CharTag) -> CharTag) -> bool {
    let mut a: Vec<CharTag> = a.iter().map(&f).collect();
    let mut b: Vec<CharTag> = b.iter().map(&f).collect();
    a.sort();
    b.sort();
    a == b
}

/// Compares the tag multisets of `Irr^x(G)` and `Irr^x(Sub_G(x))`.
pub fn check_conjecture(group: &Group, p: u64, x: &Permutation, level: Level, config: &RunConfig) -> Result<ConjectureReport> {
    let ctx = at_stage("group table", TableContext::new(group, config))?;
    check_in_context(&ctx, "group", p, x, level, config)
}

/// [`check_conjecture`] reusing the classes and table of `G`.
pub fn check_in_context(
    ctx: &TableContext,
    group_id: &str,
    p: u64,
    x: &Permutation,
    level: Level,
    config: &RunConfig,
) -> Result<ConjectureReport> {
    let group = ctx.group();
    let class = ctx.class_of(x)?;
    let sub = at_stage("subnormaliser", subnormaliser(group, p, x, config))?;
    let sub_ctx;
    let sub_ctx_ref = if sub.subgroup.order() == group.order() {
        ctx
    } else {
        sub_ctx = at_stage("subnormaliser table", TableContext::new(&sub.subgroup, config))?;
        &sub_ctx
    };
    let class_in_sub = sub_ctx_ref.class_of(x)?;
    let tags_group = ctx.tags(class, p, level)?;
    let tags_sub = sub_ctx_ref.tags(class_in_sub, p, level)?;
    let verdict = tags_group == tags_sub;
    Ok(ConjectureReport {
        schema_version: SCHEMA_VERSION,
        group: group_id.to_string(),
        group_order: group.order(),
        p,
        class,
        class_in_subnormaliser: class_in_sub,
        element_order: x.order(),
        representative: x.images().to_vec(),
        subnormaliser_order: sub.subgroup.order(),
        picky: sub.is_picky,
        level,
        basic_verdict: same_multiset(&tags_group, &tags_sub, CharTag::basic),
        verdict_flipped_convention: same_multiset(&tags_group, &tags_sub, CharTag::flipped),
        witness: if verdict { None } else { first_mismatch(&tags_group, &tags_sub) },
        tags_group,
        tags_subnormaliser: tags_sub,
        verdict,
    })
}

/// `|Irr_{p'}(G)|` and `|Irr_{p'}(N_G(P))|`.
pub fn mckay_counts(ctx: &TableContext, p: u64, config: &RunConfig) -> Result<(usize, usize)> {
    let group = ctx.group();
    let sylow_p = sylow(group, p, config)?;
    let n = normalizer(group, &sylow_p, config)?;
    let local = if n.order() == group.order() { ctx.clone() } else { TableContext::new(&n, config)? };
    Ok((ctx.p_prime_degree_count(p), local.p_prime_degree_count(p)))
}

#[cfg(test)]
mod tests;

//! Executable claims: one JSON document per claim under `claims/` in the data directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{check_in_context, Level, TableContext, SCHEMA_VERSION};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ClassTable, Permutation};
use crate::sylow::{almost_normal, subnormaliser, sylow, sylows_containing};
use crate::zoo::{construct, data_dir, BuiltGroup};

/// Which elements a claim is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum ClassSelection {
    /// Every class of nontrivial `p`-elements.
    AllNontrivial,
    /// Classes of nontrivial `p`-elements with the given centralizer order.
    CentralizerOrder { value: u64 },
    /// Unipotent classes of a matrix group with the given Jordan block sizes.
    JordanType { blocks: Vec<usize> },
    /// A named element shipped with the matrix generators; no class enumeration needed.
    Named { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// `Sub_G(x) = G` for every selected `x`.
    SubnormaliserIsGroup,
    /// Every selected `x` lies in a unique Sylow `P` and `Sub_G(x) = N_G(P)`.
    Picky,
    /// Some selected class is picky with element order in `orders` (any order if empty);
    /// with `only`, every picky class has such an order.
    PickyExists {
        #[serde(default)]
        orders: Vec<u64>,
        #[serde(default)]
        only: bool,
    },
    /// `Sub_G(x) = G` for all `p`-elements, and whether the Sylow subgroup is normal.
    AlmostNormal { sylow_normal: bool },
    /// The tag multisets agree for every selected class.
    Conjecture { level: Level },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    /// Recipe or registry name of the group.
    pub group: String,
    pub prime: u64,
    pub select: ClassSelection,
    pub expect: Vec<Expectation>,
    /// Marks claims whose cost is well above the rest.
    #[serde(default)]
    pub stretch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped (bound)")]
    SkippedBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOutcome {
    /// Class index in the group's class table, when classes were enumerated.
    pub class: Option<usize>,
    pub representative: Vec<u32>,
    pub element_order: u64,
    pub centralizer_order: Option<u128>,
    pub sylows_containing: usize,
    pub subnormaliser_order: u128,
    pub normalizer_order: u128,
    pub picky: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjecture_verdict: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjecture_verdict_flipped_convention: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub expectation: Expectation,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub schema_version: u32,
    pub id: String,
    pub statement: String,
    pub group: String,
    pub prime: u64,
    pub stretch: bool,
    pub status: ClaimStatus,
    pub group_order: Option<u128>,
    pub classes: Vec<ClassOutcome>,
    pub outcomes: Vec<ClaimOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl ClaimResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serialises") + "\n"
    }

    /// Writes `<dir>/<id>.json` and returns its path.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.id));
        std::fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

fn claims_dir() -> PathBuf {
    data_dir().join("claims")
}

/// Ids of all shipped claims, sorted.
pub fn claim_ids() -> Result<Vec<String>> {
    let mut ids = Vec::new();
    for entry in std::fs::read_dir(claims_dir())? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                ids.push(stem.to_string());
            }
        }
    }
    ids.sort();
    Ok(ids)
}

pub fn load_claim(id: &str) -> Result<ClaimRecord> {
    let path = claims_dir().join(format!("{id}.json"));
    if !path.exists() {
        return Err(Error::InvalidInput(format!("unknown claim {id}")));
    }
    let record: ClaimRecord = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    if record.id != id {
        return Err(Error::InvalidInput(format!("claim file {id}.json declares id {}", record.id)));
    }
    if record.expect.is_empty() {
        return Err(Error::InvalidInput(format!("claim {id} has no expectations")));
    }
    Ok(record)
}

struct Selected {
    class: Option<usize>,
    centralizer_order: Option<u128>,
    x: Permutation,
}

fn select(built: &BuiltGroup, classes: Option<&ClassTable>, record: &ClaimRecord) -> Result<Vec<Selected>> {
    let p = record.prime;
    if let ClassSelection::Named { label } = &record.select {
        let x = built.named_element(label)?;
        if x.is_identity() || !x.is_p_element(p) {
            return Err(Error::NotPElement { p });
        }
        return Ok(vec![Selected { class: None, centralizer_order: None, x }]);
    }
    let classes = classes.expect("classes are enumerated for class selections");
    let mut out = Vec::new();
    for k in classes.p_element_classes(p) {
        let c = classes.class(k);
        let keep = match &record.select {
            ClassSelection::AllNontrivial => true,
            ClassSelection::CentralizerOrder { value } => c.centralizer_order == *value as u128,
            ClassSelection::JordanType { blocks } => {
                let module = built
                    .module
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput(format!("{} is not a matrix group", record.group)))?;
                module.unipotent_type(&c.representative)?.as_deref() == Some(blocks.as_slice())
            }
            ClassSelection::Named { .. } => unreachable!(),
        };
        if keep {
            out.push(Selected { class: Some(k), centralizer_order: Some(c.centralizer_order), x: c.representative.clone() });
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidInput(format!("claim {} selects no class", record.id)));
    }
    Ok(out)
}

fn run(record: &ClaimRecord, config: &RunConfig, result: &mut ClaimResult) -> Result<()> {
    let built = construct(&record.group, config)?;
    let group = &built.group;
    let p = record.prime;
    result.group_order = Some(group.order());
    let conjecture_level = record.expect.iter().find_map(|e| match e {
        Expectation::Conjecture { level } => Some(*level),
        _ => None,
    });
    let ctx = match conjecture_level {
        Some(_) => Some(TableContext::new(group, config)?),
        None => None,
    };
    let own_classes;
    let classes = match (&ctx, &record.select) {
        (Some(ctx), _) => Some(ctx.classes()),
        (None, ClassSelection::Named { .. }) => None,
        (None, _) => {
            own_classes = conjugacy_classes(group, config)?;
            Some(&own_classes)
        }
    };
    let selected = select(&built, classes, record)?;

    for s in &selected {
        let w = sylows_containing(group, p, &s.x, config)?;
        let sub = subnormaliser(group, p, &s.x, config)?;
        let picky = w.count_containing_x == 1;
        if picky != (sub.subgroup.order() == w.normalizer.order()) {
            return Err(Error::InternalInconsistency(format!("picky criteria disagree in claim {}", record.id)));
        }
        let (verdict, flipped) = match (&ctx, conjecture_level) {
            (Some(ctx), Some(level)) => {
                let r = check_in_context(ctx, &record.group, p, &s.x, level, config)?;
                (Some(r.verdict), Some(r.verdict_flipped_convention))
            }
            _ => (None, None),
        };
        result.classes.push(ClassOutcome {
            class: s.class,
            representative: s.x.images().to_vec(),
            element_order: s.x.order(),
            centralizer_order: s.centralizer_order,
            sylows_containing: w.count_containing_x,
            subnormaliser_order: sub.subgroup.order(),
            normalizer_order: w.normalizer.order(),
            picky,
            conjecture_verdict: verdict,
            conjecture_verdict_flipped_convention: flipped,
        });
    }

    for e in &record.expect {
        let rows = &result.classes;
        let (passed, detail) = match e {
            Expectation::SubnormaliserIsGroup => {
                let bad = rows.iter().filter(|r| r.subnormaliser_order != group.order()).count();
                (bad == 0, format!("{bad} of {} classes have a proper subnormaliser", rows.len()))
            }
            Expectation::Picky => {
                let bad = rows.iter().filter(|r| !r.picky).count();
                (bad == 0, format!("{bad} of {} classes are not picky", rows.len()))
            }
            Expectation::PickyExists { orders, only } => {
                let fits = |o: u64| orders.is_empty() || orders.contains(&o);
                let picky: Vec<u64> = rows.iter().filter(|r| r.picky).map(|r| r.element_order).collect();
                let some = picky.iter().any(|&o| fits(o));
                let all = picky.iter().all(|&o| fits(o));
                (some && (!only || all), format!("picky classes have element orders {picky:?}"))
            }
            Expectation::AlmostNormal { sylow_normal } => {
                let normal = sylow(group, p, config)?.is_normal_in(group);
                let almost = almost_normal(group, p, config)?;
                (
                    almost && normal == *sylow_normal,
                    format!("almost normal: {almost}, Sylow {p}-subgroup normal: {normal}"),
                )
            }
            Expectation::Conjecture { .. } => {
                let bad = rows.iter().filter(|r| r.conjecture_verdict != Some(true)).count();
                let flips = rows.iter().filter(|r| r.conjecture_verdict != r.conjecture_verdict_flipped_convention).count();
                (
                    bad == 0 && flips == 0,
                    format!("{bad} of {} classes fail; {flips} verdicts depend on the p-part convention", rows.len()),
                )
            }
        };
        result.outcomes.push(ClaimOutcome { expectation: e.clone(), passed, detail });
    }
    Ok(())
}

/// Runs a shipped claim. Bound violations yield status "skipped (bound)" rather than an error.
pub fn reproduce_claim(id: &str, config: &RunConfig) -> Result<ClaimResult> {
    let record = load_claim(id)?;
    let mut result = ClaimResult {
        schema_version: SCHEMA_VERSION,
        id: record.id.clone(),
        statement: record.statement.clone(),
        group: record.group.clone(),
        prime: record.prime,
        stretch: record.stretch,
        status: ClaimStatus::Fail,
        group_order: None,
        classes: Vec::new(),
        outcomes: Vec::new(),
        skipped: None,
    };
    match run(&record, config, &mut result) {
        Ok(()) => {
            result.status =
                if result.outcomes.iter().all(|o| o.passed) { ClaimStatus::Pass } else { ClaimStatus::Fail };
        }
        Err(e) if e.is_bound() => {
            result.status = ClaimStatus::SkippedBound;
            result.classes.clear();
            result.outcomes.clear();
            result.skipped = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(result)
}

//! A fixed corpus of small groups used by cross-checks and examples.

use super::recipe::construct;
use crate::config::RunConfig;
use crate::error::Result;
use crate::perm::Group;

/// Recipes of the corpus, every group of order at most 2000.
pub const CORPUS: &[&str] = &[
    "S3",
    "S4",
    "S5",
    "A4",
    "A5",
    "A6",
    "C6",
    "D8",
    "D10",
    "D12",
    "D16",
    "SL(2,3)",
    "GL(2,3)",
    "SL(2,5)",
    "PSL(2,7)",
    "SL(2,7)",
    "S3 x C2",
    "S3 x S3",
    "A4 x C3",
    "A5 x C2",
    "S4 x S3",
    "C3 wr C2",
    "C2 wr S3",
    "S3 wr C2",
    "D8 x C3",
];

/// The corpus groups with their recipes, in the order of [`CORPUS`].
pub fn corpus(config: &RunConfig) -> Result<Vec<(String, Group)>> {
    CORPUS.iter().map(|r| Ok((r.to_string(), construct(r, config)?.group))).collect()
}

//! The permutation-generator document: degree, image arrays, provenance, optional expected order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::group::Group;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u128>,
}

impl GeneratorFile {
    pub fn from_group(group: &Group, provenance: impl Into<String>) -> GeneratorFile {
        GeneratorFile {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.images().to_vec()).collect(),
            provenance: provenance.into(),
            expected_order: Some(group.order()),
        }
    }

    /// Builds the group and checks the expected order when one is given.
    pub fn build(&self) -> Result<Group> {
        let group = Group::from_image_arrays(&self.generators, self.degree)?;
        if let Some(expected) = self.expected_order {
            if group.order() != expected {
                return Err(Error::Verification(format!(
                    "generators produce order {} but the document expects {expected}",
                    group.order()
                )));
            }
        }
        Ok(group)
    }

    pub fn parse(text: &str) -> Result<GeneratorFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn load(path: &Path) -> Result<GeneratorFile> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

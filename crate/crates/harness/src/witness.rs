//! Replayable counterexamples.

use promrep_core::workspace::{render_json, Workspace, WorkspaceFile};
use promrep_core::PowersetCap;
use serde::{Deserialize, Serialize};

use crate::check::{check_law, Failure};
use crate::error::HarnessError;
use crate::instance::Instance;
use crate::laws::LawId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exhaustive {
    Exhaustive,
}

/// Where a witness came from: the trial seed that generated it, or the
/// exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessSeed {
    Trial(u64),
    Exhaustive(Exhaustive),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub law: String,
    pub seed: WitnessSeed,
    pub violation: Failure,
    pub structures: WorkspaceFile,
}

impl Witness {
    pub fn new(law: LawId, seed: WitnessSeed, violation: Failure, instance: &Instance) -> Result<Self, HarnessError> {
        Ok(Witness {
            law: law.name().to_string(),
            seed,
            violation,
            structures: instance.to_workspace()?.into_file(),
        })
    }

    pub fn to_json(&self) -> String {
        render_json(&serde_json::to_value(self).expect("witnesses serialize"))
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Witness(e.to_string()))
    }

    pub fn law(&self) -> Result<LawId, HarnessError> {
        self.law.parse()
    }

    pub fn instance(&self) -> Result<Instance, HarnessError> {
        let ws = Workspace::from_file(self.structures.clone())?;
        Instance::from_workspace(self.law()?.kind(), &ws)
    }

    /// Re-runs the law on the stored structures; `Some` when it still fails.
    pub fn replay(&self, cap: PowersetCap) -> Result<Option<Failure>, HarnessError> {
        Ok(check_law(self.law()?, &self.instance()?, cap)?.failure)
    }
}

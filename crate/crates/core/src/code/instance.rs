use serde::{Deserialize, Serialize};

use super::assignment::{Assignment, Stage};
use super::base::BaseCode;
use super::scheme::CouplingScheme;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const SCHEMA_VERSION: u32 = 1;

/// A fully specified QC-SC code: base, scheme, partition and lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeInstance {
    base: BaseCode,
    scheme: CouplingScheme,
    partition: Assignment,
    lift: Assignment,
    seed: Option<u64>,
}

impl CodeInstance {
    pub fn new(
        base: BaseCode,
        scheme: CouplingScheme,
        partition: Assignment,
        lift: Assignment,
        seed: Option<u64>,
    ) -> Result<Self> {
        if partition.stage() != Stage::Partition || lift.stage() != Stage::Lift {
            return Err(Error::InvalidAssignment("assignment stages are swapped".into()));
        }
        partition.validate(&base, &scheme)?;
        lift.validate(&base, &scheme)?;
        Ok(CodeInstance {
            base,
            scheme,
            partition,
            lift,
            seed,
        })
    }

    pub fn base(&self) -> &BaseCode {
        &self.base
    }

    pub fn scheme(&self) -> &CouplingScheme {
        &self.scheme
    }

    pub fn partition(&self) -> &Assignment {
        &self.partition
    }

    pub fn lift(&self) -> &Assignment {
        &self.lift
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tool_version: Option<String>,
    gamma: usize,
    kappa: usize,
    mask: Vec<Vec<u8>>,
    pattern: Vec<i64>,
    probs: Vec<String>,
    #[serde(rename = "L")]
    coupling_length: usize,
    #[serde(rename = "Z")]
    lifting_degree: u64,
    partition: Vec<Vec<Option<i64>>>,
    lift: Vec<Vec<Option<i64>>>,
    seed: Option<u64>,
}

pub fn export_instance_json(instance: &CodeInstance) -> String {
    export_instance_json_tagged(instance, None)
}

/// Same as [`export_instance_json`] with a `tool_version` stamp.
pub fn export_instance_json_tagged(instance: &CodeInstance, tool_version: Option<&str>) -> String {
    let base = &instance.base;
    let doc = InstanceJson {
        version: SCHEMA_VERSION,
        tool_version: tool_version.map(str::to_owned),
        gamma: base.gamma(),
        kappa: base.kappa(),
        mask: base
            .mask()
            .iter()
            .map(|r| r.iter().map(|&b| b as u8).collect())
            .collect(),
        pattern: instance.scheme.pattern().to_vec(),
        probs: instance.scheme.probs().iter().map(rational::format).collect(),
        coupling_length: instance.scheme.coupling_length(),
        lifting_degree: instance.scheme.lifting_degree(),
        partition: instance.partition.grid().to_vec(),
        lift: instance.lift.grid().to_vec(),
        seed: instance.seed,
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes") + "\n"
}

pub fn import_instance_json(text: &str) -> Result<CodeInstance> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let version = value
        .get("version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::Json("missing version field".into()))?;
    if version != SCHEMA_VERSION as u64 {
        return Err(Error::SchemaVersion {
            found: version as u32,
            expected: SCHEMA_VERSION,
        });
    }
    let doc: InstanceJson = serde_json::from_value(value)?;
    let base = BaseCode::from_mask(doc.mask.iter().map(|r| r.iter().map(|&v| v != 0).collect()).collect())?;
    if base.gamma() != doc.gamma || base.kappa() != doc.kappa {
        return Err(Error::DimensionMismatch("mask disagrees with gamma/kappa".into()));
    }
    let probs = doc
        .probs
        .iter()
        .map(|p| rational::parse(p))
        .collect::<Result<Vec<Rational>>>()?;
    let scheme = CouplingScheme::new(doc.pattern, probs, doc.coupling_length, doc.lifting_degree)?;
    CodeInstance::new(
        base,
        scheme,
        Assignment::from_grid(Stage::Partition, doc.partition),
        Assignment::from_grid(Stage::Lift, doc.lift),
        doc.seed,
    )
}

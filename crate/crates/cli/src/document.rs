use std::path::Path;

use carleson::{Complex64, PointSequence};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub points: Vec<PointRecord>,
}

impl PointSetDocument {
    pub fn from_sequence(seq: &PointSequence) -> Self {
        PointSetDocument {
            schema_version: SCHEMA_VERSION,
            label: seq.label().map(str::to_owned),
            points: seq
                .values()
                .into_iter()
                .map(|z| PointRecord { re: z.re, im: z.im })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: PointSetDocument = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_sequence(&self) -> CliResult<PointSequence> {
        let values: Vec<Complex64> = self.points.iter().map(|p| Complex64::new(p.re, p.im)).collect();
        PointSequence::from_complex(&values, self.label.clone()).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }
}

pub fn load(path: &Path) -> CliResult<PointSequence> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    PointSetDocument::parse(&text)?.to_sequence()
}

pub fn save(path: &Path, seq: &PointSequence) -> CliResult<()> {
    std::fs::write(path, PointSetDocument::from_sequence(seq).to_json()).map_err(|e| CliError::io(path, e))
}

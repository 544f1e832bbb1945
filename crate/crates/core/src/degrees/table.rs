use super::{parse_product, CuspidalDatum, DegreeError};
use serde::{Deserialize, Serialize};

pub const TABLE_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("degrees.toml");

/// One cuspidal unipotent type; orders and degrees are token products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeEntry {
    pub label: String,
    pub quotient_order: String,
    pub dim: i64,
    pub degree: String,
    pub omega: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeTable {
    pub version: u32,
    #[serde(default, rename = "entry")]
    pub entries: Vec<DegreeEntry>,
}

impl DegreeEntry {
    pub fn datum(&self) -> Result<CuspidalDatum, DegreeError> {
        let c = CuspidalDatum {
            quotient_order: parse_product(&self.quotient_order)?,
            quotient_dim: self.dim,
            deg_sigma: parse_product(&self.degree)?,
            omega_p: self.omega,
        };
        c.validate()?;
        Ok(c)
    }
}

impl DegreeTable {
    pub fn parse(text: &str) -> Result<Self, DegreeError> {
        let t: DegreeTable = toml::from_str(text).map_err(|e| DegreeError::Parse("degree table".into(), e.to_string()))?;
        if t.version != TABLE_VERSION {
            return Err(DegreeError::Invalid(format!("unsupported degree table version {}", t.version)));
        }
        for e in &t.entries {
            e.datum()?;
        }
        Ok(t)
    }

    pub fn get(&self, label: &str) -> Option<&DegreeEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn merge(&mut self, other: DegreeTable) {
        for e in other.entries {
            self.entries.retain(|x| x.label != e.label);
            self.entries.push(e);
        }
    }
}

pub fn builtin_table() -> DegreeTable {
    DegreeTable::parse(BUILTIN).expect("bundled degree table parses")
}

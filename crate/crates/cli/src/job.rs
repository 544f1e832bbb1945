//! Jobfile format: named `[algebra.*]`, `[param.*]`, `[point.*]` and
//! `[map.*]` sections plus a `[job]` section selecting the inputs.

use hecke_core::exactalg::{qser, FactoredFunction, TorusPoint, Q};
use hecke_core::langlands::UnramifiedParam;
use hecke_core::lattice::IMat;
use hecke_core::rootdata::{preset, RootDatumSection};
use hecke_core::spectral::{lattice_index, HeckeSpec, Qw0Convention};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("{0}")]
    Parse(String),
    #[error("[{section}]: {message}")]
    Section { section: String, message: String },
    #[error("unknown reference {kind} {name:?}")]
    Missing { kind: &'static str, name: String },
}

fn section_err(section: &str, e: impl ToString) -> JobError {
    JobError::Section { section: section.to_string(), message: e.to_string() }
}

/// How `d` is chosen for an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    Iwahori,
    Explicit(FactoredFunction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSection {
    pub datum: RootDatumSection,
    pub d: Normalization,
    pub omega: Option<i64>,
    pub convention: Qw0Convention,
}

impl AlgebraSection {
    fn from_table(name: &str, mut t: toml::Table) -> Result<Self, JobError> {
        let sec = format!("algebra.{name}");
        let d = match t.remove("d") {
            None => Normalization::Iwahori,
            Some(toml::Value::String(s)) if s == "iwahori" => Normalization::Iwahori,
            Some(toml::Value::String(s)) => Normalization::Explicit(s.parse().map_err(|e| section_err(&sec, e))?),
            Some(_) => return Err(section_err(&sec, "d must be a string")),
        };
        let omega = match t.remove("omega") {
            None => None,
            Some(toml::Value::Integer(n)) => Some(n),
            Some(_) => return Err(section_err(&sec, "omega must be an integer")),
        };
        let convention = match t.remove("convention") {
            None => Qw0Convention::default(),
            Some(v) => v.try_into().map_err(|e| section_err(&sec, e))?,
        };
        let datum: RootDatumSection = t.try_into().map_err(|e| section_err(&sec, e))?;
        Ok(AlgebraSection { datum, d, omega, convention })
    }

    pub fn to_table(&self) -> toml::Table {
        let mut t = toml::Table::try_from(&self.datum).expect("serializable");
        if let Normalization::Explicit(f) = &self.d {
            t.insert("d".into(), toml::Value::String(f.to_string()));
        }
        if let Some(o) = self.omega {
            t.insert("omega".into(), toml::Value::Integer(o));
        }
        if self.convention != Qw0Convention::default() {
            t.insert("convention".into(), toml::Value::try_from(self.convention).expect("serializable"));
        }
        t
    }

    pub fn build(&self) -> Result<HeckeSpec, String> {
        let (rd, params) = self.datum.build().map_err(|e| e.to_string())?;
        let base = HeckeSpec::iwahori(rd.clone()).map_err(|e| e.to_string())?;
        let d = match &self.d {
            Normalization::Iwahori => base.d().clone(),
            Normalization::Explicit(f) => f.clone(),
        };
        let omega = self.omega.unwrap_or_else(|| lattice_index(&rd));
        HeckeSpec::with_convention(rd, params, d, omega, self.convention).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSection {
    pub dual: String,
    #[serde(with = "qser::vec")]
    pub s: Vec<Q>,
    pub h: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<usize>>,
}

impl ParamSection {
    pub fn build(&self) -> Result<UnramifiedParam, String> {
        let rd = preset(&self.dual).map_err(|e| e.to_string())?;
        let p = UnramifiedParam::new(rd, self.s.clone(), self.h.clone()).map_err(|e| e.to_string())?;
        match &self.levi {
            Some(l) => p.with_levi(l.clone()).map_err(|e| e.to_string()),
            None => Ok(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSection {
    #[serde(with = "qser::vec")]
    pub s: Vec<Q>,
    #[serde(with = "qser::vec")]
    pub y: Vec<Q>,
    /// Simple roots cutting out the coset; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<Vec<usize>>,
}

impl PointSection {
    pub fn point(&self) -> Result<TorusPoint, String> {
        if self.s.len() != self.y.len() {
            return Err("s and y differ in length".into());
        }
        Ok(TorusPoint::new(self.s.clone(), self.y.clone()))
    }
}

/// A map into a residual coset of the target, either an enumerated one
/// (`residual`, index into the enumeration) or `point` with `parabolic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<IMat>,
    #[serde(default, with = "qser::vec", skip_serializing_if = "Vec::is_empty")]
    pub twist: Vec<Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_h: Option<String>,
    /// Label in the degree table for the cuspidal formal degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cuspidal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_table: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobSpec {
    pub algebras: BTreeMap<String, AlgebraSection>,
    pub params: BTreeMap<String, ParamSection>,
    pub points: BTreeMap<String, PointSection>,
    pub maps: BTreeMap<String, MapSection>,
    pub job: JobSection,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    #[serde(default)]
    algebra: BTreeMap<String, toml::Table>,
    #[serde(default)]
    param: BTreeMap<String, ParamSection>,
    #[serde(default)]
    point: BTreeMap<String, PointSection>,
    #[serde(default)]
    map: BTreeMap<String, MapSection>,
    #[serde(default)]
    job: JobSection,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self, JobError> {
        let raw: RawJob = toml::from_str(text).map_err(|e| JobError::Parse(e.to_string()))?;
        let mut algebras = BTreeMap::new();
        for (name, t) in raw.algebra {
            let a = AlgebraSection::from_table(&name, t)?;
            algebras.insert(name, a);
        }
        let spec = JobSpec { algebras, params: raw.param, points: raw.point, maps: raw.map, job: raw.job };
        spec.check_references()?;
        Ok(spec)
    }

    fn check_references(&self) -> Result<(), JobError> {
        let need = |kind: &'static str, name: &Option<String>, ok: bool| match name {
            Some(n) if !ok => Err(JobError::Missing { kind, name: n.clone() }),
            _ => Ok(()),
        };
        let j = &self.job;
        let has_alg = |n: &Option<String>| n.as_ref().is_none_or(|n| self.algebras.contains_key(n));
        let has_map = |n: &Option<String>| n.as_ref().is_none_or(|n| self.maps.contains_key(n));
        need("algebra", &j.algebra, has_alg(&j.algebra))?;
        need("algebra", &j.source, has_alg(&j.source))?;
        need("algebra", &j.target, has_alg(&j.target))?;
        need("param", &j.param, j.param.as_ref().is_none_or(|n| self.params.contains_key(n)))?;
        need("point", &j.point, j.point.as_ref().is_none_or(|n| self.points.contains_key(n)))?;
        need("map", &j.map, has_map(&j.map))?;
        need("map", &j.outer, has_map(&j.outer))?;
        need("map", &j.inner, has_map(&j.inner))?;
        for m in self.maps.values() {
            need("algebra", &Some(m.source.clone()), self.algebras.contains_key(&m.source))?;
            need("algebra", &Some(m.target.clone()), self.algebras.contains_key(&m.target))?;
            need("point", &m.point, m.point.as_ref().is_none_or(|n| self.points.contains_key(n)))?;
        }
        Ok(())
    }

    /// Re-emit the jobfile; parsing the result gives back an equal spec.
    pub fn to_toml(&self) -> String {
        let mut root = toml::Table::new();
        let mut alg = toml::Table::new();
        for (n, a) in &self.algebras {
            alg.insert(n.clone(), toml::Value::Table(a.to_table()));
        }
        let put = |root: &mut toml::Table, key: &str, v: toml::Value| {
            if v.as_table().is_some_and(|t| !t.is_empty()) {
                root.insert(key.into(), v);
            }
        };
        put(&mut root, "algebra", toml::Value::Table(alg));
        put(&mut root, "param", toml::Value::try_from(&self.params).expect("serializable"));
        put(&mut root, "point", toml::Value::try_from(&self.points).expect("serializable"));
        put(&mut root, "map", toml::Value::try_from(&self.maps).expect("serializable"));
        put(&mut root, "job", toml::Value::try_from(&self.job).expect("serializable"));
        toml::to_string(&root).expect("serializable")
    }
}

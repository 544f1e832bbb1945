use super::{preset, HeckeParams, RootDataError, RootDatum};
use crate::exactalg::{qser, Q};
use crate::lattice::IMat;
use serde::{Deserialize, Serialize};

/// Declarative description of a root datum with parameters. Either `preset`
/// or the explicit lists must be given; parameters are listed per simple root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<IMat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coroots: Option<IMat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<IMat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<Vec<usize>>,
    #[serde(with = "qser::vec")]
    pub k_plus: Vec<Q>,
    #[serde(with = "qser::vec", default)]
    pub k_minus: Vec<Q>,
}

impl RootDatumSection {
    pub fn build(&self) -> Result<(RootDatum, HeckeParams), RootDataError> {
        let rd = match &self.preset {
            Some(name) => {
                if self.roots.is_some() || self.coroots.is_some() || self.simple.is_some() || self.rank.is_some() {
                    return Err(RootDataError::Invalid("give either a preset or explicit lists, not both".into()));
                }
                preset(name)?
            }
            None => {
                let missing = |f: &str| RootDataError::Invalid(format!("missing field {f}"));
                RootDatum::new(
                    self.rank.ok_or_else(|| missing("rank"))?,
                    self.roots.clone().ok_or_else(|| missing("roots"))?,
                    self.coroots.clone().ok_or_else(|| missing("coroots"))?,
                    self.pairing.clone(),
                    self.simple.clone().ok_or_else(|| missing("simple"))?,
                )?
            }
        };
        let km = if self.k_minus.is_empty() { vec![Q::from(0); self.k_plus.len()] } else { self.k_minus.clone() };
        let params = if self.k_plus.len() == 1 && rd.simple().len() > 1 && km.iter().all(|k| *k == Q::from(0)) {
            HeckeParams::equal(&rd, self.k_plus[0])
        } else {
            HeckeParams::from_simple(&rd, &self.k_plus, &km)?
        };
        Ok((rd, params))
    }

    /// Explicit section describing `rd` and `params`.
    pub fn explicit(rd: &RootDatum, params: &HeckeParams) -> Self {
        let (kp, km) = params.simple_values(rd);
        RootDatumSection {
            preset: None,
            rank: Some(rd.rank()),
            roots: Some(rd.roots().to_vec()),
            coroots: Some(rd.coroots().to_vec()),
            pairing: None,
            simple: Some(rd.simple().to_vec()),
            k_plus: kp,
            k_minus: km,
        }
    }
}

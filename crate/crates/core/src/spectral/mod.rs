//! Plancherel data of a normalized affine Hecke algebra: c-functions, the
//! mu-function, residual cosets and their residues.

mod residual;
mod residue;

pub use residual::{
    coset_candidates, enumerate_residual_cosets, enumerate_residual_points, is_residual, orbit_key,
    pole_zero_counts, Certificate, OrbitKey, ResidualCoset, MAX_ENUM_RANK,
};
pub use residue::{formal_degree, formal_degree_magnitude, m_coset, m_r, mu_l, scale_point};

use crate::exactalg::{bigi, AlgError, FactoredFunction, Unit, Q};
use crate::lattice::smith;
use crate::rootdata::{poincare_q, weyl_group, HeckeParams, RootDataError, RootDatum, WeylGroup, DEFAULT_WEYL_BOUND};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("invalid normalization: {0}")]
    InvalidNormalization(String),
    #[error("coset is not residual (pole order {order}, codimension {codim})")]
    NotResidual { order: i64, codim: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("rank {0} exceeds the enumeration limit")]
    RankTooLarge(usize),
    #[error("search space of {0} candidates is too large")]
    SearchSpaceTooLarge(u128),
    #[error("Poincare polynomial does not split into cyclotomic factors")]
    NotFactorable,
}

/// Meaning of `q(w_0)` in the normalization `d / q(w_0)` of the mu-function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Qw0Convention {
    /// `q(w_0) = prod_{alpha > 0} q_alpha^+ q_alpha^-`, a power of `v`.
    #[default]
    LongestElement,
    /// The Poincare polynomial `sum_w q(w)`.
    PoincareSum,
}

/// A normalized affine Hecke algebra, seen through its spectral data.
#[derive(Clone, Debug)]
pub struct HeckeSpec {
    rd: RootDatum,
    params: HeckeParams,
    d: FactoredFunction,
    omega_order: i64,
    convention: Qw0Convention,
    weyl: Arc<WeylGroup>,
    q_w0: FactoredFunction,
    inv_c: FactoredFunction,
}

impl PartialEq for HeckeSpec {
    fn eq(&self, o: &Self) -> bool {
        self.rd == o.rd
            && self.params == o.params
            && self.d == o.d
            && self.omega_order == o.omega_order
            && self.convention == o.convention
    }
}

impl HeckeSpec {
    pub fn new(rd: RootDatum, params: HeckeParams, d: FactoredFunction, omega_order: i64) -> Result<Self, SpectralError> {
        Self::with_convention(rd, params, d, omega_order, Qw0Convention::default())
    }

    pub fn with_convention(
        rd: RootDatum,
        params: HeckeParams,
        d: FactoredFunction,
        omega_order: i64,
        convention: Qw0Convention,
    ) -> Result<Self, SpectralError> {
        params.validate(&rd)?;
        let bad = |m: &str| Err(SpectralError::InvalidNormalization(m.into()));
        if d.is_zero() {
            return bad("d is zero");
        }
        if !d.is_v_only() {
            return bad("d depends on theta");
        }
        match d.numeric(2.0) {
            Ok(z) if z.re > 0.0 && z.im.abs() <= 1e-9 * z.re => {}
            _ => return bad("d is not positive at v = 2"),
        }
        if omega_order <= 0 {
            return bad("omega order must be positive");
        }
        let weyl = Arc::new(weyl_group(&rd, DEFAULT_WEYL_BOUND)?);
        let q_w0 = match convention {
            Qw0Convention::LongestElement => {
                let k: Q = rd.positive_roots().iter().map(|&i| params.reflection_exponent(i)).sum();
                FactoredFunction::v_power(k)
            }
            Qw0Convention::PoincareSum => poincare_q(&rd, &params, DEFAULT_WEYL_BOUND)?
                .to_factored()
                .ok_or(SpectralError::NotFactorable)?,
        };
        let mut inv_c = FactoredFunction::one();
        for i in 0..rd.num_roots() {
            inv_c = inv_c.div(&c_function_raw(&rd, &params, i)?)?;
        }
        Ok(HeckeSpec { rd, params, d, omega_order, convention, weyl, q_w0, inv_c })
    }

    /// Iwahori-spherical algebra with `q = v^2` on every root, `d = 1/Vol(I)`
    /// where `Vol(I) = v^(-n) (v^2 - 1)^n`, and `omega = [X : Z roots]`
    /// (torsion part when the datum is not semisimple).
    pub fn iwahori(rd: RootDatum) -> Result<Self, SpectralError> {
        let n = rd.rank() as i64;
        let params = HeckeParams::equal(&rd, Q::from(2));
        let vol = FactoredFunction::v_power(Q::from(-n))
            .mul(&FactoredFunction::factor(Q::zero(), Q::from(2), Vec::new()).pow(n)?)?
            .scale(&bigi(if n % 2 == 0 { 1 } else { -1 }))?;
        let d = vol.inv()?;
        let omega = lattice_index(&rd);
        Self::new(rd, params, d, omega)
    }

    /// Rank-zero algebra with trace normalization `d`.
    pub fn rank_zero(d: FactoredFunction) -> Result<Self, SpectralError> {
        let rd = RootDatum::torus(0);
        let params = HeckeParams::equal(&rd, Q::zero());
        Self::new(rd, params, d, 1)
    }

    pub fn rd(&self) -> &RootDatum {
        &self.rd
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn d(&self) -> &FactoredFunction {
        &self.d
    }

    pub fn omega_order(&self) -> i64 {
        self.omega_order
    }

    pub fn convention(&self) -> Qw0Convention {
        self.convention
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn q_w0(&self) -> &FactoredFunction {
        &self.q_w0
    }

    /// `d / q(w_0)`.
    pub fn prefactor(&self) -> FactoredFunction {
        self.d.div(&self.q_w0).expect("v-only")
    }

    /// `prod over all roots of 1 / c_alpha`.
    pub fn inverse_c_product(&self) -> &FactoredFunction {
        &self.inv_c
    }

    pub fn c_function(&self, alpha: &[i64]) -> Result<FactoredFunction, SpectralError> {
        let i = self.rd.root_index(alpha).ok_or_else(|| RootDataError::NotARoot(alpha.to_vec()))?;
        c_function_raw(&self.rd, &self.params, i)
    }

    /// `mu = d / q(w_0) * prod_alpha 1 / c_alpha`.
    pub fn mu(&self) -> FactoredFunction {
        self.prefactor().mul(&self.inv_c).expect("same lattice")
    }

    /// Same algebra with parameters and normalization in `v^eps`.
    pub fn scale(&self, eps: Q) -> Result<Self, SpectralError> {
        Self::with_convention(
            self.rd.clone(),
            self.params.scale(eps),
            self.d.substitute_v_power(eps)?,
            self.omega_order,
            self.convention,
        )
    }

    pub fn with_d(&self, d: FactoredFunction) -> Result<Self, SpectralError> {
        Self::with_convention(self.rd.clone(), self.params.clone(), d, self.omega_order, self.convention)
    }

    pub fn with_omega_order(&self, omega_order: i64) -> Result<Self, SpectralError> {
        Self::with_convention(self.rd.clone(), self.params.clone(), self.d.clone(), omega_order, self.convention)
    }

    pub fn with_q_w0_convention(&self, convention: Qw0Convention) -> Result<Self, SpectralError> {
        Self::with_convention(self.rd.clone(), self.params.clone(), self.d.clone(), self.omega_order, convention)
    }
}

/// `c_alpha = (1 - theta_{-2 alpha})^-1 (1 + theta_{-alpha} / q^-) (1 - theta_{-alpha} / q^+)`.
fn c_function_raw(rd: &RootDatum, params: &HeckeParams, i: usize) -> Result<FactoredFunction, SpectralError> {
    let neg: Vec<i64> = rd.root(i).iter().map(|a| -a).collect();
    let neg2: Vec<i64> = neg.iter().map(|a| 2 * a).collect();
    Ok(FactoredFunction::from_raw(
        Unit::one(),
        vec![
            (Q::zero(), Q::zero(), neg2, -1),
            (Q::new(1, 2), -params.k_minus(i), neg.clone(), 1),
            (Q::zero(), -params.k_plus(i), neg, 1),
        ],
    )?)
}

/// Order of the torsion of `X / Z roots`; the index itself when finite.
pub fn lattice_index(rd: &RootDatum) -> i64 {
    let simple: Vec<Vec<i64>> = rd.simple().iter().map(|&s| rd.root(s).to_vec()).collect();
    if simple.is_empty() {
        return 1;
    }
    smith(&simple, rd.rank()).d.iter().filter(|&&x| x != 0).map(|x| x.abs()).product()
}

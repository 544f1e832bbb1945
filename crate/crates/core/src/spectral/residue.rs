use super::residual::coset_pullback;
use super::{HeckeSpec, ResidualCoset, SpectralError};
use crate::exactalg::{FactoredFunction, TorusPoint, Q};
use num_rational::BigRational;

/// Regularized value of `prod_alpha 1 / c_alpha` at `r`: the residue
/// `m_r` when the omitted factors have net pole order `rank`, zero otherwise.
pub fn m_r(spec: &HeckeSpec, r: &TorusPoint) -> Result<FactoredFunction, SpectralError> {
    let all: Vec<usize> = (0..spec.rd().simple().len()).collect();
    if all.len() < spec.rank() {
        return Ok(FactoredFunction::Zero);
    }
    m_coset(spec, &all, r)
}

/// The residue of `prod 1 / c_alpha` along `r T^L`, as a function on `T^L`
/// (zero when the net omitted pole order differs from the codimension).
pub fn m_coset(spec: &HeckeSpec, subset: &[usize], r: &TorusPoint) -> Result<FactoredFunction, SpectralError> {
    let (reg, codim) = coset_pullback(spec, subset, r)?;
    if reg.pole_order() != codim as i64 {
        return Ok(FactoredFunction::Zero);
    }
    Ok(reg.value)
}

/// `mu^L`: `d / q(w_0)` times the residue of `prod 1 / c_alpha` along the
/// coset, in the coordinates of `T^L`. Rational constants are not tracked.
pub fn mu_l(spec: &HeckeSpec, coset: &ResidualCoset) -> Result<FactoredFunction, SpectralError> {
    let (reg, codim) = coset_pullback(spec, &coset.parabolic, &coset.r_l)?;
    if reg.pole_order() != codim as i64 {
        return Err(SpectralError::NotResidual { order: reg.pole_order(), codim });
    }
    Ok(spec.prefactor().mul(&reg.value)?)
}

/// `d_H * d / (q(w_0) |Omega|) * m_r`, signed.
pub fn formal_degree(spec: &HeckeSpec, r: &TorusPoint, d_h: &BigRational) -> Result<FactoredFunction, SpectralError> {
    let m = m_r(spec, r)?;
    if m.is_zero() {
        let (reg, codim) = coset_pullback(spec, &(0..spec.rd().simple().len()).collect::<Vec<_>>(), r)?;
        return Err(SpectralError::NotResidual { order: reg.pole_order(), codim });
    }
    let c = d_h / BigRational::from_integer(spec.omega_order().into());
    Ok(spec.prefactor().mul(&m)?.scale(&c)?)
}

/// [`formal_degree`] with sign and phase removed.
pub fn formal_degree_magnitude(spec: &HeckeSpec, r: &TorusPoint, d_h: &BigRational) -> Result<FactoredFunction, SpectralError> {
    Ok(formal_degree(spec, r, d_h)?.positive_part())
}

/// `y -> eps y`, phases unchanged.
pub fn scale_point(r: &TorusPoint, eps: Q) -> TorusPoint {
    TorusPoint::new(r.s.clone(), r.y.iter().map(|y| *y * eps).collect())
}

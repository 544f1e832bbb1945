use super::{AlgError, FactoredFunction, Q};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;

fn qf(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn char_value(x: &[i64], theta: &[Complex64]) -> Complex64 {
    x.iter().zip(theta).fold(Complex64::new(1.0, 0.0), |acc, (a, t)| acc * t.powi(*a as i32))
}

impl FactoredFunction {
    /// Floating point value at real `v = v0`; only for functions without `theta`.
    pub fn numeric(&self, v0: f64) -> Result<Complex64, AlgError> {
        if !self.is_v_only() {
            return Err(AlgError::NotVOnly);
        }
        self.numeric_at(v0, &[])
    }

    /// Floating point value at `v = v0` and `theta[e_i] = theta[i]`.
    pub fn numeric_at(&self, v0: f64, theta: &[Complex64]) -> Result<Complex64, AlgError> {
        let Some(p) = self.product() else { return Ok(Complex64::new(0.0, 0.0)) };
        if let Some(n) = self.rank() {
            if n != theta.len() {
                return Err(AlgError::ShapeMismatch);
            }
        }
        let u = p.unit();
        let mag = u.mag.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::from_polar(mag, TAU * qf(&u.phase)) * v0.powf(qf(&u.v_exp));
        acc *= char_value(&u.x, theta);
        for (f, m) in p.factors() {
            let z = Complex64::from_polar(v0.powf(qf(&f.v_exp)), TAU * qf(&f.phase)) * char_value(&f.x, theta);
            acc *= (Complex64::new(1.0, 0.0) - z).powi(*m as i32);
        }
        Ok(acc)
    }
}

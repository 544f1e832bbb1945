use super::unit::big_from_i;
use super::{frac, is_zero_vec, AlgError, Unit, Q};
use num_integer::Integer;
use num_traits::Zero;

/// The factor `1 - zeta^phase * v^v_exp * theta[x]`.
///
/// Field order gives the printing order: constants, then pure `v` factors,
/// then torus factors sorted by character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloFactor {
    pub x: Vec<i64>,
    pub v_exp: Q,
    pub phase: Q,
}

impl CycloFactor {
    pub fn new(phase: Q, v_exp: Q, x: Vec<i64>) -> Self {
        let x = if is_zero_vec(&x) { Vec::new() } else { x };
        CycloFactor { x, v_exp, phase: frac(phase) }
    }

    pub fn is_constant(&self) -> bool {
        self.x.is_empty() && self.v_exp.is_zero()
    }

    pub fn is_v_only(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.is_constant() && self.phase.is_zero()
    }
}

fn lex_negative(x: &[i64]) -> bool {
    x.iter().find(|&&a| a != 0).is_some_and(|&a| a < 0)
}

/// Rewrite `1 - zeta^phase v^v_exp theta[x]` as a unit times irreducible
/// factors in canonical position.
///
/// Torus factors get a primitive, lex-positive character. Pure `v` factors
/// get a positive exponent; their level is fixed later, jointly with the
/// other `v` factors of the same product. Constants are reduced where a
/// closed form is known.
pub fn canonicalize(phase: Q, v_exp: Q, x: &[i64]) -> Result<(Vec<CycloFactor>, Unit), AlgError> {
    let phase = frac(phase);
    if is_zero_vec(x) {
        return canonical_v_only(phase, v_exp);
    }
    let mut unit = Unit::one();
    let (mut p, mut k, mut x) = (phase, v_exp, x.to_vec());
    if lex_negative(&x) {
        unit = Unit::new(big_from_i(1), p + Q::new(1, 2), k, x.clone());
        p = frac(-p);
        k = -k;
        x.iter_mut().for_each(|a| *a = -*a);
    }
    let g = x.iter().fold(0i64, |g, a| g.gcd(a));
    let x0: Vec<i64> = x.iter().map(|a| a / g).collect();
    let factors = (0..g)
        .map(|j| CycloFactor::new((p + j) / g, k / g, x0.clone()))
        .collect();
    Ok((factors, unit))
}

fn canonical_v_only(p: Q, k: Q) -> Result<(Vec<CycloFactor>, Unit), AlgError> {
    if k.is_zero() {
        return canonical_constant(p);
    }
    if k < Q::zero() {
        let unit = Unit::new(big_from_i(1), p + Q::new(1, 2), k, Vec::new());
        return Ok((vec![CycloFactor::new(-p, -k, Vec::new())], unit));
    }
    Ok((vec![CycloFactor::new(p, k, Vec::new())], Unit::one()))
}

fn canonical_constant(p: Q) -> Result<(Vec<CycloFactor>, Unit), AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroFactor);
    }
    if p == Q::new(1, 2) {
        return Ok((Vec::new(), Unit::rational(big_from_i(2))));
    }
    let (p, mut unit) = if p > Q::new(1, 2) {
        (Q::from_integer(1) - p, Unit::root_of_unity(p + Q::new(1, 2)))
    } else {
        (p, Unit::one())
    };
    if p == Q::new(1, 6) {
        // 1 - exp(i pi / 3) = exp(-i pi / 3)
        unit = unit.mul(&Unit::root_of_unity(Q::new(5, 6)))?;
        return Ok((Vec::new(), unit));
    }
    Ok((vec![CycloFactor::new(p, Q::zero(), Vec::new())], unit))
}

/// For the constants `1 - zeta` with `zeta` of order 3 or 4 the square is a
/// rational multiple of a root of unity: `(1 - zeta)^2 = -zeta |1 - zeta|^2`.
pub(crate) fn constant_square(p: Q) -> Option<Unit> {
    let norm = if p == Q::new(1, 3) {
        3
    } else if p == Q::new(1, 4) {
        2
    } else {
        return None;
    };
    Some(Unit::new(big_from_i(norm), p + Q::new(1, 2), Q::zero(), Vec::new()))
}

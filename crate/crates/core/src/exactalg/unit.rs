use super::{big, dot_q, frac, is_zero_vec, qser, AlgError, Q};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Monomial `mag * zeta^phase * v^v_exp * theta[x]` with `mag > 0`.
///
/// An empty `x` is the trivial character, compatible with every rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    pub mag: BigRational,
    pub phase: Q,
    pub v_exp: Q,
    pub x: Vec<i64>,
}

impl Unit {
    pub fn one() -> Self {
        Unit { mag: BigRational::one(), phase: Q::zero(), v_exp: Q::zero(), x: Vec::new() }
    }

    pub fn new(mag: BigRational, phase: Q, v_exp: Q, x: Vec<i64>) -> Self {
        assert!(mag.is_positive(), "unit magnitude must be positive");
        let x = if is_zero_vec(&x) { Vec::new() } else { x };
        Unit { mag, phase: frac(phase), v_exp, x }
    }

    /// The rational number `c`, sign folded into the phase.
    pub fn rational(c: BigRational) -> Self {
        assert!(!c.is_zero());
        let phase = if c.is_negative() { Q::new(1, 2) } else { Q::zero() };
        Unit { mag: c.abs(), phase, v_exp: Q::zero(), x: Vec::new() }
    }

    pub fn v_power(k: Q) -> Self {
        Unit { v_exp: k, ..Unit::one() }
    }

    pub fn root_of_unity(p: Q) -> Self {
        Unit { phase: frac(p), ..Unit::one() }
    }

    pub fn is_one(&self) -> bool {
        self.mag.is_one() && self.phase.is_zero() && self.v_exp.is_zero() && self.x.is_empty()
    }

    pub fn rank(&self) -> Option<usize> {
        (!self.x.is_empty()).then_some(self.x.len())
    }

    pub fn mul(&self, o: &Unit) -> Result<Unit, AlgError> {
        let x = add_vecs(&self.x, &o.x, 1)?;
        Ok(Unit {
            mag: &self.mag * &o.mag,
            phase: frac(self.phase + o.phase),
            v_exp: self.v_exp + o.v_exp,
            x,
        })
    }

    pub fn inv(&self) -> Unit {
        Unit {
            mag: self.mag.recip(),
            phase: frac(-self.phase),
            v_exp: -self.v_exp,
            x: self.x.iter().map(|a| -a).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Unit {
        let mag = if n >= 0 {
            num_traits::pow(self.mag.clone(), n as usize)
        } else {
            num_traits::pow(self.mag.recip(), (-n) as usize)
        };
        let x: Vec<i64> = self.x.iter().map(|a| a * n).collect();
        Unit::new(mag, self.phase * n, self.v_exp * n, x)
    }

    /// Complex conjugate for real `v` and unitary `theta`.
    pub fn conj(&self) -> Unit {
        Unit { phase: frac(-self.phase), x: self.x.iter().map(|a| -a).collect(), ..self.clone() }
    }

    /// The value is a rational number (possibly negative).
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.v_exp.is_zero() || !self.x.is_empty() {
            return None;
        }
        if self.phase.is_zero() {
            Some(self.mag.clone())
        } else if self.phase == Q::new(1, 2) {
            Some(-self.mag.clone())
        } else {
            None
        }
    }
}

pub(crate) fn add_vecs(a: &[i64], b: &[i64], sign: i64) -> Result<Vec<i64>, AlgError> {
    if a.is_empty() {
        return Ok(b.iter().map(|x| sign * x).collect());
    }
    if b.is_empty() {
        return Ok(a.to_vec());
    }
    if a.len() != b.len() {
        return Err(AlgError::LatticeMismatch(a.len(), b.len()));
    }
    let r: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + sign * y).collect();
    Ok(if is_zero_vec(&r) { Vec::new() } else { r })
}

/// A point of the torus over the field of `v`: the basis character `e_i`
/// takes the value `zeta^s[i] * v^y[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusPoint {
    #[serde(with = "qser::vec")]
    pub s: Vec<Q>,
    #[serde(with = "qser::vec")]
    pub y: Vec<Q>,
}

impl TorusPoint {
    pub fn new(s: Vec<Q>, y: Vec<Q>) -> Self {
        assert_eq!(s.len(), y.len());
        TorusPoint { s: s.into_iter().map(frac).collect(), y }
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint { s: vec![Q::zero(); n], y: vec![Q::zero(); n] }
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    /// Value of `theta_x` as `(phase mod 1, v-exponent)`.
    pub fn char_value(&self, x: &[i64]) -> (Q, Q) {
        if x.is_empty() {
            return (Q::zero(), Q::zero());
        }
        (frac(dot_q(x, &self.s)), dot_q(x, &self.y))
    }

    pub fn mul(&self, o: &TorusPoint) -> TorusPoint {
        TorusPoint::new(
            self.s.iter().zip(&o.s).map(|(a, b)| *a + *b).collect(),
            self.y.iter().zip(&o.y).map(|(a, b)| *a + *b).collect(),
        )
    }

    pub fn is_real(&self) -> bool {
        self.s.iter().all(|p| p.is_zero())
    }
}

pub(crate) fn big_from_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[allow(dead_code)]
pub(crate) fn unit_from_q(c: Q) -> Unit {
    Unit::rational(big(c))
}

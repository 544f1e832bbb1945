//! Exact arithmetic on products of cyclotomic-type factors.
//!
//! A [`FactoredFunction`] is a function on a complex torus with character
//! lattice `Z^n` and an extra formal variable `v`, written as
//!
//! ```text
//! c * zeta^phase * v^k * theta[x] * prod (1 - zeta^p v^a theta[y])^m
//! ```
//!
//! where `zeta^p` stands for `exp(2 pi i p)`. Every value is kept in a
//! canonical form so that equality of values is structural equality.

mod cyclofield;
mod factor;
mod function;
mod numeric;
mod text;
mod unipoly;
mod unit;
mod vpart;

pub use cyclofield::{cyclotomic_poly, CycloField};
pub use factor::{canonicalize, CycloFactor};
pub use function::{FactoredFunction, Product, RatioClass, Regularized};
pub use text::ParseError;
pub use unipoly::{cyclotomic_factored, mobius, CycloFactorization, UniPoly};
pub use unit::{TorusPoint, Unit};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use thiserror::Error;

/// Small exact rational, used for phases and exponents.
pub type Q = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("factor 1 - 1 is identically zero")]
    ZeroFactor,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("pole at the evaluation point")]
    PoleAtPoint,
    #[error("lattice rank mismatch: {0} vs {1}")]
    LatticeMismatch(usize, usize),
    #[error("matrix shape does not match the lattice")]
    ShapeMismatch,
    #[error("function still depends on theta")]
    NotVOnly,
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(Q),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Reduce modulo 1 into `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn big(x: Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

pub fn bigi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Q>) -> i64 {
    it.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

pub(crate) fn dot_q(x: &[i64], s: &[Q]) -> Q {
    x.iter().zip(s).fold(Q::zero(), |acc, (a, b)| acc + *b * *a)
}

pub(crate) fn is_zero_vec(x: &[i64]) -> bool {
    x.iter().all(|&a| a == 0)
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_big(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Q::new(a.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_big(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Serde helper for `Q` as a `"p/q"` string.
pub mod qser {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::super::{fmt_q, parse_q, Q};
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(x.iter().map(fmt_q))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_q(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .collect()
        }
    }
}

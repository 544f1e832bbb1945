use super::cyclofield::CycloField;
use super::factor::{canonicalize, constant_square};
use super::vpart::canonical_vpart;
use super::{lcm_denoms, AlgError, CycloFactor, TorusPoint, Unit, Q};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exact value: either zero or a unit times a canonical product of
/// irreducible factors with nonzero integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactoredFunction {
    Zero,
    Product(Product),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Product {
    unit: Unit,
    factors: BTreeMap<CycloFactor, i64>,
}

impl Product {
    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn factors(&self) -> &BTreeMap<CycloFactor, i64> {
        &self.factors
    }
}

/// Outcome of comparing two functions: `a = c * v^k * b` with rational `c`,
/// or a constant ratio that is not rational, or a ratio that still moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioClass {
    RationalMonomial { c: BigRational, k: Q },
    AlgebraicConstant,
    NonConstant,
}

/// Result of an evaluation that drops factors vanishing identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularized {
    pub value: FactoredFunction,
    /// Dropped numerator factors, counted with multiplicity.
    pub zeros: i64,
    /// Dropped denominator factors, counted with multiplicity.
    pub poles: i64,
}

impl Regularized {
    pub fn pole_order(&self) -> i64 {
        self.poles - self.zeros
    }
}

type Raw = (Q, Q, Vec<i64>, i64);

impl FactoredFunction {
    pub fn one() -> Self {
        Self::Product(Product { unit: Unit::one(), factors: BTreeMap::new() })
    }

    pub fn from_unit(unit: Unit) -> Self {
        Self::Product(Product { unit, factors: BTreeMap::new() })
    }

    pub fn rational(c: BigRational) -> Self {
        if c.is_zero() {
            Self::Zero
        } else {
            Self::from_unit(Unit::rational(c))
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn v_power(k: Q) -> Self {
        Self::from_unit(Unit::v_power(k))
    }

    pub fn theta(x: Vec<i64>) -> Self {
        Self::from_unit(Unit::new(BigRational::one(), Q::zero(), Q::zero(), x))
    }

    /// The single factor `1 - zeta^phase v^v_exp theta[x]` (zero if it is `1 - 1`).
    pub fn factor(phase: Q, v_exp: Q, x: Vec<i64>) -> Self {
        Self::from_raw(Unit::one(), vec![(phase, v_exp, x, 1)]).unwrap_or(Self::Zero)
    }

    /// Build from arbitrary factors `(phase, v_exp, x, multiplicity)`.
    pub fn from_raw(unit: Unit, raw: Vec<Raw>) -> Result<Self, AlgError> {
        let mut unit = unit;
        let mut map: BTreeMap<CycloFactor, i64> = BTreeMap::new();
        for (p, k, x, m) in raw {
            if m == 0 {
                continue;
            }
            match canonicalize(p, k, &x) {
                Ok((fs, comp)) => {
                    unit = unit.mul(&comp.pow(m))?;
                    for f in fs {
                        *map.entry(f).or_default() += m;
                    }
                }
                Err(AlgError::ZeroFactor) if m > 0 => return Ok(Self::Zero),
                Err(AlgError::ZeroFactor) => return Err(AlgError::DivisionByZero),
                Err(e) => return Err(e),
            }
        }
        normalize(unit, map)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }

    pub fn product(&self) -> Option<&Product> {
        match self {
            Self::Zero => None,
            Self::Product(p) => Some(p),
        }
    }

    pub fn unit(&self) -> Option<&Unit> {
        self.product().map(|p| &p.unit)
    }

    /// Rank of the character lattice, `None` when no `theta` occurs.
    pub fn rank(&self) -> Option<usize> {
        let p = self.product()?;
        p.unit.rank().or_else(|| p.factors.keys().find(|f| !f.x.is_empty()).map(|f| f.x.len()))
    }

    pub fn is_v_only(&self) -> bool {
        self.rank().is_none()
    }

    pub fn factor_count(&self) -> usize {
        self.product().map_or(0, |p| p.factors.len())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgError> {
        let (a, b) = match (self, o) {
            (Self::Product(a), Self::Product(b)) => (a, b),
            _ => return Ok(Self::Zero),
        };
        let unit = a.unit.mul(&b.unit)?;
        let mut map = a.factors.clone();
        for (f, m) in &b.factors {
            *map.entry(f.clone()).or_default() += m;
        }
        normalize(unit, map)
    }

    pub fn inv(&self) -> Result<Self, AlgError> {
        match self {
            Self::Zero => Err(AlgError::DivisionByZero),
            Self::Product(p) => Ok(Self::Product(Product {
                unit: p.unit.inv(),
                factors: p.factors.iter().map(|(f, m)| (f.clone(), -m)).collect(),
            })),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgError> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self, AlgError> {
        match self {
            Self::Zero if n > 0 => Ok(Self::Zero),
            Self::Zero if n == 0 => Ok(Self::one()),
            Self::Zero => Err(AlgError::DivisionByZero),
            Self::Product(p) => normalize(
                p.unit.pow(n),
                p.factors.iter().map(|(f, m)| (f.clone(), m * n)).collect(),
            ),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self, AlgError> {
        self.mul(&Self::rational(c.clone()))
    }

    fn raw_parts(&self) -> Option<(Unit, Vec<Raw>)> {
        let p = self.product()?;
        let raw = p.factors.iter().map(|(f, m)| (f.phase, f.v_exp, f.x.clone(), *m)).collect();
        Some((p.unit.clone(), raw))
    }

    /// Substitute `v -> v^eps`.
    pub fn substitute_v_power(&self, eps: Q) -> Result<Self, AlgError> {
        let Some((mut unit, raw)) = self.raw_parts() else { return Ok(Self::Zero) };
        if eps.is_zero() {
            return Err(AlgError::NonIntegralExponent(eps));
        }
        unit.v_exp *= eps;
        let raw = raw.into_iter().map(|(p, k, x, m)| (p, k * eps, x, m)).collect();
        Self::from_raw(unit, raw)
    }

    /// Complex conjugate for real `v` and unitary `theta`.
    pub fn conj(&self) -> Result<Self, AlgError> {
        let Some((unit, raw)) = self.raw_parts() else { return Ok(Self::Zero) };
        let raw = raw
            .into_iter()
            .map(|(p, k, x, m)| (-p, k, x.iter().map(|a| -a).collect(), m))
            .collect();
        Self::from_raw(unit.conj(), raw)
    }

    /// Pull back along `theta[x] -> base(x) * theta[b x]`, where `b` has one
    /// row per source basis character.
    pub fn pullback(&self, b: &[Vec<i64>], base: &TorusPoint) -> Result<Self, AlgError> {
        let r = self.substitute(Some(b), base, false)?;
        Ok(r.value)
    }

    /// As [`pullback`](Self::pullback), dropping factors that become `1 - 1`.
    pub fn pullback_regularized(&self, b: &[Vec<i64>], base: &TorusPoint) -> Result<Regularized, AlgError> {
        self.substitute(Some(b), base, true)
    }

    pub fn eval(&self, point: &TorusPoint) -> Result<Self, AlgError> {
        Ok(self.substitute(None, point, false)?.value)
    }

    pub fn eval_regularized(&self, point: &TorusPoint) -> Result<Regularized, AlgError> {
        self.substitute(None, point, true)
    }

    fn substitute(&self, b: Option<&[Vec<i64>]>, base: &TorusPoint, regularize: bool) -> Result<Regularized, AlgError> {
        let Some(p) = self.product() else {
            return Ok(Regularized { value: Self::Zero, zeros: 0, poles: 0 });
        };
        if let Some(n) = self.rank() {
            if n != base.rank() || b.is_some_and(|b| b.iter().any(|row| row.len() != n)) {
                return Err(AlgError::ShapeMismatch);
            }
        }
        let image = |x: &[i64]| -> Vec<i64> {
            match b {
                Some(b) if !x.is_empty() => {
                    b.iter().map(|row| row.iter().zip(x).map(|(r, a)| r * a).sum()).collect()
                }
                _ => Vec::new(),
            }
        };
        let (ph, k) = base.char_value(&p.unit.x);
        let mut unit = p.unit.clone();
        unit.x = Vec::new();
        unit = unit.mul(&Unit::new(BigRational::one(), ph, k, image(&p.unit.x)))?;
        let (mut zeros, mut poles) = (0, 0);
        let mut raw = Vec::with_capacity(p.factors.len());
        for (f, m) in &p.factors {
            let (ph, k) = base.char_value(&f.x);
            let nf = CycloFactor::new(f.phase + ph, f.v_exp + k, image(&f.x));
            if nf.is_identically_zero() {
                if *m > 0 {
                    zeros += m;
                } else {
                    poles -= m;
                }
                continue;
            }
            raw.push((nf.phase, nf.v_exp, nf.x, *m));
        }
        if !regularize && poles > 0 {
            return Err(AlgError::PoleAtPoint);
        }
        if !regularize && zeros > 0 {
            return Ok(Regularized { value: Self::Zero, zeros, poles });
        }
        Ok(Regularized { value: Self::from_raw(unit, raw)?, zeros, poles })
    }

    /// Drop the unit phase and fix the sign so the value at `v = 2` is
    /// positive when it is real.
    pub fn positive_part(&self) -> Self {
        let Some(p) = self.product() else { return Self::Zero };
        let mut q = p.clone();
        q.unit.phase = Q::zero();
        let f = Self::Product(q);
        if f.is_v_only() {
            if let Ok(z) = f.numeric(2.0) {
                if z.re < 0.0 && z.im.abs() <= 1e-9 * z.re.abs() {
                    return f.mul(&Self::integer(-1)).expect("scalar");
                }
            }
        }
        f
    }

    /// Classify `self / other`.
    pub fn ratio_class(&self, other: &Self) -> Result<RatioClass, AlgError> {
        if other.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(RatioClass::RationalMonomial { c: BigRational::zero(), k: Q::zero() });
        }
        let r = self.div(other)?;
        Ok(constant_class(&r))
    }

    /// Classify `|self| / |other|` for real `v` and unitary `theta`.
    pub fn magnitude_ratio_class(&self, other: &Self) -> Result<RatioClass, AlgError> {
        if other.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(RatioClass::RationalMonomial { c: BigRational::zero(), k: Q::zero() });
        }
        let r = self.div(other)?;
        let s = r.mul(&r.conj()?)?;
        match constant_class(&s) {
            RatioClass::RationalMonomial { c, k } => {
                if c.is_negative() {
                    return Ok(RatioClass::AlgebraicConstant);
                }
                match rational_sqrt(&c) {
                    Some(root) => Ok(RatioClass::RationalMonomial { c: root, k: k / 2 }),
                    None => Ok(RatioClass::AlgebraicConstant),
                }
            }
            other => Ok(other),
        }
    }

    /// The exact rational value, if the function is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Self::Zero => Some(BigRational::zero()),
            Self::Product(_) => match constant_class(self) {
                RatioClass::RationalMonomial { c, k } if k.is_zero() => Some(c),
                _ => None,
            },
        }
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| BigRational::new(n, d))
}

fn constant_class(r: &FactoredFunction) -> RatioClass {
    let p = match r {
        FactoredFunction::Zero => {
            return RatioClass::RationalMonomial { c: BigRational::zero(), k: Q::zero() };
        }
        FactoredFunction::Product(p) => p,
    };
    if !p.unit.x.is_empty() || p.factors.keys().any(|f| !f.is_constant()) {
        return RatioClass::NonConstant;
    }
    let phases: Vec<Q> =
        p.factors.keys().map(|f| f.phase).chain(std::iter::once(p.unit.phase)).collect();
    let m = lcm_denoms(phases.iter());
    let field = CycloField::new(m);
    let mut num = field.root(p.unit.phase);
    let mut den = field.one();
    for (f, mult) in &p.factors {
        let e = field.pow(&field.one_minus_root(f.phase), mult.unsigned_abs() as u32);
        if *mult > 0 {
            num = field.mul(&num, &e);
        } else {
            den = field.mul(&den, &e);
        }
    }
    match CycloField::rational_quotient(&num, &den) {
        Some(c) => RatioClass::RationalMonomial { c: c * &p.unit.mag, k: p.unit.v_exp },
        None => RatioClass::AlgebraicConstant,
    }
}

fn normalize(mut unit: Unit, map: BTreeMap<CycloFactor, i64>) -> Result<FactoredFunction, AlgError> {
    let mut out: BTreeMap<CycloFactor, i64> = BTreeMap::new();
    let mut vpart = Vec::new();
    let mut rank = unit.rank();
    for (f, m) in map {
        if m == 0 {
            continue;
        }
        if !f.x.is_empty() {
            match rank {
                Some(n) if n != f.x.len() => return Err(AlgError::LatticeMismatch(n, f.x.len())),
                _ => rank = Some(f.x.len()),
            }
            out.insert(f, m);
        } else if f.v_exp.is_zero() {
            let (keep, extra) = match constant_square(f.phase) {
                Some(sq) => (m.rem_euclid(2), sq.pow(m.div_euclid(2))),
                None => (m, Unit::one()),
            };
            unit = unit.mul(&extra)?;
            if keep != 0 {
                out.insert(f, keep);
            }
        } else {
            vpart.push((f.phase, f.v_exp, m));
        }
    }
    out.extend(canonical_vpart(&vpart));
    if let (Some(n), Some(u)) = (rank, unit.rank()) {
        if n != u {
            return Err(AlgError::LatticeMismatch(n, u));
        }
    }
    Ok(FactoredFunction::Product(Product { unit, factors: out }))
}

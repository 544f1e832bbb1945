use super::cyclofield::cyclotomic_poly;
use super::{big, fmt_big, fmt_q, lcm_denoms, AlgError, FactoredFunction, Q};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in one variable with rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    terms: BTreeMap<Q, BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), Q::zero())
    }

    pub fn monomial(c: BigRational, e: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Q::from_integer(i as i64), BigRational::from_integer(BigInt::from(*c)));
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Q, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Q, c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut r = Self::zero();
        for (e, a) in &self.terms {
            r.add_term(*e, a * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(*e1 + *e2, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Replace the variable `t` by `t^k`.
    pub fn stretch(&self, k: Q) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            r.add_term(*e * k, c.clone());
        }
        r
    }

    pub fn min_exp(&self) -> Option<Q> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<Q> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn eval(&self, t: &BigRational) -> Result<BigRational, AlgError> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if !e.is_integer() {
                return Err(AlgError::NonIntegralExponent(*e));
            }
            let n = e.to_integer();
            let p = if n >= 0 {
                num_traits::pow(t.clone(), n as usize)
            } else {
                num_traits::pow(t.recip(), (-n) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t.powf(*e.numer() as f64 / *e.denom() as f64))
            .sum()
    }

    /// `p(t) = t^center p(1/t)`.
    pub fn is_palindromic(&self, center: Q) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&(center - *e)) == Some(c))
    }
}

/// `scalar * t^shift * prod_n Phi_n(t^(1/level))^exps[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloFactorization {
    pub scalar: BigRational,
    pub shift: Q,
    pub level: i64,
    pub exps: BTreeMap<i64, i64>,
}

impl UniPoly {
    /// Split into cyclotomic factors by trial division; `None` when some
    /// irreducible factor is not cyclotomic (or the polynomial is zero).
    pub fn cyclotomic_factorization(&self) -> Option<CycloFactorization> {
        let shift = self.min_exp()?;
        let level = lcm_denoms(self.terms.keys());
        let deg = ((self.max_exp()? - shift) * level).to_integer() as usize;
        let mut dense = vec![BigRational::zero(); deg + 1];
        for (e, c) in &self.terms {
            dense[((*e - shift) * level).to_integer() as usize] = c.clone();
        }
        let mut exps = BTreeMap::new();
        let mut n = 1i64;
        while dense.len() > 1 {
            let d = dense.len() as i64 - 1;
            if n > 2 * d * d + 2 {
                return None;
            }
            let phi = cyclotomic_poly(n);
            while dense.len() >= phi.len() {
                match div_exact(&dense, &phi) {
                    Some(q) => {
                        dense = q;
                        *exps.entry(n).or_insert(0) += 1;
                    }
                    None => break,
                }
            }
            n += 1;
        }
        Some(CycloFactorization { scalar: dense[0].clone(), shift, level, exps })
    }

    /// The same value as a [`FactoredFunction`] in the variable `v = t`.
    pub fn to_factored(&self) -> Option<FactoredFunction> {
        self.cyclotomic_factorization().map(|f| f.to_factored())
    }
}

impl CycloFactorization {
    pub fn to_factored(&self) -> FactoredFunction {
        let mut out = FactoredFunction::rational(self.scalar.clone())
            .mul(&FactoredFunction::v_power(self.shift))
            .expect("v-only");
        for (&n, &e) in &self.exps {
            let phi = cyclotomic_factored(n, Q::new(1, self.level)).pow(e).expect("nonzero");
            out = out.mul(&phi).expect("v-only");
        }
        out
    }
}

/// `Phi_n(v^step)` via `Phi_n(x) = prod_{d | n} (1 - x^d)^mu(n/d)` for `n > 1`.
pub fn cyclotomic_factored(n: i64, step: Q) -> FactoredFunction {
    if n == 1 {
        return FactoredFunction::factor(Q::zero(), step, Vec::new()).scale(&big(Q::from(-1))).expect("nonzero");
    }
    let mut out = FactoredFunction::one();
    for d in (1..=n).filter(|d| n % d == 0) {
        let m = mobius(n / d);
        if m != 0 {
            let f = FactoredFunction::factor(Q::zero(), step * d, Vec::new()).pow(m).expect("nonzero");
            out = out.mul(&f).expect("v-only");
        }
    }
    out
}

pub fn mobius(mut n: i64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn div_exact(a: &[BigRational], b: &[i64]) -> Option<Vec<BigRational>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![BigRational::zero(); a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = r[i + db].clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * BigRational::from_integer(BigInt::from(*bj));
        }
        quo[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(quo)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (a.is_one(), e.is_zero()) {
                (_, true) => write!(f, "{}", fmt_big(&a))?,
                (true, false) => write!(f, "t^({})", fmt_q(e))?,
                (false, false) => write!(f, "{}*t^({})", fmt_big(&a), fmt_q(e))?,
            }
        }
        Ok(())
    }
}

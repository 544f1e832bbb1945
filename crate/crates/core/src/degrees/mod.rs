//! Orders of finite reductive groups and tori as polynomials in `q = v^2`,
//! parahoric volumes and cuspidal formal degrees.

mod table;

pub use table::{builtin_table, DegreeEntry, DegreeTable};

use crate::exactalg::{big, bigi, cyclotomic_factored, FactoredFunction, UniPoly, Q};
use crate::lattice::IMat;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("polynomial is not a product of cyclotomic factors and powers of q")]
    NotFactorable,
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("invalid datum: {0}")]
    Invalid(String),
}

/// `scalar * q^q_power * prod_n Phi_n(q)^exps[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloProduct {
    pub scalar: BigRational,
    pub q_power: i64,
    pub exps: BTreeMap<i64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        CycloProduct { scalar: c, q_power: 0, exps: BTreeMap::new() }
    }

    pub fn q_power(n: i64) -> Self {
        CycloProduct { q_power: n, ..Self::one() }
    }

    /// `q^d - 1`.
    pub fn q_minus_one(d: i64) -> Self {
        let exps = (1..=d).filter(|n| d % n == 0).map(|n| (n, 1)).collect();
        CycloProduct { exps, ..Self::one() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (n, e) in &o.exps {
            *exps.entry(*n).or_default() += e;
        }
        exps.retain(|_, e| *e != 0);
        CycloProduct { scalar: &self.scalar * &o.scalar, q_power: self.q_power + o.q_power, exps }
    }

    pub fn inv(&self) -> Self {
        CycloProduct {
            scalar: self.scalar.recip(),
            q_power: -self.q_power,
            exps: self.exps.iter().map(|(n, e)| (*n, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.abs()).fold(Self::one(), |acc, _| acc.mul(&base))
    }

    pub fn is_polynomial(&self) -> bool {
        self.q_power >= 0 && self.exps.values().all(|e| *e >= 0)
    }

    pub fn from_unipoly(p: &UniPoly) -> Result<Self, DegreeError> {
        let f = p.cyclotomic_factorization().ok_or(DegreeError::NotFactorable)?;
        if f.level != 1 || !f.shift.is_integer() {
            return Err(DegreeError::NotFactorable);
        }
        Ok(CycloProduct { scalar: f.scalar, q_power: f.shift.to_integer(), exps: f.exps })
    }

    /// The polynomial in `q`; `None` when some exponent is negative.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let mut p = UniPoly::monomial(self.scalar.clone(), Q::from(self.q_power));
        for (n, e) in &self.exps {
            let phi = UniPoly::from_int_coeffs(&crate::exactalg::cyclotomic_poly(*n));
            p = p.mul(&phi.pow(*e as u32));
        }
        Some(p)
    }

    /// Value with `q = v^2`.
    pub fn to_factored(&self) -> FactoredFunction {
        let mut out = FactoredFunction::rational(self.scalar.clone())
            .mul(&FactoredFunction::v_power(Q::from(2 * self.q_power)))
            .expect("v-only");
        for (n, e) in &self.exps {
            out = out.mul(&cyclotomic_factored(*n, Q::from(2)).pow(*e).expect("nonzero")).expect("v-only");
        }
        out
    }

    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = self.scalar.clone() * pow_big(q0, self.q_power);
        for (n, e) in &self.exps {
            let phi = UniPoly::from_int_coeffs(&crate::exactalg::cyclotomic_poly(*n));
            acc *= pow_big(&phi.eval(q0).expect("integral exponents"), *e);
        }
        acc
    }
}

fn pow_big(x: &BigRational, n: i64) -> BigRational {
    if n >= 0 {
        num_traits::pow(x.clone(), n as usize)
    } else {
        num_traits::pow(x.recip(), (-n) as usize)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::exactalg::fmt_big(&self.scalar))?;
        if self.q_power != 0 {
            write!(f, " * q^{}", self.q_power)?;
        }
        for (n, e) in &self.exps {
            write!(f, " * Phi{n}(q)^{e}")?;
        }
        Ok(())
    }
}

/// Parse a product of tokens `c`, `p/q`, `q`, `q^N`, `(q^d-1)`, `(q^d-1)^e`
/// and quotients `(q^d-1)/(q^e-1)`, separated by `*`.
pub fn parse_product(s: &str) -> Result<CycloProduct, DegreeError> {
    let err = |m: &str| DegreeError::Parse(s.to_string(), m.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty expression"));
    }
    let mut out = CycloProduct::one();
    for tok in split_top(&compact, '*') {
        let parts = split_top(&tok, '/');
        let mut val = atom(&parts[0]).ok_or_else(|| err(&format!("bad token {:?}", parts[0])))?;
        for d in &parts[1..] {
            let den = atom(d).ok_or_else(|| err(&format!("bad token {d:?}")))?;
            if den.scalar.is_zero() {
                return Err(err("division by zero"));
            }
            val = val.mul(&den.inv());
        }
        out = out.mul(&val);
    }
    Ok(out)
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(String::new());
        } else {
            out.last_mut().expect("nonempty").push(c);
        }
    }
    out
}

fn atom(t: &str) -> Option<CycloProduct> {
    let (body, exp) = match t.rfind(")^") {
        Some(i) if t.starts_with('(') => (&t[1..i], t[i + 2..].parse::<i64>().ok()?),
        _ if t.starts_with('(') && t.ends_with(')') => (&t[1..t.len() - 1], 1),
        _ => (t, 1),
    };
    let val = if let Some(inner) = body.strip_suffix("-1") {
        let d = q_exponent(inner)?;
        (d > 0).then(|| CycloProduct::q_minus_one(d))?
    } else if body.starts_with('q') {
        CycloProduct::q_power(q_exponent(body)?)
    } else {
        let c = crate::exactalg::parse_big(body)?;
        CycloProduct::constant(c)
    };
    Some(val.pow(exp))
}

fn q_exponent(s: &str) -> Option<i64> {
    match s {
        "q" => Some(1),
        _ => s.strip_prefix("q^")?.parse().ok(),
    }
}

/// `q^N prod (q^{d_i} - 1)`, times the order of a torus twist when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrderSpec {
    pub q_power: i64,
    pub degrees: Vec<i64>,
    /// Frobenius matrix of finite order on the cocharacter lattice of a torus.
    pub torus_twist: Option<IMat>,
}

pub fn group_order(spec: &GroupOrderSpec) -> Result<UniPoly, DegreeError> {
    group_order_factored(spec)?.to_unipoly().ok_or(DegreeError::NotFactorable)
}

pub fn group_order_factored(spec: &GroupOrderSpec) -> Result<CycloProduct, DegreeError> {
    if spec.q_power < 0 || spec.degrees.iter().any(|&d| d <= 0) {
        return Err(DegreeError::Invalid("degrees must be positive and the q-power nonnegative".into()));
    }
    let mut out = CycloProduct::q_power(spec.q_power);
    for &d in &spec.degrees {
        out = out.mul(&CycloProduct::q_minus_one(d));
    }
    if let Some(a) = &spec.torus_twist {
        out = out.mul(&CycloProduct::from_unipoly(&torus_order(a)?)?);
    }
    Ok(out)
}

/// `|det(q A - 1)|` as a polynomial in `q`, normalized to be positive for
/// large `q`.
pub fn torus_order(a: &IMat) -> Result<UniPoly, DegreeError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(DegreeError::Invalid("torus twist must be square".into()));
    }
    // det(t A - 1) has degree at most n: interpolate at t = 0..=n
    let pts: Vec<(BigRational, BigRational)> = (0..=n as i64)
        .map(|t| {
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| bigi(t * a[i][j] - i64::from(i == j))).collect())
                .collect();
            (bigi(t), det_big(m))
        })
        .collect();
    let mut p = UniPoly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = UniPoly::monomial(yi.clone(), Q::zero());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                let lin = UniPoly::from_int_coeffs(&[0, 1]).sub(&UniPoly::monomial(xj.clone(), Q::zero()));
                basis = basis.mul(&lin).scale(&(xi - xj).recip());
            }
        }
        p = p.add(&basis);
    }
    if p.leading_coeff().is_some_and(|c| c.is_negative()) {
        p = p.scale(&-BigRational::one());
    }
    if p.is_zero() {
        return Err(DegreeError::Invalid("Frobenius has eigenvalue q^-1 identically".into()));
    }
    Ok(p)
}

fn det_big(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut acc = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest.iter_mut() {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * p;
            }
        }
    }
    acc
}

/// `Vol(P) = v^-dim |P|(q = v^2)`.
pub fn parahoric_volume(order: &UniPoly, dim: i64) -> Result<FactoredFunction, DegreeError> {
    Ok(parahoric_volume_factored(&CycloProduct::from_unipoly(order)?, dim))
}

pub fn parahoric_volume_factored(order: &CycloProduct, dim: i64) -> FactoredFunction {
    FactoredFunction::v_power(Q::from(-dim)).mul(&order.to_factored()).expect("v-only")
}

/// Data of a cuspidal unipotent type: the reductive quotient of the
/// parahoric, its dimension, the degree of the cuspidal representation and
/// the order of the stabilizer in `Omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalDatum {
    pub quotient_order: CycloProduct,
    pub quotient_dim: i64,
    pub deg_sigma: CycloProduct,
    pub omega_p: i64,
}

impl CuspidalDatum {
    pub fn validate(&self) -> Result<(), DegreeError> {
        if self.omega_p <= 0 || self.quotient_dim < 0 {
            return Err(DegreeError::Invalid("omega order must be positive and the dimension nonnegative".into()));
        }
        let divides = self.deg_sigma.exps.iter().all(|(n, e)| *e >= 0 && *e <= self.quotient_order.exps.get(n).copied().unwrap_or(0));
        if !divides {
            return Err(DegreeError::Invalid("degree does not divide the order of the quotient".into()));
        }
        for q0 in [2, 3, 4] {
            let q0 = bigi(q0);
            if !self.quotient_order.eval(&q0).is_positive() || !self.deg_sigma.eval(&q0).is_positive() {
                return Err(DegreeError::Invalid("order and degree must be positive at q = 2, 3, 4".into()));
            }
        }
        Ok(())
    }
}

/// `deg(sigma) / (|Omega_P| Vol(P))`.
pub fn cuspidal_fdeg(c: &CuspidalDatum) -> Result<FactoredFunction, DegreeError> {
    c.validate()?;
    let vol = parahoric_volume_factored(&c.quotient_order, c.quotient_dim);
    Ok(c.deg_sigma
        .to_factored()
        .div(&vol)
        .and_then(|f| f.scale(&big(Q::new(1, c.omega_p))))
        .expect("nonzero v-only values"))
}

/// The cuspidal datum of the anisotropic inner form of `PGL_n`: quotient a
/// torus of order `(q^n - 1)/(q - 1)`, trivial cuspidal, `|Omega| = n`.
pub fn pgl_anisotropic(n: i64) -> CuspidalDatum {
    CuspidalDatum {
        quotient_order: CycloProduct::q_minus_one(n).mul(&CycloProduct::q_minus_one(1).inv()),
        quotient_dim: n - 1,
        deg_sigma: CycloProduct::one(),
        omega_p: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;
    use proptest::prelude::*;

    fn f(phase: i64, k: i64) -> FactoredFunction {
        FactoredFunction::factor(Q::new(phase, 2), qi(k), vec![])
    }

    #[test]
    fn split_group_orders() {
        let sl2 = group_order(&GroupOrderSpec { q_power: 1, degrees: vec![2], torus_twist: None }).unwrap();
        assert_eq!(sl2, UniPoly::from_int_coeffs(&[0, -1, 0, 1]));
        assert_eq!(sl2.eval(&bigi(2)).unwrap(), bigi(6));
        let g2 = GroupOrderSpec { q_power: 6, degrees: vec![2, 6], torus_twist: None };
        assert_eq!(group_order(&g2).unwrap().eval(&bigi(2)).unwrap(), bigi(12096));
    }

    #[test]
    fn torus_orders() {
        assert_eq!(torus_order(&vec![vec![1]]).unwrap(), UniPoly::from_int_coeffs(&[-1, 1]));
        assert_eq!(torus_order(&vec![vec![-1]]).unwrap(), UniPoly::from_int_coeffs(&[1, 1]));
        // Coxeter element of A2: q^2 + q + 1
        assert_eq!(torus_order(&vec![vec![0, -1], vec![1, -1]]).unwrap(), UniPoly::from_int_coeffs(&[1, 1, 1]));
    }

    #[test]
    fn gl1_volume() {
        let vol = parahoric_volume(&UniPoly::from_int_coeffs(&[-1, 1]), 1).unwrap();
        // v^-1 (v^2 - 1) = -v^-1 (1 - v^2)
        let want = FactoredFunction::v_power(qi(-1)).mul(&f(0, 2)).unwrap().scale(&bigi(-1)).unwrap();
        assert_eq!(vol, want);
    }

    #[test]
    fn anisotropic_torus_volume_is_quantum_integer() {
        for n in 2..=5 {
            let vol = parahoric_volume_factored(&pgl_anisotropic(n).quotient_order, n - 1);
            let qn = FactoredFunction::v_power(qi(1 - n)).mul(&f(0, 2 * n)).unwrap().div(&f(0, 2)).unwrap();
            assert_eq!(vol, qn);
            let z = vol.numeric(1.7).unwrap().re;
            let direct = (1.7f64.powi(n as i32) - 1.7f64.powi(-n as i32)) / (1.7 - 1.0 / 1.7);
            assert!((z - direct).abs() < 1e-9 * direct);
        }
    }

    #[test]
    fn g2_parahoric_volume() {
        let order = parse_product("q^6 * (q^2-1) * (q^6-1)").unwrap();
        let vol = parahoric_volume_factored(&order, 14);
        // v^-14 v^12 (v^4 - 1)(v^12 - 1) = v^-2 (1 - v^4)(1 - v^12)
        let want = FactoredFunction::v_power(qi(-2)).mul(&f(0, 4)).unwrap().mul(&f(0, 12)).unwrap();
        assert_eq!(vol, want);
    }

    #[test]
    fn parser_tokens() {
        let g2 = parse_product("1/6 * q * (q-1)^2 * (q^6-1)/(q^3-1) * (q-1)/(q^2-1)").unwrap();
        let want = CycloProduct {
            scalar: BigRational::new(1.into(), 6.into()),
            q_power: 1,
            exps: BTreeMap::from([(1, 2), (6, 1)]),
        };
        assert_eq!(g2, want);
        assert_eq!(parse_product("(q^2-1)").unwrap(), CycloProduct::q_minus_one(2));
        assert!(parse_product("q^x").is_err());
        assert!(parse_product("").is_err());
        let p = UniPoly::from_int_coeffs(&[0, 0, -1, 0, 1]);
        assert_eq!(CycloProduct::from_unipoly(&p).unwrap().to_unipoly().unwrap(), p);
        assert_eq!(CycloProduct::from_unipoly(&UniPoly::from_int_coeffs(&[1, 0, 2])), Err(DegreeError::NotFactorable));
    }

    #[test]
    fn degree_equal_to_volume() {
        let order = parse_product("q * (q^2-1)").unwrap();
        let deg = CycloProduct { scalar: bigi(1), q_power: 0, exps: BTreeMap::from([(1, 1), (2, 1)]) };
        let c = CuspidalDatum { quotient_order: order, quotient_dim: 3, deg_sigma: deg.mul(&CycloProduct::q_power(1)), omega_p: 3 };
        let v = cuspidal_fdeg(&c).unwrap();
        // deg(sigma) = q |P| / q = |P|, so fdeg = v^3 / 3
        assert_eq!(v, FactoredFunction::v_power(qi(3)).scale(&BigRational::new(1.into(), 3.into())).unwrap());
    }

    #[test]
    fn builtin_table_entries() {
        let t = builtin_table();
        assert_eq!(t.version, 1);
        let g2 = t.get("G2[1]").unwrap().datum().unwrap();
        let fdeg = cuspidal_fdeg(&g2).unwrap();
        assert!(fdeg.numeric(2.0).unwrap().re > 0.0);
        assert!(DegreeTable::parse("version = 2").is_err());
        assert!(DegreeTable::parse("version = 1\nextra = 3").is_err());
    }

    #[test]
    fn invalid_data() {
        let mut c = pgl_anisotropic(3);
        c.omega_p = 0;
        assert!(cuspidal_fdeg(&c).is_err());
        let mut c = pgl_anisotropic(3);
        c.deg_sigma = CycloProduct::q_minus_one(5);
        assert!(cuspidal_fdeg(&c).is_err());
    }

    fn twist() -> impl Strategy<Value = IMat> {
        prop_oneof![
            Just(vec![vec![1]]),
            Just(vec![vec![-1]]),
            Just(vec![vec![0, -1], vec![1, -1]]),
            Just(vec![vec![0, -1], vec![1, 0]]),
            Just(vec![vec![0, 1], vec![1, 0]]),
        ]
    }

    fn block(a: &IMat, b: &IMat) -> IMat {
        let (n, m) = (a.len(), b.len());
        (0..n + m)
            .map(|i| (0..n + m).map(|j| match (i < n, j < n) {
                (true, true) => a[i][j],
                (false, false) => b[i - n][j - n],
                _ => 0,
            }).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn torus_order_is_multiplicative(a in twist(), b in twist()) {
            let ab = torus_order(&block(&a, &b)).unwrap();
            prop_assert_eq!(ab, torus_order(&a).unwrap().mul(&torus_order(&b).unwrap()));
        }

        #[test]
        fn orders_positive_at_small_q(n in 0i64..8, degs in proptest::collection::vec(1i64..7, 0..4)) {
            let p = group_order(&GroupOrderSpec { q_power: n, degrees: degs, torus_twist: None }).unwrap();
            for q0 in 2..=4 {
                let v = p.eval(&bigi(q0)).unwrap();
                prop_assert!(v.is_integer() && v.is_positive());
            }
        }

        #[test]
        fn volumes_multiply(d1 in 0i64..5, d2 in 0i64..5, n1 in 1i64..6, n2 in 1i64..6) {
            let a = CycloProduct::q_minus_one(n1).mul(&CycloProduct::q_power(d1));
            let b = CycloProduct::q_minus_one(n2);
            let lhs = parahoric_volume_factored(&a, d1 + 1).mul(&parahoric_volume_factored(&b, d2)).unwrap();
            prop_assert_eq!(lhs, parahoric_volume_factored(&a.mul(&b), d1 + 1 + d2));
        }

        #[test]
        fn fdeg_depends_on_the_normalized_ratio(k in 0i64..4) {
            let base = pgl_anisotropic(3);
            let shifted = CuspidalDatum {
                quotient_order: base.quotient_order.mul(&CycloProduct::q_power(k)),
                quotient_dim: base.quotient_dim + 2 * k,
                ..base.clone()
            };
            prop_assert_eq!(cuspidal_fdeg(&base).unwrap(), cuspidal_fdeg(&shifted).unwrap());
        }
    }
}

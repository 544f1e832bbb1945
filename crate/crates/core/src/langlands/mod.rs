//! Split unramified Langlands parameters, adjoint L- and gamma-factors, and
//! the dictionary with residual points.

use crate::exactalg::{frac, AlgError, FactoredFunction, TorusPoint, Q};
use crate::rootdata::RootDatum;
use crate::spectral::HeckeSpec;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LanglandsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grading {0:?} is not integral")]
    NonIntegralGrading(Vec<Q>),
    #[error("gamma factor vanishes to order {0} at s = 0")]
    NotDiscrete(i64),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `Fr~` acts on the root space of `alpha` by `zeta^(alpha . s) v^(alpha . h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedParam {
    pub dual: RootDatum,
    pub s: Vec<Q>,
    pub h: Vec<i64>,
    pub levi: Option<Vec<usize>>,
}

/// Multiplicities `m_n(zeta)` of `V_n` in each Frobenius eigenphase.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsotypicTable {
    pub entries: BTreeMap<(i64, Q), i64>,
}

impl IsotypicTable {
    /// `sum (n + 1) m_n(zeta)`.
    pub fn dimension(&self) -> i64 {
        self.entries.iter().map(|((n, _), m)| (n + 1) * m).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnhancementData {
    pub dim_rho: u64,
    pub s_nat_card: u64,
}

/// Value of `gamma(s)` at `s = 0`: the order of vanishing and the leading
/// coefficient with the omitted `(1 - q^-s)` factors dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma0 {
    pub value: FactoredFunction,
    pub order: i64,
    /// Artin conductor of the adjoint representation, zero when unramified.
    pub conductor: i64,
}

impl UnramifiedParam {
    pub fn new(dual: RootDatum, s: Vec<Q>, h: Vec<i64>) -> Result<Self, LanglandsError> {
        if s.len() != dual.rank() || h.len() != dual.rank() {
            return Err(LanglandsError::InvalidParameter("vector length differs from the rank".into()));
        }
        Ok(UnramifiedParam { dual, s: s.into_iter().map(frac).collect(), h, levi: None })
    }

    pub fn with_levi(mut self, levi: Vec<usize>) -> Result<Self, LanglandsError> {
        if levi.iter().any(|&j| j >= self.dual.simple().len()) {
            return Err(LanglandsError::InvalidParameter("levi refers to a missing simple root".into()));
        }
        self.levi = Some(levi);
        Ok(self)
    }

    fn weight(&self, i: usize) -> (i64, Q) {
        let a = self.dual.root(i);
        let n = a.iter().zip(&self.h).map(|(x, y)| x * y).sum();
        let z = frac(a.iter().zip(&self.s).map(|(x, y)| *y * *x).sum());
        (n, z)
    }

    /// Roots outside the Levi subsystem.
    fn outside_levi(&self) -> Vec<usize> {
        let levi = self.levi.clone().unwrap_or_default();
        (0..self.dual.num_roots())
            .filter(|&i| self.dual.simple_coords(i).iter().enumerate().any(|(j, &c)| c != 0 && !levi.contains(&j)))
            .collect()
    }

    /// The torus point `Fr~`: `x` takes the value `zeta^(x . s) v^(x . h)`.
    pub fn point(&self) -> TorusPoint {
        TorusPoint::new(self.s.clone(), self.h.iter().map(|&x| Q::from(x)).collect())
    }
}

fn table(weights: impl Iterator<Item = (i64, Q)>, cartan: i64) -> IsotypicTable {
    let mut g: BTreeMap<(i64, Q), i64> = BTreeMap::new();
    for w in weights {
        *g.entry(w).or_default() += 1;
    }
    if cartan > 0 {
        *g.entry((0, Q::zero())).or_default() += cartan;
    }
    let keys: std::collections::BTreeSet<(i64, Q)> =
        g.keys().flat_map(|&(n, z)| [(n, z), (n - 2, z)]).filter(|(n, _)| *n >= 0).collect();
    let mut entries = BTreeMap::new();
    for (n, z) in keys {
        let m = g.get(&(n, z)).copied().unwrap_or(0) - g.get(&(n + 2, z)).copied().unwrap_or(0);
        if m != 0 {
            entries.insert((n, z), m);
        }
    }
    IsotypicTable { entries }
}

/// `m_n(zeta) = dim g_n(zeta) - dim g_{n+2}(zeta)` on the adjoint
/// representation modulo the center.
pub fn sl2_isotypics(p: &UnramifiedParam) -> Result<IsotypicTable, LanglandsError> {
    let t = table((0..p.dual.num_roots()).map(|i| p.weight(i)), p.dual.semisimple_rank() as i64);
    if let Some(((n, z), m)) = t.entries.iter().find(|(_, &m)| m < 0) {
        return Err(LanglandsError::InvalidParameter(format!("m_{n}({z}) = {m} is negative")));
    }
    Ok(t)
}

fn euler_product(t: &IsotypicTable) -> Result<FactoredFunction, LanglandsError> {
    let mut l = FactoredFunction::one();
    for (&(n, z), &m) in &t.entries {
        l = l.mul(&FactoredFunction::factor(z, Q::from(-n), vec![1]).pow(-m)?)?;
    }
    Ok(l)
}

/// `L(s) = prod (1 - zeta v^-n z)^(-m_n(zeta))` in `z = q^-s`.
pub fn adjoint_l(p: &UnramifiedParam) -> Result<FactoredFunction, LanglandsError> {
    euler_product(&sl2_isotypics(p)?)
}

fn gamma_from_l(l: &FactoredFunction) -> Result<Gamma0, LanglandsError> {
    let at = |k: i64| TorusPoint::new(vec![Q::zero()], vec![Q::from(k)]);
    let num = l.eval_regularized(&at(-2))?;
    let den = l.eval_regularized(&at(0))?;
    debug_assert_eq!(num.pole_order(), 0);
    let value = num.value.div(&den.value)?;
    Ok(Gamma0 { value, order: den.pole_order() - num.pole_order(), conductor: 0 })
}

/// `gamma(0) = L(1) / L(0)` up to the root number, with the order of
/// vanishing at `s = 0`.
pub fn gamma0(p: &UnramifiedParam) -> Result<Gamma0, LanglandsError> {
    gamma_from_l(&adjoint_l(p)?)
}

/// The same pipeline on the root spaces outside the Levi; multiplicities
/// may be negative when `h` does not come from the Levi.
pub fn relative_gamma0(p: &UnramifiedParam) -> Result<Gamma0, LanglandsError> {
    let t = table(p.outside_levi().into_iter().map(|i| p.weight(i)), 0);
    gamma_from_l(&euler_product(&t)?)
}

pub fn relative_isotypics(p: &UnramifiedParam) -> IsotypicTable {
    table(p.outside_levi().into_iter().map(|i| p.weight(i)), 0)
}

/// `dim(rho) / |S_phi| * |gamma(0)|`.
pub fn hii_fdeg(p: &UnramifiedParam, e: EnhancementData) -> Result<FactoredFunction, LanglandsError> {
    if e.dim_rho == 0 || e.s_nat_card == 0 {
        return Err(LanglandsError::InvalidParameter("enhancement data must be positive".into()));
    }
    let g = gamma0(p)?;
    if g.order != 0 {
        return Err(LanglandsError::NotDiscrete(g.order));
    }
    let c = BigRational::new(e.dim_rho.into(), e.s_nat_card.into());
    Ok(g.value.positive_part().scale(&c)?)
}

/// The parameter whose Frobenius is the point `r` of the dual torus.
pub fn param_from_residual_point(spec: &HeckeSpec, r: &TorusPoint) -> Result<UnramifiedParam, LanglandsError> {
    if r.y.iter().any(|y| !y.is_integer()) {
        return Err(LanglandsError::NonIntegralGrading(r.y.clone()));
    }
    UnramifiedParam::new(spec.rd().clone(), r.s.clone(), r.y.iter().map(|y| y.to_integer()).collect())
}

pub fn residual_point_from_param(p: &UnramifiedParam) -> TorusPoint {
    p.point()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bigi, q, qi};
    use crate::rootdata::preset;

    fn a1(s: Q, h: i64) -> UnramifiedParam {
        UnramifiedParam::new(preset("A1-sc").unwrap(), vec![s], vec![h]).unwrap()
    }

    // A1-sc has basis alpha, so <alpha, h> = h
    fn a1_alpha(s: Q, n: i64) -> UnramifiedParam {
        a1(s, n)
    }

    #[test]
    fn isotypics_of_small_parameters() {
        let t = sl2_isotypics(&a1_alpha(qi(0), 2)).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((2, qi(0)), 1)]));
        let t = sl2_isotypics(&a1_alpha(qi(0), 0)).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((0, qi(0)), 3)]));
        let t = sl2_isotypics(&a1_alpha(qi(0), 1)).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((0, qi(0)), 1), ((1, qi(0)), 1)]));
        assert_eq!(t.dimension(), 3);
    }

    #[test]
    fn negative_multiplicity_is_rejected() {
        // weights +-4 with nothing at 2 cannot come from an sl2 triple
        assert!(matches!(sl2_isotypics(&a1_alpha(qi(0), 4)), Err(LanglandsError::InvalidParameter(_))));
    }

    #[test]
    fn l_functions() {
        let z = |ph: Q, n: i64, m: i64| FactoredFunction::factor(ph, qi(-n), vec![1]).pow(-m).unwrap();
        assert_eq!(adjoint_l(&a1_alpha(qi(0), 2)).unwrap(), z(qi(0), 2, 1));
        assert_eq!(adjoint_l(&a1_alpha(qi(0), 0)).unwrap(), z(qi(0), 0, 3));
        let want = z(qi(0), 0, 1).mul(&z(q(1, 2), 0, 2)).unwrap();
        assert_eq!(adjoint_l(&a1_alpha(q(1, 2), 0)).unwrap(), want);
    }

    #[test]
    fn gamma_of_principal_a1() {
        let g = gamma0(&a1_alpha(qi(0), 2)).unwrap();
        assert_eq!(g.order, 0);
        let want = FactoredFunction::factor(q(1, 2), qi(-2), vec![]).inv().unwrap();
        assert_eq!(g.value, want);
        assert_eq!(g.conductor, 0);
    }

    #[test]
    fn gamma_of_trivial_parameter_vanishes() {
        let g = gamma0(&a1_alpha(qi(0), 0)).unwrap();
        assert_eq!(g.order, 3);
        let e = EnhancementData { dim_rho: 1, s_nat_card: 1 };
        assert_eq!(hii_fdeg(&a1_alpha(qi(0), 0), e), Err(LanglandsError::NotDiscrete(3)));
    }

    #[test]
    fn hii_with_enhancement() {
        let p = a1_alpha(qi(0), 2);
        let g = gamma0(&p).unwrap().value.positive_part();
        let one = hii_fdeg(&p, EnhancementData { dim_rho: 1, s_nat_card: 1 }).unwrap();
        assert_eq!(one, g);
        let half = hii_fdeg(&p, EnhancementData { dim_rho: 1, s_nat_card: 2 }).unwrap();
        assert_eq!(half, g.scale(&bigi(2).recip()).unwrap());
    }

    #[test]
    fn relative_gamma() {
        let p = a1_alpha(qi(0), 2).with_levi(vec![0]).unwrap();
        let g = relative_gamma0(&p).unwrap();
        assert_eq!((g.value, g.order), (FactoredFunction::one(), 0));
        // dropping the Cartan removes one (1 - z)^-1 Euler factor
        let p = a1_alpha(qi(0), 2).with_levi(vec![]).unwrap();
        let rel = relative_gamma0(&p).unwrap();
        let full = gamma0(&a1_alpha(qi(0), 2)).unwrap();
        let cartan = FactoredFunction::factor(qi(0), qi(-2), vec![]).inv().unwrap();
        assert_eq!(rel.value, full.value.div(&cartan).unwrap());
        assert_eq!(rel.order, full.order - 1);
        let a2 = UnramifiedParam::new(preset("A2-sc").unwrap(), vec![qi(0); 2], vec![0, 0]).unwrap();
        let t = relative_isotypics(&a2.with_levi(vec![0]).unwrap());
        assert_eq!(t.dimension(), 4);
    }

    #[test]
    fn residual_point_dictionary() {
        let spec = HeckeSpec::iwahori(preset("A1-sc").unwrap()).unwrap();
        let r = TorusPoint::new(vec![q(1, 2)], vec![qi(2)]);
        let p = param_from_residual_point(&spec, &r).unwrap();
        assert_eq!((p.s.clone(), p.h.clone()), (vec![q(1, 2)], vec![2]));
        assert_eq!(residual_point_from_param(&p), r);
        let bad = TorusPoint::new(vec![qi(0)], vec![q(1, 2)]);
        assert!(matches!(param_from_residual_point(&spec, &bad), Err(LanglandsError::NonIntegralGrading(_))));
    }
}

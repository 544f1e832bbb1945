use super::{RootDataError, RootDatum};
use crate::exactalg::Q;
use num_traits::Zero;

/// Parameter exponents: `q_alpha^+ = v^kPlus(alpha)`, `q_alpha^- = v^kMinus(alpha)`,
/// stored per root index and constant on Weyl orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeckeParams {
    k_plus: Vec<Q>,
    k_minus: Vec<Q>,
}

impl HeckeParams {
    /// Equal parameters `kPlus = k`, `kMinus = 0` on every root.
    pub fn equal(rd: &RootDatum, k: Q) -> Self {
        HeckeParams { k_plus: vec![k; rd.num_roots()], k_minus: vec![Q::zero(); rd.num_roots()] }
    }

    /// Parameters given on the simple roots, extended along Weyl orbits.
    pub fn from_simple(rd: &RootDatum, k_plus: &[Q], k_minus: &[Q]) -> Result<Self, RootDataError> {
        let bad = |m: String| Err(RootDataError::InvalidParams(m));
        let ns = rd.simple().len();
        if k_plus.len() != ns || k_minus.len() != ns {
            return bad(format!("expected {ns} values per list"));
        }
        let orbit = rd.root_orbits();
        let mut kp = vec![None; rd.num_roots()];
        let mut km = vec![None; rd.num_roots()];
        for (j, &s) in rd.simple().iter().enumerate() {
            let o = orbit[s];
            match kp[o] {
                Some((p, m)) if (p, m) != (k_plus[j], k_minus[j]) => {
                    return bad(format!("simple roots {s} and an earlier one are conjugate but carry different parameters"));
                }
                _ => {
                    kp[o] = Some((k_plus[j], k_minus[j]));
                }
            }
        }
        let mut out_p = Vec::with_capacity(rd.num_roots());
        for i in 0..rd.num_roots() {
            let (p, m) = kp[orbit[i]].ok_or_else(|| RootDataError::InvalidParams("root orbit without a simple root".into()))?;
            out_p.push(p);
            km[i] = Some(m);
        }
        let out_m: Vec<Q> = km.into_iter().map(|m| m.expect("set above")).collect();
        let params = HeckeParams { k_plus: out_p, k_minus: out_m };
        params.validate(rd)?;
        Ok(params)
    }

    pub fn per_root(rd: &RootDatum, k_plus: Vec<Q>, k_minus: Vec<Q>) -> Result<Self, RootDataError> {
        let p = HeckeParams { k_plus, k_minus };
        p.validate(rd)?;
        Ok(p)
    }

    pub fn validate(&self, rd: &RootDatum) -> Result<(), RootDataError> {
        let bad = |m: String| Err(RootDataError::InvalidParams(m));
        if self.k_plus.len() != rd.num_roots() || self.k_minus.len() != rd.num_roots() {
            return bad("parameter list length differs from the number of roots".into());
        }
        let orbit = rd.root_orbits();
        for (i, &o) in orbit.iter().enumerate() {
            if (self.k_plus[i], self.k_minus[i]) != (self.k_plus[o], self.k_minus[o]) {
                return bad(format!("parameters not constant on the orbit of root {i}"));
            }
            if !self.k_minus[i].is_zero() && rd.coroot(i).iter().any(|c| c % 2 != 0) {
                return bad(format!("kMinus nonzero on root {i} whose coroot is not in 2Y"));
            }
        }
        Ok(())
    }

    pub fn k_plus(&self, i: usize) -> Q {
        self.k_plus[i]
    }

    pub fn k_minus(&self, i: usize) -> Q {
        self.k_minus[i]
    }

    /// Exponent of `q(s_alpha) = q_alpha^+ q_alpha^-`.
    pub fn reflection_exponent(&self, i: usize) -> Q {
        self.k_plus[i] + self.k_minus[i]
    }

    /// Values on the simple roots, in order.
    pub fn simple_values(&self, rd: &RootDatum) -> (Vec<Q>, Vec<Q>) {
        rd.simple().iter().map(|&s| (self.k_plus[s], self.k_minus[s])).unzip()
    }

    pub fn scale(&self, eps: Q) -> Self {
        HeckeParams {
            k_plus: self.k_plus.iter().map(|k| *k * eps).collect(),
            k_minus: self.k_minus.iter().map(|k| *k * eps).collect(),
        }
    }

    /// Restriction to the roots `idx` of a sub root datum.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        HeckeParams {
            k_plus: idx.iter().map(|&i| self.k_plus[i]).collect(),
            k_minus: idx.iter().map(|&i| self.k_minus[i]).collect(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.restrict(perm)
    }
}

use super::{HeckeSpec, SpectralError};
use crate::exactalg::{frac, TorusPoint, Q};
use crate::lattice::{hnf, mat_vec, saturation, smith, solve_q, IMat};
use crate::rootdata::{parabolic, RootDatum};
use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_ENUM_RANK: usize = 6;
const MAX_CANDIDATE_SYSTEMS: u128 = 20_000_000;

/// Pole and zero counts of `mu` along a coset, with its codimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Certificate {
    pub poles: usize,
    pub zeros: usize,
    pub codim: usize,
}

impl Certificate {
    pub fn is_residual(&self) -> bool {
        self.poles as i64 - self.zeros as i64 == self.codim as i64
    }
}

/// The coset `r_L T^L`, where `T^L` is the subtorus cut out by the
/// standard parabolic subsystem `parabolic`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidualCoset {
    pub parabolic: Vec<usize>,
    pub r_l: TorusPoint,
    pub certificate: Certificate,
}

impl ResidualCoset {
    pub fn dim(&self, rank: usize) -> usize {
        rank - self.certificate.codim
    }

    pub fn is_point(&self, rank: usize) -> bool {
        self.dim(rank) == 0
    }

    /// The whole torus.
    pub fn full(rank: usize) -> Self {
        ResidualCoset {
            parabolic: Vec::new(),
            r_l: TorusPoint::identity(rank),
            certificate: Certificate { poles: 0, zeros: 0, codim: 0 },
        }
    }
}

fn subsystem(rd: &RootDatum, subset: &[usize]) -> Vec<usize> {
    (0..rd.num_roots())
        .filter(|&i| rd.simple_coords(i).iter().enumerate().all(|(j, &c)| c == 0 || subset.contains(&j)))
        .collect()
}

fn pole_zero(spec: &HeckeSpec, i: usize, r: &TorusPoint) -> (bool, bool) {
    let (ph, k) = r.char_value(spec.rd().root(i));
    let half = Q::new(1, 2);
    let p = spec.params();
    let pole = (ph.is_zero() && k == p.k_plus(i)) || (ph == half && k == p.k_minus(i));
    let zero = k.is_zero() && (ph.is_zero() || ph == half);
    (pole, zero)
}

/// Counts for the coset `r T^L`, `L` given by a subset of the simple roots:
/// poles are roots with `alpha(r)` in `{q_alpha^+, -q_alpha^-}`, zeros are
/// roots with `alpha(r) = +-1`, both among the roots constant on the coset.
pub fn pole_zero_counts(spec: &HeckeSpec, subset: &[usize], r: &TorusPoint) -> Certificate {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let (mut poles, mut zeros) = (0, 0);
    for i in subsystem(spec.rd(), &subset) {
        let (p, z) = pole_zero(spec, i, r);
        poles += usize::from(p);
        zeros += usize::from(z);
    }
    Certificate { poles, zeros, codim: subset.len() }
}

/// Residuality test with the guard `poles - zeros <= codim`.
pub fn is_residual(spec: &HeckeSpec, subset: &[usize], r: &TorusPoint) -> Result<Certificate, SpectralError> {
    let c = pole_zero_counts(spec, subset, r);
    if c.poles as i64 - c.zeros as i64 > c.codim as i64 {
        return Err(SpectralError::InternalInvariantViolation(format!(
            "{} poles and {} zeros exceed codimension {} at {:?}",
            c.poles, c.zeros, c.codim, r
        )));
    }
    Ok(c)
}

/// Candidate points `r_L` in `T_L` for the standard parabolic `subset`: for
/// every independent set of positive roots of the subsystem and every
/// assignment of pole values, all solutions of the resulting system.
pub fn coset_candidates(spec: &HeckeSpec, subset: &[usize]) -> Result<Vec<TorusPoint>, SpectralError> {
    let rd = spec.rd();
    let n = rd.rank();
    let j = subset.len();
    if j == 0 {
        return Ok(vec![TorusPoint::identity(n)]);
    }
    let simple: Vec<usize> = subset.iter().map(|&k| rd.simple()[k]).collect();
    let positive: Vec<usize> = subsystem(rd, subset).into_iter().filter(|&i| rd.is_positive(i)).collect();
    let systems = binomial(positive.len(), j) * 4u128.pow(j as u32);
    if systems > MAX_CANDIDATE_SYSTEMS {
        return Err(SpectralError::SearchSpaceTooLarge(systems));
    }
    let combos: Vec<Vec<usize>> = positive.iter().copied().combinations(j).collect();
    let points: BTreeSet<TorusPoint> = combos
        .par_iter()
        .map(|betas| {
            let c: IMat = betas
                .iter()
                .map(|&b| simple.iter().map(|&a| crate::lattice::dot(rd.root(b), rd.coroot(a))).collect())
                .collect();
            let mut out = Vec::new();
            if crate::lattice::det(&c) == 0 {
                return out;
            }
            let cq: Vec<Vec<Q>> = c.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
            let sm = smith(&c, j);
            let values: Vec<Vec<(Q, Q)>> = betas
                .iter()
                .map(|&b| {
                    let (kp, km) = (spec.params().k_plus(b), spec.params().k_minus(b));
                    let half = Q::new(1, 2);
                    let mut v = vec![(Q::zero(), kp), (Q::zero(), -kp), (half, km), (half, -km)];
                    v.sort();
                    v.dedup();
                    v
                })
                .collect();
            for choice in values.iter().map(|v| v.iter()).multi_cartesian_product() {
                let f: Vec<Q> = choice.iter().map(|(_, k)| *k).collect();
                let e: Vec<Q> = choice.iter().map(|(p, _)| *p).collect();
                let cy = solve_q(&cq, &f).expect("nonsingular");
                let y = combine(rd, &simple, &cy, n);
                for c_s in phase_solutions(&sm, &e) {
                    let s = combine(rd, &simple, &c_s, n);
                    out.push(TorusPoint::new(s, y.clone()));
                }
            }
            out
        })
        .flatten()
        .collect();
    Ok(points.into_iter().collect())
}

fn combine(rd: &RootDatum, simple: &[usize], c: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (k, &a) in simple.iter().enumerate() {
        for (t, o) in out.iter_mut().enumerate() {
            *o += c[k] * rd.coroot(a)[t];
        }
    }
    out
}

/// All `c` modulo `Z^j` with `C c = e` modulo `Z^j`, using `U C V = D`.
fn phase_solutions(sm: &crate::lattice::Smith, e: &[Q]) -> Vec<Vec<Q>> {
    let j = e.len();
    let ue: Vec<Q> = sm.u.iter().map(|row| row.iter().zip(e).map(|(a, b)| *b * *a).sum()).collect();
    let ranges: Vec<Vec<i64>> = sm.d.iter().map(|&d| (0..d.abs()).collect()).collect();
    let mut out = Vec::new();
    for m in ranges.iter().map(|r| r.iter()).multi_cartesian_product() {
        let cp: Vec<Q> = (0..j).map(|i| (ue[i] + Q::from(*m[i])) / Q::from(sm.d[i])).collect();
        let c: Vec<Q> = (0..j).map(|i| frac((0..j).map(|k| cp[k] * sm.v[i][k]).sum())).collect();
        out.push(c);
    }
    if j == 0 {
        out.push(Vec::new());
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// W_0-invariant description of a coset: the roots constant on it and the
/// values there of a canonical basis of the characters constant on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitKey {
    pub roots: Vec<usize>,
    pub basis: IMat,
    pub values: Vec<(Q, Q)>,
}

pub fn orbit_key(spec: &HeckeSpec, subset: &[usize], r: &TorusPoint) -> OrbitKey {
    let rd = spec.rd();
    let roots = subsystem(rd, subset);
    let sat = saturation(&roots.iter().map(|&i| rd.root(i).to_vec()).collect(), rd.rank());
    spec.weyl()
        .elements
        .iter()
        .map(|w| {
            let mut img: Vec<usize> =
                roots.iter().map(|&i| rd.root_index(&w.act(rd.root(i))).expect("permutes roots")).collect();
            img.sort_unstable();
            let basis = hnf(&sat.iter().map(|b| mat_vec(&w.matrix, b)).collect(), rd.rank());
            let wr = w.act_point(r);
            let values = basis.iter().map(|b| wr.char_value(b)).collect();
            OrbitKey { roots: img, basis, values }
        })
        .min()
        .expect("nonempty group")
}

/// All residual cosets up to `W_0`, one representative per orbit, sorted by
/// codimension and then by representative.
pub fn enumerate_residual_cosets(spec: &HeckeSpec) -> Result<Vec<ResidualCoset>, SpectralError> {
    enumerate(spec, None)
}

/// Residual points up to `W_0`.
pub fn enumerate_residual_points(spec: &HeckeSpec) -> Result<Vec<ResidualCoset>, SpectralError> {
    if spec.rd().semisimple_rank() < spec.rank() {
        return Ok(Vec::new());
    }
    enumerate(spec, Some(spec.rank()))
}

fn enumerate(spec: &HeckeSpec, codim: Option<usize>) -> Result<Vec<ResidualCoset>, SpectralError> {
    let rd = spec.rd();
    if rd.rank() > MAX_ENUM_RANK {
        return Err(SpectralError::RankTooLarge(rd.rank()));
    }
    let ns = rd.simple().len();
    let subsets: Vec<Vec<usize>> = (0..=ns)
        .filter(|&k| codim.is_none_or(|c| c == k))
        .flat_map(|k| (0..ns).combinations(k))
        .collect();
    let found: Vec<(OrbitKey, ResidualCoset)> = subsets
        .par_iter()
        .map(|subset| -> Result<Vec<(OrbitKey, ResidualCoset)>, SpectralError> {
            let mut out = Vec::new();
            for r in coset_candidates(spec, subset)? {
                let cert = is_residual(spec, subset, &r)?;
                if cert.is_residual() {
                    let coset = ResidualCoset { parabolic: subset.clone(), r_l: r.clone(), certificate: cert };
                    out.push((orbit_key(spec, subset, &r), coset));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut best: BTreeMap<OrbitKey, ResidualCoset> = BTreeMap::new();
    for (k, c) in found {
        match best.get(&k) {
            Some(b) if rep_order(b) <= rep_order(&c) => {}
            _ => {
                best.insert(k, c);
            }
        }
    }
    let mut out: Vec<ResidualCoset> = best.into_values().collect();
    out.sort_by(|a, b| rep_order(a).cmp(&rep_order(b)));
    Ok(out)
}

fn rep_order(c: &ResidualCoset) -> (usize, &Vec<usize>, &TorusPoint) {
    (c.certificate.codim, &c.parabolic, &c.r_l)
}

/// Residue data of `mu` along the coset given by `subset` through `r`,
/// computed through the parabolic splitting (used by the residue module).
pub(crate) fn coset_pullback(
    spec: &HeckeSpec,
    subset: &[usize],
    r: &TorusPoint,
) -> Result<(crate::exactalg::Regularized, usize), SpectralError> {
    let par = parabolic(spec.rd(), subset)?;
    let reg = spec.inverse_c_product().pullback_regularized(&par.projection, r)?;
    Ok((reg, par.codim()))
}

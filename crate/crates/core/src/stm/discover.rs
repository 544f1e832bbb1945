use super::{verify_stm, SpectralMap, StmError, StmVerdict};
use crate::exactalg::{frac, TorusPoint, Q};
use crate::lattice::{det, IMat};
use crate::spectral::{enumerate_residual_cosets, HeckeSpec};
use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

const MAX_CANDIDATES: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscoveryBounds {
    /// Entries of `B` range over `[-entry, entry]`.
    pub entry: i64,
    /// Twists of `T^L` use phases with denominator at most this.
    pub phase_denominator: i64,
}

impl DiscoveryBounds {
    pub fn uniform(bound: i64) -> Self {
        DiscoveryBounds { entry: bound, phase_denominator: bound }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DiscoveryResult {
    pub maps: Vec<(SpectralMap, BigRational)>,
    pub near_misses: Vec<(SpectralMap, BigRational, Q)>,
}

fn matrices(n: usize, bound: i64) -> Vec<IMat> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n * n)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .map(|e| e.chunks(n).map(|r| r.to_vec()).collect::<IMat>())
        .filter(|m| det(m) != 0)
        .collect()
}

fn twists(dim: usize, den: i64) -> Vec<Vec<Q>> {
    let phases: BTreeSet<Q> = (1..=den.max(1)).flat_map(|d| (0..d).map(move |j| frac(Q::new(j, d)))).collect();
    let out: BTreeSet<Vec<Q>> =
        (0..dim).map(|_| phases.iter().copied()).multi_cartesian_product().collect();
    if dim == 0 {
        return vec![Vec::new()];
    }
    out.into_iter().collect()
}

/// Every map `t -> r_L * twist * B(t)` into a residual coset of the target of
/// dimension `rank(source)`, with `B` and the twist inside the bounds, that
/// verifies; maps with a leftover `v`-power are reported separately.
pub fn discover_stms(source: &HeckeSpec, target: &HeckeSpec, bounds: DiscoveryBounds) -> Result<DiscoveryResult, StmError> {
    let n1 = source.rank();
    let cosets: Vec<_> = enumerate_residual_cosets(target)?
        .into_iter()
        .filter(|c| c.dim(target.rank()) == n1)
        .collect();
    let bs = (2 * bounds.entry as u128 + 1).pow((n1 * n1) as u32);
    let tw = twists(n1, bounds.phase_denominator);
    let total = bs * tw.len() as u128 * cosets.len() as u128;
    if total > MAX_CANDIDATES {
        return Err(StmError::SearchSpaceTooLarge(total));
    }
    let bmats = matrices(n1, bounds.entry);
    let (bref, tref) = (&bmats, &tw);
    let jobs: Vec<(usize, &IMat, &Vec<Q>)> = (0..cosets.len())
        .flat_map(|c| bref.iter().flat_map(move |b| tref.iter().map(move |t| (c, b, t))))
        .collect();
    let found: Vec<(SpectralMap, StmVerdict)> = jobs
        .par_iter()
        .filter_map(|&(c, b, t)| {
            let m = SpectralMap::from_coset(source.clone(), target.clone(), cosets[c].clone(), b.clone(), t).ok()?;
            let v = verify_stm(&m).ok()?;
            Some((m, v))
        })
        .collect();
    let mut best: BTreeMap<(IMat, TorusPoint), (SpectralMap, StmVerdict)> = BTreeMap::new();
    for (m, v) in found {
        best.entry(m.canonical_key()).or_insert((m, v));
    }
    let mut out = DiscoveryResult::default();
    for (_, (m, v)) in best {
        match v {
            StmVerdict::Verified { d } => out.maps.push((m, d)),
            StmVerdict::NearMiss { c, k } => out.near_misses.push((m, c, k)),
        }
    }
    Ok(out)
}

//! Canonical form of the pure `v` part of a product.
//!
//! Write every factor `1 - zeta^p v^k` at a common level `w = v^(1/L)` and
//! split it into linear factors `1 - rho w`. The multiset of `rho` is
//! intrinsic. If it is invariant under rotation by the `M`-th roots of
//! unity for maximal `M`, the product lies in `C(w^M)` and nowhere lower, so
//! each rotation orbit merges back into one factor `1 - rho^M w^M`.

use super::{frac, lcm_denoms, CycloFactor, Q};
use std::collections::BTreeMap;

pub(crate) fn canonical_vpart(entries: &[(Q, Q, i64)]) -> Vec<(CycloFactor, i64)> {
    let level = lcm_denoms(entries.iter().map(|(_, k, _)| k));
    let mut roots: BTreeMap<Q, i64> = BTreeMap::new();
    for &(p, k, m) in entries {
        let n = (k * level).to_integer();
        for j in 0..n {
            *roots.entry(frac((p + j) / n)).or_default() += m;
        }
    }
    roots.retain(|_, m| *m != 0);
    if roots.is_empty() {
        return Vec::new();
    }
    let size = roots.len() as i64;
    let period = (1..=size)
        .rev()
        .find(|&m| size % m == 0 && invariant(&roots, m))
        .unwrap_or(1);
    let step = Q::new(1, period);
    let v_exp = Q::new(period, level);
    roots
        .iter()
        .filter(|(rho, _)| **rho < step)
        .map(|(rho, m)| (CycloFactor::new(*rho * period, v_exp, Vec::new()), *m))
        .collect()
}

fn invariant(roots: &BTreeMap<Q, i64>, m: i64) -> bool {
    let step = Q::new(1, m);
    roots.iter().all(|(rho, mult)| roots.get(&frac(*rho + step)) == Some(mult))
}

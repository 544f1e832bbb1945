use super::{HeckeParams, RootDataError, RootDatum};
use crate::exactalg::{TorusPoint, UniPoly, Q};
use crate::lattice::{mat_t_vec_q, mat_vec, IMat};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};

pub const DEFAULT_WEYL_BOUND: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub length: usize,
    pub matrix: IMat,
    pub inverse: IMat,
}

impl WeylElement {
    pub fn act(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, x)
    }

    /// The point `w r`, characterized by `x(w r) = (w^{-1} x)(r)`.
    pub fn act_point(&self, r: &TorusPoint) -> TorusPoint {
        TorusPoint::new(mat_t_vec_q(&self.inverse, &r.s), mat_t_vec_q(&self.inverse, &r.y))
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("nonempty group")
    }
}

/// Enumerate the finite Weyl group, sorted by length and then matrix.
pub fn weyl_group(rd: &RootDatum, bound: usize) -> Result<WeylGroup, RootDataError> {
    let n = rd.rank();
    let id = crate::lattice::identity(n);
    let gens: Vec<IMat> = rd.simple().iter().map(|&s| rd.reflection_matrix(s)).collect();
    let mut seen: HashMap<IMat, IMat> = HashMap::new();
    seen.insert(id.clone(), id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let inv = seen[&m].clone();
        for g in &gens {
            let next = rd.compose(g, &m);
            if !seen.contains_key(&next) {
                if seen.len() >= bound {
                    return Err(RootDataError::GroupTooLarge(bound));
                }
                seen.insert(next.clone(), rd.compose(&inv, g));
                queue.push_back(next);
            }
        }
    }
    let positive = rd.positive_roots();
    let mut elements: Vec<WeylElement> = seen
        .into_iter()
        .map(|(matrix, inverse)| {
            let length = positive
                .iter()
                .filter(|&&i| {
                    let img = mat_vec(&matrix, rd.root(i));
                    !rd.is_positive(rd.root_index(&img).expect("Weyl element permutes roots"))
                })
                .count();
            WeylElement { length, matrix, inverse }
        })
        .collect();
    elements.sort();
    Ok(WeylGroup { elements })
}

/// Weighted Poincaré polynomial: the sum over `W_0` of `q(w)`, where a
/// reflection in `alpha` has weight `v^(kPlus + kMinus)`.
pub fn poincare_q(rd: &RootDatum, params: &HeckeParams, bound: usize) -> Result<UniPoly, RootDataError> {
    let w = weyl_group(rd, bound)?;
    let positive = rd.positive_roots();
    let mut p = UniPoly::zero();
    for e in &w.elements {
        let mut k = Q::zero();
        for &i in &positive {
            let img = mat_vec(&e.matrix, rd.root(i));
            if !rd.is_positive(rd.root_index(&img).expect("permutes roots")) {
                k += params.reflection_exponent(i);
            }
        }
        p.add_term(k, BigRational::one());
    }
    Ok(p)
}

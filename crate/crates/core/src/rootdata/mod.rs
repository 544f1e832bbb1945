//! Based root data, Weyl groups, Hecke parameters and parabolic subsystems.
//!
//! Lattices are `Z^rank`. Coroots are stored in the dual basis, so the
//! pairing of `x` and `y` is the dot product; an explicit pairing matrix is
//! accepted on input and folded into the coroots.

mod file;
mod params;
mod parabolic;
mod presets;
mod weyl;

pub use file::RootDatumSection;
pub use params::HeckeParams;
pub use parabolic::{parabolic, Parabolic};
pub use presets::preset;
pub use weyl::{poincare_q, weyl_group, WeylElement, WeylGroup, DEFAULT_WEYL_BOUND};

use crate::lattice::{coords_in_span, dot, mat_mul, rank, IMat};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid root datum: {0}")]
    Invalid(String),
    #[error("Weyl group exceeds the bound {0}")]
    GroupTooLarge(usize),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    simple_coords: Vec<Vec<i64>>,
    positive: Vec<bool>,
    negative_of: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootDatum {
    /// Validate and build. `pairing[i][j]` is the pairing of the `i`-th basis
    /// character with the `j`-th basis cocharacter (identity if `None`).
    pub fn new(
        rank_: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: Option<IMat>,
        simple: Vec<usize>,
    ) -> Result<Self, RootDataError> {
        let bad = |m: String| Err(RootDataError::Invalid(m));
        if roots.len() != coroots.len() {
            return bad("root and coroot lists differ in length".into());
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank_) {
            return bad("vector length differs from the rank".into());
        }
        let coroots: Vec<Vec<i64>> = match &pairing {
            None => coroots,
            Some(p) => {
                if p.len() != rank_ || p.iter().any(|r| r.len() != rank_) {
                    return bad("pairing matrix has the wrong shape".into());
                }
                coroots.iter().map(|y| p.iter().map(|r| dot(r, y)).collect()).collect()
            }
        };
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.iter().all(|&a| a == 0) {
                return bad("zero root".into());
            }
            if index.insert(r.clone(), i).is_some() {
                return bad(format!("duplicate root {r:?}"));
            }
        }
        for (a, c) in roots.iter().zip(&coroots) {
            if dot(a, c) != 2 {
                return bad(format!("root {a:?} pairs to {} with its coroot", dot(a, c)));
            }
            if index.contains_key(&a.iter().map(|x| 2 * x).collect::<Vec<_>>()) {
                return bad("non-reduced root systems are not supported".into());
            }
        }
        let mut negative_of = Vec::with_capacity(roots.len());
        for (a, c) in roots.iter().zip(&coroots) {
            let na: Vec<i64> = a.iter().map(|x| -x).collect();
            match index.get(&na) {
                Some(&j) if coroots[j].iter().zip(c).all(|(p, q)| *p == -q) => negative_of.push(j),
                _ => return bad(format!("root set not closed under negation at {a:?}")),
            }
        }
        for (a, ac) in roots.iter().zip(&coroots) {
            for (b, bc) in roots.iter().zip(&coroots) {
                let n = dot(b, ac);
                let img: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - n * y).collect();
                let Some(&k) = index.get(&img) else {
                    return bad(format!("reflection in {a:?} does not preserve the roots"));
                };
                let m = dot(a, bc);
                let cimg: Vec<i64> = bc.iter().zip(ac).map(|(x, y)| x - m * y).collect();
                if coroots[k] != cimg {
                    return bad(format!("reflection in {a:?} does not preserve the coroots"));
                }
            }
        }
        if simple.iter().any(|&i| i >= roots.len()) {
            return bad("simple index out of range".into());
        }
        let sroots: IMat = simple.iter().map(|&i| roots[i].clone()).collect();
        if rank(&sroots) != simple.len() {
            return bad("simple roots are linearly dependent".into());
        }
        let mut simple_coords = Vec::with_capacity(roots.len());
        let mut positive = Vec::with_capacity(roots.len());
        for r in &roots {
            let Some(c) = coords_in_span(&sroots, r) else {
                return bad(format!("root {r:?} is outside the span of the simple roots"));
            };
            if c.iter().any(|q| !q.is_integer()) {
                return bad(format!("root {r:?} is not an integral combination of simple roots"));
            }
            let c: Vec<i64> = c.iter().map(|q| q.to_integer()).collect();
            let pos = c.iter().all(|&a| a >= 0);
            if !pos && !c.iter().all(|&a| a <= 0) {
                return bad(format!("root {r:?} has mixed signs in the simple basis"));
            }
            simple_coords.push(c);
            positive.push(pos);
        }
        Ok(RootDatum { rank: rank_, roots, coroots, simple, simple_coords, positive, negative_of, index })
    }

    pub fn torus(n: usize) -> Self {
        Self::new(n, Vec::new(), Vec::new(), None, Vec::new()).expect("torus")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    /// Root indices of the simple roots, in order.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.positive[i]).collect()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        self.negative_of[i]
    }

    /// Coefficients of a root in the simple roots.
    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coords[i].iter().sum()
    }

    pub fn root_index(&self, x: &[i64]) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.simple.len() == self.rank
    }

    /// Matrix of the reflection in root `i`, acting on column vectors of `X`.
    pub fn reflection_matrix(&self, i: usize) -> IMat {
        let (a, c) = (&self.roots[i], &self.coroots[i]);
        (0..self.rank)
            .map(|r| (0..self.rank).map(|col| i64::from(r == col) - a[r] * c[col]).collect())
            .collect()
    }

    /// Permutation of root indices induced by a matrix on `X`.
    pub fn root_permutation(&self, m: &IMat) -> Option<Vec<usize>> {
        self.roots
            .iter()
            .map(|r| self.root_index(&m.iter().map(|row| dot(row, r)).collect::<Vec<_>>()))
            .collect()
    }

    /// Index of the highest root of an irreducible root system.
    pub fn highest_root(&self) -> Option<usize> {
        let best = self.positive_roots().into_iter().max_by_key(|&i| self.height(i))?;
        let top = self.height(best);
        (self.positive_roots().iter().filter(|&&i| self.height(i) == top).count() == 1).then_some(best)
    }

    /// W_0-orbit label of every root (the smallest index in the orbit).
    pub fn root_orbits(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.roots.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut j = i;
            while p[j] != r {
                let n = p[j];
                p[j] = r;
                j = n;
            }
            r
        }
        for &s in &self.simple {
            let m = self.reflection_matrix(s);
            let perm = self.root_permutation(&m).expect("reflection permutes roots");
            for (j, &k) in perm.iter().enumerate() {
                let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.roots.len()).map(|i| find(&mut parent, i)).collect()
    }

    /// Same root datum with the roots listed in another order; `perm[i]` is
    /// the old index of the new `i`-th root.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, RootDataError> {
        let roots = perm.iter().map(|&i| self.roots[i].clone()).collect();
        let coroots = perm.iter().map(|&i| self.coroots[i].clone()).collect();
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let simple = self.simple.iter().map(|&s| inv[s]).collect();
        Self::new(self.rank, roots, coroots, None, simple)
    }

    pub(crate) fn compose(&self, a: &IMat, b: &IMat) -> IMat {
        mat_mul(a, b, self.rank, self.rank)
    }
}

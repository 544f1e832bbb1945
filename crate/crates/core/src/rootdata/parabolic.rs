use super::{RootDataError, RootDatum};
use crate::lattice::{det, hnf, integer_kernel, saturation, IMat};

/// A standard parabolic subsystem together with the splitting of the torus
/// into the subtorus `T_L` (Lie algebra spanned by the coroots of the
/// subsystem) and `T^L` (identity component of the kernel of its roots).
#[derive(Clone, Debug)]
pub struct Parabolic {
    /// Positions in the list of simple roots.
    pub subset: Vec<usize>,
    /// Root indices of the subsystem.
    pub roots: Vec<usize>,
    pub levi: RootDatum,
    /// Basis of the characters that are constant on every coset of `T^L`
    /// (the saturation of the root lattice of the subsystem), in Hermite form.
    pub constant_lattice: IMat,
    /// Rows form a basis of the cocharacters of `T^L`; as a matrix it maps
    /// `X` onto the character lattice of `T^L`.
    pub projection: IMat,
    /// Order of the finite group `T_L ∩ T^L`.
    pub k_l_order: i64,
}

impl Parabolic {
    pub fn dim_t_upper(&self) -> usize {
        self.projection.len()
    }

    pub fn codim(&self) -> usize {
        self.subset.len()
    }
}

pub fn parabolic(rd: &RootDatum, subset: &[usize]) -> Result<Parabolic, RootDataError> {
    let ns = rd.simple().len();
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if subset.iter().any(|&j| j >= ns) {
        return Err(RootDataError::Invalid("parabolic subset refers to a missing simple root".into()));
    }
    let roots: Vec<usize> = (0..rd.num_roots())
        .filter(|&i| rd.simple_coords(i).iter().enumerate().all(|(j, &c)| c == 0 || subset.contains(&j)))
        .collect();
    let pos = |i: usize| roots.iter().position(|&r| r == i).expect("simple root in subsystem");
    let simple: Vec<usize> = subset.iter().map(|&j| pos(rd.simple()[j])).collect();
    let levi = RootDatum::new(
        rd.rank(),
        roots.iter().map(|&i| rd.root(i).to_vec()).collect(),
        roots.iter().map(|&i| rd.coroot(i).to_vec()).collect(),
        None,
        simple,
    )?;
    let n = rd.rank();
    let sroots: IMat = subset.iter().map(|&j| rd.root(rd.simple()[j]).to_vec()).collect();
    let scoroots: IMat = subset.iter().map(|&j| rd.coroot(rd.simple()[j]).to_vec()).collect();
    let constant_lattice = saturation(&sroots, n);
    let projection = if sroots.is_empty() { crate::lattice::identity(n) } else { hnf(&integer_kernel(&sroots, n), n) };
    let orth = if scoroots.is_empty() { crate::lattice::identity(n) } else { integer_kernel(&scoroots, n) };
    let mut both = constant_lattice.clone();
    both.extend(orth);
    let k_l_order = det(&both).abs();
    Ok(Parabolic { subset, roots, levi, constant_lattice, projection, k_l_order })
}

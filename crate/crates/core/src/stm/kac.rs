use super::{unit_of, SpectralMap, StmError};
use crate::exactalg::{FactoredFunction, Unit, Q};
use crate::rootdata::RootDatum;
use num_traits::{One, Zero};

/// Marks of the untwisted affine diagram: `1` on the extra node `0`, then
/// the coefficients of the highest root in the simple roots.
pub fn kac_marks(rd: &RootDatum) -> Option<Vec<i64>> {
    let h = rd.highest_root()?;
    let mut marks = vec![1];
    marks.extend_from_slice(rd.simple_coords(h));
    Some(marks)
}

/// Caller-supplied diagram data: marks per node and optionally the nodes
/// claimed to be constant under the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacSkeleton {
    pub marks: Vec<i64>,
    pub j: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramData {
    pub marks: Vec<i64>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub weights: Vec<Unit>,
}

/// Weight of each affine node under the map: node `0` carries minus the
/// highest root, node `i` the `i`-th simple root.
pub fn diagram_weights(m: &SpectralMap, kac: &KacSkeleton) -> Result<DiagramData, StmError> {
    let rd = m.target.rd();
    let h = rd
        .highest_root()
        .ok_or_else(|| StmError::DimensionMismatch("target root system is not irreducible".into()))?;
    let nodes = rd.simple().len() + 1;
    if kac.marks.len() != nodes {
        return Err(StmError::DimensionMismatch(format!("expected {nodes} marks")));
    }
    let mut gradients: Vec<Vec<i64>> = vec![rd.root(h).iter().map(|a| -a).collect()];
    gradients.extend(rd.simple().iter().map(|&s| rd.root(s).to_vec()));
    let weights: Vec<Unit> = gradients.iter().map(|g| unit_of(&m.base, &m.a, g)).collect();
    let mut prod = Unit::one();
    for (w, &n) in weights.iter().zip(&kac.marks) {
        prod = prod.mul(&w.pow(n))?;
    }
    if !prod.is_one() {
        return Err(StmError::RelationViolated(FactoredFunction::from_unit(prod).to_string()));
    }
    let constant = |w: &Unit| w.x.is_empty() && w.phase.is_zero() && w.mag.is_one() && w.v_exp >= Q::zero();
    let j: Vec<usize> = match &kac.j {
        Some(j) => {
            if let Some(&bad) = j.iter().find(|&&i| i >= nodes || !constant(&weights[i])) {
                let shown = weights.get(bad).map_or("missing".to_string(), |w| FactoredFunction::from_unit(w.clone()).to_string());
                return Err(StmError::NotInAlcovePosition(bad, shown));
            }
            let mut j = j.clone();
            j.sort_unstable();
            j.dedup();
            j
        }
        None => (0..nodes).filter(|&i| constant(&weights[i])).collect(),
    };
    let k = (0..nodes).filter(|i| !j.contains(i)).collect();
    Ok(DiagramData { marks: kac.marks.clone(), j, k, weights })
}

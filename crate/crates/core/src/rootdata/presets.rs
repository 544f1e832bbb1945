use super::{RootDataError, RootDatum};
use crate::lattice::IMat;
use std::collections::{BTreeSet, VecDeque};

/// `a[i][j]` is the pairing of the simple root `j` with the simple coroot `i`.
fn cartan(kind: char, n: usize) -> Option<IMat> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut IMat, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match (kind, n) {
        ('A', n) if n >= 1 => chain(&mut a, n),
        ('B', n) if n >= 2 => {
            chain(&mut a, n);
            a[n - 1][n - 2] = -2;
        }
        ('C', n) if n >= 2 => {
            chain(&mut a, n);
            a[n - 2][n - 1] = -2;
        }
        ('D', n) if n >= 3 => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        ('G', 2) => {
            // first simple root long
            a[0][1] = -1;
            a[1][0] = -3;
        }
        ('F', 4) => {
            chain(&mut a, 4);
            a[2][1] = -2;
        }
        ('E', n) if (6..=8).contains(&n) => {
            // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            for &(i, j) in edges.iter().filter(|(i, j)| *i < n && *j < n) {
                a[i][j] = -1;
                a[j][i] = -1;
            }
        }
        _ => return None,
    }
    Some(a)
}

/// Positive (root, coroot) pairs in simple-root and simple-coroot coordinates.
fn root_pairs(a: &IMat) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = a.len();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = (0..n).map(|i| (unit(i), unit(i))).collect();
    let mut out = Vec::new();
    while let Some((c, d)) = queue.pop_front() {
        if !seen.insert(c.clone()) {
            continue;
        }
        out.push((c.clone(), d.clone()));
        for i in 0..n {
            let root_pair: i64 = (0..n).map(|j| c[j] * a[i][j]).sum();
            let coroot_pair: i64 = (0..n).map(|j| d[j] * a[j][i]).sum();
            let mut c2 = c.clone();
            c2[i] -= root_pair;
            let mut d2 = d.clone();
            d2[i] -= coroot_pair;
            if c2.iter().all(|&x| x >= 0) {
                queue.push_back((c2, d2));
            }
        }
    }
    out
}

/// Presets `A<n>`, `B<n>`, `C<n>`, `D<n>`, `E6..8`, `F4`, `G2`, each with an
/// optional lattice suffix `-sc` (characters = root lattice, the default)
/// or `-adj` (characters = weight lattice); `T<n>` is a rank `n` torus and
/// `C1` is `A1-sc`.
pub fn preset(name: &str) -> Result<RootDatum, RootDataError> {
    let unknown = || RootDataError::UnknownPreset(name.to_string());
    let (base, lattice) = match name.split_once('-') {
        Some((b, l)) => (b, l),
        None => (name, "sc"),
    };
    let mut chars = base.chars();
    let kind = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    if kind == 'T' {
        return Ok(RootDatum::torus(n));
    }
    let (kind, n) = if (kind, n) == ('C', 1) { ('A', 1) } else { (kind, n) };
    let a = cartan(kind, n).ok_or_else(unknown)?;
    let mut pairs = root_pairs(&a);
    let height = |c: &Vec<i64>| c.iter().sum::<i64>();
    pairs.sort_by(|(c1, _), (c2, _)| height(c1).cmp(&height(c2)).then(c2.cmp(c1)));
    let mut all = pairs.clone();
    all.extend(pairs.iter().map(|(c, d)| (c.iter().map(|x| -x).collect(), d.iter().map(|x| -x).collect())));
    let (roots, coroots): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match lattice {
        "sc" => all
            .iter()
            .map(|(c, d)| (c.clone(), (0..n).map(|k| (0..n).map(|j| d[j] * a[j][k]).sum()).collect()))
            .unzip(),
        "adj" => all
            .iter()
            .map(|(c, d)| ((0..n).map(|k| (0..n).map(|j| c[j] * a[k][j]).sum()).collect(), d.clone()))
            .unzip(),
        _ => return Err(unknown()),
    };
    RootDatum::new(n, roots, coroots, None, (0..n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, count) in [("A1", 2), ("A2", 6), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72)] {
            let rd = preset(name).unwrap();
            assert_eq!(rd.num_roots(), count, "{name}");
            assert_eq!(rd.positive_roots().len(), count / 2);
        }
    }

    #[test]
    fn a1_lattices() {
        let sc = preset("A1-sc").unwrap();
        assert_eq!(sc.root(0), &[1]);
        assert_eq!(sc.coroot(0), &[2]);
        let adj = preset("A1-adj").unwrap();
        assert_eq!(adj.root(0), &[2]);
        assert_eq!(adj.coroot(0), &[1]);
    }

    #[test]
    fn unknown_names() {
        assert!(preset("Q3").is_err());
        assert!(preset("G3").is_err());
        assert!(preset("A2-xyz").is_err());
    }
}

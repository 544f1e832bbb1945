//! Small dense integer and rational matrix routines: Smith and Hermite
//! normal forms, integer kernels, saturation and rational solving.

#![allow(clippy::needless_range_loop)]

use crate::exactalg::Q;
use num_traits::{One, Zero};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(a: &IMat, cols: usize) -> IMat {
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat, inner: usize, cols: usize) -> IMat {
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &IMat, x: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// `a^T x` for a rational vector `x`.
pub fn mat_t_vec_q(a: &IMat, x: &[Q]) -> Vec<Q> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| a.iter().zip(x).fold(Q::zero(), |acc, (r, xi)| acc + *xi * r[j]))
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IMat) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Rank over `Q` of the rows.
pub fn rank(a: &IMat) -> usize {
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
    row_reduce(&mut m)
}

fn row_reduce(m: &mut [Vec<Q>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c];
        for j in 0..cols {
            m[r][j] /= piv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let t = m[r][j];
                    m[i][j] -= f * t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solve the square system `a x = b` over `Q`.
pub fn solve_q(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, bi)| {
        let mut r = r.clone();
        r.push(*bi);
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c];
        for j in c..=n {
            m[c][j] /= piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..=n {
                    let t = m[c][j];
                    m[i][j] -= f * t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

/// Coordinates of `x` in the span of `basis` (rows), if it lies there.
pub fn coords_in_span(basis: &IMat, x: &[i64]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = x.len();
    // normal equations are avoided: eliminate on the augmented transpose
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| Q::from(b[i])).collect();
            row.push(Q::from(x[i]));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c];
        for j in 0..=k {
            m[r][j] /= piv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=k {
                    let t = m[r][j];
                    m[i][j] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (i, c) in pivots.iter().enumerate() {
        out[*c] = m[i][k];
    }
    Some(out)
}

/// Smith normal form `u a v = diag(d)` with unimodular `u`, `v`.
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    pub d: Vec<i64>,
    pub rank: usize,
}

pub fn smith(a: &IMat, cols: usize) -> Smith {
    let rows = a.len();
    let mut w = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w[i][j] != 0 && best.is_none_or(|(bi, bj)| w[i][j].abs() < w[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap(t, pi);
        u.swap(t, pi);
        for r in w.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let p = w[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let f = w[i][t].div_euclid(p);
            if f != 0 {
                for j in 0..cols {
                    w[i][j] -= f * w[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= f * u[t][j];
                }
            }
            clean &= w[i][t] == 0;
        }
        for j in t + 1..cols {
            let f = w[t][j].div_euclid(p);
            if f != 0 {
                for i in 0..rows {
                    w[i][j] -= f * w[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= f * v[i][t];
                }
            }
            clean &= w[t][j] == 0;
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w[i][j] % p != 0));
        if let Some(i) = bad {
            for j in 0..cols {
                w[t][j] += w[i][j];
            }
            for j in 0..rows {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if p < 0 {
            w[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
        t += 1;
    }
    let d = (0..rows.min(cols)).map(|i| w[i][i]).collect::<Vec<_>>();
    let rank = d.iter().take_while(|&&x| x != 0).count();
    Smith { u, v, d, rank }
}

/// Basis (rows) of `{x in Z^cols : a x = 0}`.
pub fn integer_kernel(a: &IMat, cols: usize) -> IMat {
    if a.is_empty() {
        return identity(cols);
    }
    let s = smith(a, cols);
    (s.rank..cols).map(|j| s.v.iter().map(|r| r[j]).collect()).collect()
}

/// Row Hermite normal form of the lattice spanned by the rows; zero rows dropped.
pub fn hnf(a: &IMat, cols: usize) -> IMat {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let f = m[i][c] / m[r][c];
                    for j in 0..cols {
                        m[i][j] -= f * m[r][j];
                    }
                    done &= m[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if r >= m.len() || m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            m[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let f = m[i][c].div_euclid(m[r][c]);
            if f != 0 {
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Basis of `Z^cols ∩ Q-span(rows)` in Hermite normal form.
pub fn saturation(a: &IMat, cols: usize) -> IMat {
    if a.is_empty() || rank(a) == 0 {
        return Vec::new();
    }
    let k = integer_kernel(a, cols);
    if k.is_empty() {
        return identity(cols);
    }
    hnf(&integer_kernel(&k, cols), cols)
}

/// Inverse of a unimodular matrix.
pub fn inverse_unimodular(a: &IMat) -> Option<IMat> {
    let n = a.len();
    let qa: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
    let mut cols = Vec::new();
    for j in 0..n {
        let e: Vec<Q> = (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
        cols.push(solve_q(&qa, &e)?);
    }
    let mut out = vec![vec![0i64; n]; n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            if !c[i].is_integer() {
                return None;
            }
            out[i][j] = c[i].to_integer();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_reconstructs() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        let uav = mat_mul(&mat_mul(&s.u, &a, 3, 3), &s.v, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(uav[i][j], if i == j { s.d[i] } else { 0 });
            }
        }
        assert!(s.d.windows(2).all(|w| w[1] % w[0] == 0));
        assert_eq!(s.d.iter().product::<i64>().abs(), det(&a).abs());
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(det(&s.v).abs(), 1);
    }

    #[test]
    fn kernel_and_saturation() {
        let a = vec![vec![2, 4]];
        let k = integer_kernel(&a, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&a[0], &k[0]), 0);
        assert_eq!(saturation(&a, 2), vec![vec![1, 2]]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&vec![vec![2, 1], vec![0, 3]], 2);
        let b = hnf(&vec![vec![2, 4], vec![2, 1]], 2);
        assert_eq!(a, b);
    }
}

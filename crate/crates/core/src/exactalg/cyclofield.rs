use super::Q;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact arithmetic in the cyclotomic field `Q(zeta_m)`, elements written
/// in the power basis modulo the `m`-th cyclotomic polynomial.
#[derive(Clone, Debug)]
pub struct CycloField {
    m: i64,
    phi: Vec<i64>,
}

pub fn cyclotomic_poly(n: i64) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![0i64; a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = r[i + db];
        quo[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    quo
}

#[cfg(test)]
pub(crate) fn euler_phi(n: i64) -> i64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as i64
}

impl CycloField {
    pub fn new(m: i64) -> Self {
        assert!(m >= 1);
        CycloField { m, phi: cyclotomic_poly(m) }
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn one(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = BigRational::one();
        v
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while p.len() > d {
            let c = p.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let off = p.len() - d;
            for (j, pj) in self.phi[..d].iter().enumerate() {
                p[off + j] -= &c * BigRational::from_integer(BigInt::from(*pj));
            }
        }
        p.resize(d, BigRational::zero());
        p
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        self.reduce(out)
    }

    /// `zeta^p` for a phase `p` with denominator dividing `m`.
    pub fn root(&self, p: Q) -> Vec<BigRational> {
        let e = (p * self.m).to_integer().rem_euclid(self.m) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        self.reduce(v)
    }

    /// `1 - zeta^p`.
    pub fn one_minus_root(&self, p: Q) -> Vec<BigRational> {
        let r = self.root(p);
        let one = self.one();
        one.iter().zip(&r).map(|(a, b)| a - b).collect()
    }

    pub fn pow(&self, a: &[BigRational], n: u32) -> Vec<BigRational> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `a / b` when it is a rational number.
    pub fn rational_quotient(a: &[BigRational], b: &[BigRational]) -> Option<BigRational> {
        let i = b.iter().position(|c| !c.is_zero())?;
        let c = &a[i] / &b[i];
        a.iter().zip(b).all(|(x, y)| *x == &c * y).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn norm_of_one_minus_cube_root() {
        let f = CycloField::new(3);
        let a = f.one_minus_root(Q::new(1, 3));
        let b = f.one_minus_root(Q::new(2, 3));
        let prod = f.mul(&a, &b);
        assert_eq!(CycloField::rational_quotient(&prod, &f.one()), Some(BigRational::from_integer(3.into())));
    }
}

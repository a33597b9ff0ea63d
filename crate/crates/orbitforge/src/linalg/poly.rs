use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_scalar, Matrix, Scalar};

/// Polynomial over ℚ, coefficients from the constant term upwards.
/// Never carries trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "super::serde_rational::vec")]
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// x − a
    pub fn linear_root(a: Scalar) -> Self {
        Self::new(vec![-a, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.recip();
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        Poly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.leading().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn divides(&self, o: &Poly) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.div_rem(self).1.is_zero()
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { format_scalar(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Invariant factors of xI − A over ℚ[x]: monic, each dividing the next,
/// trivial factors (1) included so there are exactly n of them.
pub fn invariant_factors(a: &Matrix) -> Vec<Poly> {
    assert!(a.is_square(), "invariant factors need a square matrix");
    let n = a.rows();
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-a[(i, j)].clone());
                    if i == j {
                        c.add(&Poly::x())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    smith_diagonal(&mut m)
}

fn smith_diagonal(m: &mut [Vec<Poly>]) -> Vec<Poly> {
    let n = m.len();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let best = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].degree());
            let Some((bi, bj)) = best else {
                diag.extend(std::iter::repeat(Poly::zero()).take(n - t));
                return diag;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t]);
                for j in t..n {
                    let s = q.mul(&m[t][j]);
                    m[i][j] = m[i][j].sub(&s);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let s = q.mul(&row[t]);
                    row[j] = row[j].sub(&s);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m[t][t].divides(&m[i][j]));
            match offender {
                Some((i, _)) => {
                    for j in t..n {
                        let s = m[i][j].clone();
                        m[t][j] = m[t][j].add(&s);
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].monic());
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&a, &p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(a.to_string(), "x^2 - 1");
        assert_eq!(p(&[2, -3, 1]).to_string(), "x^2 - 3x + 2");
    }

    #[test]
    fn invariant_factor_examples() {
        let z = invariant_factors(&Matrix::zeros(3, 3));
        assert_eq!(z, vec![Poly::x(), Poly::x(), Poly::x()]);
        let n2 = invariant_factors(&Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(n2, vec![Poly::one(), p(&[0, 0, 1])]);
        let d = invariant_factors(&Matrix::from_ints(&[&[1, 0], &[0, 2]]));
        assert_eq!(d, vec![Poly::one(), p(&[2, -3, 1])]);
        assert_eq!(invariant_factors(&Matrix::zeros(0, 0)), vec![]);
    }
}

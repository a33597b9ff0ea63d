use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::actions::{AlgebraElement, DualAlgebraElement, GroupElement, GroupKind, Space};
use crate::error::Result;
use crate::flag::{quotient_form_raw, Flag, Symmetry};
use crate::linalg::{frac, int, is_zero_vec, vsub, zero_vec, Matrix, Scalar, Vector};

use super::adapted::Adapted;

const MAX_ATTEMPTS: usize = 1000;

/// Seeded source of random group, algebra and dual elements for one kind.
/// Rational entries are drawn from {−b, …, b} with an occasional halving.
#[derive(Clone, Debug)]
pub struct Sampler {
    kind: GroupKind,
    seed: u64,
    bound: i64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(kind: GroupKind, seed: u64) -> Self {
        Sampler { kind, seed, bound: 2, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = bound.max(1);
        self
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let k = self.int();
            if k != 0 {
                return k;
            }
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        let k = self.int();
        if self.coin(0.15) {
            frac(k, 2)
        } else {
            int(k)
        }
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.scalar()).collect()
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vector {
        assert!(n > 0, "no nonzero vectors in a zero space");
        loop {
            let v = self.vector(n);
            if !is_zero_vec(&v) {
                return v;
            }
        }
    }

    pub fn matrix(&mut self, r: usize, c: usize) -> Matrix {
        Matrix::from_rows((0..r).map(|_| self.vector(c)).collect())
    }

    pub fn gl(&mut self, n: usize) -> Matrix {
        for _ in 0..MAX_ATTEMPTS {
            let m = self.matrix(n, n);
            if m.is_invertible() {
                return m;
            }
        }
        Matrix::identity(n)
    }

    /// Random isometry of an ε-symmetric Gram matrix: a Cayley transform
    /// (I − A)(I + A)⁻¹ of a G-skew-adjoint A, composed with a reflection
    /// half the time in the symmetric case.
    pub fn isometry(&mut self, g: &Matrix, sym: Symmetry) -> Matrix {
        let n = g.rows();
        let ginv = g.inverse().expect("nondegenerate form");
        let id = Matrix::identity(n);
        let mut r = id.clone();
        for _ in 0..MAX_ATTEMPTS {
            let s = match sym {
                Symmetry::Symmetric => self.skew(n),
                Symmetry::Skew => {
                    let m = self.matrix(n, n);
                    &m + &m.transpose()
                }
            };
            let a = &ginv * &s;
            if let Some(inv) = (&id + &a).inverse() {
                r = &(&id - &a) * &inv;
                break;
            }
        }
        if sym == Symmetry::Symmetric && n > 0 && self.coin(0.5) {
            for _ in 0..MAX_ATTEMPTS {
                let w = self.nonzero_vector(n);
                if !g.bilinear(&w, &w).is_zero() {
                    r = &reflection(g, &w) * &r;
                    break;
                }
            }
        }
        r
    }

    fn skew(&mut self, n: usize) -> Matrix {
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = self.scalar();
                s[(j, i)] = -x.clone();
                s[(i, j)] = x;
            }
        }
        s
    }

    /// A point on the rational unit sphere S^{k−1} (stereographic parametrisation).
    fn sphere(&mut self, k: usize) -> Vector {
        if k == 1 {
            return vec![int(if self.coin(0.5) { 1 } else { -1 })];
        }
        let t = self.vector(k - 1);
        let n2: Scalar = t.iter().map(|x| x * x).sum();
        let den = &n2 + Scalar::one();
        let mut out: Vector = t.iter().map(|x| int(2) * x / &den).collect();
        out.push((&n2 - Scalar::one()) / den);
        out
    }

    /// A nonzero null vector of diag(+1×m, −1×n), or a random nonzero vector
    /// when the form is definite.
    fn standard_null(&mut self, m: usize, n: usize) -> Vector {
        if m == 0 || n == 0 {
            return self.nonzero_vector(m + n);
        }
        let k = int(self.nonzero_int());
        let mut v = self.sphere(m);
        v.extend(self.sphere(n));
        v.iter().map(|x| x * &k).collect()
    }

    /// Element of H ⋉ V; orthogonal parts are Cayley transforms composed with
    /// a random diagonal ±1 reflection, so every component of O(m,n) is hit.
    pub fn group_element(&mut self) -> GroupElement {
        let space = self.kind.space();
        let n = space.dim();
        let r = match &space {
            Space::Linear(_) => self.gl(n),
            Space::Orthogonal(f) => {
                let signs: Vector = (0..n).map(|_| int(if self.coin(0.5) { 1 } else { -1 })).collect();
                &Matrix::diagonal(&signs) * &self.isometry(f.gram(), Symmetry::Symmetric)
            }
        };
        GroupElement { r, d: self.vector(n) }
    }

    fn wedge(g: &Matrix, u: &[Scalar], v: &[Scalar]) -> Matrix {
        let a = &Matrix::column_vector(u) * &Matrix::from_rows(vec![v.to_vec()]);
        &(&a - &a.transpose()) * g
    }

    /// Random element of the little algebra 𝔥_p.
    pub fn little_element(&mut self, p: &[Scalar]) -> Matrix {
        let space = self.kind.space();
        let n = space.dim();
        let basis = space.little_algebra(p).basis_vectors();
        let mut out = Matrix::zeros(n, n);
        for b in &basis {
            if self.coin(0.6) {
                out = &out + &Matrix::from_flat(n, n, b).scale(&int(self.int()));
            }
        }
        out
    }

    /// ω ∈ 𝔥 drawn from a mix of generic, zero, low-rank and nilpotent families.
    pub fn omega(&mut self) -> Matrix {
        let space = self.kind.space();
        let n = space.dim();
        if n == 0 {
            return Matrix::zeros(0, 0);
        }
        match &space {
            Space::Linear(_) => match self.below(5) {
                0 => Matrix::zeros(n, n),
                1 => self.matrix(n, n),
                2 => {
                    let mut j = Matrix::zeros(n, n);
                    let eig = [0, 0, 1, -1];
                    let mut i = 0;
                    while i < n {
                        let len = 1 + self.below(n - i);
                        let l = int(eig[self.below(eig.len())]);
                        for k in i..i + len {
                            j[(k, k)] = l.clone();
                            if k + 1 < i + len {
                                j[(k, k + 1)] = int(1);
                            }
                        }
                        i += len;
                    }
                    let g = self.gl(n);
                    &(&g * &j) * &g.inverse().expect("invertible")
                }
                3 => {
                    let mut m = Matrix::zeros(n, n);
                    for _ in 0..1 + self.below(2) {
                        let u = Matrix::column_vector(&self.vector(n));
                        let w = Matrix::from_rows(vec![self.vector(n)]);
                        m = &m + &(&u * &w);
                    }
                    m
                }
                _ => {
                    let mut m = Matrix::zeros(n, n);
                    for i in 0..n {
                        for j in i + 1..n {
                            if self.coin(0.5) {
                                m[(i, j)] = self.scalar();
                            }
                        }
                    }
                    let g = self.gl(n);
                    &(&g * &m) * &g.inverse().expect("invertible")
                }
            },
            Space::Orthogonal(f) => {
                let g = f.gram().clone();
                let (m, q) = f.signature();
                match self.below(6) {
                    0 => Matrix::zeros(n, n),
                    1 => &g.inverse().expect("form") * &self.skew(n),
                    2 => {
                        let (u, v) = (self.vector(n), self.vector(n));
                        Self::wedge(&g, &u, &v)
                    }
                    3 | 4 => {
                        let terms = if self.below(5) == 4 { 2 } else { 1 };
                        let mut out = Matrix::zeros(n, n);
                        for _ in 0..terms {
                            let u = self.standard_null(m, q);
                            let mut v = self.vector(n);
                            let gu = g.mul_vec(&u);
                            if let Some(i) = gu.iter().position(|x| !x.is_zero()) {
                                if self.coin(0.7) {
                                    // v ⊥ u gives a nilpotent null rotation
                                    let c = crate::linalg::dot(&gu, &v) / &gu[i];
                                    v[i] -= c;
                                }
                            }
                            out = &out + &Self::wedge(&g, &u, &v);
                        }
                        out
                    }
                    _ => {
                        let p = self.vector_p();
                        self.little_element(&p)
                    }
                }
            }
        }
    }

    /// A vector of V (or V*) that is zero, generic or null with fair odds.
    pub fn vector_p(&mut self) -> Vector {
        let space = self.kind.space();
        let n = space.dim();
        if n == 0 {
            return vec![];
        }
        match (self.below(4), &space) {
            (0, _) => zero_vec(n),
            (1, Space::Orthogonal(f)) => {
                let (m, q) = f.signature();
                self.standard_null(m, q)
            }
            _ => self.nonzero_vector(n),
        }
    }

    pub fn algebra_element(&mut self) -> AlgebraElement {
        let omega = self.omega();
        let n = omega.rows();
        let v = match self.below(4) {
            0 => zero_vec(n),
            1 => self.vector_p(),
            _ => self.vector(n),
        };
        AlgebraElement { omega, v }
    }

    pub fn dual_element(&mut self) -> DualAlgebraElement {
        let p = self.vector_p();
        let l = if self.coin(0.3) && !is_zero_vec(&p) { self.little_element(&p) } else { self.omega() };
        DualAlgebraElement { l, p }
    }

    /// A point of Δ, either ω first (p in ker ω*) or p first (ω ∈ 𝔥_p).
    pub fn delta_point(&mut self) -> (Matrix, Vector) {
        let space = self.kind.space();
        if self.coin(0.5) {
            let omega = self.omega();
            let ker = crate::linalg::kernel(&space.flag_operator(&omega));
            let c = self.vector(ker.dim());
            (omega, ker.from_coords(&c))
        } else {
            let p = self.vector_p();
            (self.little_element(&p), p)
        }
    }

    /// Random automorphism of ker ω* (kernel coordinates) preserving the flag
    /// and, for orthogonal spaces, every quotient form: block lower-triangular
    /// in the adapted basis with isometries on the diagonal blocks.
    pub fn kernel_map(&mut self, space: &Space, omega: &Matrix) -> Result<Matrix> {
        let t = space.flag_operator(omega);
        let flag = Flag::of_operator(&t);
        let ad = Adapted::new(&flag);
        let d = ad.dim();
        let mut ra = Matrix::zeros(d, d);
        for j in 0..flag.strata() {
            let (o, dj) = (ad.offset(j), ad.block_len(j));
            let s = match space {
                Space::Linear(_) => self.gl(dj),
                Space::Orthogonal(f) => {
                    let qf = quotient_form_raw(f.gram(), &t, &flag, j)?;
                    self.isometry(&qf.gram, qf.symmetry)
                }
            };
            for a in 0..dj {
                for b in 0..dj {
                    ra[(o + a, o + b)] = s[(a, b)].clone();
                }
                for row in o + dj..d {
                    if self.coin(0.5) {
                        ra[(row, o + a)] = self.scalar();
                    }
                }
            }
        }
        Ok(ad.to_kernel(&ra))
    }

    /// Some p ∈ E_j \ E_{j+1} for a random nonzero stratum j, or `None` if
    /// ker ω* = 0.
    pub fn stratum_vector(&mut self, flag: &Flag) -> Option<(usize, Vector)> {
        if flag.strata() == 0 {
            return None;
        }
        let j = self.below(flag.strata());
        let us = flag.quotient_basis(j);
        let n = flag.ambient().ambient_dim();
        let c = self.nonzero_vector(us.len());
        let mut p = crate::linalg::combine(n, &c, &us);
        let lower = &flag.steps()[j + 1];
        let e = self.vector(lower.dim());
        p = crate::linalg::vadd(&p, &lower.from_coords(&e));
        Some((j, p))
    }
}

/// x ↦ x − 2 Q(w,x)/Q(w,w) w.
pub fn reflection(g: &Matrix, w: &[Scalar]) -> Matrix {
    let n = w.len();
    let q = g.bilinear(w, w);
    let wg = g.vec_mul(w);
    let mut r = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let delta = int(2) * &w[i] * &wg[j] / &q;
            r[(i, j)] -= delta;
        }
    }
    r
}

/// x ↦ x + c Ω(w,x) w.
pub fn transvection(g: &Matrix, w: &[Scalar], c: &Scalar) -> Matrix {
    let n = w.len();
    let wg = g.vec_mul(w);
    let mut r = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            r[(i, j)] += c * &w[i] * &wg[j];
        }
    }
    r
}

pub(crate) fn differs(a: &[Scalar], b: &[Scalar]) -> bool {
    !is_zero_vec(&vsub(a, b))
}

/// Deterministic search order over small integer vectors.
pub(crate) fn small_vectors(n: usize) -> impl Iterator<Item = Vector> {
    let digits = [0i64, 1, -1, 2];
    let total = digits.len().pow(n as u32);
    (1..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = digits[k % digits.len()];
                k /= digits.len();
                int(d)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let k = GroupKind::Poincare(1, 2);
        let a = Sampler::new(k, 11).group_element();
        let b = Sampler::new(k, 11).group_element();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_are_group_elements() {
        for kind in [GroupKind::Affine(3), GroupKind::Poincare(1, 1), GroupKind::Poincare(2, 2)] {
            let mut s = Sampler::new(kind, 5);
            for _ in 0..30 {
                s.group_element().validate(kind).unwrap();
                s.algebra_element().validate(kind).unwrap();
                s.dual_element().validate(kind).unwrap();
                let (w, p) = s.delta_point();
                assert!(kind.space().annihilates(&w, &p));
            }
        }
    }

    #[test]
    fn cayley_identity_in_o11() {
        let g = GroupKind::Poincare(1, 1).form().unwrap();
        let r = Sampler::new(GroupKind::Poincare(1, 1), 3).isometry(&g, Symmetry::Symmetric);
        assert_eq!(&(&r.transpose() * &g) * &r, g);
    }
}

//! Orbit labels for Δ, adjoint and coadjoint orbits, and the maps between them.
//!
//! Every label is computed on Δ = {(ω, p) : ω*p = 0}. Adjoint elements reach Δ
//! through Σ and the centraliser bijection (identity pairing on flag quotients
//! for Aff(n), the form map φ for E(m,n)); coadjoint elements reach it through
//! Π and the little-group bijection. A Δ-point is labelled by the class of p
//! followed by the adjoint class of ω inside 𝔥_p, which recurses:
//! 𝔥_p ≅ 𝔞𝔣𝔣(n−1) (affine), 𝔰𝔬(p^⊥) (non-null p), 𝔰𝔢(W) (null p).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::actions::{
    sigma_values, space_vector_class, AlgebraElement, DualAlgebraElement, Form, GroupKind, Space, VectorClass,
};
use crate::error::{Error, Result};
use crate::flag::{quotient_form_raw, Flag, Symmetry};
use crate::linalg::{
    combine, dot, format_scalar, frac, invariant_factors, is_zero_vec, kernel, quotient_coords, serde_rational, solve,
    unit_vec, zero_vec, Matrix, Poly, Scalar, Subspace, Vector,
};

// ---------------------------------------------------------------------------
// labels

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueClass {
    Value(#[serde(with = "serde_rational")] Scalar),
    NullNonzero,
}

/// H_ω-orbit of p ∈ ker ω*.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CentralizerLabel {
    Zero,
    AffineStep(usize),
    OrthoStep { step: usize, value: ValueClass },
}

/// H_ω-orbit of x ∈ (ker ω*)*; `DualStep(j)` is the stratum E_{j+1}° \ E_j°.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualCentralizerLabel {
    DualZero,
    DualStep(usize),
}

/// Invariant factors of xI − ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GLClass {
    pub factors: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum So12Class {
    Zero,
    /// c = Q(v,v) ≠ 0 for the axis v in the (1,2)-normalised vector representation
    Value {
        #[serde(with = "serde_rational")]
        c: Scalar,
    },
    NullNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum So13Class {
    Zero,
    NilpotentN2,
    /// ζ = det ξ ≠ 0 up to conjugation, stored as (Re ζ, (Im ζ)²).
    Zeta {
        #[serde(with = "serde_rational")]
        re: Scalar,
        #[serde(with = "serde_rational")]
        im_sq: Scalar,
    },
}

/// Adjoint class of an element of a small orthogonal algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "algebra")]
pub enum SoClass {
    /// 𝔰𝔬 of a space of dimension ≤ 1
    Point,
    /// 𝔰𝔬(2): x² for the orbit {x, −x}
    So2 {
        #[serde(with = "serde_rational")]
        x_sq: Scalar,
    },
    /// 𝔰𝔬(1,1): a² for the orbit {a, −a}
    So11 {
        #[serde(with = "serde_rational")]
        a_sq: Scalar,
    },
    /// 𝔰𝔬(3): squared radius
    So3 {
        #[serde(with = "serde_rational")]
        rho_sq: Scalar,
    },
    So12(So12Class),
    So13(So13Class),
    /// definite 𝔰𝔬(k), k ≥ 4: the characteristic polynomial
    Compact {
        charpoly: Poly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "p")]
pub enum OrbitLabel {
    /// The single orbit of a trivial group (Aff(0), E(0,0)).
    Point,
    /// Aff(n), p = 0: the similarity class of ω.
    AffineZero { gl: GLClass },
    /// Aff(n), p ≠ 0: the label inside 𝔥_p ≅ 𝔞𝔣𝔣(n−1).
    AffineNonzero { inner: Box<OrbitLabel> },
    /// E(m,n), p = 0.
    Zero { so: SoClass },
    /// E(m,n), Q(p,p) = t² > 0; `q` is t².
    Timelike {
        #[serde(with = "serde_rational")]
        q: Scalar,
        so: SoClass,
    },
    /// E(m,n), Q(p,p) = −s² < 0; `q` is −s².
    Spacelike {
        #[serde(with = "serde_rational")]
        q: Scalar,
        so: SoClass,
    },
    /// E(m,n), p null and nonzero: the label inside 𝔥_p ≅ 𝔰𝔢(m−1,n−1).
    Null { inner: Box<OrbitLabel> },
}

impl fmt::Display for GLClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.factors.iter().map(|p| format!("({p})")).collect();
        write!(f, "gl[{}]", fs.join(", "))
    }
}

impl fmt::Display for SoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_scalar;
        match self {
            SoClass::Point => write!(f, "point"),
            SoClass::So2 { x_sq } => write!(f, "so(2)[x²={}]", s(x_sq)),
            SoClass::So11 { a_sq } => write!(f, "so(1,1)[a²={}]", s(a_sq)),
            SoClass::So3 { rho_sq } => write!(f, "so(3)[ρ²={}]", s(rho_sq)),
            SoClass::So12(So12Class::Zero) => write!(f, "so(1,2)[0]"),
            SoClass::So12(So12Class::Value { c }) => write!(f, "so(1,2)[c={}]", s(c)),
            SoClass::So12(So12Class::NullNonzero) => write!(f, "so(1,2)[null]"),
            SoClass::So13(So13Class::Zero) => write!(f, "so(1,3)[ζ=0]"),
            SoClass::So13(So13Class::NilpotentN2) => write!(f, "so(1,3)[N₂]"),
            SoClass::So13(So13Class::Zeta { re, im_sq }) => {
                write!(f, "so(1,3)[Re ζ={}, (Im ζ)²={}]", s(re), s(im_sq))
            }
            SoClass::Compact { charpoly } => write!(f, "so(k)[χ={charpoly}]"),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_scalar;
        match self {
            OrbitLabel::Point => write!(f, "point"),
            OrbitLabel::AffineZero { gl } => write!(f, "(p=0, {gl})"),
            OrbitLabel::AffineNonzero { inner } => write!(f, "(p≠0, {inner})"),
            OrbitLabel::Zero { so } => write!(f, "(p=0, {so})"),
            OrbitLabel::Timelike { q, so } => write!(f, "(timelike t²={}, {so})", s(q)),
            OrbitLabel::Spacelike { q, so } => write!(f, "(spacelike −s²={}, {so})", s(q)),
            OrbitLabel::Null { inner } => write!(f, "(null, {inner})"),
        }
    }
}

// ---------------------------------------------------------------------------
// leaf invariants

pub fn gl_class(omega: &Matrix) -> GLClass {
    GLClass { factors: invariant_factors(omega) }
}

fn tr_sq(omega: &Matrix) -> Scalar {
    (omega * omega).trace()
}

/// Characteristic polynomial det(xI − ω) (Faddeev–LeVerrier).
pub fn charpoly(omega: &Matrix) -> Poly {
    let n = omega.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::from_integer(1.into());
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = omega * &m;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let c = -(omega * &m).trace() / Scalar::from_integer((k as i64).into());
        coeffs[n - k] = c;
    }
    Poly::new(coeffs)
}

/// Adjoint class of ω ∈ 𝔰𝔬(G) for a form of signature `sig`.
pub fn small_so_class(omega: &Matrix, sig: (usize, usize)) -> Result<SoClass> {
    let (p, q) = sig;
    let n = p + q;
    if omega.rows() != n || omega.cols() != n {
        return Err(Error::dims(n, omega.rows()));
    }
    let half = frac(1, 2);
    Ok(match (p.min(q), n) {
        (_, 0 | 1) => SoClass::Point,
        (0, 2) => SoClass::So2 { x_sq: -(&half * tr_sq(omega)) },
        (0, 3) => SoClass::So3 { rho_sq: -(&half * tr_sq(omega)) },
        (0, _) => SoClass::Compact { charpoly: charpoly(omega) },
        (1, 2) => SoClass::So11 { a_sq: &half * tr_sq(omega) },
        (1, 3) => {
            let c = -(&half * tr_sq(omega));
            SoClass::So12(if omega.is_zero() {
                So12Class::Zero
            } else if c.is_zero() {
                So12Class::NullNonzero
            } else {
                So12Class::Value { c }
            })
        }
        (1, 4) => {
            let re = -(frac(1, 8) * tr_sq(omega));
            let im_sq = -(frac(1, 4) * omega.det());
            SoClass::So13(if omega.is_zero() {
                So13Class::Zero
            } else if re.is_zero() && im_sq.is_zero() {
                So13Class::NilpotentN2
            } else {
                So13Class::Zeta { re, im_sq }
            })
        }
        _ => return Err(Error::UnsupportedLeaf { p, q }),
    })
}

// ---------------------------------------------------------------------------
// transports and frames

/// Deterministic g with g⁻ᵀp = e_n: rows e_i (i ≠ k) followed by pᵀ, where k is
/// the last nonzero coordinate of p.
pub(crate) fn affine_transport(p: &[Scalar]) -> Matrix {
    let n = p.len();
    let k = (0..n).rev().find(|&i| !p[i].is_zero()).expect("p ≠ 0");
    let mut rows: Vec<Vector> = (0..n).filter(|&i| i != k).map(|i| unit_vec(n, i)).collect();
    rows.push(p.to_vec());
    Matrix::from_rows(rows)
}

pub(crate) fn split_affine(m: &Matrix) -> (Matrix, Vector) {
    let n = m.rows();
    let top = m.submatrix(0, n - 1, 0, n - 1);
    let col = (0..n - 1).map(|i| m[(i, n - 1)].clone()).collect();
    (top, col)
}

fn so_basis(space: &Space) -> Vec<Matrix> {
    let n = space.dim();
    space.algebra().basis_vectors().iter().map(|v| Matrix::from_flat(n, n, v)).collect()
}

/// Orthogonal complement of a non-null p with the restricted form.
struct PerpFrame {
    basis: Subspace,
    form: Form,
}

impl PerpFrame {
    fn new(g: &Matrix, p: &[Scalar]) -> Result<Self> {
        let row = Matrix::from_rows(vec![g.mul_vec(p)]);
        let basis = kernel(&row);
        let b = basis.basis();
        let form = Form::new(&(&b.transpose() * g) * b)?;
        Ok(PerpFrame { basis, form })
    }

    fn restrict(&self, omega: &Matrix) -> Matrix {
        let cols: Vec<Vector> = self
            .basis
            .basis_vectors()
            .iter()
            .map(|v| self.basis.coords(&omega.mul_vec(v)).expect("ω preserves p^⊥"))
            .collect();
        Matrix::from_columns(self.basis.dim(), &cols)
    }
}

/// For a null ν ≠ 0: a null ν′ with Q(ν, ν′) = 1, W = span{ν, ν′}^⊥ and the
/// isomorphism ψ: 𝔰𝔢(W) → 𝔥_ν, ψ(A,b): ν ↦ 0, ν′ ↦ b, w ↦ Aw − Q(w,b)ν.
pub(crate) struct NullFrame {
    g: Matrix,
    nu: Vector,
    nu_p: Vector,
    w: Subspace,
    pub(crate) w_space: Space,
}

impl NullFrame {
    pub(crate) fn new(g: &Matrix, nu: &[Scalar]) -> Result<Self> {
        let gnu = g.mul_vec(nu);
        let i = gnu.iter().position(|x| !x.is_zero()).expect("ν ≠ 0");
        let u: Vector = crate::linalg::vscale(&gnu[i].recip(), &unit_vec(nu.len(), i));
        let quu = g.bilinear(&u, &u);
        let nu_p = crate::linalg::vsub(&u, &crate::linalg::vscale(&(quu * frac(1, 2)), nu));
        let rows = Matrix::from_rows(vec![gnu, g.mul_vec(&nu_p)]);
        let w = kernel(&rows);
        let b = w.basis();
        let w_space = Space::Orthogonal(Form::new(&(&b.transpose() * g) * b)?);
        Ok(NullFrame { g: g.clone(), nu: nu.to_vec(), nu_p, w, w_space })
    }

    fn gw(&self) -> &Matrix {
        self.w_space.gram().expect("orthogonal")
    }

    pub(crate) fn psi(&self, a: &Matrix, b: &[Scalar]) -> Matrix {
        let n = self.nu.len();
        let bw = self.w.from_coords(b);
        let gwb = self.gw().mul_vec(b);
        // images of the basis ν, ν′, B_1..B_w, then change basis
        let mut basis = vec![self.nu.clone(), self.nu_p.clone()];
        let mut images = vec![zero_vec(n), bw];
        for (c, bc) in self.w.basis_vectors().iter().enumerate() {
            let ac = self.w.from_coords(&a.col(c));
            images.push(crate::linalg::vsub(&ac, &crate::linalg::vscale(&gwb[c], &self.nu)));
            basis.push(bc.clone());
        }
        let p = Matrix::from_columns(n, &basis);
        &Matrix::from_columns(n, &images) * &p.inverse().expect("frame basis")
    }

    pub(crate) fn psi_inv(&self, omega: &Matrix) -> (Matrix, Vector) {
        let b = self.w.coords(&omega.mul_vec(&self.nu_p)).expect("ων′ ∈ W");
        let mut cols = vec![self.nu.clone()];
        cols.extend(self.w.basis_vectors());
        let nb = Matrix::from_columns(self.nu.len(), &cols);
        let acols: Vec<Vector> = self
            .w
            .basis_vectors()
            .iter()
            .map(|bc| solve(&nb, &omega.mul_vec(bc)).expect("ωW ⊂ ν^⊥")[1..].to_vec())
            .collect();
        (Matrix::from_columns(self.w.dim(), &acols), b)
    }

    fn se_basis(&self) -> Vec<(Matrix, Vector)> {
        let wd = self.w.dim();
        let mut out: Vec<(Matrix, Vector)> = so_basis(&self.w_space).into_iter().map(|a| (a, zero_vec(wd))).collect();
        out.extend((0..wd).map(|i| (Matrix::zeros(wd, wd), unit_vec(wd, i))));
        out
    }

    /// (M_W, p_W) with Tr(M_W A) + p_Wᵀ G_W b = Tr(M ψ(A,b)).
    pub(crate) fn pull_back(&self, m: &Matrix) -> (Matrix, Vector) {
        let wd = self.w.dim();
        let so = so_basis(&self.w_space);
        let gram = Matrix::from_rows(so.iter().map(|x| so.iter().map(|y| (x * y).trace()).collect()).collect());
        let rhs: Vector = so.iter().map(|a| (m * &self.psi(a, &zero_vec(wd))).trace()).collect();
        let beta = if so.is_empty() { vec![] } else { solve(&gram, &rhs).expect("trace form nondegenerate") };
        let mut mw = Matrix::zeros(wd, wd);
        for (c, a) in beta.iter().zip(&so) {
            mw = &mw + &a.scale(c);
        }
        let r: Vector = (0..wd).map(|i| (m * &self.psi(&Matrix::zeros(wd, wd), &unit_vec(wd, i))).trace()).collect();
        let pw = if wd == 0 { vec![] } else { solve(self.gw(), &r).expect("G_W invertible") };
        (mw, pw)
    }

    /// Some M ∈ 𝔰𝔬(G) whose restriction to 𝔥_ν pulls back to (M_W, p_W).
    fn push_forward(&self, mw: &Matrix, pw: &[Scalar]) -> Matrix {
        let n = self.nu.len();
        let space = Space::Orthogonal(Form::new(self.g.clone()).expect("form"));
        let so = so_basis(&space);
        let basis = self.se_basis();
        let rows: Vec<Vector> = basis
            .iter()
            .map(|(a, b)| {
                let psi = self.psi(a, b);
                so.iter().map(|s| (s * &psi).trace()).collect()
            })
            .collect();
        let rhs: Vector = basis.iter().map(|(a, b)| (mw * a).trace() + self.gw().bilinear(pw, b)).collect();
        if rows.is_empty() {
            return Matrix::zeros(n, n);
        }
        let alpha = solve(&Matrix::from_rows(rows), &rhs).expect("ψ* surjective");
        so.iter().zip(&alpha).fold(Matrix::zeros(n, n), |acc, (s, c)| &acc + &s.scale(c))
    }
}

/// Trace-orthogonal projection of M ∈ 𝔰𝔬(G) onto 𝔥_p (p non-null).
fn project_little(space: &Space, m: &Matrix, p: &[Scalar]) -> Matrix {
    let n = space.dim();
    let h: Vec<Matrix> = space.little_algebra(p).basis_vectors().iter().map(|v| Matrix::from_flat(n, n, v)).collect();
    if h.is_empty() {
        return Matrix::zeros(n, n);
    }
    let gram = Matrix::from_rows(h.iter().map(|x| h.iter().map(|y| (x * y).trace()).collect()).collect());
    let rhs: Vector = h.iter().map(|b| (m * b).trace()).collect();
    let c = solve(&gram, &rhs).expect("trace form nondegenerate on 𝔥_p");
    h.iter().zip(&c).fold(Matrix::zeros(n, n), |acc, (b, x)| &acc + &b.scale(x))
}

// ---------------------------------------------------------------------------
// the centraliser bijection

/// Functional values of x on the flag quotient basis of stratum j.
fn quotient_values(space: &Space, flag: &Flag, j: usize, v: &[Scalar]) -> Vector {
    flag.quotient_basis(j).iter().map(|u| space.pair(u, v)).collect()
}

/// Σ → Δ: picks p with φ(p) = x in the identity/form pairing.
pub(crate) fn adjoint_to_delta_space(space: &Space, omega: &Matrix, v: &[Scalar]) -> Result<Vector> {
    let t = space.flag_operator(omega);
    let flag = Flag::of_operator(&t);
    let n = space.dim();
    let vanishes_on = |s: &Subspace| s.basis_vectors().iter().all(|q| space.pair(q, v).is_zero());
    let Some(j) = (0..flag.strata()).find(|&j| vanishes_on(&flag.steps()[j + 1])) else {
        return Ok(zero_vec(n));
    };
    if vanishes_on(&flag.steps()[j]) {
        return Ok(zero_vec(n));
    }
    let xs = quotient_values(space, &flag, j, v);
    let us = flag.quotient_basis(j);
    let c = match space {
        Space::Linear(_) => xs,
        Space::Orthogonal(f) => {
            let qf = quotient_form_raw(f.gram(), &t, &flag, j)?;
            solve(&qf.gram.transpose(), &xs).ok_or(Error::Verification("degenerate Q_j".into()))?
        }
    };
    Ok(combine(n, &c, &us))
}

/// φ(p) as values on the canonical basis of ker ω*; zero on E_{j+1} and on the
/// canonical completion of E_j inside ker ω*.
pub(crate) fn phi_values(space: &Space, omega: &Matrix, p: &[Scalar]) -> Result<Vector> {
    let t = space.flag_operator(omega);
    let flag = Flag::of_operator(&t);
    let ker = flag.ambient().clone();
    let Some(j) = flag.stratum_of(p)? else {
        return Ok(zero_vec(ker.dim()));
    };
    let steps = flag.steps();
    let c = quotient_coords(&steps[j], &steps[j + 1], p)?;
    let us = flag.quotient_basis(j);
    let on_u: Vector = match space {
        Space::Linear(_) => c,
        Space::Orthogonal(f) => quotient_form_raw(f.gram(), &t, &flag, j)?.gram.vec_mul(&c),
    };
    // basis of ker: E_{j+1} ∪ {u_i} ∪ complement, with prescribed values
    let mut basis = steps[j + 1].basis_vectors();
    let mut values = zero_vec(basis.len());
    basis.extend(us);
    values.extend(on_u);
    let comp = ker.completion_of(&steps[j]);
    values.extend(zero_vec(comp.len()));
    basis.extend(comp);
    let coords: Vec<Vector> = basis.iter().map(|b| ker.coords(b).expect("in kernel")).collect();
    // x(b) = Σ_i x_i coords(b)_i
    let a = Matrix::from_rows(coords);
    Ok(solve(&a, &values).expect("basis of ker"))
}

/// Δ → Σ: some v whose Σ-point is (ω, φ(p)).
pub(crate) fn delta_to_adjoint_space(space: &Space, omega: &Matrix, p: &[Scalar]) -> Result<Vector> {
    let n = space.dim();
    let x = phi_values(space, omega, p)?;
    let ker = kernel(&space.flag_operator(omega));
    let rows: Vec<Vector> = ker
        .basis_vectors()
        .iter()
        .map(|q| match space {
            Space::Linear(_) => q.clone(),
            Space::Orthogonal(f) => f.gram().mul_vec(q),
        })
        .collect();
    if rows.is_empty() {
        return Ok(zero_vec(n));
    }
    solve(&Matrix::from_rows(rows), &x).ok_or_else(|| Error::Verification("Σ lift unsolvable".into()))
}

// ---------------------------------------------------------------------------
// Δ labels

pub(crate) fn classify_delta_space(space: &Space, omega: &Matrix, p: &[Scalar]) -> Result<OrbitLabel> {
    let n = space.dim();
    if !space.annihilates(omega, p) {
        return Err(Error::NotInDelta);
    }
    if n == 0 {
        return Ok(OrbitLabel::Point);
    }
    match space {
        Space::Linear(_) => {
            if is_zero_vec(p) {
                return Ok(OrbitLabel::AffineZero { gl: gl_class(omega) });
            }
            let g = affine_transport(p);
            let w = &(&g * omega) * &g.inverse().expect("transport invertible");
            let (wt, vt) = split_affine(&w);
            let inner = classify_adjoint_space(&Space::Linear(n - 1), &wt, &vt)?;
            Ok(OrbitLabel::AffineNonzero { inner: Box::new(inner) })
        }
        Space::Orthogonal(f) => match space_vector_class(space, p) {
            VectorClass::Zero => Ok(OrbitLabel::Zero { so: small_so_class(omega, f.signature())? }),
            VectorClass::NullNonzero => {
                let frame = NullFrame::new(f.gram(), p)?;
                let (a, b) = frame.psi_inv(omega);
                let inner = classify_adjoint_space(&frame.w_space, &a, &b)?;
                Ok(OrbitLabel::Null { inner: Box::new(inner) })
            }
            VectorClass::Timelike(q) | VectorClass::Spacelike(q) => {
                let perp = PerpFrame::new(f.gram(), p)?;
                let so = small_so_class(&perp.restrict(omega), perp.form.signature())?;
                Ok(if q.is_positive() { OrbitLabel::Timelike { q, so } } else { OrbitLabel::Spacelike { q, so } })
            }
            VectorClass::Nonzero => unreachable!("orthogonal spaces classify by Q"),
        },
    }
}

pub(crate) fn classify_adjoint_space(space: &Space, omega: &Matrix, v: &[Scalar]) -> Result<OrbitLabel> {
    let p = adjoint_to_delta_space(space, omega, v)?;
    classify_delta_space(space, omega, &p)
}

pub(crate) fn classify_coadjoint_space(space: &Space, m: &Matrix, p: &[Scalar]) -> Result<OrbitLabel> {
    let omega = coadjoint_to_delta_space(space, m, p)?;
    classify_delta_space(space, &omega, p)
}

/// Π → Δ in trace coordinates.
pub(crate) fn coadjoint_to_delta_space(space: &Space, m: &Matrix, p: &[Scalar]) -> Result<Matrix> {
    let n = space.dim();
    if n == 0 || is_zero_vec(p) {
        return Ok(m.clone());
    }
    match space {
        Space::Linear(_) => {
            let g = affine_transport(p);
            let ginv = g.inverse().expect("transport invertible");
            let mp = &(&g * m) * &ginv;
            let mt = mp.submatrix(0, n - 1, 0, n - 1);
            let pt: Vector = (0..n - 1).map(|i| mp[(n - 1, i)].clone()).collect();
            let inner = Space::Linear(n - 1);
            let wt = coadjoint_to_delta_space(&inner, &mt, &pt)?;
            let vt = delta_to_adjoint_space(&inner, &wt, &pt)?;
            let mut w = Matrix::zeros(n, n);
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    w[(i, j)] = wt[(i, j)].clone();
                }
                w[(i, n - 1)] = vt[i].clone();
            }
            Ok(&(&ginv * &w) * &g)
        }
        Space::Orthogonal(f) => {
            if space_vector_class(space, p) != VectorClass::NullNonzero {
                return Ok(project_little(space, m, p));
            }
            let frame = NullFrame::new(f.gram(), p)?;
            let (mw, pw) = frame.pull_back(m);
            let a = coadjoint_to_delta_space(&frame.w_space, &mw, &pw)?;
            let b = delta_to_adjoint_space(&frame.w_space, &a, &pw)?;
            Ok(frame.psi(&a, &b))
        }
    }
}

/// Δ → Π in trace coordinates.
pub(crate) fn delta_to_coadjoint_space(space: &Space, omega: &Matrix, p: &[Scalar]) -> Result<Matrix> {
    let n = space.dim();
    if !space.annihilates(omega, p) {
        return Err(Error::NotInDelta);
    }
    if n == 0 || is_zero_vec(p) {
        return Ok(omega.clone());
    }
    match space {
        Space::Linear(_) => {
            let g = affine_transport(p);
            let ginv = g.inverse().expect("transport invertible");
            let w = &(&g * omega) * &ginv;
            let (wt, vt) = split_affine(&w);
            let inner = Space::Linear(n - 1);
            let pd = adjoint_to_delta_space(&inner, &wt, &vt)?;
            let mt = delta_to_coadjoint_space(&inner, &wt, &pd)?;
            let mut mp = Matrix::zeros(n, n);
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    mp[(i, j)] = mt[(i, j)].clone();
                }
                mp[(n - 1, i)] = pd[i].clone();
            }
            Ok(&(&ginv * &mp) * &g)
        }
        Space::Orthogonal(f) => {
            if space_vector_class(space, p) != VectorClass::NullNonzero {
                return Ok(omega.clone());
            }
            let frame = NullFrame::new(f.gram(), p)?;
            let (a, b) = frame.psi_inv(omega);
            let pd = adjoint_to_delta_space(&frame.w_space, &a, &b)?;
            let mw = delta_to_coadjoint_space(&frame.w_space, &a, &pd)?;
            Ok(frame.push_forward(&mw, &pd))
        }
    }
}

// ---------------------------------------------------------------------------
// public API over GroupKind

fn check_delta(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<Space> {
    AlgebraElement { omega: omega.clone(), v: p.to_vec() }.validate(kind)?;
    let space = kind.space();
    if !space.annihilates(omega, p) {
        return Err(Error::NotInDelta);
    }
    Ok(space)
}

pub fn classify_delta(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<OrbitLabel> {
    let space = check_delta(kind, omega, p)?;
    classify_delta_space(&space, omega, p)
}

pub fn classify_adjoint(kind: GroupKind, x: &AlgebraElement) -> Result<OrbitLabel> {
    x.validate(kind)?;
    classify_adjoint_space(&kind.space(), &x.omega, &x.v)
}

pub fn classify_coadjoint(kind: GroupKind, xi: &DualAlgebraElement) -> Result<OrbitLabel> {
    let (omega, p) = coadjoint_to_delta(kind, xi)?;
    classify_delta_space(&kind.space(), &omega, &p)
}

/// The Δ-point (ω, p) representing the adjoint orbit of x.
pub fn adjoint_to_delta(kind: GroupKind, x: &AlgebraElement) -> Result<(Matrix, Vector)> {
    x.validate(kind)?;
    let p = adjoint_to_delta_space(&kind.space(), &x.omega, &x.v)?;
    Ok((x.omega.clone(), p))
}

/// The Δ-point (ω, p) representing the coadjoint orbit of ξ.
pub fn coadjoint_to_delta(kind: GroupKind, xi: &DualAlgebraElement) -> Result<(Matrix, Vector)> {
    xi.validate(kind)?;
    let omega = coadjoint_to_delta_space(&kind.space(), &xi.trace_coords(), &xi.p)?;
    Ok((omega, xi.p.clone()))
}

/// An adjoint representative of the orbit bijected with the Δ-orbit of (ω, p).
pub fn delta_to_adjoint(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<AlgebraElement> {
    let space = check_delta(kind, omega, p)?;
    let v = delta_to_adjoint_space(&space, omega, p)?;
    Ok(AlgebraElement { omega: omega.clone(), v })
}

/// A coadjoint representative of the orbit bijected with the Δ-orbit of (ω, p).
pub fn delta_to_coadjoint(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<DualAlgebraElement> {
    let space = check_delta(kind, omega, p)?;
    let m = delta_to_coadjoint_space(&space, omega, p)?;
    Ok(DualAlgebraElement::from_trace_coords(&m, p.to_vec()))
}

/// Adjoint element ↦ coadjoint representative of the bijected orbit.
pub fn bijected_coadjoint(kind: GroupKind, x: &AlgebraElement) -> Result<DualAlgebraElement> {
    let (omega, p) = adjoint_to_delta(kind, x)?;
    delta_to_coadjoint(kind, &omega, &p)
}

/// Coadjoint element ↦ adjoint representative of the bijected orbit.
pub fn bijected_adjoint(kind: GroupKind, xi: &DualAlgebraElement) -> Result<AlgebraElement> {
    let (omega, p) = coadjoint_to_delta(kind, xi)?;
    delta_to_adjoint(kind, &omega, &p)
}

pub fn classify_centralizer(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<CentralizerLabel> {
    let space = check_delta(kind, omega, p).map_err(|e| match e {
        Error::NotInDelta => Error::OutsideKernel,
        e => e,
    })?;
    let t = space.flag_operator(omega);
    let flag = Flag::of_operator(&t);
    let Some(j) = flag.stratum_of(p)? else {
        return Ok(CentralizerLabel::Zero);
    };
    match &space {
        Space::Linear(_) => Ok(CentralizerLabel::AffineStep(j)),
        Space::Orthogonal(f) => {
            let qf = quotient_form_raw(f.gram(), &t, &flag, j)?;
            let c = quotient_coords(&flag.steps()[j], &flag.steps()[j + 1], p)?;
            let val = qf.eval(&c, &c);
            let value = if qf.symmetry == Symmetry::Skew || val.is_zero() {
                ValueClass::NullNonzero
            } else {
                ValueClass::Value(val)
            };
            Ok(CentralizerLabel::OrthoStep { step: j, value })
        }
    }
}

pub fn bijection_affine(label: &CentralizerLabel) -> Result<DualCentralizerLabel> {
    match label {
        CentralizerLabel::Zero => Ok(DualCentralizerLabel::DualZero),
        CentralizerLabel::AffineStep(j) => Ok(DualCentralizerLabel::DualStep(*j)),
        CentralizerLabel::OrthoStep { .. } => Err(Error::NotAffineLabel),
    }
}

/// Label of x ∈ (ker ω*)* given by its values on the canonical kernel basis.
pub fn classify_dual_centralizer(kind: GroupKind, omega: &Matrix, x: &[Scalar]) -> Result<DualCentralizerLabel> {
    let flag = crate::flag::compute_flag(kind, omega)?;
    if x.len() != flag.ambient().dim() {
        return Err(Error::dims(flag.ambient().dim(), x.len()));
    }
    Ok(match crate::flag::dual_flag(&flag).stratum_of(x) {
        None => DualCentralizerLabel::DualZero,
        Some(j) => DualCentralizerLabel::DualStep(j),
    })
}

/// φ(p) on the canonical basis of ker ω (orthogonal kinds).
pub fn phi_map(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<Vector> {
    if kind.is_affine() {
        return Err(Error::Unsupported("φ is the form map of the orthogonal case".into()));
    }
    let space = check_delta(kind, omega, p).map_err(|e| match e {
        Error::NotInDelta => Error::OutsideKernel,
        e => e,
    })?;
    if is_zero_vec(p) {
        return Err(Error::Unsupported("φ(0) is not defined on a stratum".into()));
    }
    phi_values(&space, omega, p)
}

/// Identity-pairing analogue of φ for Aff(n): values on the kernel basis.
pub fn affine_phi(kind: GroupKind, omega: &Matrix, p: &[Scalar]) -> Result<Vector> {
    if !kind.is_affine() {
        return Err(Error::Unsupported("affine φ needs an affine group".into()));
    }
    let space = check_delta(kind, omega, p).map_err(|_| Error::OutsideKernel)?;
    phi_values(&space, omega, p)
}

/// Evaluates a functional given by values on the canonical basis of ker ω* at q ∈ ker ω*.
pub fn eval_on_kernel(kind: GroupKind, omega: &Matrix, x: &[Scalar], q: &[Scalar]) -> Result<Scalar> {
    let ker = kernel(&kind.space().flag_operator(omega));
    let c = ker.coords(q).ok_or(Error::OutsideKernel)?;
    Ok(dot(&c, x))
}

/// Σ-values of the adjoint representative, for cross-checks.
pub fn sigma_of(kind: GroupKind, x: &AlgebraElement) -> Result<Vector> {
    x.validate(kind)?;
    Ok(sigma_values(&kind.space(), &x.omega, &x.v))
}

// ---------------------------------------------------------------------------
// hierarchy

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "leaf")]
pub enum LeafKind {
    /// adjoint orbits of GL(k)
    Gl { k: usize },
    /// the 𝔞𝔣𝔣(1) table
    Aff1,
    /// adjoint orbits of O(a,b)
    So { a: usize, b: usize },
    /// O(a,b) × ℝ>0_t
    SoTimesT { a: usize, b: usize },
    /// O(a,b) × ℝ>0_s
    SoTimesS { a: usize, b: usize },
}

impl fmt::Display for LeafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeafKind::Gl { k } => write!(f, "gl({k})"),
            LeafKind::Aff1 => write!(f, "aff(1)"),
            LeafKind::So { a: 0, b: 0 } => write!(f, "Δ0,0"),
            LeafKind::So { a, b } => write!(f, "so({a},{b})"),
            LeafKind::SoTimesT { a, b } => write!(f, "so({a},{b})×R>0_t"),
            LeafKind::SoTimesS { a, b } => write!(f, "so({a},{b})×R>0_s"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "node")]
pub enum HierarchyNode {
    Delta { name: String, children: Vec<HierarchyNode> },
    Leaf { name: String, kind: LeafKind },
}

impl HierarchyNode {
    fn leaf(kind: LeafKind) -> Self {
        HierarchyNode::Leaf { name: kind.to_string(), kind }
    }

    pub fn leaves(&self) -> Vec<LeafKind> {
        match self {
            HierarchyNode::Leaf { kind, .. } => vec![kind.clone()],
            HierarchyNode::Delta { children, .. } => children.iter().flat_map(|c| c.leaves()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            HierarchyNode::Delta { name, .. } | HierarchyNode::Leaf { name, .. } => name,
        }
    }
}

pub fn enumerate_hierarchy(kind: GroupKind) -> HierarchyNode {
    match kind {
        GroupKind::Affine(n) => affine_tree(n),
        GroupKind::Poincare(m, n) => poincare_tree(m, n),
    }
}

fn affine_tree(n: usize) -> HierarchyNode {
    if n <= 1 {
        return HierarchyNode::leaf(LeafKind::Aff1);
    }
    HierarchyNode::Delta {
        name: format!("Δ{n}"),
        children: vec![HierarchyNode::leaf(LeafKind::Gl { k: n }), affine_tree(n - 1)],
    }
}

fn poincare_tree(a: usize, b: usize) -> HierarchyNode {
    if a == 0 && b == 0 {
        return HierarchyNode::leaf(LeafKind::So { a: 0, b: 0 });
    }
    let mut children = vec![HierarchyNode::leaf(LeafKind::So { a, b })];
    if a >= 1 {
        children.push(HierarchyNode::leaf(LeafKind::SoTimesT { a: a - 1, b }));
    }
    if b >= 1 {
        children.push(HierarchyNode::leaf(LeafKind::SoTimesS { a, b: b - 1 }));
    }
    if a >= 1 && b >= 1 {
        children.push(poincare_tree(a - 1, b - 1));
    }
    HierarchyNode::Delta { name: format!("Δ{a},{b}"), children }
}

// ---------------------------------------------------------------------------
// the E(1,3) table

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E13Row {
    pub group: String,
    pub params: String,
    pub constraints: String,
}

const E13_ROWS: [(&str, &str, &str); 14] = [
    ("O(1,3)", "ζ = det ξ", "ζ ∉ ℝ"),
    ("O(1,3)", "ζ = det ξ", "ζ ∈ ℝ, ζ > 0"),
    ("O(1,3)", "ζ = det ξ", "ζ ∈ ℝ, ζ < 0"),
    ("O(1,3)", "ζ = 0", "ξ = 0"),
    ("O(1,3)", "N₂", "ξ nilpotent, ξ ≠ 0"),
    ("O(3)×ℝ>0_t", "(t,ρ)", "t > 0, ρ > 0"),
    ("O(3)×ℝ>0_t", "(t,0)", "t > 0"),
    ("O(1,2)×ℝ>0_s", "(s,c)", "s > 0, c = Q(v,v) > 0"),
    ("O(1,2)×ℝ>0_s", "(s,c)", "s > 0, c = Q(v,v) < 0"),
    ("O(1,2)×ℝ>0_s", "(s,0)", "s > 0, v = 0"),
    ("O(1,2)×ℝ>0_s", "s", "s > 0, v null, v ≠ 0"),
    ("O(2)", "x", "x > 0"),
    ("O(2)", "x = 0", "x = 0"),
    ("O(1)×ℝ>0_s", "s", "s > 0"),
];

/// Fourteen orbit types of E(1,3) in five groups.
pub fn e13_table() -> Vec<E13Row> {
    E13_ROWS
        .iter()
        .map(|(g, p, c)| E13Row { group: g.to_string(), params: p.to_string(), constraints: c.to_string() })
        .collect()
}

/// Index into [`e13_table`] of the orbit type of an E(1,3) label.
pub fn e13_row_of(label: &OrbitLabel) -> Option<usize> {
    use OrbitLabel as L;
    use SoClass as S;
    let sign = crate::linalg::sign;
    match label {
        L::Zero { so: S::So13(c) } => Some(match c {
            So13Class::Zeta { im_sq, .. } if !im_sq.is_zero() => 0,
            So13Class::Zeta { re, .. } if re.is_positive() => 1,
            So13Class::Zeta { .. } => 2,
            So13Class::Zero => 3,
            So13Class::NilpotentN2 => 4,
        }),
        L::Timelike { so: S::So3 { rho_sq }, .. } => Some(if rho_sq.is_zero() { 6 } else { 5 }),
        L::Spacelike { so: S::So12(c), .. } => Some(match c {
            So12Class::Value { c } if sign(c) > 0 => 7,
            So12Class::Value { .. } => 8,
            So12Class::Zero => 9,
            So12Class::NullNonzero => 10,
        }),
        L::Null { inner } => match inner.as_ref() {
            L::Zero { so: S::So2 { x_sq } } => Some(if x_sq.is_zero() { 12 } else { 11 }),
            L::Spacelike { so: S::Point, .. } => Some(13),
            _ => None,
        },
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, vec_from_ints};

    #[test]
    fn gl_examples() {
        let z = gl_class(&Matrix::zeros(2, 2));
        assert_eq!(z.factors, vec![Poly::x(), Poly::x()]);
        let n2 = gl_class(&Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(n2.factors[0], Poly::one());
    }

    #[test]
    fn charpoly_matches_factors() {
        let a = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 2]]);
        let prod = invariant_factors(&a).iter().fold(Poly::one(), |acc, f| acc.mul(f));
        assert_eq!(charpoly(&a), prod);
    }

    #[test]
    fn small_so_examples() {
        let w = Matrix::from_ints(&[&[0, 3], &[-3, 0]]);
        assert_eq!(small_so_class(&w, (2, 0)).unwrap(), SoClass::So2 { x_sq: int(9) });
        assert_eq!(small_so_class(&Matrix::zeros(3, 3), (0, 3)).unwrap(), SoClass::So3 { rho_sq: int(0) });
        assert_eq!(small_so_class(&Matrix::zeros(4, 4), (2, 2)), Err(Error::UnsupportedLeaf { p: 2, q: 2 }));
    }

    #[test]
    fn aff1_delta_labels() {
        let k = GroupKind::Affine(1);
        let l = classify_delta(k, &Matrix::zeros(1, 1), &vec_from_ints(&[1])).unwrap();
        assert_eq!(l, OrbitLabel::AffineNonzero { inner: Box::new(OrbitLabel::Point) });
        assert_eq!(classify_delta(k, &Matrix::from_ints(&[&[1]]), &vec_from_ints(&[1])), Err(Error::NotInDelta));
    }

    #[test]
    fn e11_null_delta() {
        let k = GroupKind::Poincare(1, 1);
        let l = classify_delta(k, &Matrix::zeros(2, 2), &vec_from_ints(&[1, 1])).unwrap();
        assert_eq!(l, OrbitLabel::Null { inner: Box::new(OrbitLabel::Point) });
    }

    #[test]
    fn centralizer_examples() {
        let n2 = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let k = GroupKind::Affine(3);
        assert_eq!(classify_centralizer(k, &n2, &zero_vec(3)).unwrap(), CentralizerLabel::Zero);
        assert_eq!(classify_centralizer(k, &n2, &vec_from_ints(&[0, 0, 1])).unwrap(), CentralizerLabel::AffineStep(0));
        assert_eq!(classify_centralizer(k, &n2, &vec_from_ints(&[0, 1, 0])).unwrap(), CentralizerLabel::AffineStep(1));
        assert_eq!(bijection_affine(&CentralizerLabel::AffineStep(1)).unwrap(), DualCentralizerLabel::DualStep(1));
    }

    #[test]
    fn hierarchy_examples() {
        let a3 = enumerate_hierarchy(GroupKind::Affine(3)).leaves();
        assert_eq!(a3, vec![LeafKind::Gl { k: 3 }, LeafKind::Gl { k: 2 }, LeafKind::Aff1]);
        let e11 = enumerate_hierarchy(GroupKind::Poincare(1, 1)).leaves();
        assert_eq!(
            e11,
            vec![
                LeafKind::So { a: 1, b: 1 },
                LeafKind::SoTimesT { a: 0, b: 1 },
                LeafKind::SoTimesS { a: 1, b: 0 },
                LeafKind::So { a: 0, b: 0 },
            ]
        );
    }

    #[test]
    fn e13_table_shape() {
        let t = e13_table();
        assert_eq!(t.len(), 14);
        let mut groups: Vec<&str> = t.iter().map(|r| r.group.as_str()).collect();
        groups.dedup();
        assert_eq!(groups.len(), 5);
    }
}

//! The semidirect products G = H ⋉ V and their (co)adjoint actions.
//!
//! Conventions, fixed once:
//! * 𝔥* is paired with 𝔥 by ⟨L, ω⟩ = Tr(Lᵀω); V* with V by pᵀv (affine) or pᵀQv
//!   (Poincaré, where V* is identified with V through Q).
//! * The dual action is r*p = r⁻ᵀp (affine) and r*p = rp (Poincaré).
//! * Internally coadjoint vectors are often kept in "trace coordinates"
//!   M = Lᵀ, for which Ad*_r is plain conjugation M ↦ rMr⁻¹.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    annihilator, dot, frac, int, intersect, is_zero_vec, kernel, serde_rational, signature, zero_vec, Matrix, Scalar,
    Subspace, Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Aff(n) = GL(n) ⋉ ℚⁿ
    Affine(usize),
    /// E(m,n) = O(m,n) ⋉ ℚ^{m+n}, with Q = diag(+1×m, −1×n)
    Poincare(usize, usize),
}

impl GroupKind {
    pub fn affine(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidKind("affine dimension must be at least 1".into()));
        }
        Ok(GroupKind::Affine(n))
    }

    pub fn poincare(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::InvalidKind("poincare needs m + n ≥ 1".into()));
        }
        Ok(GroupKind::Poincare(m, n))
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            GroupKind::Affine(n) => Self::affine(n),
            GroupKind::Poincare(m, n) => Self::poincare(m, n),
        }
    }

    /// dim V
    pub fn dim(self) -> usize {
        match self {
            GroupKind::Affine(n) => n,
            GroupKind::Poincare(m, n) => m + n,
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(self, GroupKind::Affine(_))
    }

    /// Q = diag(+1×m, −1×n) for Poincaré kinds.
    pub fn form(self) -> Option<Matrix> {
        match self {
            GroupKind::Affine(_) => None,
            GroupKind::Poincare(m, n) => Some(standard_gram(m, n)),
        }
    }

    pub fn space(self) -> Space {
        match self {
            GroupKind::Affine(n) => Space::Linear(n),
            GroupKind::Poincare(m, n) => Space::Orthogonal(Form { gram: standard_gram(m, n), signature: (m, n) }),
        }
    }
}

fn standard_gram(m: usize, n: usize) -> Matrix {
    let d: Vec<Scalar> = (0..m + n).map(|i| int(if i < m { 1 } else { -1 })).collect();
    Matrix::diagonal(&d)
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Affine(n) => write!(f, "affine:{n}"),
            GroupKind::Poincare(m, n) => write!(f, "poincare:{m},{n}"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    /// `affine:<n>` or `poincare:<m>,<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidKind(format!("`{s}`: expected affine:<n> or poincare:<m>,<n>"));
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match tag.trim() {
            "affine" => GroupKind::affine(num(rest)?),
            "poincare" => {
                let (m, n) = rest.split_once(',').ok_or_else(bad)?;
                GroupKind::poincare(num(m)?, num(n)?)
            }
            _ => Err(bad()),
        }
    }
}

/// A nondegenerate symmetric bilinear form with its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    gram: Matrix,
    signature: (usize, usize),
}

impl Form {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::SkewForm);
        }
        let (p, q, z) = signature(&gram);
        if z > 0 {
            return Err(Error::Singular);
        }
        Ok(Form { gram, signature: (p, q) })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.gram.bilinear(u, v)
    }
}

/// The vector space V together with H ⊂ GL(V): either all of GL(V) or the
/// isometry group of a form. Recursion through little groups produces
/// orthogonal spaces with non-diagonal Gram matrices, so this is more general
/// than [`GroupKind`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Linear(usize),
    Orthogonal(Form),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Linear(n) => *n,
            Space::Orthogonal(f) => f.dim(),
        }
    }

    pub fn gram(&self) -> Option<&Matrix> {
        match self {
            Space::Linear(_) => None,
            Space::Orthogonal(f) => Some(&f.gram),
        }
    }

    /// Operator whose kernel and flag carry the centraliser data:
    /// ωᵀ in the affine case (the sign of ω* is irrelevant there), ω itself
    /// for orthogonal spaces.
    pub fn flag_operator(&self, omega: &Matrix) -> Matrix {
        match self {
            Space::Linear(_) => omega.transpose(),
            Space::Orthogonal(_) => omega.clone(),
        }
    }

    /// r*p
    pub fn dual_act(&self, r: &Matrix, p: &[Scalar]) -> Result<Vector> {
        match self {
            Space::Linear(_) => Ok(r.inverse().ok_or(Error::Singular)?.transpose().mul_vec(p)),
            Space::Orthogonal(_) => Ok(r.mul_vec(p)),
        }
    }

    /// ⟨p, v⟩ between V* and V.
    pub fn pair(&self, p: &[Scalar], v: &[Scalar]) -> Scalar {
        match self {
            Space::Linear(_) => dot(p, v),
            Space::Orthogonal(f) => f.eval(p, v),
        }
    }

    /// μ(q, d) in trace coordinates: Tr(μ ω) = ⟨q, ω d⟩ for all ω ∈ 𝔥.
    pub fn mu_trace(&self, q: &[Scalar], d: &[Scalar]) -> Matrix {
        let outer = |a: &[Scalar], b: &[Scalar]| {
            &Matrix::from_columns(a.len(), &[a.to_vec()]) * &Matrix::from_rows(vec![b.to_vec()])
        };
        match self {
            Space::Linear(_) => outer(d, q),
            Space::Orthogonal(f) => {
                let skew = &outer(d, q) - &outer(q, d);
                (&skew * &f.gram).scale(&frac(1, 2))
            }
        }
    }

    pub fn in_algebra(&self, omega: &Matrix) -> bool {
        let n = self.dim();
        if omega.rows() != n || omega.cols() != n {
            return false;
        }
        match self {
            Space::Linear(_) => true,
            Space::Orthogonal(f) => (&(&omega.transpose() * &f.gram) + &(&f.gram * omega)).is_zero(),
        }
    }

    pub fn in_group(&self, r: &Matrix) -> bool {
        let n = self.dim();
        if r.rows() != n || r.cols() != n || !r.is_invertible() {
            return false;
        }
        match self {
            Space::Linear(_) => true,
            Space::Orthogonal(f) => &(&r.transpose() * &f.gram) * r == f.gram,
        }
    }

    /// ω*p = 0, i.e. (ω, p) ∈ Δ.
    pub fn annihilates(&self, omega: &Matrix, p: &[Scalar]) -> bool {
        is_zero_vec(&self.flag_operator(omega).mul_vec(p))
    }

    /// 𝔥 as a subspace of flattened n×n matrices.
    pub fn algebra(&self) -> Subspace {
        let n = self.dim();
        match self {
            Space::Linear(_) => Subspace::full(n * n),
            Space::Orthogonal(f) => kernel(&so_constraints(&f.gram)),
        }
    }

    /// 𝔥_p = {ω ∈ 𝔥 : ω*p = 0}, flattened.
    pub fn little_algebra(&self, p: &[Scalar]) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for i in 0..n {
            let mut row = zero_vec(n * n);
            for k in 0..n {
                match self {
                    // (ωᵀp)_i = Σ_k ω_ki p_k
                    Space::Linear(_) => row[k * n + i] = p[k].clone(),
                    // (ωp)_i = Σ_k ω_ik p_k
                    Space::Orthogonal(_) => row[i * n + k] = p[k].clone(),
                }
            }
            rows.push(row);
        }
        if let Space::Orthogonal(f) = self {
            rows.extend(so_constraints(&f.gram).to_rows());
        }
        kernel(&Matrix::from_rows(rows))
    }

    /// Ad(r,d)(ω, v) = (rωr⁻¹, rv − (rωr⁻¹)d)
    pub fn adjoint(&self, r: &Matrix, d: &[Scalar], omega: &Matrix, v: &[Scalar]) -> Result<(Matrix, Vector)> {
        let rinv = r.inverse().ok_or(Error::Singular)?;
        let w = &(r * omega) * &rinv;
        let rv = r.mul_vec(v);
        let wd = w.mul_vec(d);
        let v2 = rv.iter().zip(&wd).map(|(a, b)| a - b).collect();
        Ok((w, v2))
    }

    /// Ad*(r,d)(M, p) in trace coordinates: (rMr⁻¹ + μ(r*p, d), r*p).
    pub fn coadjoint_trace(&self, r: &Matrix, d: &[Scalar], m: &Matrix, p: &[Scalar]) -> Result<(Matrix, Vector)> {
        let rinv = r.inverse().ok_or(Error::Singular)?;
        let rp = self.dual_act(r, p)?;
        let conj = &(r * m) * &rinv;
        Ok((&conj + &self.mu_trace(&rp, d), rp))
    }

    /// ⟨(M,p), (ω,v)⟩ = Tr(Mω) + ⟨p, v⟩ in trace coordinates.
    pub fn pairing_trace(&self, m: &Matrix, p: &[Scalar], omega: &Matrix, v: &[Scalar]) -> Scalar {
        (m * omega).trace() + self.pair(p, v)
    }
}

/// Rows of the linear map ω ↦ ωᵀG + Gω on flattened ω.
fn so_constraints(g: &Matrix) -> Matrix {
    let n = g.rows();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = zero_vec(n * n);
            for a in 0..n {
                // (ωᵀG)_ij = Σ_a ω_ai G_aj ; (Gω)_ij = Σ_a G_ia ω_aj
                row[a * n + i] += &g[(a, j)];
                row[a * n + j] += &g[(i, a)];
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows)
}

/// Matrices as rows of `"num/den"` strings in element JSON.
pub(crate) mod serde_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational::rows::serialize(&m.to_rows(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        use serde::de::Error as _;
        let rows = serde_rational::rows::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(if rows.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(with = "serde_rows")]
    pub r: Matrix,
    #[serde(with = "serde_rational::vec")]
    pub d: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraElement {
    #[serde(with = "serde_rows")]
    pub omega: Matrix,
    #[serde(with = "serde_rational::vec")]
    pub v: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualAlgebraElement {
    #[serde(rename = "L", with = "serde_rows")]
    pub l: Matrix,
    #[serde(with = "serde_rational::vec")]
    pub p: Vector,
}

/// (ω, x) with x given by its values on the canonical basis of ker ω*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaPoint {
    #[serde(with = "serde_rows")]
    pub omega: Matrix,
    #[serde(with = "serde_rational::vec")]
    pub x: Vector,
}

/// (l, p) with l given by its values on the canonical basis of 𝔥_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPoint {
    #[serde(with = "serde_rational::vec")]
    pub p: Vector,
    #[serde(with = "serde_rational::vec")]
    pub l: Vector,
}

impl GroupElement {
    pub fn identity(kind: GroupKind) -> Self {
        let n = kind.dim();
        GroupElement { r: Matrix::identity(n), d: zero_vec(n) }
    }

    pub fn validate(&self, kind: GroupKind) -> Result<()> {
        let n = kind.dim();
        if self.r.rows() != n || self.r.cols() != n || self.d.len() != n {
            return Err(Error::dims(n, format!("{}x{} / {}", self.r.rows(), self.r.cols(), self.d.len())));
        }
        if !kind.space().in_group(&self.r) {
            return Err(Error::NotInGroup(format!("r is not in H for {kind}")));
        }
        Ok(())
    }

    /// (r,d)(s,e) = (rs, d + re)
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let re = self.r.mul_vec(&other.d);
        GroupElement { r: &self.r * &other.r, d: self.d.iter().zip(&re).map(|(a, b)| a + b).collect() }
    }

    /// (r,d)⁻¹ = (r⁻¹, −r⁻¹d)
    pub fn inverse(&self) -> Result<GroupElement> {
        let rinv = self.r.inverse().ok_or(Error::Singular)?;
        let d = rinv.mul_vec(&self.d).iter().map(|x| -x).collect();
        Ok(GroupElement { r: rinv, d })
    }
}

impl AlgebraElement {
    pub fn validate(&self, kind: GroupKind) -> Result<()> {
        let n = kind.dim();
        if self.omega.rows() != n || self.omega.cols() != n || self.v.len() != n {
            return Err(Error::dims(n, format!("{}x{} / {}", self.omega.rows(), self.omega.cols(), self.v.len())));
        }
        if !kind.space().in_algebra(&self.omega) {
            return Err(Error::NotInAlgebra("ω is not Q-skew-adjoint".into()));
        }
        Ok(())
    }
}

impl DualAlgebraElement {
    pub fn validate(&self, kind: GroupKind) -> Result<()> {
        let n = kind.dim();
        if self.l.rows() != n || self.l.cols() != n || self.p.len() != n {
            return Err(Error::dims(n, format!("{}x{} / {}", self.l.rows(), self.l.cols(), self.p.len())));
        }
        // 𝔥* is identified with 𝔥 = 𝔰𝔬(Q) through the trace pairing
        if !kind.space().in_algebra(&self.l) {
            return Err(Error::NotInAlgebra("L must lie in 𝔰𝔬(Q)".into()));
        }
        Ok(())
    }

    /// Trace coordinates M = Lᵀ.
    pub fn trace_coords(&self) -> Matrix {
        self.l.transpose()
    }

    pub fn from_trace_coords(m: &Matrix, p: Vector) -> Self {
        DualAlgebraElement { l: m.transpose(), p }
    }
}

fn check_vec(kind: GroupKind, v: &[Scalar]) -> Result<()> {
    if v.len() != kind.dim() {
        return Err(Error::dims(kind.dim(), v.len()));
    }
    Ok(())
}

pub fn adjoint_act(kind: GroupKind, g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    g.validate(kind)?;
    x.validate(kind)?;
    let (omega, v) = kind.space().adjoint(&g.r, &g.d, &x.omega, &x.v)?;
    Ok(AlgebraElement { omega, v })
}

pub fn coadjoint_act(kind: GroupKind, g: &GroupElement, xi: &DualAlgebraElement) -> Result<DualAlgebraElement> {
    g.validate(kind)?;
    xi.validate(kind)?;
    let (m, p) = kind.space().coadjoint_trace(&g.r, &g.d, &xi.trace_coords(), &xi.p)?;
    Ok(DualAlgebraElement::from_trace_coords(&m, p))
}

/// ⟨ξ, x⟩ = Tr(Lᵀω) + ⟨p, v⟩.
pub fn pairing(kind: GroupKind, xi: &DualAlgebraElement, x: &AlgebraElement) -> Result<Scalar> {
    xi.validate(kind)?;
    x.validate(kind)?;
    Ok(kind.space().pairing_trace(&xi.trace_coords(), &xi.p, &x.omega, &x.v))
}

/// μ(p, v) ∈ 𝔥* as a matrix L with Tr(Lᵀω) = ⟨p, ωv⟩.
///
/// Affine: L = p vᵀ. Poincaré: L = ½Q(pvᵀ − vpᵀ); this is the element of
/// 𝔰𝔬(Q) with the defining property under ⟨L,ω⟩ = Tr(Lᵀω) + pᵀQv.
pub fn mu(kind: GroupKind, p: &[Scalar], v: &[Scalar]) -> Result<Matrix> {
    check_vec(kind, p)?;
    check_vec(kind, v)?;
    Ok(kind.space().mu_trace(p, v).transpose())
}

pub fn little_algebra(kind: GroupKind, p: &[Scalar]) -> Result<Subspace> {
    check_vec(kind, p)?;
    Ok(kind.space().little_algebra(p))
}

/// The annihilator of a subspace S ⊆ 𝔥 inside 𝔥*, in L-coordinates.
pub fn annihilator_in_dual(kind: GroupKind, s: &Subspace) -> Subspace {
    let space = kind.space();
    let ann = annihilator(s);
    match space {
        Space::Linear(_) => ann,
        Space::Orthogonal(_) => intersect(&ann, &space.algebra()).expect("same ambient"),
    }
}

/// span{μ(p, eᵢ)} as a subspace of flattened L-matrices.
pub fn mu_image(kind: GroupKind, p: &[Scalar]) -> Result<Subspace> {
    check_vec(kind, p)?;
    let n = kind.dim();
    let vs =
        (0..n).map(|i| mu(kind, p, &crate::linalg::unit_vec(n, i)).map(|m| m.flatten())).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(n * n, &vs))
}

/// x = ⟨·, v⟩ on the canonical basis of ker ω*.
pub fn project_to_sigma(kind: GroupKind, x: &AlgebraElement) -> Result<SigmaPoint> {
    x.validate(kind)?;
    Ok(SigmaPoint { omega: x.omega.clone(), x: sigma_values(&kind.space(), &x.omega, &x.v) })
}

pub(crate) fn sigma_values(space: &Space, omega: &Matrix, v: &[Scalar]) -> Vector {
    let ker = kernel(&space.flag_operator(omega));
    ker.basis_vectors().iter().map(|q| space.pair(q, v)).collect()
}

/// (ι*_p L, p) with ι*_p L evaluated on the canonical basis of 𝔥_p.
pub fn project_to_pi(kind: GroupKind, xi: &DualAlgebraElement) -> Result<PiPoint> {
    xi.validate(kind)?;
    let h = kind.space().little_algebra(&xi.p);
    let lf = xi.l.flatten();
    Ok(PiPoint { p: xi.p.clone(), l: h.basis_vectors().iter().map(|b| dot(&lf, b)).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class", content = "q")]
pub enum VectorClass {
    Zero,
    Nonzero,
    Timelike(#[serde(with = "serde_rational")] Scalar),
    Spacelike(#[serde(with = "serde_rational")] Scalar),
    NullNonzero,
}

impl fmt::Display for VectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::linalg::format_scalar as s;
        match self {
            VectorClass::Zero => write!(f, "zero"),
            VectorClass::Nonzero => write!(f, "nonzero"),
            VectorClass::Timelike(q) => write!(f, "timelike(Q={})", s(q)),
            VectorClass::Spacelike(q) => write!(f, "spacelike(Q={})", s(q)),
            VectorClass::NullNonzero => write!(f, "null-nonzero"),
        }
    }
}

pub fn vector_orbit_class(kind: GroupKind, v: &[Scalar]) -> Result<VectorClass> {
    check_vec(kind, v)?;
    Ok(space_vector_class(&kind.space(), v))
}

pub(crate) fn space_vector_class(space: &Space, v: &[Scalar]) -> VectorClass {
    if is_zero_vec(v) {
        return VectorClass::Zero;
    }
    match space {
        Space::Linear(_) => VectorClass::Nonzero,
        Space::Orthogonal(f) => {
            let q = f.eval(v, v);
            if q.is_zero() {
                VectorClass::NullNonzero
            } else if q.is_positive() {
                VectorClass::Timelike(q)
            } else {
                VectorClass::Spacelike(q)
            }
        }
    }
}

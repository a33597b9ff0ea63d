use serde::{Deserialize, Serialize};

use super::matrix::rref_in_place;
use super::{combine, is_zero_vec, unit_vec, zero_vec, Matrix, Scalar, Vector};
use crate::error::{Error, Result};

/// A linear subspace of ℚⁿ.
///
/// The basis is the reduced row echelon form of any spanning set, stored as
/// columns, so two subspaces are equal exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Matrix,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = String;
    fn try_from(r: SubspaceRepr) -> std::result::Result<Self, String> {
        if r.basis.rows() != r.ambient_dim {
            return Err("basis rows must equal ambient_dim".into());
        }
        let s = Subspace::span(r.ambient_dim, &r.basis.columns());
        if s.dim() != r.basis.cols() {
            return Err("basis columns are linearly dependent".into());
        }
        Ok(s)
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr { ambient_dim: s.ambient, basis: s.basis }
    }
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors
            .iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length"))
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect();
        let pivots = rref_in_place(&mut rows, ambient);
        Subspace { ambient, basis: Matrix::from_columns(ambient, &rows), pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        let e: Vec<Vector> = (0..ambient).map(|i| unit_vec(ambient, i)).collect();
        Self::span(ambient, &e)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Columns form the canonical basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    /// Coordinates against the canonical basis, or `None` if `v ∉ self`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = combine(self.ambient, &c, &self.basis_vectors());
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn from_coords(&self, c: &[Scalar]) -> Vector {
        combine(self.ambient, c, &self.basis_vectors())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs)
    }

    /// Vectors of `self`'s canonical basis that extend `sub`'s canonical basis
    /// to a basis of `self`, chosen greedily in order.
    pub fn completion_of(&self, sub: &Subspace) -> Vec<Vector> {
        greedy_completion(sub, &self.basis_vectors())
    }

    /// Standard basis vectors, in index order, completing `self` to ℚⁿ.
    pub fn standard_completion(&self) -> Vec<Vector> {
        let e: Vec<Vector> = (0..self.ambient).map(|i| unit_vec(self.ambient, i)).collect();
        greedy_completion(self, &e)
    }

    /// Image under a linear map given as a matrix on the ambient space.
    pub fn map(&self, a: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|v| a.mul_vec(v)).collect();
        Subspace::span(a.rows(), &vs)
    }
}

fn greedy_completion(start: &Subspace, candidates: &[Vector]) -> Vec<Vector> {
    let mut acc = start.clone();
    let mut out = Vec::new();
    for v in candidates {
        if !acc.contains(v) {
            out.push(v.clone());
            acc = acc.sum(&Subspace::span(acc.ambient, std::slice::from_ref(v)));
        }
    }
    out
}

/// {x : Ax = 0}.
pub fn kernel(a: &Matrix) -> Subspace {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vs: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut x = zero_vec(n);
            x[f] = Scalar::from_integer(1.into());
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, f)].clone();
            }
            x
        })
        .collect();
    Subspace::span(n, &vs)
}

/// Column space of `a`.
pub fn image(a: &Matrix) -> Subspace {
    Subspace::span(a.rows(), &a.columns())
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    if u.ambient != w.ambient {
        return Err(Error::dims(u.ambient, w.ambient));
    }
    if u.is_zero() || w.is_zero() {
        return Ok(Subspace::zero(u.ambient));
    }
    // [B_U | -B_W] (a; b) = 0  ⇒  B_U a ∈ U ∩ W
    let stacked = u.basis().hstack(&-w.basis());
    let k = kernel(&stacked);
    let du = u.dim();
    let vs: Vec<Vector> = k.basis_vectors().iter().map(|c| u.from_coords(&c[..du])).collect();
    Ok(Subspace::span(u.ambient, &vs))
}

/// {f ∈ (ℚⁿ)* : f(u) = 0 for u ∈ U}, in dual standard coordinates.
pub fn annihilator(u: &Subspace) -> Subspace {
    if u.is_zero() {
        return Subspace::full(u.ambient);
    }
    kernel(&u.basis().transpose())
}

/// Coordinates of `[v] ∈ U/W` against the classes of [`Subspace::completion_of`].
pub fn quotient_coords(u: &Subspace, w: &Subspace, v: &[Scalar]) -> Result<Vector> {
    if u.ambient != w.ambient || v.len() != u.ambient {
        return Err(Error::dims(u.ambient, v.len()));
    }
    if !w.is_subspace_of(u) || !u.contains(v) {
        return Err(Error::NotInSubspace);
    }
    let comp = u.completion_of(w);
    let mut cols = w.basis_vectors();
    cols.extend(comp.iter().cloned());
    let a = Matrix::from_columns(u.ambient, &cols);
    let c = solve(&a, v).ok_or(Error::NotInSubspace)?;
    Ok(c[w.dim()..].to_vec())
}

/// Solves `Ax = b`; free variables are set to zero, giving the
/// minimal-support solution of the echelonized system.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let n = a.cols();
    let mut rows: Vec<Vector> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i);
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vec(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rows[row][n].clone();
    }
    Some(x)
}

impl Subspace {
    /// True when `self` is mapped into itself by `a`.
    pub fn is_invariant_under(&self, a: &Matrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&a.mul_vec(v)))
    }
}

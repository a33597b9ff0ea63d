//! Centraliser flags, their quotient forms, and the constructive extension of
//! flag-preserving automorphisms of ker ω* to automorphisms of V* commuting
//! with ω*.
//!
//! All routines work with the "flag operator" T of [`Space::flag_operator`]:
//! T = ωᵀ on V* for the affine groups and T = ω on V ≅ V* for the orthogonal
//! ones.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::actions::{GroupKind, Space};
use crate::error::{Error, Result};
use crate::linalg::{
    annihilator, image, intersect, kernel, quotient_coords, signature, solve, Matrix, Scalar, Subspace, Vector,
};

/// ker T = E_0 ⊋ E_1 ⊋ … ⊋ E_{k+1} = {0}, with E_j = Im T^{m_j} ∩ ker T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    steps: Vec<Subspace>,
    power_index: Vec<usize>,
}

impl Flag {
    pub fn of_operator(t: &Matrix) -> Flag {
        let ker = kernel(t);
        let mut steps = vec![ker.clone()];
        let mut power_index = Vec::new();
        let mut power = Matrix::identity(t.rows());
        let mut m = 0;
        while !steps.last().unwrap().is_zero() {
            power = &power * t;
            let next = intersect(&image(&power), &ker).expect("same ambient");
            if next != *steps.last().unwrap() {
                power_index.push(m);
                steps.push(next);
            }
            m += 1;
        }
        Flag { steps, power_index }
    }

    /// ker ω*
    pub fn ambient(&self) -> &Subspace {
        &self.steps[0]
    }

    /// E_0, …, E_{k+1}.
    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    /// m_j for each strict step j = 0..=k.
    pub fn power_index(&self) -> &[usize] {
        &self.power_index
    }

    /// Number of nonzero strata, k + 1.
    pub fn strata(&self) -> usize {
        self.power_index.len()
    }

    /// The least m with Im T^m ∩ ker T = {0}.
    pub fn length(&self) -> usize {
        self.power_index.last().map_or(0, |m| m + 1)
    }

    /// j with p ∈ E_j \ E_{j+1}; `None` for p = 0.
    pub fn stratum_of(&self, p: &[Scalar]) -> Result<Option<usize>> {
        if p.len() != self.ambient().ambient_dim() {
            return Err(Error::dims(self.ambient().ambient_dim(), p.len()));
        }
        if !self.ambient().contains(p) {
            return Err(Error::OutsideKernel);
        }
        Ok((0..self.strata()).find(|&j| !self.steps[j + 1].contains(p)))
    }

    /// Deterministic representatives u_i of a basis of E_j / E_{j+1}.
    pub fn quotient_basis(&self, j: usize) -> Vec<Vector> {
        self.steps[j].completion_of(&self.steps[j + 1])
    }

    /// Basis of ker T adapted to the flag: blocks of quotient bases, top stratum first.
    pub fn adapted_basis(&self) -> Vec<Vec<Vector>> {
        (0..self.strata()).map(|j| self.quotient_basis(j)).collect()
    }

    /// E_j in coordinates of the canonical basis of ker T.
    pub fn step_coords(&self, j: usize) -> Subspace {
        let ker = self.ambient();
        let vs: Vec<Vector> =
            self.steps[j].basis_vectors().iter().map(|v| ker.coords(v).expect("flag step inside kernel")).collect();
        Subspace::span(ker.dim(), &vs)
    }
}

/// The ascending annihilator chain {0} = E_0° ⊊ E_1° ⊊ … ⊊ E_{k+1}° = (ker T)*,
/// in coordinates dual to the canonical basis of ker T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualFlag {
    pub annihilators: Vec<Subspace>,
}

pub fn dual_flag(f: &Flag) -> DualFlag {
    DualFlag { annihilators: (0..f.steps.len()).map(|j| annihilator(&f.step_coords(j))).collect() }
}

impl DualFlag {
    /// Recovers the flag steps (in kernel coordinates) through the double dual.
    pub fn dual(&self) -> Vec<Subspace> {
        self.annihilators.iter().map(annihilator).collect()
    }

    /// j with x ∈ E_{j+1}° \ E_j°; `None` for x = 0.
    pub fn stratum_of(&self, x: &[Scalar]) -> Option<usize> {
        (0..self.annihilators.len() - 1)
            .find(|&j| self.annihilators[j + 1].contains(x) && !self.annihilators[j].contains(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// ⟨[T^m x], [T^m y]⟩ = Q(T^m x, y) on E_j / E_{j+1}, in the basis of
/// [`Flag::quotient_basis`]. For symmetric Q it is symmetric when m is even
/// and skew when m is odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientForm {
    pub j: usize,
    pub power: usize,
    #[serde(with = "crate::linalg::serde_rational::rows")]
    pub basis: Vec<Vector>,
    pub gram: Matrix,
    pub symmetry: Symmetry,
    pub signature: Option<(usize, usize)>,
}

impl QuotientForm {
    pub fn eval(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.gram.bilinear(a, b)
    }
}

pub(crate) fn quotient_form_raw(gram: &Matrix, t: &Matrix, flag: &Flag, j: usize) -> Result<QuotientForm> {
    if j >= flag.strata() {
        return Err(Error::NoSuchStep(j));
    }
    let m = flag.power_index[j];
    let tm = t.pow(m);
    let us = flag.quotient_basis(j);
    let pre: Vec<Vector> = us
        .iter()
        .map(|u| solve(&tm, u).ok_or_else(|| Error::Verification("flag step outside Im T^m".into())))
        .collect::<Result<_>>()?;
    let d = us.len();
    let mut g = Matrix::zeros(d, d);
    for (i, u) in us.iter().enumerate() {
        for (k, a) in pre.iter().enumerate() {
            g[(i, k)] = gram.bilinear(u, a);
        }
    }
    if !g.is_invertible() {
        return Err(Error::Verification(format!("degenerate quotient form at step {j}")));
    }
    let (symmetry, sig) = if g.is_symmetric() {
        let (p, q, _) = signature(&g);
        (Symmetry::Symmetric, Some((p, q)))
    } else if g.is_skew() {
        (Symmetry::Skew, None)
    } else {
        return Err(Error::Verification(format!("quotient form at step {j} is neither symmetric nor skew")));
    };
    Ok(QuotientForm { j, power: m, basis: us, gram: g, symmetry, signature: sig })
}

pub fn compute_flag(kind: GroupKind, omega: &Matrix) -> Result<Flag> {
    let space = kind.space();
    if !space.in_algebra(omega) {
        return Err(Error::NotInAlgebra("ω is not in 𝔥".into()));
    }
    Ok(Flag::of_operator(&space.flag_operator(omega)))
}

pub fn quotient_form(kind: GroupKind, omega: &Matrix, flag: &Flag, j: usize) -> Result<QuotientForm> {
    let q = kind.form().ok_or_else(|| Error::Unsupported("quotient forms need a Poincaré group".into()))?;
    if !kind.space().in_algebra(omega) {
        return Err(Error::NotInAlgebra("ω is not Q-skew-adjoint".into()));
    }
    quotient_form_raw(&q, omega, flag, j)
}

pub fn quotient_forms(kind: GroupKind, omega: &Matrix) -> Result<Vec<QuotientForm>> {
    let flag = compute_flag(kind, omega)?;
    (0..flag.strata()).map(|j| quotient_form(kind, omega, &flag, j)).collect()
}

pub(crate) fn space_quotient_forms(space: &Space, omega: &Matrix, flag: &Flag) -> Result<Vec<QuotientForm>> {
    let g = space.gram().expect("orthogonal space");
    (0..flag.strata()).map(|j| quotient_form_raw(g, omega, flag, j)).collect()
}

/// Signature of Q recovered from the quotient forms of a nilpotent ω: a layer
/// with power m and form of signature (a, b) consists of Jordan blocks of size
/// m + 1; each contributes m/2 hyperbolic planes plus a line whose sign is
/// (−1)^{m/2} times its Q_j-sign. Skew layers (m odd) contribute split space.
pub fn graded_signature(forms: &[QuotientForm]) -> (usize, usize) {
    let (mut p, mut q) = (0, 0);
    for f in forms {
        let d = f.gram.rows();
        match (f.symmetry, f.signature) {
            (Symmetry::Symmetric, Some((a, b))) => {
                let h = f.power / 2;
                p += d * h;
                q += d * h;
                if h % 2 == 0 {
                    p += a;
                    q += b;
                } else {
                    p += b;
                    q += a;
                }
            }
            _ => {
                p += d * (f.power + 1) / 2;
                q += d * (f.power + 1) / 2;
            }
        }
    }
    (p, q)
}

/// The map on kernel coordinates induced by R (R must preserve ker T).
pub fn restrict_to_kernel(t: &Matrix, r: &Matrix) -> Result<Matrix> {
    let ker = kernel(t);
    let cols: Vec<Vector> = ker
        .basis_vectors()
        .iter()
        .map(|v| ker.coords(&r.mul_vec(v)).ok_or(Error::NotInSubspace))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(ker.dim(), &cols))
}

/// Quotient map induced on E_j/E_{j+1} by a kernel map (kernel coordinates).
pub(crate) fn induced_quotient_map(flag: &Flag, r_ker: &Matrix, j: usize) -> Result<Matrix> {
    let ker = flag.ambient();
    let us = flag.quotient_basis(j);
    let cols: Vec<Vector> = us
        .iter()
        .map(|u| {
            let ru = ker.from_coords(&r_ker.mul_vec(&ker.coords(u).expect("in kernel")));
            quotient_coords(&flag.steps[j], &flag.steps[j + 1], &ru).map_err(|_| Error::FlagNotPreserved { step: j })
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(us.len(), &cols))
}

fn check_kernel_map(flag: &Flag, r_ker: &Matrix) -> Result<()> {
    let d = flag.ambient().dim();
    if r_ker.rows() != d || r_ker.cols() != d {
        return Err(Error::dims(format!("{d}x{d}"), format!("{}x{}", r_ker.rows(), r_ker.cols())));
    }
    if !r_ker.is_invertible() {
        return Err(Error::Singular);
    }
    for j in 1..flag.steps.len() {
        if !flag.step_coords(j).is_invariant_under(r_ker) {
            return Err(Error::FlagNotPreserved { step: j });
        }
    }
    Ok(())
}

fn check_form_preserved(flag: &Flag, forms: &[QuotientForm], r_ker: &Matrix) -> Result<()> {
    for f in forms {
        let mj = induced_quotient_map(flag, r_ker, f.j)?;
        if &(&mj.transpose() * &f.gram) * &mj != f.gram {
            return Err(Error::FormNotPreserved { step: f.j });
        }
    }
    Ok(())
}

/// Extends a flag-preserving automorphism of ker ω* (a matrix on the
/// coordinates of its canonical basis) to an automorphism R of V* with
/// Rω* = ω*R.
pub fn extend_affine(omega: &Matrix, r_ker: &Matrix) -> Result<Matrix> {
    if !omega.is_square() {
        return Err(Error::dims("square ω", format!("{}x{}", omega.rows(), omega.cols())));
    }
    let t = omega.transpose();
    let flag = Flag::of_operator(&t);
    check_kernel_map(&flag, r_ker)?;
    let r = extend_rec(&t, None, r_ker)?;
    verify_extension(&t, None, r_ker, &r)?;
    Ok(r)
}

/// Extends an automorphism of ker ω preserving the flag and every quotient
/// form to R ∈ O(Q) with Rω = ωR.
pub fn extend_orthogonal(omega: &Matrix, q: &Matrix, r_ker: &Matrix) -> Result<Matrix> {
    if !q.is_symmetric() {
        return Err(Error::SkewForm);
    }
    let space = Space::Orthogonal(crate::actions::Form::new(q.clone())?);
    if !space.in_algebra(omega) {
        return Err(Error::NotInAlgebra("ω is not Q-skew-adjoint".into()));
    }
    let flag = Flag::of_operator(omega);
    check_kernel_map(&flag, r_ker)?;
    let forms = space_quotient_forms(&space, omega, &flag)?;
    check_form_preserved(&flag, &forms, r_ker)?;
    let r = extend_rec(omega, Some((q, Symmetry::Symmetric)), r_ker)?;
    verify_extension(omega, Some(q), r_ker, &r)?;
    Ok(r)
}

fn verify_extension(t: &Matrix, q: Option<&Matrix>, r_ker: &Matrix, r: &Matrix) -> Result<()> {
    let fail = |what: &str| Err(Error::Verification(format!("extension violates {what}")));
    if !r.is_invertible() {
        return fail("invertibility");
    }
    if r * t != t * r {
        return fail("commutation");
    }
    if restrict_to_kernel(t, r)? != *r_ker {
        return fail("the restriction identity");
    }
    if let Some(q) = q {
        if &(&r.transpose() * q) * r != *q {
            return fail("form preservation");
        }
    }
    Ok(())
}

/// The recursion of the extension proofs. `form` is an ε-symmetric Gram
/// matrix for which T is skew-adjoint; restricting to Im T flips ε.
pub(crate) fn extend_rec(t: &Matrix, form: Option<(&Matrix, Symmetry)>, r_ker: &Matrix) -> Result<Matrix> {
    let n = t.rows();
    let ker = kernel(t);
    if ker.is_zero() {
        return Ok(Matrix::identity(n));
    }
    let im = image(t);
    let b = im.basis_vectors();
    let d = b.len();
    let on_ker = |v: &[Scalar]| ker.from_coords(&r_ker.mul_vec(&ker.coords(v).expect("in kernel")));

    // Phase 1: recurse on T̄ = T|Im T.
    let tbar_cols: Vec<Vector> = b.iter().map(|v| im.coords(&t.mul_vec(v)).expect("T-invariant")).collect();
    let tbar = Matrix::from_columns(d, &tbar_cols);
    let kbar = kernel(&tbar);
    let rbar_cols: Vec<Vector> = kbar
        .basis_vectors()
        .iter()
        .map(|kappa| {
            let w = on_ker(&im.from_coords(kappa));
            let beta = im.coords(&w).ok_or(Error::FlagNotPreserved { step: 1 })?;
            kbar.coords(&beta).ok_or(Error::FlagNotPreserved { step: 1 })
        })
        .collect::<Result<_>>()?;
    let rbar = Matrix::from_columns(kbar.dim(), &rbar_cols);
    let sub_form;
    let sub = match form {
        None => None,
        Some((g, eps)) => {
            let pre: Vec<Vector> = b.iter().map(|v| solve(t, v).expect("in image")).collect();
            let c = Matrix::from_columns(n, &pre);
            sub_form = &(&Matrix::from_columns(n, &b).transpose() * g) * &c;
            let flipped = match eps {
                Symmetry::Symmetric => Symmetry::Skew,
                Symmetry::Skew => Symmetry::Symmetric,
            };
            Some((&sub_form, flipped))
        }
    };
    let rbar_full = extend_rec(&tbar, sub, &rbar)?;
    let on_im = |v: &[Scalar]| im.from_coords(&rbar_full.mul_vec(&im.coords(v).expect("in image")));

    // Phase 2: provisional Ry_i with T(Ry_i) = R(T y_i).
    let cap = intersect(&im, &ker).expect("same ambient");
    let xs = ker.completion_of(&cap);
    let rxs: Vec<Vector> = xs.iter().map(|x| on_ker(x)).collect();
    let ys = im.sum(&ker).standard_completion();
    let mut rys: Vec<Vector> = ys
        .iter()
        .map(|y| {
            let target = on_im(&t.mul_vec(y));
            solve(t, &target).ok_or_else(|| Error::Verification("no lift for Ry".into()))
        })
        .collect::<Result<_>>()?;

    // Phase 3: Gram–Schmidt style corrections.
    if let Some((g, eps)) = form {
        let q = |u: &[Scalar], v: &[Scalar]| g.bilinear(u, v);
        if !xs.is_empty() {
            let gamma = Matrix::from_rows(rxs.iter().map(|rxj| rxs.iter().map(|rxa| q(rxa, rxj)).collect()).collect());
            for (y, ry) in ys.iter().zip(rys.iter_mut()) {
                let rhs: Vector = xs.iter().zip(&rxs).map(|(x, rx)| q(y, x) - q(ry, rx)).collect();
                let c =
                    solve(&gamma, &rhs).ok_or_else(|| Error::Verification("kernel correction unsolvable".into()))?;
                let k = crate::linalg::combine(n, &c, &rxs);
                *ry = crate::linalg::vadd(ry, &k);
            }
        }
        let kappas = cap.basis_vectors();
        let dmat: Vec<Vec<Scalar>> = ys
            .iter()
            .zip(&rys)
            .map(|(yi, ryi)| ys.iter().zip(&rys).map(|(yj, ryj)| q(yi, yj) - q(ryi, ryj)).collect())
            .collect();
        let mut ws: Vec<Vector> = Vec::with_capacity(ys.len());
        for i in 0..ys.len() {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for j in 0..i {
                rows.push(kappas.iter().map(|kap| q(kap, &rys[j])).collect::<Vec<_>>());
                rhs.push(&dmat[i][j] - q(&rys[i], &ws[j]));
            }
            if eps == Symmetry::Symmetric {
                rows.push(kappas.iter().map(|kap| q(kap, &rys[i]) * Scalar::from_integer(2.into())).collect());
                rhs.push(dmat[i][i].clone());
            }
            let w = if rows.is_empty() || kappas.is_empty() {
                if rhs.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Verification("form correction unsolvable".into()));
                }
                crate::linalg::zero_vec(n)
            } else {
                let a = solve(&Matrix::from_rows(rows), &rhs)
                    .ok_or_else(|| Error::Verification("form correction unsolvable".into()))?;
                crate::linalg::combine(n, &a, &kappas)
            };
            ws.push(w);
        }
        for (ry, w) in rys.iter_mut().zip(&ws) {
            *ry = crate::linalg::vadd(ry, w);
        }
    }

    // Assemble R from its values on the basis B ∪ X ∪ Y.
    let mut basis = b.clone();
    basis.extend(xs.iter().cloned());
    basis.extend(ys.iter().cloned());
    let mut images: Vec<Vector> = b.iter().map(|v| on_im(v)).collect();
    images.extend(rxs);
    images.extend(rys);
    let p = Matrix::from_columns(n, &basis);
    let rp = Matrix::from_columns(n, &images);
    let pinv = p.inverse().ok_or_else(|| Error::Verification("adapted basis is singular".into()))?;
    Ok(&rp * &pinv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_ints;

    fn n2_plus_0() -> Matrix {
        Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])
    }

    fn null_rotation() -> (Matrix, Matrix) {
        // ω x = n Q(a,x) − a Q(n,x), n = (1,0,1), a = e2, Q = diag(1,1,−1)
        let q = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let n = vec_from_ints(&[1, 0, 1]);
        let a = vec_from_ints(&[0, 1, 0]);
        let qa = q.mul_vec(&a);
        let qn = q.mul_vec(&n);
        let outer = |u: &[Scalar], w: &[Scalar]| &Matrix::column_vector(u) * &Matrix::from_rows(vec![w.to_vec()]);
        (&outer(&n, &qa) - &outer(&a, &qn), q)
    }

    #[test]
    fn flag_of_nilpotent_block() {
        let f = compute_flag(GroupKind::Affine(3), &n2_plus_0()).unwrap();
        let span = |vs: &[&[i64]]| Subspace::span(3, &vs.iter().map(|v| vec_from_ints(v)).collect::<Vec<_>>());
        assert_eq!(f.steps()[0], span(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(f.steps()[1], span(&[&[0, 1, 0]]));
        assert_eq!(f.steps()[2], Subspace::zero(3));
        assert_eq!(f.power_index(), &[0, 1]);
        assert_eq!(f.length(), 2);
    }

    #[test]
    fn trivial_flags() {
        let f = compute_flag(GroupKind::Affine(2), &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(f.steps(), &[Subspace::full(2), Subspace::zero(2)]);
        let g = compute_flag(GroupKind::Affine(2), &Matrix::identity(2)).unwrap();
        assert_eq!(g.steps(), &[Subspace::zero(2)]);
        assert_eq!(g.strata(), 0);
        let dual = dual_flag(&f);
        assert_eq!(dual.annihilators, vec![Subspace::zero(2), Subspace::full(2)]);
    }

    #[test]
    fn dual_flag_of_block() {
        let f = compute_flag(GroupKind::Affine(3), &n2_plus_0()).unwrap();
        let d = dual_flag(&f);
        // kernel coordinates: (e2, e3); E_1 = span{e2} so E_1° = span{e3*}
        assert_eq!(d.annihilators[0], Subspace::zero(2));
        assert_eq!(d.annihilators[1], Subspace::span(2, &[vec_from_ints(&[0, 1])]));
        assert_eq!(d.annihilators[2], Subspace::full(2));
        let back = d.dual();
        for (j, s) in back.iter().enumerate() {
            assert_eq!(*s, f.step_coords(j));
        }
    }

    #[test]
    fn null_rotation_quotient_form() {
        let (omega, q) = null_rotation();
        let kind = GroupKind::Poincare(2, 1);
        assert_eq!(kind.form().unwrap(), q);
        let flag = compute_flag(kind, &omega).unwrap();
        assert_eq!(flag.steps()[0], Subspace::span(3, &[vec_from_ints(&[1, 0, 1])]));
        assert_eq!(flag.power_index(), &[2]);
        let form = quotient_form(kind, &omega, &flag, 0).unwrap();
        assert_eq!(form.gram, Matrix::from_ints(&[&[-1]]));
        assert_eq!(form.signature, Some((0, 1)));
        assert_eq!(graded_signature(&[form]), (2, 1));
    }

    #[test]
    fn zero_omega_form_is_q() {
        let kind = GroupKind::Poincare(1, 2);
        let forms = quotient_forms(kind, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].gram, kind.form().unwrap());
        assert_eq!(forms[0].signature, Some((1, 2)));
    }

    #[test]
    fn extend_affine_example() {
        let r_ker = Matrix::from_ints(&[&[2, 1], &[0, 1]]);
        let r = extend_affine(&n2_plus_0(), &r_ker).unwrap();
        let t = n2_plus_0().transpose();
        assert_eq!(&r * &t, &t * &r);
        assert_eq!(r, Matrix::from_ints(&[&[2, 0, 0], &[0, 2, 1], &[0, 0, 1]]));
        assert_eq!(extend_affine(&n2_plus_0(), &Matrix::identity(2)).unwrap(), Matrix::identity(3));
        assert_eq!(extend_affine(&Matrix::identity(2), &Matrix::zeros(0, 0)).unwrap(), Matrix::identity(2));
        let bad = Matrix::from_ints(&[&[1, 0], &[1, 1]]);
        assert_eq!(extend_affine(&n2_plus_0(), &bad), Err(Error::FlagNotPreserved { step: 1 }));
    }

    #[test]
    fn extend_orthogonal_null_rotation() {
        let (omega, q) = null_rotation();
        let r = extend_orthogonal(&omega, &q, &Matrix::from_ints(&[&[-1]])).unwrap();
        assert_eq!(&(&r.transpose() * &q) * &r, q);
        assert_eq!(&r * &omega, &omega * &r);
        assert_eq!(extend_orthogonal(&omega, &q, &Matrix::identity(1)).unwrap(), Matrix::identity(3));
        assert_eq!(
            extend_orthogonal(&omega, &q, &Matrix::from_ints(&[&[2]])),
            Err(Error::FormNotPreserved { step: 0 })
        );
        let skew = Matrix::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]]);
        assert_eq!(extend_orthogonal(&omega, &skew, &Matrix::identity(1)), Err(Error::SkewForm));
    }
}

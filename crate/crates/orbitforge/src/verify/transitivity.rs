//! Converse direction of the centraliser classification: two points of
//! ker ω* with the same label are joined by an explicit r ∈ H_ω.

use num_traits::Zero;

use crate::actions::{GroupKind, Space};
use crate::classify::classify_centralizer;
use crate::error::{Error, Result};
use crate::flag::{extend_affine, extend_orthogonal, quotient_form_raw, Flag, Symmetry};
use crate::linalg::{dot, quotient_coords, vadd, vscale, vsub, Matrix, Scalar, Subspace, Vector};

use super::adapted::Adapted;
use super::sampler::{differs, reflection, small_vectors, transvection};

/// r ∈ H_ω whose restriction to ker ω* is `r_ker` (kernel coordinates).
pub fn centralizer_element(kind: GroupKind, omega: &Matrix, r_ker: &Matrix) -> Result<Matrix> {
    match kind.space() {
        Space::Linear(_) => {
            // R acts on V* and commutes with ωᵀ; the group element is R⁻ᵀ
            let big_r = extend_affine(omega, r_ker)?;
            Ok(big_r.inverse().ok_or(Error::Singular)?.transpose())
        }
        Space::Orthogonal(f) => extend_orthogonal(omega, f.gram(), r_ker),
    }
}

/// Quotient-space map sending x to y, preserving `form` when given.
fn connect(form: Option<(&Matrix, Symmetry)>, x: &[Scalar], y: &[Scalar]) -> Result<Matrix> {
    let n = x.len();
    if !differs(x, y) {
        return Ok(Matrix::identity(n));
    }
    match form {
        None => {
            let bx = Subspace::span(n, &[x.to_vec()]).standard_completion();
            let by = Subspace::span(n, &[y.to_vec()]).standard_completion();
            let mut cx = vec![x.to_vec()];
            cx.extend(bx);
            let mut cy = vec![y.to_vec()];
            cy.extend(by);
            let mx = Matrix::from_columns(n, &cx);
            Ok(&Matrix::from_columns(n, &cy) * &mx.inverse().ok_or(Error::Singular)?)
        }
        Some((g, Symmetry::Symmetric)) => {
            let d = vsub(x, y);
            if !g.bilinear(&d, &d).is_zero() {
                return Ok(reflection(g, &d));
            }
            let s = vadd(x, y);
            if !g.bilinear(&s, &s).is_zero() {
                return Ok(-&reflection(g, &s));
            }
            // both null: pass through z = s_w x with Q(x,z) ≠ 0 ≠ Q(z,y)
            let w = small_vectors(n)
                .find(|w| !g.bilinear(w, w).is_zero() && !g.bilinear(x, w).is_zero() && !g.bilinear(y, w).is_zero())
                .ok_or_else(|| Error::Verification("no intermediate null vector".into()))?;
            let z = reflection(g, &w).mul_vec(x);
            Ok(&connect(form, &z, y)? * &connect(form, x, &z)?)
        }
        Some((g, Symmetry::Skew)) => {
            let oxy = g.bilinear(x, y);
            if !oxy.is_zero() {
                let c = -oxy.recip();
                return Ok(transvection(g, &vsub(y, x), &c));
            }
            let z = small_vectors(n)
                .find(|z| !g.bilinear(x, z).is_zero() && !g.bilinear(z, y).is_zero())
                .ok_or_else(|| Error::Verification("no intermediate vector".into()))?;
            Ok(&connect(form, &z, y)? * &connect(form, x, &z)?)
        }
    }
}

/// Builds r ∈ H_ω with r*p = q for p, q carrying the same centraliser label.
/// The map is assembled on ker ω* (an isometry of the quotient E_j/E_{j+1}
/// followed by a shear into E_{j+1}) and extended to V.
pub fn connecting_element(kind: GroupKind, omega: &Matrix, p: &[Scalar], q: &[Scalar]) -> Result<Matrix> {
    let lp = classify_centralizer(kind, omega, p)?;
    let lq = classify_centralizer(kind, omega, q)?;
    if lp != lq {
        return Err(Error::Verification(format!("labels differ: {lp:?} vs {lq:?}")));
    }
    let space = kind.space();
    let n = space.dim();
    let t = space.flag_operator(omega);
    let flag = Flag::of_operator(&t);
    let ad = Adapted::new(&flag);
    let d = ad.dim();
    let Some(j) = flag.stratum_of(p)? else {
        return Ok(Matrix::identity(n));
    };
    let steps = flag.steps();
    let cp = quotient_coords(&steps[j], &steps[j + 1], p)?;
    let cq = quotient_coords(&steps[j], &steps[j + 1], q)?;
    let s = match &space {
        Space::Linear(_) => connect(None, &cp, &cq)?,
        Space::Orthogonal(f) => {
            let qf = quotient_form_raw(f.gram(), &t, &flag, j)?;
            connect(Some((&qf.gram, qf.symmetry)), &cp, &cq)?
        }
    };
    let (o, dj) = (ad.offset(j), ad.block_len(j));
    let mut ra = Matrix::identity(d);
    for a in 0..dj {
        for b in 0..dj {
            ra[(o + a, o + b)] = s[(a, b)].clone();
        }
    }
    // shear σ = I + δ λᵀ with λ supported on block j and λ(r₁p) = 1
    let r1p = ra.mul_vec(&ad.coords(p));
    let delta = vsub(&ad.coords(q), &r1p);
    let block: Vector = r1p[o..o + dj].to_vec();
    let h = vscale(&dot(&block, &block).recip(), &block);
    let mut shear = Matrix::identity(d);
    for row in 0..d {
        for (k, hk) in h.iter().enumerate() {
            shear[(row, o + k)] += &delta[row] * hk;
        }
    }
    let r_ker = ad.to_kernel(&(&shear * &ra));
    let r = centralizer_element(kind, omega, &r_ker)?;
    if space.dual_act(&r, p)? != q {
        return Err(Error::Verification("connecting element misses q".into()));
    }
    if &r * omega != omega * &r || !space.in_group(&r) {
        return Err(Error::Verification("connecting element outside H_ω".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, vec_from_ints};

    #[test]
    fn joins_null_rotation_points() {
        // ω = null rotation of 𝔰𝔬(2,1); p = n and q = −n share the value −1
        let kind = GroupKind::Poincare(2, 1);
        let omega = Matrix::from_ints(&[&[0, 1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        assert!(kind.space().in_algebra(&omega));
        let n = vec_from_ints(&[0, 1, 1]);
        let ker = crate::linalg::kernel(&omega);
        assert!(ker.contains(&n));
        let r = connecting_element(kind, &omega, &n, &vscale(&int(-1), &n)).unwrap();
        assert_eq!(r.mul_vec(&n), vscale(&int(-1), &n));
    }

    #[test]
    fn joins_affine_strata() {
        let kind = GroupKind::Affine(3);
        let n2 = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let p = vec_from_ints(&[0, 1, 2]);
        let q = vec_from_ints(&[0, 3, -1]);
        let r = connecting_element(kind, &n2, &p, &q).unwrap();
        assert_eq!(kind.space().dual_act(&r, &p).unwrap(), q);
    }
}

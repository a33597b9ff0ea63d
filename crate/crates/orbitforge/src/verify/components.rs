//! Connected-component counts for the orbit families of aff(1) and E(1,1).
//!
//! For G = H ⋉ V with identity component G₀ = H₀ ⋉ V, an orbit G·x is the
//! finite union of the connected orbits G₀·(h·x) over representatives h of
//! H/H₀, so its component count is the number of distinct G₀-orbits among
//! them. G₀-orbits are told apart by closed-form invariants.

use serde::{Deserialize, Serialize};

use crate::actions::{adjoint_act, coadjoint_act, AlgebraElement, DualAlgebraElement, GroupElement, GroupKind};
use crate::classify::{bijected_coadjoint, classify_adjoint, classify_coadjoint};
use crate::error::{Error, Result};
use crate::linalg::{sign, vec_from_ints, zero_vec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCountRecord {
    pub family: String,
    pub components: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPair {
    pub adjoint: ComponentCountRecord,
    pub coadjoint: ComponentCountRecord,
    pub adjoint_representative: AlgebraElement,
    pub coadjoint_representative: DualAlgebraElement,
}

impl ComponentPair {
    pub fn matches(&self) -> bool {
        self.adjoint.components == self.coadjoint.components
    }
}

/// Invariant of a G₀-orbit, compared for equality only.
type Invariant = Vec<String>;

fn s(x: &Scalar) -> String {
    crate::linalg::format_scalar(x)
}

fn component_reps(kind: GroupKind) -> Vec<GroupElement> {
    let n = kind.dim();
    let diag = |ds: &[i64]| GroupElement { r: Matrix::diagonal(&vec_from_ints(ds)), d: zero_vec(n) };
    match kind {
        GroupKind::Affine(1) => vec![diag(&[1]), diag(&[-1])],
        _ => vec![diag(&[1, 1]), diag(&[-1, 1]), diag(&[1, -1]), diag(&[-1, -1])],
    }
}

/// Light-cone signs (sign(v₀+v₁), sign(v₀−v₁)) and Q(v,v): a complete
/// invariant of SO⁺(1,1)-orbits in ℝ^{1,1}.
fn boost_invariant(v: &[Scalar]) -> Invariant {
    let plus = &v[0] + &v[1];
    let minus = &v[0] - &v[1];
    vec![s(&(&plus * &minus)), sign(&plus).to_string(), sign(&minus).to_string()]
}

fn adjoint_invariant(kind: GroupKind, x: &AlgebraElement) -> Invariant {
    // G₀ fixes ω in both groups (GL⁺(1), SO⁺(1,1) are abelian); when ω is
    // invertible the translations sweep all of V.
    if !x.omega.is_zero() {
        return x.omega.entries().iter().map(s).collect();
    }
    match kind {
        GroupKind::Affine(_) => vec!["0".into(), sign(&x.v[0]).to_string()],
        _ => boost_invariant(&x.v),
    }
}

fn coadjoint_invariant(kind: GroupKind, xi: &DualAlgebraElement) -> Invariant {
    // for p ≠ 0, μ(p, V) is all of 𝔥, so L is swept out
    if crate::linalg::is_zero_vec(&xi.p) {
        return xi.l.entries().iter().map(s).collect();
    }
    match kind {
        GroupKind::Affine(_) => vec![sign(&xi.p[0]).to_string()],
        _ => boost_invariant(&xi.p),
    }
}

fn count<T>(
    reps: &[GroupElement],
    x: &T,
    act: impl Fn(&GroupElement, &T) -> Result<T>,
    inv: impl Fn(&T) -> Invariant,
) -> Result<usize> {
    let mut seen: Vec<Invariant> = Vec::new();
    for g in reps {
        let i = inv(&act(g, x)?);
        if !seen.contains(&i) {
            seen.push(i);
        }
    }
    Ok(seen.len())
}

fn families(kind: GroupKind) -> Vec<(&'static str, AlgebraElement)> {
    let el = |w: Matrix, v: &[i64]| AlgebraElement { omega: w, v: vec_from_ints(v) };
    match kind {
        GroupKind::Affine(1) => vec![
            ("origin", el(Matrix::zeros(1, 1), &[0])),
            ("vertical line ω ≠ 0", el(Matrix::from_ints(&[&[1]]), &[0])),
            ("two half-lines ω = 0, v ≠ 0", el(Matrix::zeros(1, 1), &[1])),
        ],
        _ => vec![
            ("origin", el(Matrix::zeros(2, 2), &[0, 0])),
            ("ω ≠ 0", el(Matrix::from_ints(&[&[0, 1], &[1, 0]]), &[0, 0])),
            ("ω = 0, v timelike", el(Matrix::zeros(2, 2), &[1, 0])),
            ("ω = 0, v spacelike", el(Matrix::zeros(2, 2), &[0, 1])),
            ("ω = 0, v null", el(Matrix::zeros(2, 2), &[1, 1])),
        ],
    }
}

/// Bijected orbit families with their component counts on both sides.
pub fn component_counts(kind: GroupKind) -> Result<Vec<ComponentPair>> {
    if !matches!(kind, GroupKind::Affine(1) | GroupKind::Poincare(1, 1)) {
        return Err(Error::Unsupported(format!("component counts are enumerated for aff(1) and E(1,1), not {kind}")));
    }
    let reps = component_reps(kind);
    families(kind)
        .into_iter()
        .map(|(family, x)| {
            let xi = bijected_coadjoint(kind, &x)?;
            if classify_adjoint(kind, &x)? != classify_coadjoint(kind, &xi)? {
                return Err(Error::Verification(format!("family '{family}' is not bijected")));
            }
            let a = count(&reps, &x, |g, x| adjoint_act(kind, g, x), |x| adjoint_invariant(kind, x))?;
            let c = count(&reps, &xi, |g, xi| coadjoint_act(kind, g, xi), |xi| coadjoint_invariant(kind, xi))?;
            let note = |side: &str| {
                format!("{side}: distinct identity-component orbits among the {} component translates", reps.len())
            };
            Ok(ComponentPair {
                adjoint: ComponentCountRecord { family: family.into(), components: a, note: note("adjoint") },
                coadjoint: ComponentCountRecord { family: family.into(), components: c, note: note("coadjoint") },
                adjoint_representative: x,
                coadjoint_representative: xi,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aff1_counts() {
        let pairs = component_counts(GroupKind::Affine(1)).unwrap();
        let counts: Vec<(usize, usize)> =
            pairs.iter().map(|p| (p.adjoint.components, p.coadjoint.components)).collect();
        assert_eq!(counts, vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn e11_counts() {
        let pairs = component_counts(GroupKind::Poincare(1, 1)).unwrap();
        let counts: Vec<usize> = pairs.iter().map(|p| p.adjoint.components).collect();
        assert_eq!(counts, vec![1, 2, 2, 2, 4]);
        assert!(pairs.iter().all(ComponentPair::matches));
    }

    #[test]
    fn other_kinds_rejected() {
        assert!(component_counts(GroupKind::Affine(2)).is_err());
    }
}

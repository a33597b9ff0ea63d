//! Zigzag certificates: the chain of equivariant bundle maps joining an
//! adjoint orbit to its bijected coadjoint orbit, with every fibre recorded
//! as an affine subspace (base point plus direction space).
//!
//! 𝒪 → X (Σ-orbit) → X̄ ≅ Ȳ ← D (Δ-orbit) ≅_{H_p} Π ← 𝒪*

use serde::{Deserialize, Serialize};

use crate::actions::{space_vector_class, AlgebraElement, GroupKind, Space, VectorClass};
use crate::classify::{
    adjoint_to_delta_space, affine_transport, classify_adjoint_space, classify_coadjoint_space,
    delta_to_coadjoint_space, phi_values, split_affine, NullFrame, OrbitLabel,
};
use crate::error::{Error, Result};
use crate::flag::{quotient_form_raw, Flag};
use crate::linalg::{
    annihilator, combine, image, int, kernel, quotient_coords, vadd, vsub, zero_vec, Matrix, Scalar, Subspace, Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// bundle map from → to
    Forward,
    /// bundle map to → from
    Backward,
    /// equivariant (or pseudo-equivariant) isomorphism
    Iso,
}

/// A fibre written as base + span(directions), together with the sample
/// points that were pushed through the bundle map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreWitness {
    pub description: String,
    #[serde(with = "crate::linalg::serde_rational::vec")]
    pub base: Vector,
    pub directions: Subspace,
    #[serde(with = "crate::linalg::serde_rational::rows")]
    pub samples: Vec<Vector>,
}

impl FibreWitness {
    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    /// Base and samples live in one ambient space, every sample lies in the
    /// affine subspace, and so do affine combinations of the samples.
    pub fn is_affine_subspace(&self) -> bool {
        let n = self.directions.ambient_dim();
        if self.base.len() != n || self.samples.iter().any(|s| s.len() != n) {
            return false;
        }
        let inside = |v: &[Scalar]| self.directions.contains(&vsub(v, &self.base));
        if !self.samples.iter().all(|s| inside(s)) {
            return false;
        }
        self.samples.windows(2).all(|w| {
            // 2a − b has coefficients summing to 1
            let comb = vsub(&vadd(&w[0], &w[0]), &w[1]);
            inside(&comb)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub from: String,
    pub to: String,
    pub direction: Direction,
    pub fibre: FibreWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagCertificate {
    pub space: String,
    /// Set for affine chains, where φ is only pseudo-equivariant.
    pub pseudo_equivariant: bool,
    pub adjoint_label: OrbitLabel,
    pub coadjoint_label: OrbitLabel,
    pub links: Vec<Link>,
    /// Certificate for the little-group step when it recurses.
    pub nested: Option<Box<ZigzagCertificate>>,
}

impl ZigzagCertificate {
    pub fn all_fibres(&self) -> Vec<&FibreWitness> {
        let mut out: Vec<&FibreWitness> = self.links.iter().map(|l| &l.fibre).collect();
        if let Some(n) = &self.nested {
            out.extend(n.all_fibres());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.adjoint_label == self.coadjoint_label
            && self.all_fibres().iter().all(|f| f.is_affine_subspace())
            && self.nested.as_ref().map_or(true, |n| n.is_valid())
    }

    /// True when every fibre is a single point.
    pub fn is_trivial(&self) -> bool {
        self.all_fibres().iter().all(|f| f.dim() == 0)
    }
}

/// Certificate for the adjoint orbit of `x` and its bijected coadjoint orbit.
pub fn zigzag_certificate(kind: GroupKind, x: &AlgebraElement) -> Result<ZigzagCertificate> {
    x.validate(kind)?;
    certificate(&kind.space(), &x.omega, &x.v)
}

fn describe(space: &Space) -> String {
    match space {
        Space::Linear(n) => format!("aff({n})"),
        Space::Orthogonal(f) => {
            let (a, b) = f.signature();
            format!("se({a},{b})")
        }
    }
}

/// Samples base, base + each direction, base + Σ directions; each must map to
/// the same point under `project`.
fn witness(
    description: impl Into<String>,
    base: Vector,
    directions: Subspace,
    project: impl Fn(&[Scalar]) -> Result<Vector>,
) -> Result<FibreWitness> {
    let description = description.into();
    let dirs = directions.basis_vectors();
    let mut samples = vec![base.clone()];
    samples.extend(dirs.iter().map(|d| vadd(&base, d)));
    let ones = vec![int(1); dirs.len()];
    samples.push(vadd(&base, &combine(base.len(), &ones, &dirs)));
    let target = project(&base)?;
    for s in &samples {
        if project(s)? != target {
            return Err(Error::Verification(format!("fibre '{description}' does not project to one point")));
        }
    }
    Ok(FibreWitness { description, base, directions, samples })
}

fn point(description: &str, base: Vector) -> FibreWitness {
    let n = base.len();
    FibreWitness {
        description: description.into(),
        base: base.clone(),
        directions: Subspace::zero(n),
        samples: vec![base],
    }
}

fn link(from: &str, to: &str, direction: Direction, fibre: FibreWitness) -> Link {
    Link { from: from.into(), to: to.into(), direction, fibre }
}

fn certificate(space: &Space, omega: &Matrix, v: &[Scalar]) -> Result<ZigzagCertificate> {
    let n = space.dim();
    let t = space.flag_operator(omega);
    let ker = kernel(&t);
    let pair_on_ker =
        |w: &[Scalar]| -> Result<Vector> { Ok(ker.basis_vectors().iter().map(|q| space.pair(q, w)).collect()) };
    let mut links = Vec::new();

    // 𝒪 → X: (ω, v) ↦ (ω, v|ker ω*), fibre v + Im ω
    links.push(link(
        "adjoint orbit",
        "Σ-orbit",
        Direction::Forward,
        witness("v + Im ω", v.to_vec(), image(omega), pair_on_ker)?,
    ));

    let x = pair_on_ker(v)?;
    let p = adjoint_to_delta_space(space, omega, v)?;
    let flag = Flag::of_operator(&t);
    match flag.stratum_of(&p)? {
        None => links.push(link("Σ-orbit", "Δ-orbit", Direction::Iso, point("origins", x.clone()))),
        Some(j) => {
            let steps = flag.steps();
            // X → X̄: x ↦ [x] ∈ E_{j+1}°/E_j°, fibre x + E_j°
            let ej = flag.step_coords(j);
            let on_ej = |f: &[Scalar]| -> Result<Vector> {
                Ok(ej.basis_vectors().iter().map(|e| crate::linalg::dot(e, f)).collect())
            };
            links.push(link(
                "Σ-orbit",
                "E_{j+1}°/E_j° orbit",
                Direction::Forward,
                witness(format!("x + E_{j}° (j = {j})"), x.clone(), annihilator(&ej), on_ej)?,
            ));
            // X̄ ≅ Ȳ through φ on quotient coordinates
            let cp = quotient_coords(&steps[j], &steps[j + 1], &p)?;
            let phi = phi_values(space, omega, &p)?;
            let us = flag.quotient_basis(j);
            let on_u: Vector =
                us.iter().map(|u| crate::linalg::dot(&ker.coords(u).expect("in kernel"), &phi)).collect();
            let expected: Vector =
                us.iter().map(|u| crate::linalg::dot(&ker.coords(u).expect("in kernel"), &x)).collect();
            let image_ok = match space {
                Space::Linear(_) => on_u == cp,
                Space::Orthogonal(f) => on_u == quotient_form_raw(f.gram(), &t, &flag, j)?.gram.vec_mul(&cp),
            };
            if !image_ok || on_u != expected {
                return Err(Error::Verification("φ does not carry [p] to [x]".into()));
            }
            links.push(link("E_{j+1}°/E_j° orbit", "E_j/E_{j+1} orbit", Direction::Iso, point("φ", cp)));
            // Ȳ ← D: p ↦ [p], fibre p + E_{j+1}
            let (ej0, ej1) = (steps[j].clone(), steps[j + 1].clone());
            links.push(link(
                "Δ-orbit",
                "E_j/E_{j+1} orbit",
                Direction::Forward,
                witness(format!("p + E_{} (j = {j})", j + 1), p.clone(), ej1.clone(), |w| {
                    quotient_coords(&ej0, &ej1, w)
                })?,
            ));
        }
    }

    // D ≅ Π over H·p: the little-group bijection
    let mut nested = None;
    match space {
        Space::Linear(_) if !crate::linalg::is_zero_vec(&p) => {
            let g = affine_transport(&p);
            let w = &(&g * omega) * &g.inverse().expect("transport");
            let (wt, vt) = split_affine(&w);
            nested = Some(Box::new(certificate(&Space::Linear(n - 1), &wt, &vt)?));
            links.push(link("Δ-orbit", "Π-orbit", Direction::Iso, point("𝔥_p ≅ 𝔞𝔣𝔣(n−1)", p.clone())));
        }
        Space::Orthogonal(f) if space_vector_class(space, &p) == VectorClass::NullNonzero => {
            let frame = NullFrame::new(f.gram(), &p)?;
            let (a, b) = frame.psi_inv(omega);
            nested = Some(Box::new(certificate(&frame.w_space, &a, &b)?));
            links.push(link("Δ-orbit", "Π-orbit", Direction::Iso, point("𝔥_p ≅ 𝔰𝔢(W)", p.clone())));
        }
        _ => links.push(link("Δ-orbit", "Π-orbit", Direction::Iso, point("trace form on 𝔥_p", p.clone()))),
    }

    // Π ← 𝒪*: (M, p) ↦ (M|𝔥_p, p), fibre M + 𝔥_p°
    let m = delta_to_coadjoint_space(space, omega, &p)?;
    let h: Vec<Matrix> = space.little_algebra(&p).basis_vectors().iter().map(|b| Matrix::from_flat(n, n, b)).collect();
    let ann = trace_annihilator(space, &h);
    let restrict = |flat: &[Scalar]| -> Result<Vector> {
        let mm = Matrix::from_flat(n, n, flat);
        Ok(h.iter().map(|b| (&mm * b).trace()).collect())
    };
    links.push(link(
        "coadjoint orbit",
        "Π-orbit",
        Direction::Forward,
        witness("M + 𝔥_p°", m.flatten(), ann, restrict)?,
    ));

    let adjoint_label = classify_adjoint_space(space, omega, v)?;
    let coadjoint_label = classify_coadjoint_space(space, &m, &p)?;
    Ok(ZigzagCertificate {
        space: describe(space),
        pseudo_equivariant: matches!(space, Space::Linear(_)),
        adjoint_label,
        coadjoint_label,
        links,
        nested,
    })
}

/// {N ∈ 𝔥 (trace coordinates) : Tr(N h) = 0 for all h in the given list}.
fn trace_annihilator(space: &Space, h: &[Matrix]) -> Subspace {
    let n = space.dim();
    let mut rows: Vec<Vector> = h.iter().map(|b| b.transpose().flatten()).collect();
    if let Space::Orthogonal(f) = space {
        // N ∈ 𝔰𝔬(G): (NᵀG + GN)_{ij} = 0
        let g = f.gram();
        for i in 0..n {
            for j in i..n {
                let mut row = zero_vec(n * n);
                for k in 0..n {
                    row[k * n + i] += &g[(k, j)];
                    row[k * n + j] += &g[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n * n);
    }
    kernel(&Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_ints;

    #[test]
    fn e11_boost_pair_dimensions() {
        let kind = GroupKind::Poincare(1, 1);
        let x = AlgebraElement { omega: Matrix::from_ints(&[&[0, 1], &[1, 0]]), v: vec_from_ints(&[3, 1]) };
        let c = zigzag_certificate(kind, &x).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.links[0].fibre.dim(), 2);
        assert_eq!(c.links.last().unwrap().fibre.dim(), 0);
        assert!(!c.pseudo_equivariant);
    }

    #[test]
    fn origin_pair_is_trivial() {
        let kind = GroupKind::Poincare(1, 1);
        let x = AlgebraElement { omega: Matrix::zeros(2, 2), v: zero_vec(2) };
        let c = zigzag_certificate(kind, &x).unwrap();
        assert!(c.is_valid() && c.is_trivial());
    }

    #[test]
    fn affine_pair_is_flagged() {
        let kind = GroupKind::Affine(1);
        let x = AlgebraElement { omega: Matrix::zeros(1, 1), v: vec_from_ints(&[2]) };
        let c = zigzag_certificate(kind, &x).unwrap();
        assert!(c.is_valid() && c.pseudo_equivariant);
    }
}

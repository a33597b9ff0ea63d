//! Randomised property suites over the whole pipeline, plus the finite
//! certificates that stand in for the homotopy statements.

mod adapted;
mod certificate;
mod components;
mod sampler;
mod transitivity;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::actions::{
    adjoint_act, annihilator_in_dual, coadjoint_act, little_algebra, mu_image, pairing, GroupKind, Space,
};
use crate::classify::{
    affine_phi, bijected_adjoint, bijected_coadjoint, classify_adjoint, classify_centralizer, classify_coadjoint,
    classify_delta, delta_to_adjoint, delta_to_coadjoint, eval_on_kernel, phi_map,
};
use crate::error::{Error, Result};
use crate::flag::{compute_flag, induced_quotient_map, quotient_form, Flag};
use crate::linalg::{format_scalar, quotient_coords, Matrix, Scalar};

pub use certificate::{zigzag_certificate, Direction, FibreWitness, Link, ZigzagCertificate};
pub use components::{component_counts, ComponentCountRecord, ComponentPair};
pub use sampler::{reflection, transvection, Sampler};
pub use transitivity::{centralizer_element, connecting_element};

pub fn sample_group(s: &mut Sampler) -> crate::actions::GroupElement {
    s.group_element()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub seed: u64,
    pub input: Value,
    pub expected: Value,
    pub got: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub kind: GroupKind,
    pub trials: usize,
    pub failures: Vec<FailureRecord>,
    /// trials whose every label fell on an unclassified leaf
    #[serde(default)]
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Failure {
    input: Value,
    expected: Value,
    got: Value,
    /// every comparison hit an unclassified leaf on both sides
    skipped: bool,
}

type Trial = std::result::Result<(), Failure>;

fn j<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn jv(v: &[Scalar]) -> Value {
    json!(v.iter().map(format_scalar).collect::<Vec<_>>())
}

fn check<T: Serialize + PartialEq>(input: &Value, expected: &T, got: &T) -> Trial {
    if expected == got {
        Ok(())
    } else {
        Err(Failure { input: input.clone(), expected: j(expected), got: j(got), skipped: false })
    }
}

fn errored(input: &Value) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure {
        input: input.clone(),
        expected: json!("success"),
        got: json!({"error": e.kind(), "message": e.to_string()}),
        skipped: false,
    }
}

/// Labels of two points that must lie in the same orbit. Both sides landing
/// on the same unclassified leaf is consistent but uninformative: `Ok(false)`.
fn same_label<T: Serialize + PartialEq>(
    input: &Value,
    a: Result<T>,
    b: Result<T>,
) -> std::result::Result<bool, Failure> {
    match (a, b) {
        (Ok(a), Ok(b)) => check(input, &a, &b).map(|()| true),
        (Err(Error::UnsupportedLeaf { .. }), Err(Error::UnsupportedLeaf { .. })) => Ok(false),
        (Err(e), _) | (_, Err(e)) => Err(errored(input)(e)),
    }
}

fn compared<const N: usize>(input: &Value, checks: [bool; N]) -> Trial {
    if checks.iter().any(|&c| c) {
        Ok(())
    } else {
        Err(Failure {
            input: input.clone(),
            expected: json!("a classified leaf"),
            got: json!("unsupported-leaf"),
            skipped: true,
        })
    }
}

type SuiteFn = fn(&mut Sampler) -> Trial;

/// Registered suites, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "sampler",
    "action-homomorphism",
    "pairing-invariance",
    "mu-annihilator",
    "label-invariance",
    "bijection-roundtrip",
    "centralizer-invariance",
    "extension",
    "centralizer-transitivity",
    "phi-properties",
    "zigzag",
];

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "sampler" => sampler_trial,
        "action-homomorphism" => homomorphism_trial,
        "pairing-invariance" => pairing_trial,
        "mu-annihilator" => mu_trial,
        "label-invariance" => label_trial,
        "bijection-roundtrip" => roundtrip_trial,
        "centralizer-invariance" => centralizer_invariance_trial,
        "extension" => extension_trial,
        "centralizer-transitivity" => transitivity_trial,
        "phi-properties" => phi_trial,
        "zigzag" => zigzag_trial,
        _ => return None,
    })
}

fn trial_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs one registered suite; trials run in parallel and failures come back
/// in trial order.
pub fn run_suite(name: &str, kind: GroupKind, trials: usize, seed: u64) -> Result<Report> {
    let f = suite_fn(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let kind = kind.validate()?;
    let outcomes: Vec<(u64, Failure)> = (0..trials)
        .into_par_iter()
        .filter_map(|i| {
            let s = trial_seed(seed, i);
            f(&mut Sampler::new(kind, s)).err().map(|e| (s, e))
        })
        .collect();
    let skipped = outcomes.iter().filter(|(_, f)| f.skipped).count();
    let failures = outcomes
        .into_iter()
        .filter(|(_, f)| !f.skipped)
        .map(|(seed, f)| FailureRecord { seed, input: f.input, expected: f.expected, got: f.got })
        .collect();
    let warning = (trials == 0).then(|| "0 trials: vacuous pass".to_string());
    Ok(Report { suite: name.into(), kind, trials, failures, skipped, warning })
}

/// `all` expands to every registered suite.
pub fn run_suites(name: &str, kind: GroupKind, trials: usize, seed: u64) -> Result<Vec<Report>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, kind, trials, seed)).collect()
    } else {
        Ok(vec![run_suite(name, kind, trials, seed)?])
    }
}

// ---------------------------------------------------------------------------
// trials

fn sampler_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let g = s.group_element();
    let input = j(&g);
    g.validate(kind).map_err(errored(&input))?;
    if let Some(q) = kind.form() {
        check(&input, &q, &(&(&g.r.transpose() * &q) * &g.r))?;
    }
    Ok(())
}

fn homomorphism_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let (g, h) = (s.group_element(), s.group_element());
    let (x, xi) = (s.algebra_element(), s.dual_element());
    let input = json!({"g": j(&g), "h": j(&h), "x": j(&x), "xi": j(&xi)});
    let e = errored(&input);
    let gh = g.compose(&h);
    let lhs = adjoint_act(kind, &gh, &x).map_err(&e)?;
    let rhs = adjoint_act(kind, &g, &adjoint_act(kind, &h, &x).map_err(&e)?).map_err(&e)?;
    check(&input, &lhs, &rhs)?;
    let lhs = coadjoint_act(kind, &gh, &xi).map_err(&e)?;
    let rhs = coadjoint_act(kind, &g, &coadjoint_act(kind, &h, &xi).map_err(&e)?).map_err(&e)?;
    check(&input, &lhs, &rhs)
}

fn pairing_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let g = s.group_element();
    let (x, xi) = (s.algebra_element(), s.dual_element());
    let input = json!({"g": j(&g), "x": j(&x), "xi": j(&xi)});
    let e = errored(&input);
    let before = pairing(kind, &xi, &x).map_err(&e)?;
    let gx = adjoint_act(kind, &g, &x).map_err(&e)?;
    let gxi = coadjoint_act(kind, &g, &xi).map_err(&e)?;
    let after = pairing(kind, &gxi, &gx).map_err(&e)?;
    check(&input, &format_scalar(&before), &format_scalar(&after))
}

fn mu_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let p = s.vector_p();
    let input = json!({"p": jv(&p)});
    let e = errored(&input);
    let h = little_algebra(kind, &p).map_err(&e)?;
    let ann = annihilator_in_dual(kind, &h);
    let img = mu_image(kind, &p).map_err(&e)?;
    check(&input, &ann, &img)
}

fn label_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let space = kind.space();
    let g = s.group_element();
    let x = s.algebra_element();
    let xi = s.dual_element();
    let (omega, p) = s.delta_point();
    let input = json!({"g": j(&g), "x": j(&x), "xi": j(&xi), "delta": {"omega": j(&omega), "p": jv(&p)}});
    let e = errored(&input);
    let a = same_label(
        &input,
        classify_adjoint(kind, &x),
        adjoint_act(kind, &g, &x).and_then(|y| classify_adjoint(kind, &y)),
    )?;
    let c = same_label(
        &input,
        classify_coadjoint(kind, &xi),
        coadjoint_act(kind, &g, &xi).and_then(|y| classify_coadjoint(kind, &y)),
    )?;
    let rinv = g.r.inverse().ok_or(Error::Singular).map_err(&e)?;
    let omega2 = &(&g.r * &omega) * &rinv;
    let p2 = space.dual_act(&g.r, &p).map_err(&e)?;
    let d = same_label(&input, classify_delta(kind, &omega, &p), classify_delta(kind, &omega2, &p2))?;
    compared(&input, [a, c, d])
}

fn roundtrip_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let x = s.algebra_element();
    let xi = s.dual_element();
    let (omega, p) = s.delta_point();
    let input = json!({"x": j(&x), "xi": j(&xi), "delta_omega": j(&omega), "delta_p": jv(&p)});
    let a = same_label(
        &input,
        classify_adjoint(kind, &x),
        bijected_coadjoint(kind, &x).and_then(|y| classify_coadjoint(kind, &y)),
    )?;
    let c = same_label(
        &input,
        classify_coadjoint(kind, &xi),
        bijected_adjoint(kind, &xi).and_then(|y| classify_adjoint(kind, &y)),
    )?;
    let d = same_label(
        &input,
        classify_delta(kind, &omega, &p),
        delta_to_adjoint(kind, &omega, &p).and_then(|y| classify_adjoint(kind, &y)),
    )?;
    let d2 = same_label(
        &input,
        classify_delta(kind, &omega, &p),
        delta_to_coadjoint(kind, &omega, &p).and_then(|y| classify_coadjoint(kind, &y)),
    )?;
    compared(&input, [a, c, d, d2])
}

/// ω with a nonzero kernel of ω*, after a few draws.
fn omega_with_kernel(s: &mut Sampler) -> Matrix {
    let space = s.kind().space();
    let mut omega = s.omega();
    for _ in 0..20 {
        if crate::linalg::kernel(&space.flag_operator(&omega)).dim() > 0 {
            break;
        }
        omega = s.omega();
    }
    omega
}

fn centralizer_invariance_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let space = kind.space();
    let omega = omega_with_kernel(s);
    let flag = Flag::of_operator(&space.flag_operator(&omega));
    let Some((_, p)) = s.stratum_vector(&flag) else { return compared(&json!({"omega": j(&omega)}), [false]) };
    let input = json!({"omega": j(&omega), "p": jv(&p)});
    let e = errored(&input);
    let r_ker = s.kernel_map(&space, &omega).map_err(&e)?;
    let r = centralizer_element(kind, &omega, &r_ker).map_err(&e)?;
    let rp = space.dual_act(&r, &p).map_err(&e)?;
    let before = classify_centralizer(kind, &omega, &p).map_err(&e)?;
    let after = classify_centralizer(kind, &omega, &rp).map_err(&e)?;
    check(&input, &before, &after)
}

fn extension_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let space = kind.space();
    let omega = omega_with_kernel(s);
    let input = json!({"omega": j(&omega)});
    let e = errored(&input);
    let t = space.flag_operator(&omega);
    let r_ker = s.kernel_map(&space, &omega).map_err(&e)?;
    let input = json!({"omega": j(&omega), "r_ker": j(&r_ker)});
    let e = errored(&input);
    let r = match &space {
        Space::Linear(_) => crate::flag::extend_affine(&omega, &r_ker),
        Space::Orthogonal(f) => crate::flag::extend_orthogonal(&omega, f.gram(), &r_ker),
    }
    .map_err(&e)?;
    // independent re-check of the defining identities
    check(&input, &(&r * &t), &(&t * &r))?;
    check(&input, &r_ker, &crate::flag::restrict_to_kernel(&t, &r).map_err(&e)?)?;
    if let Space::Orthogonal(f) = &space {
        check(&input, f.gram(), &(&(&r.transpose() * f.gram()) * &r))?;
    }
    // invalid inputs must be refused
    let flag = Flag::of_operator(&t);
    if flag.strata() > 0 {
        let refused = match &space {
            Space::Orthogonal(f) => {
                let doubled = r_ker.scale(&crate::linalg::int(2));
                matches!(
                    crate::flag::extend_orthogonal(&omega, f.gram(), &doubled),
                    Err(Error::FormNotPreserved { .. })
                )
            }
            Space::Linear(_) if flag.strata() > 1 => {
                // swap a vector of E_1 out of E_1
                let ker = flag.ambient();
                let low = ker.coords(&flag.steps()[1].basis_vectors()[0]).expect("in kernel");
                let high = ker.coords(&flag.quotient_basis(0)[0]).expect("in kernel");
                let d = ker.dim();
                let mut cols: Vec<_> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
                let (il, ih) = (pivot(&low), pivot(&high));
                cols.swap(il, ih);
                let bad = Matrix::from_columns(d, &cols);
                let moved = bad.mul_vec(&low);
                if flag.step_coords(1).contains(&moved) {
                    true
                } else {
                    matches!(crate::flag::extend_affine(&omega, &bad), Err(Error::FlagNotPreserved { .. }))
                }
            }
            Space::Linear(_) => true,
        };
        if !refused {
            return Err(Failure {
                input: input.clone(),
                expected: json!("rejection"),
                got: json!("accepted"),
                skipped: false,
            });
        }
    }
    Ok(())
}

fn pivot(v: &[Scalar]) -> usize {
    use num_traits::Zero;
    v.iter().position(|x| !x.is_zero()).unwrap_or(0)
}

fn transitivity_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let space = kind.space();
    let omega = omega_with_kernel(s);
    let flag = Flag::of_operator(&space.flag_operator(&omega));
    let Some((_, p)) = s.stratum_vector(&flag) else { return compared(&json!({"omega": j(&omega)}), [false]) };
    let input = json!({"omega": j(&omega), "p": jv(&p)});
    let e = errored(&input);
    // a same-label partner from an independent flag/form-preserving kernel map
    let r_ker = s.kernel_map(&space, &omega).map_err(&e)?;
    let ker = flag.ambient();
    let q = ker.from_coords(&r_ker.mul_vec(&ker.coords(&p).expect("in kernel")));
    let lp = classify_centralizer(kind, &omega, &p).map_err(&e)?;
    let lq = classify_centralizer(kind, &omega, &q).map_err(&e)?;
    check(&input, &lp, &lq)?;
    let r = connecting_element(kind, &omega, &p, &q).map_err(&e)?;
    check(&input, &q, &space.dual_act(&r, &p).map_err(&e)?)?;
    check(&input, &true, &space.in_group(&r))?;
    check(&input, &(&r * &omega), &(&omega * &r))
}

fn phi_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let space = kind.space();
    let omega = omega_with_kernel(s);
    let flag = compute_flag(kind, &omega).expect("sampled ω lies in 𝔥");
    let Some((jj, p)) = s.stratum_vector(&flag) else { return compared(&json!({"omega": j(&omega)}), [false]) };
    let input = json!({"omega": j(&omega), "p": jv(&p)});
    let e = errored(&input);
    let r_ker = s.kernel_map(&space, &omega).map_err(&e)?;
    let r = centralizer_element(kind, &omega, &r_ker).map_err(&e)?;
    let rp = space.dual_act(&r, &p).map_err(&e)?;
    let steps = flag.steps();
    let ej = steps[jj].basis_vectors();
    let us = flag.quotient_basis(jj);
    let inv = r.inverse().ok_or(Error::Singular).map_err(&e)?;
    let act_inv = |v: &[Scalar]| space.dual_act(&inv, v);
    match &space {
        Space::Orthogonal(_) => {
            let x = phi_map(kind, &omega, &p).map_err(&e)?;
            let y = phi_map(kind, &omega, &rp).map_err(&e)?;
            // equivariance on E_j: φ(rp)(q) = φ(p)(r⁻¹q)
            for q in &ej {
                let lhs = eval_on_kernel(kind, &omega, &y, q).map_err(&e)?;
                let rq = act_inv(q).map_err(&e)?;
                let rhs = eval_on_kernel(kind, &omega, &x, &rq).map_err(&e)?;
                check(&input, &lhs, &rhs)?;
            }
            // pullback: Q_j*(φ[p], φ[p']) = Q_j([p],[p']) with Q_j* of Gram G⁻ᵀ
            let qf = quotient_form(kind, &omega, &flag, jj).map_err(&e)?;
            let (_, p2) = s.stratum_vector(&flag).expect("nonempty");
            let p2 = if flag.stratum_of(&p2).ok().flatten() == Some(jj) { p2 } else { rp.clone() };
            let x2 = phi_map(kind, &omega, &p2).map_err(&e)?;
            let fq = |f: &[Scalar]| -> std::result::Result<Vec<_>, Error> {
                us.iter().map(|u| eval_on_kernel(kind, &omega, f, u)).collect()
            };
            let (f1, f2) = (fq(&x).map_err(&e)?, fq(&x2).map_err(&e)?);
            let dual_gram = qf.gram.inverse().ok_or(Error::Singular).map_err(&e)?.transpose();
            let c1 = quotient_coords(&steps[jj], &steps[jj + 1], &p).map_err(&e)?;
            let c2 = quotient_coords(&steps[jj], &steps[jj + 1], &p2).map_err(&e)?;
            check(&input, &qf.eval(&c1, &c2), &dual_gram.bilinear(&f1, &f2))
        }
        Space::Linear(_) => {
            // pseudo-equivariance: φ(rp) = r^{−T}·φ(p), with r^{−T} acting
            // contragrediently (f ↦ f∘r^{T}) on E_{j+1}°/E_j°
            let m = induced_quotient_map(&flag, &r_ker, jj).map_err(&e)?;
            let x = affine_phi(kind, &omega, &p).map_err(&e)?;
            let y = affine_phi(kind, &omega, &rp).map_err(&e)?;
            let fq = |f: &[Scalar]| -> std::result::Result<Vec<_>, Error> {
                us.iter().map(|u| eval_on_kernel(kind, &omega, f, u)).collect()
            };
            let (fx, fy) = (fq(&x).map_err(&e)?, fq(&y).map_err(&e)?);
            let s_mat = m.inverse().ok_or(Error::Singular).map_err(&e)?.transpose();
            // contragredient action of s on dual coordinates is s^{−T}
            let twisted = s_mat.inverse().ok_or(Error::Singular).map_err(&e)?.transpose().mul_vec(&fx);
            check(&input, &fy, &twisted)
        }
    }
}

fn zigzag_trial(s: &mut Sampler) -> Trial {
    let kind = s.kind();
    let x = s.algebra_element();
    let input = j(&x);
    let cert = match zigzag_certificate(kind, &x) {
        Err(Error::UnsupportedLeaf { .. }) => return compared(&input, [false]),
        r => r.map_err(errored(&input))?,
    };
    check(&input, &true, &cert.is_valid())?;
    check(&input, &kind.is_affine(), &cert.pseudo_equivariant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", GroupKind::Affine(1), 1, 0), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn zero_trials_warn() {
        let r = run_suite("sampler", GroupKind::Affine(2), 0, 1).unwrap();
        assert!(r.passed() && r.warning.is_some());
    }

    #[test]
    fn small_runs_pass() {
        for kind in [GroupKind::Affine(2), GroupKind::Poincare(1, 1), GroupKind::Poincare(1, 2)] {
            for r in run_suites("all", kind, 8, 3).unwrap() {
                assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
            }
        }
    }
}

//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the verdict lines are always shown.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use orbitforge::actions::{AlgebraElement, DualAlgebraElement, GroupKind};
use orbitforge::classify::{
    bijected_adjoint, bijected_coadjoint, classify_adjoint, classify_coadjoint, classify_delta, delta_to_adjoint,
    delta_to_coadjoint, e13_row_of, e13_table, enumerate_hierarchy, LeafKind, OrbitLabel,
};
use orbitforge::linalg::{frac, is_zero_vec, vec_from_ints, zero_vec, Matrix, Scalar};
use orbitforge::verify::{component_counts, run_suite, zigzag_certificate, ComponentPair, Sampler};
use serde::Deserialize;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs a registered suite and requires every trial to be checked and pass.
fn suite(name: &str, kind: GroupKind, trials: usize, seed: u64) -> Result<(), String> {
    let report = ok(run_suite(name, kind, trials, seed))?;
    ensure!(
        report.passed(),
        "{name} on {kind}: {} failures, first: {}",
        report.failures.len(),
        serde_json::to_string(&report.failures[0]).unwrap_or_default()
    );
    ensure!(report.skipped == 0, "{name} on {kind}: {} of {trials} trials were vacuous", report.skipped);
    Ok(())
}

// ---------------------------------------------------------------------------
// 1. aff(1) partition

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Aff1Adjoint {
    Origin,
    Line(Scalar),
    HalfLines,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Aff1Coadjoint {
    Origin,
    Point(Scalar),
    OpenDense,
}

fn aff1_adjoint_orbit(w: &Scalar, v: &Scalar) -> Aff1Adjoint {
    match (w.is_zero(), v.is_zero()) {
        (false, _) => Aff1Adjoint::Line(w.clone()),
        (true, false) => Aff1Adjoint::HalfLines,
        (true, true) => Aff1Adjoint::Origin,
    }
}

fn aff1_coadjoint_orbit(l: &Scalar, p: &Scalar) -> Aff1Coadjoint {
    match (p.is_zero(), l.is_zero()) {
        (false, _) => Aff1Coadjoint::OpenDense,
        (true, false) => Aff1Coadjoint::Point(l.clone()),
        (true, true) => Aff1Coadjoint::Origin,
    }
}

/// Label classes must coincide with the true orbits: equal labels exactly
/// on equal orbits.
fn same_partition<O: Ord + Clone + std::fmt::Debug>(points: &[(O, OrbitLabel)]) -> Result<(), String> {
    let mut by_orbit: BTreeMap<O, OrbitLabel> = BTreeMap::new();
    for (o, l) in points {
        match by_orbit.get(o) {
            Some(prev) => ensure!(prev == l, "orbit {o:?} carries two labels: {prev} and {l}"),
            None => {
                by_orbit.insert(o.clone(), l.clone());
            }
        }
    }
    let labels: Vec<&OrbitLabel> = by_orbit.values().collect();
    for (i, a) in labels.iter().enumerate() {
        ensure!(!labels[i + 1..].contains(a), "label {a} shared by two orbits");
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let kind = GroupKind::Affine(1);
    let grid: Vec<Scalar> = (-4..=4).map(|k| frac(k, 2)).collect();
    let one = |x: &Scalar| Matrix::diagonal(std::slice::from_ref(x));
    let mut adj = Vec::new();
    let mut coadj = Vec::new();
    for a in &grid {
        for b in &grid {
            let x = AlgebraElement { omega: one(a), v: vec![b.clone()] };
            adj.push((aff1_adjoint_orbit(a, b), ok(classify_adjoint(kind, &x))?));
            let xi = DualAlgebraElement { l: one(a), p: vec![b.clone()] };
            coadj.push((aff1_coadjoint_orbit(a, b), ok(classify_coadjoint(kind, &xi))?));

            // the bijection: line ω ↔ point (ω,0), half-lines ↔ open dense, origin ↔ origin
            let image = ok(bijected_coadjoint(kind, &x))?;
            let expected = match aff1_adjoint_orbit(a, b) {
                Aff1Adjoint::Origin => Aff1Coadjoint::Origin,
                Aff1Adjoint::Line(w) => Aff1Coadjoint::Point(w),
                Aff1Adjoint::HalfLines => Aff1Coadjoint::OpenDense,
            };
            let got = aff1_coadjoint_orbit(&image.l[(0, 0)], &image.p[0]);
            ensure!(got == expected, "({a},{b}) bijected to {got:?}, expected {expected:?}");
            let back = ok(bijected_adjoint(kind, &xi))?;
            let expected = match aff1_coadjoint_orbit(a, b) {
                Aff1Coadjoint::Origin => Aff1Adjoint::Origin,
                Aff1Coadjoint::Point(l) => Aff1Adjoint::Line(l),
                Aff1Coadjoint::OpenDense => Aff1Adjoint::HalfLines,
            };
            let got = aff1_adjoint_orbit(&back.omega[(0, 0)], &back.v[0]);
            ensure!(got == expected, "coadjoint ({a},{b}) bijected to {got:?}, expected {expected:?}");
        }
    }
    same_partition(&adj)?;
    same_partition(&coadj)?;
    let families = |orbits: Vec<String>| {
        let mut f = orbits;
        f.sort();
        f.dedup();
        f
    };
    let adj_fam = families(adj.iter().map(|(o, _)| format!("{:?}", std::mem::discriminant(o))).collect());
    let co_fam = families(coadj.iter().map(|(o, _)| format!("{:?}", std::mem::discriminant(o))).collect());
    // origin, vertical lines, two half-lines | points (L,0), open dense (origin shared)
    ensure!(adj_fam.len() == 3 && co_fam.len() == 3, "family counts {} / {}", adj_fam.len(), co_fam.len());
    Ok(format!("{} grid points per side, 5 families", adj.len()))
}

// ---------------------------------------------------------------------------
// 2. E(1,1) bijection

fn criterion_2() -> Outcome {
    let kind = GroupKind::Poincare(1, 1);
    let mut s = Sampler::new(kind, 2);
    let (mut adjoint_checked, mut coadjoint_checked) = (0, 0);
    while adjoint_checked < 50 || coadjoint_checked < 50 {
        let x = s.algebra_element();
        if !x.omega.is_zero() && adjoint_checked < 50 {
            // (ω, v) with ω ≠ 0 ↔ (ω, 0)
            let image = ok(bijected_coadjoint(kind, &x))?;
            let target = DualAlgebraElement::from_trace_coords(&x.omega, zero_vec(2));
            let (a, b, c) = (
                ok(classify_adjoint(kind, &x))?,
                ok(classify_coadjoint(kind, &image))?,
                ok(classify_coadjoint(kind, &target))?,
            );
            ensure!(a == b && b == c, "ω ≠ 0: {a} / {b} / {c}");
            adjoint_checked += 1;
        }
        let xi = s.dual_element();
        if !is_zero_vec(&xi.p) && coadjoint_checked < 50 {
            // (L, p) with p ≠ 0 ↔ (0, p)
            let image = ok(bijected_adjoint(kind, &xi))?;
            let target = AlgebraElement { omega: Matrix::zeros(2, 2), v: xi.p.clone() };
            let (a, b, c) = (
                ok(classify_coadjoint(kind, &xi))?,
                ok(classify_adjoint(kind, &image))?,
                ok(classify_adjoint(kind, &target))?,
            );
            ensure!(a == b && b == c, "p ≠ 0: {a} / {b} / {c}");
            coadjoint_checked += 1;
        }
    }
    Ok("50 + 50 elements".into())
}

// ---------------------------------------------------------------------------
// 3. E(1,3) table

#[derive(Deserialize)]
struct GoldenTable {
    groups: Vec<GoldenGroup>,
}

#[derive(Deserialize)]
struct GoldenGroup {
    group: String,
    rows: Vec<GoldenRow>,
}

#[derive(Deserialize)]
struct GoldenRow {
    params: String,
    constraints: String,
}

fn criterion_3() -> Outcome {
    let golden: GoldenTable = ok(serde_json::from_str(include_str!("golden/e13_table.json")))?;
    let table = e13_table();
    let flat: Vec<(&str, &str, &str)> = golden
        .groups
        .iter()
        .flat_map(|g| g.rows.iter().map(move |r| (g.group.as_str(), r.params.as_str(), r.constraints.as_str())))
        .collect();
    ensure!(table.len() == 14 && flat.len() == 14, "{} rows, golden {}", table.len(), flat.len());
    let mut groups: Vec<&str> = table.iter().map(|r| r.group.as_str()).collect();
    groups.dedup();
    ensure!(groups.len() == 5, "{} groups", groups.len());
    for (row, want) in table.iter().zip(&flat) {
        ensure!(
            (row.group.as_str(), row.params.as_str(), row.constraints.as_str()) == *want,
            "row {row:?} differs from golden {want:?}"
        );
    }

    // one explicit Δ point per row, in the coordinates Q = diag(1,−1,−1,−1)
    let kind = GroupKind::Poincare(1, 3);
    let z = Matrix::zeros(4, 4);
    let boost = Matrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let rot23 = Matrix::from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let rot12 = Matrix::from_ints(&[&[0, 0, 0, 0], &[0, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
    let loxo = &boost + &rot23;
    // null rotations n∧e₂ (fixes e₃) and ν∧e₁ (fixes ν = e₀ + e₃)
    let n2 = Matrix::from_ints(&[&[0, 0, -1, 0], &[0, 0, -1, 0], &[-1, 1, 0, 0], &[0, 0, 0, 0]]);
    let nu_rot = Matrix::from_ints(&[&[0, -1, 0, 0], &[-1, 0, 0, 1], &[0, 0, 0, 0], &[0, -1, 0, 0]]);
    let origin = zero_vec(4);
    let time = vec_from_ints(&[1, 0, 0, 0]);
    let space = vec_from_ints(&[0, 0, 0, 1]);
    let null = vec_from_ints(&[1, 0, 0, 1]);
    let reps: [(&Matrix, &Vec<Scalar>); 14] = [
        (&loxo, &origin),
        (&rot23, &origin),
        (&boost, &origin),
        (&z, &origin),
        (&n2, &origin),
        (&rot23, &time),
        (&z, &time),
        (&rot12, &space),
        (&boost, &space),
        (&z, &space),
        (&n2, &space),
        (&rot12, &null),
        (&z, &null),
        (&nu_rot, &null),
    ];
    for (row, (omega, p)) in reps.iter().enumerate() {
        let d = ok(classify_delta(kind, omega, p))?;
        let a = ok(classify_adjoint(kind, &ok(delta_to_adjoint(kind, omega, p))?))?;
        let c = ok(classify_coadjoint(kind, &ok(delta_to_coadjoint(kind, omega, p))?))?;
        ensure!(d == a && a == c, "row {row}: Δ {d}, adjoint {a}, coadjoint {c}");
        ensure!(e13_row_of(&d) == Some(row), "row {row} representative lands in {:?} ({d})", e13_row_of(&d));
    }
    Ok("14 rows / 5 groups, each row realised".into())
}

// ---------------------------------------------------------------------------
// 4. hierarchy

fn sorted(mut v: Vec<LeafKind>) -> Vec<LeafKind> {
    v.sort();
    v
}

fn criterion_4() -> Outcome {
    for n in 2..=5 {
        let mut want: Vec<LeafKind> = (2..=n).map(|k| LeafKind::Gl { k }).collect();
        want.push(LeafKind::Aff1);
        let got = enumerate_hierarchy(GroupKind::Affine(n)).leaves();
        ensure!(sorted(got.clone()) == sorted(want), "Aff({n}): {got:?}");
    }
    let mut checked = 0;
    for total in 1..=4 {
        for m in 0..=total {
            let n = total - m;
            let mut want = Vec::new();
            for k in 0..=m.min(n) {
                want.push(LeafKind::So { a: m - k, b: n - k });
                if m > k {
                    want.push(LeafKind::SoTimesT { a: m - k - 1, b: n - k });
                }
                if n > k {
                    want.push(LeafKind::SoTimesS { a: m - k, b: n - k - 1 });
                }
            }
            let got = enumerate_hierarchy(GroupKind::Poincare(m, n)).leaves();
            ensure!(sorted(got.clone()) == sorted(want), "E({m},{n}): {got:?}");
            checked += 1;
        }
    }
    Ok(format!("Aff(2..5) and {checked} Poincaré signatures"))
}

// ---------------------------------------------------------------------------
// 5–9. identity suites

fn criterion_5() -> Outcome {
    let kinds = [
        GroupKind::Affine(2),
        GroupKind::Affine(3),
        GroupKind::Affine(4),
        GroupKind::Poincare(1, 1),
        GroupKind::Poincare(1, 3),
    ];
    for kind in kinds {
        suite("mu-annihilator", kind, 50, 5)?;
    }
    Ok(format!("50 p × {} kinds", kinds.len()))
}

/// Kinds whose every leaf is classified, so no label comparison is vacuous.
const LABEL_KINDS: [GroupKind; 10] = [
    GroupKind::Affine(1),
    GroupKind::Affine(2),
    GroupKind::Affine(3),
    GroupKind::Affine(4),
    GroupKind::Poincare(1, 1),
    GroupKind::Poincare(1, 2),
    GroupKind::Poincare(2, 1),
    GroupKind::Poincare(1, 3),
    GroupKind::Poincare(3, 0),
    GroupKind::Poincare(0, 3),
];

fn criterion_6() -> Outcome {
    for kind in LABEL_KINDS {
        suite("label-invariance", kind, 100, 6)?;
    }
    Ok(format!("100 actions × {} kinds", LABEL_KINDS.len()))
}

fn criterion_7() -> Outcome {
    let mut kinds: Vec<GroupKind> = (1..=6).map(GroupKind::Affine).collect();
    kinds.extend(
        [(1, 1), (2, 1), (1, 3), (2, 2), (0, 4), (1, 4), (3, 2), (1, 5), (3, 3)]
            .map(|(m, n)| GroupKind::Poincare(m, n)),
    );
    for &kind in &kinds {
        suite("extension", kind, 100, 7)?;
    }
    Ok(format!("100 inputs × {} kinds, invalid inputs refused", kinds.len()))
}

fn criterion_8() -> Outcome {
    let kinds = [
        GroupKind::Affine(3),
        GroupKind::Affine(4),
        GroupKind::Poincare(1, 2),
        GroupKind::Poincare(1, 3),
        GroupKind::Poincare(2, 2),
    ];
    for kind in kinds {
        suite("centralizer-transitivity", kind, 50, 8)?;
    }
    Ok(format!("50 pairs × {} kinds", kinds.len()))
}

fn criterion_9() -> Outcome {
    suite("phi-properties", GroupKind::Poincare(1, 3), 50, 9)?;
    suite("phi-properties", GroupKind::Poincare(2, 2), 50, 9)?;
    suite("phi-properties", GroupKind::Affine(4), 50, 9)?;
    Ok("50 orthogonal × 2 kinds, 50 affine".into())
}

// ---------------------------------------------------------------------------
// 10. homotopy proxies

fn criterion_10() -> Outcome {
    for kind in [GroupKind::Affine(1), GroupKind::Poincare(1, 1)] {
        let pairs = ok(component_counts(kind))?;
        ensure!(pairs.iter().all(ComponentPair::matches), "{kind}: component counts differ");
    }
    let mut fibres = 0;
    for kind in [GroupKind::Poincare(1, 1), GroupKind::Poincare(1, 3)] {
        let mut s = Sampler::new(kind, 10);
        for _ in 0..20 {
            let x = s.algebra_element();
            let cert = ok(zigzag_certificate(kind, &x))?;
            ensure!(
                cert.is_valid(),
                "{kind}: invalid certificate for {}",
                serde_json::to_string(&x).unwrap_or_default()
            );
            ensure!(!cert.pseudo_equivariant, "{kind}: orthogonal certificate marked pseudo-equivariant");
            for f in cert.all_fibres() {
                ensure!(f.is_affine_subspace(), "{kind}: fibre '{}' is not an affine subspace", f.description);
                fibres += 1;
            }
        }
    }
    Ok(format!("component counts match; {fibres} fibres checked over 40 certificates"))
}

// ---------------------------------------------------------------------------

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "aff(1) golden partition", budget: secs(1), run: criterion_1 },
        Criterion { name: "E(1,1) golden bijection", budget: secs(1), run: criterion_2 },
        Criterion { name: "E(1,3) table", budget: None, run: criterion_3 },
        Criterion { name: "hierarchy closed forms", budget: None, run: criterion_4 },
        Criterion { name: "μ-annihilator identity", budget: secs(5), run: criterion_5 },
        Criterion { name: "label invariance", budget: secs(10), run: criterion_6 },
        Criterion { name: "extension algorithms", budget: secs(10), run: criterion_7 },
        Criterion { name: "centraliser transitivity", budget: None, run: criterion_8 },
        Criterion { name: "φ properties", budget: None, run: criterion_9 },
        Criterion { name: "homotopy proxies", budget: None, run: criterion_10 },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {} — {detail} [{elapsed:.2?}]", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} — {why} [{elapsed:.2?}]", i + 1, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

use orbitforge::actions::{adjoint_act, coadjoint_act, pairing, GroupKind};
use orbitforge::classify::{charpoly, classify_adjoint, classify_coadjoint, gl_class};
use orbitforge::linalg::{frac, image, intersect, kernel, signature, Matrix, Scalar, Subspace};
use orbitforge::verify::Sampler;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, prop_oneof![Just(1i64), Just(2), Just(3)]).prop_map(|(n, d)| frac(n, d))
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), r * c).prop_map(move |e| Matrix::from_flat(r, c, &e))
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

fn kind() -> impl Strategy<Value = GroupKind> {
    prop_oneof![
        (1usize..=3).prop_map(GroupKind::Affine),
        Just(GroupKind::Poincare(1, 1)),
        Just(GroupKind::Poincare(1, 2)),
        Just(GroupKind::Poincare(1, 3)),
        Just(GroupKind::Poincare(3, 0)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = kernel(&a);
        prop_assert_eq!(k.dim() + a.rank(), a.cols());
        for v in k.basis_vectors() {
            prop_assert!(a.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
        }
        prop_assert_eq!(image(&a).dim(), a.rank());
    }

    #[test]
    fn rref_is_idempotent(a in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (r, pivots) = a.rref();
        let (r2, pivots2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn subspaces_are_canonical(vs in prop::collection::vec(prop::collection::vec(scalar(), 4), 0..4), t in matrix(4, 4)) {
        let u = Subspace::span(4, &vs);
        prop_assert_eq!(&Subspace::span(4, &u.basis_vectors()), &u);
        if t.is_invertible() {
            // the span of images does not depend on the chosen spanning set
            let moved: Vec<_> = vs.iter().map(|v| t.mul_vec(v)).collect();
            prop_assert_eq!(Subspace::span(4, &moved), u.map(&t));
        }
        let w = image(&t);
        let cap = intersect(&u, &w).unwrap();
        prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&w));
        prop_assert_eq!(cap.dim() + u.sum(&w).dim(), u.dim() + w.dim());
    }

    #[test]
    fn inverse_round_trip(a in square()) {
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(&(&a * &inv), &Matrix::identity(a.rows()));
            prop_assert_eq!(a.det() * inv.det(), frac(1, 1));
        } else {
            prop_assert_eq!(a.det(), frac(0, 1));
        }
    }

    #[test]
    fn similarity_invariants(a in square(), p in square()) {
        prop_assume!(a.rows() == p.rows());
        if let Some(pinv) = p.inverse() {
            let b = &(&p * &a) * &pinv;
            prop_assert_eq!(gl_class(&a), gl_class(&b));
            prop_assert_eq!(charpoly(&a), charpoly(&b));
        }
    }

    #[test]
    fn congruence_preserves_signature(s in (1usize..=4).prop_flat_map(|n| matrix(n, n)), p in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        prop_assume!(s.rows() == p.rows());
        let sym = &s + &s.transpose();
        if p.is_invertible() {
            let moved = &(&p.transpose() * &sym) * &p;
            prop_assert_eq!(signature(&sym), signature(&moved));
        }
    }

    #[test]
    fn actions_and_pairing(kind in kind(), seed in any::<u64>()) {
        let mut s = Sampler::new(kind, seed);
        let g = s.group_element();
        let h = s.group_element();
        let x = s.algebra_element();
        let xi = s.dual_element();
        let gh = g.compose(&h);
        let lhs = adjoint_act(kind, &gh, &x).unwrap();
        let rhs = adjoint_act(kind, &g, &adjoint_act(kind, &h, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let gx = adjoint_act(kind, &g, &x).unwrap();
        let gxi = coadjoint_act(kind, &g, &xi).unwrap();
        prop_assert_eq!(pairing(kind, &gxi, &gx).unwrap(), pairing(kind, &xi, &x).unwrap());
    }

    #[test]
    fn labels_are_invariant(kind in kind(), seed in any::<u64>()) {
        let mut s = Sampler::new(kind, seed);
        let g = s.group_element();
        let x = s.algebra_element();
        let xi = s.dual_element();
        prop_assert_eq!(
            classify_adjoint(kind, &x).unwrap(),
            classify_adjoint(kind, &adjoint_act(kind, &g, &x).unwrap()).unwrap()
        );
        prop_assert_eq!(
            classify_coadjoint(kind, &xi).unwrap(),
            classify_coadjoint(kind, &coadjoint_act(kind, &g, &xi).unwrap()).unwrap()
        );
    }
}

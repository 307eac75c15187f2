//! Randomized algebraic laws for the Grassmann and graded layers. Integer
//! coefficients keep every comparison exact.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use pseudofermion::graded::{
    gop_apply, gop_compose, gop_dagger, gv_canonicalize, BasisKind, GradedOperator, GradedVector,
    KetTerm,
};
use pseudofermion::{GeneratorSignature, GrassmannElement, Monomial, Parity};

fn sig4() -> Arc<GeneratorSignature> {
    GeneratorSignature::xi_zeta()
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-3i32..=3, -3i32..=3).prop_map(|(a, b)| Complex64::new(a as f64, b as f64))
}

/// Up to `max_terms` terms over the four generators `xi, xi*, zeta, zeta*`.
fn element(max_terms: usize) -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u32..16, coeff()), 0..=max_terms).prop_map(|terms| {
        GrassmannElement::from_terms(
            &sig4(),
            terms.into_iter().map(|(b, c)| (Monomial::from_bits(b), c)),
        )
    })
}

fn body_free(max_terms: usize) -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((1u32..16, coeff()), 0..=max_terms).prop_map(|terms| {
        GrassmannElement::from_terms(
            &sig4(),
            terms.into_iter().map(|(b, c)| (Monomial::from_bits(b), c)),
        )
    })
}

fn homogeneous(parity: Parity) -> impl Strategy<Value = GrassmannElement> {
    element(4).prop_map(move |g| g.part(parity))
}

fn vector() -> impl Strategy<Value = GradedVector> {
    (element(3), element(3)).prop_map(|(a, b)| GradedVector::new(BasisKind::Psi, [a, b]).unwrap())
}

fn operator(left: BasisKind, right: BasisKind) -> impl Strategy<Value = GradedOperator> {
    prop::array::uniform4(element(3))
        .prop_map(move |[a, b, c, d]| GradedOperator::new(left, right, [[a, b], [c, d]]).unwrap())
}

/// Operator of definite total parity: coefficient of dyad `(i, j)` has parity
/// `total + i + j`.
fn homogeneous_operator(total: Parity) -> impl Strategy<Value = GradedOperator> {
    prop::array::uniform4(element(3)).prop_map(move |[a, b, c, d]| {
        let shift = |g: GrassmannElement, k: u32| {
            let p = if k.is_multiple_of(2) { total } else { total.flip() };
            g.part(p)
        };
        GradedOperator::new(
            BasisKind::Psi,
            BasisKind::Phi,
            [[shift(a, 0), shift(b, 1)], [shift(c, 1), shift(d, 2)]],
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn product_is_associative(a in element(4), b in element(4), c in element(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(a in element(4), b in element(4), c in element(4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn odd_elements_anticommute(a in homogeneous(Parity::Odd), b in homogeneous(Parity::Odd)) {
        prop_assert!((&(&a * &b) + &(&b * &a)).is_zero());
    }

    #[test]
    fn even_elements_commute_with_everything(a in homogeneous(Parity::Even), b in element(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn star_is_an_involution(a in element(6)) {
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn star_reverses_products(a in element(4), b in element(4)) {
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
    }

    #[test]
    fn star_is_antilinear(a in element(4), c in coeff()) {
        prop_assert_eq!(a.scale(c).star(), a.star().scale(c.conj()));
    }

    #[test]
    fn berezin_equals_left_derivative(a in element(8), gen in 0usize..4) {
        prop_assert_eq!(a.berezin(gen).unwrap(), a.deriv_left(gen).unwrap());
    }

    #[test]
    fn left_derivative_is_a_graded_derivation(
        a in homogeneous(Parity::Odd), b in element(4), gen in 0usize..4,
    ) {
        // d(ab) = (da) b - a (db) for odd a.
        let lhs = (&a * &b).deriv_left(gen).unwrap();
        let rhs = &(&a.deriv_left(gen).unwrap() * &b) - &(&a * &b.deriv_left(gen).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_inverts(a in body_free(4)) {
        let lhs = &a.exp().unwrap() * &(-&a).exp().unwrap();
        prop_assert_eq!(lhs, GrassmannElement::one(&sig4()));
    }

    #[test]
    fn canonicalize_is_idempotent(v in vector()) {
        let once = v.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert_eq!(once, v);
    }

    #[test]
    fn raw_ket_terms_collect_with_koszul_signs(l in element(3), r in homogeneous(Parity::Odd)) {
        // l|e1> r = l (-r)|e1> for odd r.
        let v = gv_canonicalize(BasisKind::Psi, &[KetTerm { left: l.clone(), slot: 1, right: r.clone() }]).unwrap();
        prop_assert_eq!(v.comp[1].clone(), -(&l * &r));
        let w = gv_canonicalize(BasisKind::Psi, &[KetTerm { left: l.clone(), slot: 0, right: r.clone() }]).unwrap();
        prop_assert_eq!(w.comp[0].clone(), &l * &r);
    }

    #[test]
    fn koszul_consistency(
        a in operator(BasisKind::Psi, BasisKind::Phi),
        b in operator(BasisKind::Psi, BasisKind::Phi),
        v in vector(),
    ) {
        let lhs = gop_apply(&a, &gop_apply(&b, &v).unwrap()).unwrap();
        let rhs = gop_apply(&gop_compose(&a, &b).unwrap(), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(
        a in operator(BasisKind::Psi, BasisKind::Phi),
        b in operator(BasisKind::Psi, BasisKind::Phi),
        c in operator(BasisKind::Psi, BasisKind::Phi),
    ) {
        let lhs = gop_compose(&gop_compose(&a, &b).unwrap(), &c).unwrap();
        let rhs = gop_compose(&a, &gop_compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parity_adds_under_composition(
        pa in prop::bool::ANY, pb in prop::bool::ANY, seed_a in homogeneous_operator(Parity::Even),
        seed_b in homogeneous_operator(Parity::Even),
    ) {
        let make = |odd: bool, base: &GradedOperator| {
            if odd {
                // Multiplying by an odd generator flips the total parity.
                base.left_mul(&GrassmannElement::generator(&sig4(), 2).unwrap())
            } else {
                base.clone()
            }
        };
        let (a, b) = (make(pa, &seed_a), make(pb, &seed_b));
        let ab = gop_compose(&a, &b).unwrap();
        // The zero operator has every parity; skip it.
        prop_assume!(!ab.is_zero());
        if let (Some(x), Some(y), Some(z)) = (a.parity(), b.parity(), ab.parity()) {
            prop_assert_eq!(z, Parity::from_bits(x.bit() + y.bit()));
        }
    }

    #[test]
    fn dagger_is_an_involution(a in operator(BasisKind::Psi, BasisKind::Phi)) {
        prop_assert_eq!(gop_dagger(&gop_dagger(&a)), a);
    }

    #[test]
    fn dagger_reverses_composition(
        a in operator(BasisKind::Psi, BasisKind::Phi),
        b in operator(BasisKind::Psi, BasisKind::Phi),
    ) {
        let lhs = gop_dagger(&gop_compose(&a, &b).unwrap());
        let rhs = gop_compose(&gop_dagger(&b), &gop_dagger(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn all_generator_pairs_anticommute() {
    let sig = sig4();
    for i in 0..4 {
        for j in 0..4 {
            let gi = GrassmannElement::generator(&sig, i).unwrap();
            let gj = GrassmannElement::generator(&sig, j).unwrap();
            assert!((&(&gi * &gj) + &(&gj * &gi)).is_zero(), "({i}, {j})");
        }
    }
}

#[test]
fn double_integral_convention() {
    let sig = GeneratorSignature::xi();
    let xi_xs = GrassmannElement::word(&sig, &[0, 1]).unwrap();
    let xs_xi = GrassmannElement::word(&sig, &[1, 0]).unwrap();
    assert_eq!(xi_xs.berezin_pair(0).unwrap(), GrassmannElement::one(&sig));
    assert_eq!(xs_xi.berezin_pair(0).unwrap(), -GrassmannElement::one(&sig));
}

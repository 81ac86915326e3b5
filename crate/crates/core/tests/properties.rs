use std::sync::OnceLock;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use quiver_chow::chow::{BuildOptions, Presentation};
use quiver_chow::polyring::{
    act, is_invariant, symmetrize, to_elementary, todd_factor, weyl_group, Poly, SchurRho,
    SchurTable, TruncatedClass, VarLayout,
};
use quiver_chow::quiver::{kronecker, DimVector, Quiver};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly_from(nvars: usize, terms: &[(Vec<u16>, i64)]) -> Poly {
    let mut p = Poly::zero(nvars);
    for (mono, c) in terms {
        p.add_term(mono.clone(), q(*c));
    }
    p
}

fn terms(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -4i64..=4),
        1..=max_terms,
    )
}

fn kronecker_2_3() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| {
        let k = kronecker(3, 2, 3).unwrap();
        Presentation::build(&k.quiver, &k.dims, &k.theta, None, &BuildOptions::default()).unwrap()
    })
}

fn quiver_and_dims() -> impl Strategy<Value = (Quiver, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 0..6),
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0u32..4, n),
            )
        })
        .prop_map(|(n, arrows, a, b, c)| (Quiver::new(n, arrows).unwrap(), a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_form_is_bilinear((quiver, a, b, c) in quiver_and_dims()) {
        let (a, b, c) = (DimVector::new(a), DimVector::new(b), DimVector::new(c));
        let sum = DimVector::new(a.entries().iter().zip(b.entries()).map(|(x, y)| x + y).collect());
        prop_assert_eq!(
            quiver.euler_form(&sum, &c).unwrap(),
            quiver.euler_form(&a, &c).unwrap() + quiver.euler_form(&b, &c).unwrap()
        );
        prop_assert_eq!(
            quiver.euler_form(&c, &sum).unwrap(),
            quiver.euler_form(&c, &a).unwrap() + quiver.euler_form(&c, &b).unwrap()
        );
    }

    #[test]
    fn canonical_stability_is_primitive_and_kills_d(m in 1usize..6, d in 1u32..5, e in 1u32..5) {
        let quiver = Quiver::kronecker(m);
        let dims = DimVector::new(vec![d, e]);
        if let Ok(theta) = quiver.canonical_stability(&dims) {
            prop_assert_eq!(theta.eval(&dims), 0);
            let g = theta.entries().iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
            prop_assert_eq!(g, 1);
            // forbidden, negative and zero parts partition the proper subvectors
            let forbidden = quiver.forbidden_vectors(&dims, &theta).unwrap();
            let all: Vec<_> = dims.proper_subvectors().collect();
            let negative = all.iter().filter(|v| theta.eval(v) < 0).count();
            let zero = all.iter().filter(|v| theta.eval(v) == 0).count();
            prop_assert_eq!(forbidden.len() + negative + zero, all.len());
            prop_assert_eq!(zero == 0, quiver.is_coprime(&dims, &theta).unwrap());
        }
    }

    #[test]
    fn rho_is_alternating(f in terms(5, 3, 4), index in 0usize..12) {
        let layout = VarLayout::new(&DimVector::new(vec![2, 3]));
        let f = poly_from(5, &f);
        let sigma = &weyl_group(&layout)[index];
        let lhs = symmetrize(&layout, &act(&layout, sigma, &f)).unwrap();
        let rhs = symmetrize(&layout, &f).unwrap().scale(&q(sigma.sign() as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_route_matches_weyl_sum(f in terms(5, 4, 3)) {
        let layout = VarLayout::new(&DimVector::new(vec![2, 3]));
        let f = poly_from(5, &f);
        let slow = symmetrize(&layout, &f).unwrap();
        prop_assert!(is_invariant(&layout, &slow));
        let table = SchurTable::new();
        let fast = SchurRho::new(&layout, &table).apply(&f, None).unwrap();
        prop_assert_eq!(fast, to_elementary(&layout, &slow).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(a in terms(5, 3, 4), b in terms(5, 3, 4), c in -3i64..=3) {
        let p = kronecker_2_3();
        let (a, b) = (poly_from(5, &a), poly_from(5, &b));
        let na = p.normal_form(&a);
        prop_assert_eq!(p.normal_form(&p.lift(&na)), na.clone());
        let combined = &a + &b.scale(&q(c));
        let nb = p.normal_form(&b);
        prop_assert_eq!(p.normal_form(&combined), na.add(&nb.scale(&q(c))));
        // multiplication is compatible with normal forms
        prop_assert_eq!(p.normal_form(&(&a * &b)), p.mul(&na, &nb));
        // integration is linear and vanishes below the top degree
        let ia = p.integrate(&na).unwrap();
        let ib = p.integrate(&nb).unwrap();
        prop_assert_eq!(p.integrate(&na.add(&nb.scale(&q(c)))).unwrap(), ia + ib * q(c));
        prop_assert!(p.integrate(&na.homogeneous(2)).unwrap().is_zero());
    }

    #[test]
    fn series_exponential_and_inverse(coeffs in prop::collection::vec(-5i64..=5, 3)) {
        let weights = [1u32, 1, 1];
        let linear = Poly::linear(3, &coeffs.iter().enumerate().map(|(i, &c)| (i, q(c))).collect::<Vec<_>>());
        let x = TruncatedClass::from_poly(&linear, &weights, 5);
        let product = x.exp().unwrap().mul(&x.scale(&q(-1)).exp().unwrap());
        prop_assert_eq!(product, TruncatedClass::one(&weights, 5));
        let u = TruncatedClass::one(&weights, 5).add(&x);
        prop_assert_eq!(u.mul(&u.inverse().unwrap()), TruncatedClass::one(&weights, 5));
        // Q(t) (1 - e^{-t}) = t
        let td = todd_factor(&linear, &weights, 5).unwrap();
        let one_minus = TruncatedClass::one(&weights, 5).sub(&x.scale(&q(-1)).exp().unwrap());
        prop_assert_eq!(td.mul(&one_minus), x);
    }
}

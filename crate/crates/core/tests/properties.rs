use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qinv_core::cyclotomic::{CycField, CycNum, RootSystem};
use qinv_core::laplace::{laplace, laplace_refined_coho, laplace_refined_spin};
use qinv_core::ring::text::{format_laurent, parse_laurent};
use qinv_core::ring::{BiPoly, DenFactor, DenFactors, LaurentPoly, RationalLaurent};
use qinv_core::Coeff;

fn rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (rat(), prop_oneof![3 => Just(false), 1 => Just(true)], rat())
        .prop_map(|(re, complex, im)| if complex { Coeff::new(re, im) } else { Coeff::real(re) })
}

fn real_coeff() -> impl Strategy<Value = Coeff> {
    rat().prop_map(Coeff::real)
}

fn laurent_with(c: impl Strategy<Value = Coeff>) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i64..=8, c), 0..6).prop_map(LaurentPoly::from_terms)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent_with(coeff())
}

fn bipoly_with(step: i64) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3, coeff()), 0..6).prop_map(move |ms| {
        ms.into_iter().fold(BiPoly::zero(), |acc, (a, e, c)| &acc + &BiPoly::monomial(c, a, step * e))
    })
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    bipoly_with(1)
}

/// Coefficients in `q = v^2` only.
fn q_bipoly() -> impl Strategy<Value = BiPoly> {
    bipoly_with(2)
}

fn den() -> impl Strategy<Value = DenFactors> {
    prop::collection::vec(prop_oneof![(1u32..=4).prop_map(DenFactor::OneMinusQPow), (0u32..=2).prop_map(DenFactor::OnePlusVOdd)], 0..3)
        .prop_map(|fs| fs.into_iter().fold(DenFactors::one(), |d, f| d.with(f, 1)))
}

fn cyc(field: std::sync::Arc<CycField>) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(rat(), field.degree()).prop_map(move |cs| CycNum::from_power_coeffs(&field, &cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn coeff_field_laws(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Coeff::from_int(1));
        }
    }

    #[test]
    fn cyclotomic_field_laws((a, b, c) in (1u64..=6).prop_flat_map(|r| {
        let f = RootSystem::new(r).field().clone();
        (cyc(f.clone()), cyc(f.clone()), cyc(f))
    })) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_arithmetic(a in laurent_with(real_coeff()), b in laurent_with(real_coeff()), d1 in den(), d2 in den()) {
        let x = RationalLaurent::new(a.clone(), d1.clone());
        let y = RationalLaurent::new(b.clone(), d2.clone());
        // x + y - y = x and (x * y) with den product
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        let prod = &x * &y;
        prop_assert_eq!(prod, RationalLaurent::new(&a * &b, d1.product(&d2)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_round_trip(a in laurent()) {
        let s = format_laurent(&a);
        prop_assert_eq!(parse_laurent(&s).unwrap(), a);
    }

    // odd orders have no i in the field, so keep coefficients real
    #[test]
    fn evaluation_is_a_homomorphism(r in 2u64..=8, a in laurent_with(real_coeff()), b in laurent_with(real_coeff())) {
        let rs = RootSystem::new(r);
        let ea = rs.ev_poly(&a).unwrap();
        let eb = rs.ev_poly(&b).unwrap();
        prop_assert_eq!(rs.ev_poly(&(&a * &b)).unwrap(), &ea * &eb);
        prop_assert_eq!(rs.ev_poly(&(&a + &b)).unwrap(), &ea + &eb);
    }

    #[test]
    fn evaluation_of_quotients(r in 2u64..=8, a in laurent_with(real_coeff()), b in laurent_with(real_coeff()), d in den()) {
        let rs = RootSystem::new(r);
        let x = RationalLaurent::new(a, d.clone());
        let y = RationalLaurent::new(b, d.clone());
        if d.iter().all(|(f, _)| rs.factor_is_unit(f)) {
            prop_assert_eq!(rs.ev(&(&x + &y)).unwrap(), &rs.ev(&x).unwrap() + &rs.ev(&y).unwrap());
        }
    }

    #[test]
    fn laplace_is_linear_and_refinements_partition(f in bipoly(), g in bipoly(), chi in 0u8..2) {
        for b in [1i64, -1, 2, -2] {
            prop_assert_eq!(laplace(b, &(&f + &g)).unwrap(), &laplace(b, &f).unwrap() + &laplace(b, &g).unwrap());
        }
        for b in [2i64, -2] {
            let spin = &laplace_refined_spin(b, 0, chi, &f).unwrap() + &laplace_refined_spin(b, 1, chi, &f).unwrap();
            prop_assert_eq!(&spin, &laplace(b, &f).unwrap());
            let coho = &laplace_refined_coho(b, 0, chi, &f).unwrap() + &laplace_refined_coho(b, 1, chi, &f).unwrap();
            prop_assert_eq!(&coho, &laplace(b, &f).unwrap());
        }
    }

    #[test]
    fn refined_transform_is_a_half_sum(f in q_bipoly(), chi in 0u8..2) {
        for b in [2i64, -2] {
            let plain = laplace(b, &f).unwrap();
            for eps in 0..2u8 {
                let s = if (eps + chi) % 2 == 0 { 1 } else { -1 };
                let half = (&plain + &plain.neg_v().scale_int(s)).scale(&Coeff::from_frac(1, 2));
                prop_assert_eq!(laplace_refined_spin(b, eps, chi, &f).unwrap(), half);
            }
        }
    }
}

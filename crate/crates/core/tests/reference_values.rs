//! Closed forms and special values that the library has to reproduce exactly.

use qinv_core::cyclotomic::RootSystem;
use qinv_core::laplace::{laplace, laplace_refined_spin, GaussSums, Parity};
use qinv_core::oracle::{tau, tau_prime, tau_rp3, tau_su2, InvariantFlavor};
use qinv_core::qjones::{jones_colored, CycCoeffTable, KnownKnot};
use qinv_core::ring::qcomb::{
    b_rational, even_plus_product, f_block, habiro_window, odd_poch, odd_v_product, pochhammer, qbracket,
};
use qinv_core::ring::{BiPoly, DenFactor, DenFactors, LaurentPoly, RationalLaurent};
use qinv_core::surgery::{builtin, StructureKind, StructureVector};
use qinv_core::unified::{
    evaluate, ohtsuki, refine_nondiagonal, sum_series, unified, unified_coho, unified_spin, unified_zhs,
};
use qinv_core::Coeff;

fn alt(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn over_one_minus_q(num: LaurentPoly) -> RationalLaurent {
    RationalLaurent::new(num, DenFactors::single(DenFactor::one_minus_q()))
}

#[test]
fn odd_pochhammer_at_one() {
    let want = &LaurentPoly::binomial(-1, 3) * &LaurentPoly::binomial(1, 2);
    assert_eq!(odd_poch(1), want);
}

#[test]
fn f_block_at_zero_index() {
    let x = BiPoly::monomial(Coeff::from_int(1), 1, 0);
    let xi = BiPoly::monomial(Coeff::from_int(1), -1, 0);
    let want = &(&BiPoly::one() - &x) * &(&BiPoly::one() - &xi);
    assert_eq!(f_block(0), want);
}

#[test]
fn b_values() {
    assert_eq!(b_rational(0), RationalLaurent::new(LaurentPoly::one(), DenFactors::single(DenFactor::OnePlusVOdd(0))));
    let lhs = RationalLaurent::new(&LaurentPoly::binomial(-1, 1) * &odd_poch(3), DenFactors::pochhammer(4, 4));
    assert_eq!(lhs, b_rational(3));
}

#[test]
fn evaluation_of_v_at_odd_order() {
    for r in [3u64, 5, 7] {
        let rs = RootSystem::new(r);
        let two_star = rs.two_star().unwrap() as i64;
        assert_eq!(rs.ev_poly(&LaurentPoly::v_pow(1)).unwrap(), rs.xi().pow(two_star).unwrap());
    }
}

#[test]
fn unknot_jones_is_quantum_integer() {
    let rs = RootSystem::new(5);
    let u = CycCoeffTable::builtin(KnownKnot::Unknot);
    assert_eq!(jones_colored(&u, &[0], &[3], &rs).unwrap(), rs.ev_poly(&qbracket(3)).unwrap());
}

#[test]
fn laplace_lemmas() {
    for k in 0..=12u32 {
        let kk = k as i64;
        assert_eq!(laplace(-1, &f_block(k)).unwrap(), pochhammer(kk + 1, k + 1).scale_int(2));
        let want = (&LaurentPoly::binomial(-1, 1) * &odd_poch(k)).shift(-kk - 1).scale_int(-2 * alt(kk));
        assert_eq!(laplace(2, &f_block(k)).unwrap(), want);
    }
}

#[test]
fn refined_transform_keeps_odd_monomial() {
    let x = BiPoly::monomial(Coeff::from_int(1), 1, 0);
    assert_eq!(laplace_refined_spin(2, 0, 1, &x).unwrap(), LaurentPoly::v_pow(-1));
    assert_eq!(laplace_refined_spin(-2, 0, 1, &x).unwrap(), LaurentPoly::v_pow(1));
}

#[test]
fn multiplicativity_and_partition_at_four() {
    let rs = RootSystem::new(4);
    let a = builtin("trefoil_plus1").unwrap();
    let c = builtin("fig8_plus2").unwrap();
    let s = a.connected_sum(&c);
    assert_eq!(tau_su2(&s, &rs).unwrap(), &tau_su2(&a, &rs).unwrap() * &tau_su2(&c, &rs).unwrap());
    let sum = c
        .spin_structures()
        .iter()
        .map(|sv| tau(&c, &rs, InvariantFlavor::Spin, Some(sv)).unwrap())
        .fold(rs.zero(), |x, y| &x + &y);
    assert_eq!(sum, tau_su2(&c, &rs).unwrap());
}

#[test]
fn projective_space_is_normalized_to_one() {
    let p = builtin("rp3").unwrap();
    let two = p.clone().connected_sum(&p);
    for r in 2..=8u64 {
        let rs = RootSystem::new(r);
        let fl = if r % 2 == 1 { InvariantFlavor::So3 } else { InvariantFlavor::Su2 };
        if r % 2 == 1 && r < 3 {
            continue;
        }
        assert!(tau_prime(&p, &rs, fl, None).unwrap().is_one(), "r={r}");
        assert!(tau_prime(&two, &rs, fl, None).unwrap().is_one(), "r={r}");
    }
    // SO(3) value from Gauss sums at r = 5
    let rs = RootSystem::new(5);
    let gs = GaussSums::new(&rs);
    let den = &(&rs.one() + &rs.zeta().pow(-1).unwrap()) * gs.get(1, Parity::Odd);
    let want = gs.get(2, Parity::Odd) * &den.inverse().unwrap();
    assert_eq!(tau(&p, &rs, InvariantFlavor::So3, None).unwrap(), want);
    assert_eq!(tau_rp3(&rs, InvariantFlavor::So3).unwrap(), want);
}

#[test]
fn poincare_series() {
    let s = unified_zhs(&builtin("trefoil_plus1").unwrap(), 21).unwrap();
    for k in 0..=20u32 {
        let kk = k as i64;
        let ours = over_one_minus_q(habiro_window(k).shift(-2 * kk * (kk + 2) - kk * (kk + 3)).scale_int(alt(kk)));
        let closed = over_one_minus_q(habiro_window(k).shift(2 - (kk + 2) * (3 * kk + 1)).scale_int(alt(kk)));
        assert_eq!(s.term(k).unwrap(), &ours, "k={k}");
        assert_eq!(ours, closed, "k={k}");
    }
}

#[test]
fn figure_eight_series_has_no_alternating_sign() {
    let s = unified_zhs(&builtin("fig8_plus1").unwrap(), 21).unwrap();
    for k in 0..=20u32 {
        let kk = k as i64;
        let unsigned = over_one_minus_q(habiro_window(k).shift(2 - 2 * (kk + 1) * (kk + 1)));
        assert_eq!(s.term(k).unwrap(), &unsigned, "k={k}");
    }
    // with the extra (-1)^k the odd terms flip sign
    let signed = over_one_minus_q(habiro_window(1).shift(2 - 8).scale_int(-1));
    assert_ne!(s.term(1).unwrap(), &signed);
}

#[test]
fn two_torsion_series_agree() {
    for name in ["fig8_plus2", "whitehead"] {
        let s = unified(&builtin(name).unwrap(), 16).unwrap();
        for k in 0..=15u32 {
            let kk = k as i64;
            assert_eq!(s.term(k).unwrap().as_poly(), Some(&odd_poch(k).shift(-kk * (kk + 2))), "{name} k={k}");
        }
    }
}

#[test]
fn projective_space_spin_pair() {
    let p = builtin("rp3").unwrap();
    let one_minus_v = |num: LaurentPoly| RationalLaurent::new(&num * &LaurentPoly::binomial(1, 1), DenFactors::single(DenFactor::one_minus_q()));
    let want = [one_minus_v(LaurentPoly::one()), one_minus_v(-LaurentPoly::v_pow(1))];
    let parts: Vec<_> = p.spin_structures().iter().map(|c| unified_spin(&p, c, 4).unwrap()).collect();
    let firsts: Vec<RationalLaurent> = parts.iter().map(|s| s.term(0).unwrap().clone()).collect();
    assert!(want.iter().all(|w| firsts.contains(w)), "{firsts:?}");
    for s in &parts {
        for k in 1..4 {
            assert!(s.term(k).unwrap().is_zero());
        }
    }
    let sum = sum_series(&parts, parts[0].tag()).unwrap();
    assert!(sum.term(0).unwrap().as_poly().is_some_and(|p| p.is_one()));
}

fn refined_term(coho: bool, eps: u8, n: u32) -> RationalLaurent {
    let nn = n as i64;
    let s = alt(eps as i64 + nn);
    let x = if coho { Coeff::i().scale_int(s) } else { Coeff::from_int(-s) };
    let bracket = &odd_v_product(n, -1) + &odd_v_product(n, 1).scale(&x);
    let num = &(&even_plus_product(n) * &bracket).shift(-nn * (nn + 2)) * &LaurentPoly::binomial(1, 1);
    RationalLaurent::new(num.scale(&Coeff::from_frac(1, 2)), DenFactors::single(DenFactor::one_minus_q()))
}

#[test]
fn refined_series_for_figure_eight_framing_two() {
    let p = builtin("fig8_plus2").unwrap();
    for eps in 0..2u8 {
        // the structure labelled ε is the vector c = ε + 1
        let c = vec![(eps + 1) % 2];
        let spin = unified_spin(&p, &StructureVector { c: c.clone(), kind: StructureKind::Spin }, 11).unwrap();
        let coho = unified_coho(&p, &StructureVector { c, kind: StructureKind::Coho }, 11).unwrap();
        for n in 0..=10 {
            assert_eq!(spin.term(n).unwrap(), &refined_term(false, eps, n), "spin ε={eps} n={n}");
            assert_eq!(coho.term(n).unwrap(), &refined_term(true, eps, n), "coho ε={eps} n={n}");
        }
    }
}

#[test]
fn stabilized_refinement_matches_diagonal_one() {
    let p = builtin("fig8_plus2").unwrap();
    for c in p.spin_structures() {
        let direct = unified_spin(&p, &c, 9).unwrap();
        let through = refine_nondiagonal(&p, &c, 9).unwrap();
        assert!(direct.termwise_eq(&through, 8), "c={}", c.bits());
    }
}

#[test]
fn ohtsuki_integrality() {
    let o = ohtsuki(&unified(&builtin("trefoil_plus1").unwrap(), 11).unwrap(), 10).unwrap();
    assert!(o.integral);
    let o = ohtsuki(&unified(&builtin("fig8_plus2").unwrap(), 11).unwrap(), 10).unwrap();
    assert!(o.dyadic);
}

#[test]
fn unified_evaluation_matches_state_sum_small() {
    let p = builtin("fig8_plus2").unwrap();
    let s = unified(&p, 6).unwrap();
    let rs = RootSystem::new(3);
    assert_eq!(evaluate(&s, &rs).unwrap(), tau_prime(&p, &rs, InvariantFlavor::So3, None).unwrap());
}

//! q-combinatorial building blocks.

use super::bipoly::BiPoly;
use super::laurent::LaurentPoly;
use super::rational::{DenFactor, DenFactors, RationalLaurent};
use crate::coeff::Coeff;
use crate::error::{Error, Result};

pub(crate) fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Quantum integer `[n] = (v^n - v^{-n}) / (v - v^{-1})`.
pub fn qbracket(n: i64) -> LaurentPoly {
    if n < 0 {
        return -qbracket(-n);
    }
    LaurentPoly::from_terms((0..n).map(|j| (n - 1 - 2 * j, Coeff::from_int(1))))
}

/// `{n} = v^n - v^{-n}`.
pub fn qbrace(n: i64) -> LaurentPoly {
    &LaurentPoly::v_pow(n) - &LaurentPoly::v_pow(-n)
}

/// `(q^s; q)_k = prod_{j=0}^{k-1} (1 - q^{s+j})`.
pub fn pochhammer(s: i64, k: u32) -> LaurentPoly {
    (0..k as i64).map(|j| LaurentPoly::binomial(-1, 2 * (s + j))).product()
}

/// `(-v^2; -v)_{2k} = prod_{i=2}^{2k+1} (1 + (-v)^i)`.
pub fn odd_poch(k: u32) -> LaurentPoly {
    (2..=2 * k as i64 + 1).map(|i| LaurentPoly::binomial(sign(i), i)).product()
}

/// `prod_{i=0}^k (1 + s v^{2i+1})`.
pub fn odd_v_product(k: u32, s: i64) -> LaurentPoly {
    (0..=k as i64).map(|i| LaurentPoly::binomial(s, 2 * i + 1)).product()
}

/// `prod_{i=1}^k (1 + q^i)`.
pub fn even_plus_product(k: u32) -> LaurentPoly {
    (1..=k as i64).map(|i| LaurentPoly::binomial(1, 2 * i)).product()
}

/// `(q^{k+1}; q)_{k+1} = prod_{i=k+1}^{2k+1} (1 - q^i)`.
pub fn habiro_window(k: u32) -> LaurentPoly {
    pochhammer(k as i64 + 1, k + 1)
}

/// The same window as a factored denominator.
pub fn habiro_window_den(k: u32) -> DenFactors {
    DenFactors::pochhammer(k + 1, k + 1)
}

/// `(q^{1+λ})_k (q^{1-λ})_k` at a concrete colour.
pub fn cyclotomic_factor(k: u32, lambda: i64) -> LaurentPoly {
    &pochhammer(1 + lambda, k) * &pochhammer(1 - lambda, k)
}

/// `F_k = (x; q)_{k+1} (x^{-1}; q)_{k+1}` with `x = q^λ`.
pub fn f_block(k: u32) -> BiPoly {
    let mut acc = BiPoly::one();
    for j in 0..=k as i64 {
        acc = &acc * &BiPoly::one_minus_xq(1, j);
        acc = &acc * &BiPoly::one_minus_xq(-1, j);
    }
    acc
}

/// `B_k(v) = 1 / prod_{i=0}^k (1 + v^{2i+1})`.
pub fn b_rational(k: u32) -> RationalLaurent {
    let den = (0..=k).fold(DenFactors::one(), |d, i| d.with(DenFactor::OnePlusVOdd(i), 1));
    RationalLaurent::new_unreduced(LaurentPoly::one(), den)
}

/// Admissible arguments of the refined `B_k(x, v)`.
pub fn refined_argument(x: &Coeff) -> bool {
    let one = Coeff::from_int(1);
    let i = Coeff::i();
    *x == one || *x == -&one || *x == i || *x == -&i
}

/// `B_k(x, v) = ½ (prod (1 - v^{2i+1}) + x prod (1 + v^{2i+1})) / prod (1 - q^{2i+1})`.
pub fn b_refined(k: u32, x: &Coeff) -> Result<RationalLaurent> {
    if !refined_argument(x) {
        return Err(Error::InvalidArgument(format!("B_k(x, v) needs x in {{±1, ±I}}, got {x}")));
    }
    let num = (&odd_v_product(k, -1) + &odd_v_product(k, 1).scale(x)).scale(&Coeff::from_frac(1, 2));
    let den = (0..=k).fold(DenFactors::one(), |d, i| d.with(DenFactor::OneMinusQPow(2 * i + 1), 1));
    Ok(RationalLaurent::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Coeff::from_int(c))))
    }

    #[test]
    fn qbracket_examples() {
        assert!(qbracket(0).is_zero());
        assert!(qbracket(1).is_one());
        assert_eq!(qbracket(3), p(&[(-2, 1), (0, 1), (2, 1)]));
        // exact division of {3} by {1}
        assert_eq!(qbrace(3).div_exact(&qbrace(1)), Some(qbracket(3)));
        assert_eq!(qbracket(-4), -qbracket(4));
    }

    #[test]
    fn pochhammer_examples() {
        assert!(pochhammer(1, 0).is_one());
        assert_eq!(pochhammer(1, 1), p(&[(0, 1), (2, -1)]));
        let want = &p(&[(0, 1), (4, -1)]) * &p(&[(0, 1), (6, -1)]);
        assert_eq!(pochhammer(2, 2), want);
        assert!(pochhammer(-2, 4).is_zero());
    }

    #[test]
    fn odd_poch_examples() {
        assert!(odd_poch(0).is_one());
        assert_eq!(odd_poch(1), &p(&[(0, 1), (3, -1)]) * &p(&[(0, 1), (2, 1)]));
        // (1-v^3)(1-v^5)...(1-v^11) (1+q)...(1+q^5)
        let alt = &(1..=5).map(|i| LaurentPoly::binomial(-1, 2 * i + 1)).product::<LaurentPoly>() * &even_plus_product(5);
        assert_eq!(odd_poch(5), alt);
    }

    #[test]
    fn f_block_examples() {
        let f0 = f_block(0);
        let want = &BiPoly::one_minus_xq(1, 0) * &BiPoly::one_minus_xq(-1, 0);
        assert_eq!(f0, want);
        for k in 0..5 {
            assert!(f_block(k).at_lambda(0).is_zero());
            assert_eq!(f_block(k).x_span(), Some((-(k as i64) - 1, k as i64 + 1)));
        }
        assert_eq!(f_block(2).at_lambda(3), &pochhammer(3, 3) * &pochhammer(-3, 3));
        assert!(!f_block(2).at_lambda(1).is_zero() || pochhammer(-1, 3).is_zero());
    }

    #[test]
    fn b_examples() {
        let b0 = b_rational(0);
        assert_eq!(b0, RationalLaurent::new_unreduced(LaurentPoly::one(), DenFactors::single(DenFactor::OnePlusVOdd(0))));
        let b1 = b_rational(1).mul_poly(&(&p(&[(0, 1), (1, 1)]) * &p(&[(0, 1), (3, 1)])));
        assert_eq!(b1, RationalLaurent::one());

        let one = Coeff::from_int(1);
        let r = b_refined(0, &one).unwrap();
        assert_eq!(r, RationalLaurent::new(LaurentPoly::one(), DenFactors::single(DenFactor::one_minus_q())));
        let minus_i = -Coeff::i();
        let r = b_refined(0, &minus_i).unwrap();
        let num = (&p(&[(0, 1), (1, -1)]) - &p(&[(0, 1), (1, 1)]).scale(&Coeff::i())).scale(&Coeff::from_frac(1, 2));
        assert_eq!(r, RationalLaurent::new(num, DenFactors::single(DenFactor::one_minus_q())));
        assert!(b_refined(0, &Coeff::from_int(2)).is_err());
    }

    #[test]
    fn refined_b_halves_recombine() {
        for k in 0..6 {
            let one = Coeff::from_int(1);
            let want = RationalLaurent::new(
                odd_v_product(k, -1),
                (0..=k).fold(DenFactors::one(), |d, i| d.with(DenFactor::OneMinusQPow(2 * i + 1), 1)),
            );
            let real = &b_refined(k, &one).unwrap() + &b_refined(k, &-&one).unwrap();
            assert_eq!(real, want);
            let imag = &b_refined(k, &Coeff::i()).unwrap() + &b_refined(k, &-Coeff::i()).unwrap();
            assert_eq!(imag, want);
            // the two real halves recombine into B_k(v)
            let prod = odd_v_product(k, -1);
            let _ = prod;
        }
    }
}

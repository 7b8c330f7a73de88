//! Truncated power series in `q - 1` or `v - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::{DenFactor, RationalLaurent};
use crate::coeff::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesVar {
    QMinus1,
    VMinus1,
}

/// `sum_{n <= D} a_n t^n` with `t` one of `q - 1`, `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    var: SeriesVar,
    coeffs: Vec<Coeff>,
}

impl PowerSeries {
    pub fn new(var: SeriesVar, mut coeffs: Vec<Coeff>, degree: usize) -> Self {
        coeffs.resize(degree + 1, Coeff::zero());
        PowerSeries { var, coeffs }
    }

    pub fn zero(var: SeriesVar, degree: usize) -> Self {
        Self::new(var, Vec::new(), degree)
    }

    pub fn one(var: SeriesVar, degree: usize) -> Self {
        Self::new(var, vec![Coeff::one()], degree)
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Coeff {
        self.coeffs.get(n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_integral)
    }

    pub fn is_dyadic(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_dyadic)
    }

    fn check_var(&self, o: &PowerSeries) {
        assert_eq!(self.var, o.var, "series in different variables");
    }

    pub fn add(&self, o: &PowerSeries) -> PowerSeries {
        self.check_var(o);
        let d = self.degree().min(o.degree());
        let coeffs = (0..=d).map(|n| &self.coeffs[n] + &o.coeffs[n]).collect();
        PowerSeries { var: self.var, coeffs }
    }

    /// Product truncated to the smaller degree.
    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        self.check_var(o);
        let d = self.degree().min(o.degree());
        let mut coeffs = vec![Coeff::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d + 1 - i) {
                coeffs[i + j] += &(a * b);
            }
        }
        PowerSeries { var: self.var, coeffs }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Option<PowerSeries> {
        let c0 = self.coeffs[0].inv()?;
        let d = self.degree();
        let mut out = vec![Coeff::zero(); d + 1];
        out[0] = c0.clone();
        for n in 1..=d {
            let mut s = Coeff::zero();
            for k in 1..=n {
                s += &(&self.coeffs[k] * &out[n - k]);
            }
            out[n] = -(&s * &c0);
        }
        Some(PowerSeries { var: self.var, coeffs: out })
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> PowerSeries {
        assert!(inner.coeffs[0].is_zero(), "inner series needs zero constant term");
        let d = self.degree().min(inner.degree());
        let mut acc = PowerSeries::zero(inner.var, d);
        for a in self.coeffs.iter().take(d + 1).rev() {
            acc = acc.mul(&PowerSeries::new(inner.var, inner.coeffs[..=d].to_vec(), d));
            acc.coeffs[0] += a;
        }
        acc
    }
}

/// Generalized binomial coefficient `binom(a, n)` for rational `a`.
pub fn binom_rational(a: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..n {
        acc = acc * (a - BigRational::from_integer(BigInt::from(j))) / BigRational::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// Expansion of a Laurent polynomial in `u = v - 1` through degree `d`.
pub fn expand_v1(p: &LaurentPoly, d: usize) -> PowerSeries {
    let mut coeffs = vec![Coeff::zero(); d + 1];
    for (e, c) in p.terms() {
        let a = BigRational::from_integer(BigInt::from(e));
        for (n, slot) in coeffs.iter_mut().enumerate() {
            let b = binom_rational(&a, n);
            if !b.is_zero() {
                *slot += &(c * &Coeff::real(b));
            }
        }
    }
    PowerSeries { var: SeriesVar::VMinus1, coeffs }
}

/// `v - 1 = sum_{n >= 1} binom(1/2, n) (q - 1)^n`.
pub fn v_minus_one_in_q(d: usize) -> PowerSeries {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let coeffs = (0..=d).map(|n| if n == 0 { Coeff::zero() } else { Coeff::real(binom_rational(&half, n)) }).collect();
    PowerSeries { var: SeriesVar::QMinus1, coeffs }
}

/// Expansion of `f` in `v - 1` through degree `d`.
pub fn laurent_series_v1(f: &RationalLaurent, d: usize) -> Result<PowerSeries> {
    // Each (1 - q^j) has a simple zero at v = 1; divide it out before inverting.
    let mut val = 0usize;
    let mut den = PowerSeries::one(SeriesVar::VMinus1, d);
    for (fac, m) in f.den().iter() {
        let s = expand_v1(&fac.poly(), d + 1);
        let s = match fac {
            DenFactor::OneMinusQPow(_) => {
                val += m as usize;
                PowerSeries { var: SeriesVar::VMinus1, coeffs: s.coeffs[1..].to_vec() }
            }
            DenFactor::OnePlusVOdd(_) => PowerSeries::new(SeriesVar::VMinus1, s.coeffs[..=d].to_vec(), d),
        };
        for _ in 0..m {
            den = den.mul(&s);
        }
    }
    let num = expand_v1(f.num(), d + val);
    if num.coeffs[..val].iter().any(|c| !c.is_zero()) {
        return Err(Error::PoleAtOne);
    }
    let num = PowerSeries { var: SeriesVar::VMinus1, coeffs: num.coeffs[val..].to_vec() };
    let inv = den.inverse().expect("catalog factors are units away from v = 1");
    Ok(num.mul(&inv))
}

/// Taylor expansion of `f` in `q - 1` through degree `d`.
pub fn taylor_v1(f: &RationalLaurent, d: usize) -> Result<PowerSeries> {
    let s = laurent_series_v1(f, d)?;
    let s = PowerSeries { var: SeriesVar::QMinus1, coeffs: s.coeffs };
    Ok(s.compose(&v_minus_one_in_q(d)))
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.var {
            SeriesVar::QMinus1 => "(q-1)",
            SeriesVar::VMinus1 => "(v-1)",
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| if n == 0 { c.to_string() } else { format!("{c}*{t}^{n}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O({t}^{})", self.degree() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::DenFactors;

    #[test]
    fn sqrt_expansion() {
        let s = taylor_v1(&RationalLaurent::from_poly(LaurentPoly::v_pow(1)), 2).unwrap();
        assert_eq!(s.coeffs(), &[Coeff::from_int(1), Coeff::from_frac(1, 2), Coeff::from_frac(-1, 8)]);
    }

    #[test]
    fn removable_pole() {
        let num = &LaurentPoly::one() - &LaurentPoly::v_pow(3);
        let f = RationalLaurent::new_unreduced(num, DenFactors::one());
        let f = f.mul_poly(&LaurentPoly::one());
        let g = RationalLaurent::new_unreduced(LaurentPoly::binomial(-1, 2), DenFactors::single(DenFactor::one_minus_q()));
        assert_eq!(taylor_v1(&g, 3).unwrap(), PowerSeries::one(SeriesVar::QMinus1, 3));
        assert!(taylor_v1(&RationalLaurent::new_unreduced(LaurentPoly::one(), DenFactors::single(DenFactor::one_minus_q())), 2).is_err());
        // (1 - v^3)/(1 - v) at v = 1 is [3] = 3, via (1 - v^3)(1 + v)/(1 - q)
        let h = RationalLaurent::new_unreduced(&f.num().clone() * &LaurentPoly::binomial(1, 1), DenFactors::single(DenFactor::one_minus_q()));
        assert_eq!(taylor_v1(&h, 0).unwrap().coeff(0), Coeff::from_int(3));
    }

    #[test]
    fn inverse_and_compose() {
        let s = PowerSeries::new(SeriesVar::QMinus1, vec![Coeff::from_int(1), Coeff::from_int(1)], 5);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), PowerSeries::one(SeriesVar::QMinus1, 5));
        let t = PowerSeries::new(SeriesVar::QMinus1, vec![Coeff::zero(), Coeff::from_int(1)], 5);
        assert_eq!(s.compose(&t), s);
    }
}

//! Laurent polynomials in the colour variable `x = q^λ` and in `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::laurent::LaurentPoly;
use crate::coeff::Coeff;

/// `sum c_{a,e} x^a v^e` with `x = q^λ`, stored as `x`-exponent -> `v`-polynomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<i64, LaurentPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_v_poly(LaurentPoly::one())
    }

    pub fn from_v_poly(p: LaurentPoly) -> Self {
        Self::x_pow_times(0, p)
    }

    /// `x^a * p(v)`.
    pub fn x_pow_times(a: i64, p: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(a, p);
        }
        BiPoly { terms }
    }

    /// `c * x^a * v^e`.
    pub fn monomial(c: Coeff, a: i64, e: i64) -> Self {
        Self::x_pow_times(a, LaurentPoly::monomial(c, e))
    }

    /// `1 - x^a q^s`, the building block of `(q^{±λ}; q)_k`.
    pub fn one_minus_xq(a: i64, s: i64) -> Self {
        &BiPoly::one() - &BiPoly::monomial(Coeff::from_int(1), a, 2 * s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(a, v-polynomial coefficient of x^a)`.
    pub fn x_terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(a, p)| (*a, p))
    }

    /// Iterate every monomial `(a, e, c)`.
    pub fn monomials(&self) -> impl Iterator<Item = (i64, i64, &Coeff)> + '_ {
        self.terms.iter().flat_map(|(a, p)| p.terms().map(move |(e, c)| (*a, e, c)))
    }

    /// Range of `x`-exponents, `None` for zero.
    pub fn x_span(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    fn add_x_term(&mut self, a: i64, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_default();
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    /// Substitute a concrete colour: `x -> v^{2 λ}`.
    pub fn at_lambda(&self, lambda: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, p) in &self.terms {
            let s = a.checked_mul(2 * lambda).expect("exponent overflow");
            out = out + p.shift(s);
        }
        out
    }

    /// Apply a function to every `v`-coefficient polynomial.
    pub fn map_v<F: Fn(&LaurentPoly) -> LaurentPoly>(&self, f: F) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, p) in &self.terms {
            out.add_x_term(*a, &f(p));
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        self.map_v(|p| p.scale(c))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (a, p) in &o.terms {
            out.add_x_term(*a, p);
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, o: BiPoly) -> BiPoly {
        &self + &o
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (a, p) in &o.terms {
            out.add_x_term(*a, &-p);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.map_v(|p| -p)
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, p) in &self.terms {
            for (b, r) in &o.terms {
                out.add_x_term(a.checked_add(*b).expect("exponent overflow"), &(p * r));
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, o: BiPoly) -> BiPoly {
        &self * &o
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "BiPoly(")?;
        for (a, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "x^{a}*({p})")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

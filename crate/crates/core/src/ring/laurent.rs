//! Sparse Laurent polynomials in `v`, with `q = v^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::Coeff;

/// A Laurent polynomial `sum c_e v^e` stored sparsely, with no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Coeff>,
}

fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("v-exponent overflow")
}

fn mul_exp(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("v-exponent overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Coeff::from_int(n))
    }

    /// `c * v^e`.
    pub fn monomial(c: Coeff, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(Coeff::one(), e)
    }

    /// `q^e = v^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Self::v_pow(mul_exp(2, e))
    }

    /// `1 + s * v^e` for a sign `s`.
    pub fn binomial(sign: i64, e: i64) -> Self {
        Self::from_terms([(0, Coeff::one()), (e, Coeff::from_int(sign))])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Coeff {
        self.terms.get(&e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is even, i.e. the polynomial lies in `Q[q^{±1}]`.
    pub fn is_in_q(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Coeff::is_real)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(Coeff::is_integral)
    }

    pub fn real_part(&self) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, Coeff::real(c.re.clone()))))
    }

    pub fn imag_part(&self) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, Coeff::real(c.im.clone()))))
    }

    pub fn scale(&self, c: &Coeff) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> LaurentPoly {
        self.scale(&Coeff::from_int(k))
    }

    /// Multiply by `v^s`.
    pub fn shift(&self, s: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (add_exp(*e, s), c.clone())).collect() }
    }

    /// Substitution `v -> -v`.
    pub fn neg_v(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Substitution `v -> v^{-1}` (equivalently `q -> q^{-1}` on `Q[q^{±1}]`).
    pub fn inv_v(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitution `I -> -I` on coefficients.
    pub fn conj_i(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in `Q(I)[v^{±1}]` or the divisor is zero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let dmin = divisor.min_exp().unwrap();
        let dmax = divisor.max_exp().unwrap();
        if dmin == dmax {
            let inv = divisor.terms[&dmin].inv()?;
            return Some(self.scale(&inv).shift(-dmin));
        }
        let nmin = self.min_exp().unwrap();
        let nmax = self.max_exp().unwrap();
        let ddeg = (dmax - dmin) as usize;
        let ndeg = (nmax - nmin) as usize;
        if ndeg < ddeg {
            return None;
        }
        // Dense long division on the normalized polynomials, top-down.
        let mut rem: Vec<Coeff> = vec![Coeff::zero(); ndeg + 1];
        for (e, c) in &self.terms {
            rem[(e - nmin) as usize] = c.clone();
        }
        let dv: Vec<(usize, &Coeff)> = divisor.terms.iter().map(|(e, c)| ((e - dmin) as usize, c)).collect();
        let lead = divisor.terms[&dmax].clone();
        let lead_is_one = lead.is_one();
        let lead_inv = lead.inv()?;
        let qdeg = ndeg - ddeg;
        let mut quot: Vec<Coeff> = vec![Coeff::zero(); qdeg + 1];
        for i in (0..=qdeg).rev() {
            let top = &rem[i + ddeg];
            if top.is_zero() {
                continue;
            }
            let t = if lead_is_one { top.clone() } else { top * &lead_inv };
            for (j, c) in &dv {
                let prod = &t * c;
                rem[i + j] -= &prod;
            }
            quot[i] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let off = nmin - dmin;
        Some(LaurentPoly::from_terms(quot.into_iter().enumerate().map(|(i, c)| (i as i64 + off, c))))
    }

    /// Checked exact division that panics with context when not exact.
    pub fn div_exact_or_panic(&self, divisor: &LaurentPoly, ctx: &str) -> LaurentPoly {
        self.div_exact(divisor).unwrap_or_else(|| panic!("inexact division: {ctx}"))
    }

    /// Value at `v = 1` (sum of coefficients).
    pub fn eval_at_one(&self) -> Coeff {
        let mut s = Coeff::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }
}

fn mul_polys(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    if a.terms.len() == 1 {
        let (e, c) = a.terms.iter().next().unwrap();
        return b.scale(c).shift(*e);
    }
    if b.terms.len() == 1 {
        let (e, c) = b.terms.iter().next().unwrap();
        return a.scale(c).shift(*e);
    }
    let lo = add_exp(a.min_exp().unwrap(), b.min_exp().unwrap());
    let hi = add_exp(a.max_exp().unwrap(), b.max_exp().unwrap());
    let span = (hi - lo) as usize + 1;
    let pairs = a.terms.len().saturating_mul(b.terms.len());
    if span <= pairs.saturating_mul(4) {
        let mut acc: Vec<Coeff> = vec![Coeff::zero(); span];
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let idx = (ea + eb - lo) as usize;
                let p = ca * cb;
                acc[idx] += &p;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + lo, c))
            .collect();
        LaurentPoly { terms }
    } else {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        mul_polys(self, o)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        mul_polys(&self, &o)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_laurent(self))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

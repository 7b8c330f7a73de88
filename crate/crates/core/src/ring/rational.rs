//! Quotients of Laurent polynomials by products of catalog factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::coeff::Coeff;

/// Denominator factors admitted by [`RationalLaurent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DenFactor {
    /// `1 - q^j`, `j >= 1`.
    OneMinusQPow(u32),
    /// `1 + v^{2i+1}`, `i >= 0`.
    OnePlusVOdd(u32),
}

impl DenFactor {
    pub fn one_minus_q() -> Self {
        DenFactor::OneMinusQPow(1)
    }

    pub fn poly(&self) -> LaurentPoly {
        match *self {
            DenFactor::OneMinusQPow(j) => LaurentPoly::binomial(-1, 2 * j as i64),
            DenFactor::OnePlusVOdd(i) => LaurentPoly::binomial(1, 2 * i as i64 + 1),
        }
    }

    /// Whether the factor vanishes at `v = 1`.
    pub fn vanishes_at_one(&self) -> bool {
        matches!(self, DenFactor::OneMinusQPow(_))
    }
}

impl fmt::Display for DenFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenFactor::OneMinusQPow(1) => write!(f, "(1-q)"),
            DenFactor::OneMinusQPow(j) => write!(f, "(1-q^{j})"),
            DenFactor::OnePlusVOdd(i) => write!(f, "(1+v^{})", 2 * i + 1),
        }
    }
}

/// A product of catalog factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DenFactors(BTreeMap<DenFactor, u32>);

impl DenFactors {
    pub fn one() -> Self {
        DenFactors(BTreeMap::new())
    }

    pub fn single(f: DenFactor) -> Self {
        Self::one().with(f, 1)
    }

    pub fn with(mut self, f: DenFactor, mult: u32) -> Self {
        if mult > 0 {
            *self.0.entry(f).or_insert(0) += mult;
        }
        self
    }

    /// `(q^s; q)_k = prod_{j=0}^{k-1} (1 - q^{s+j})` for `s >= 1`.
    pub fn pochhammer(s: u32, k: u32) -> Self {
        assert!(s >= 1 || k == 0, "pochhammer denominator needs s >= 1");
        (0..k).fold(Self::one(), |d, j| d.with(DenFactor::OneMinusQPow(s + j), 1))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (DenFactor, u32)> + '_ {
        self.0.iter().map(|(f, m)| (*f, *m))
    }

    pub fn multiplicity(&self, f: DenFactor) -> u32 {
        self.0.get(&f).copied().unwrap_or(0)
    }

    pub fn product(&self, other: &DenFactors) -> DenFactors {
        let mut out = self.clone();
        for (f, m) in other.iter() {
            out = out.with(f, m);
        }
        out
    }

    /// Least common multiple as factor multisets.
    pub fn lcm(&self, other: &DenFactors) -> DenFactors {
        let mut out = self.clone();
        for (f, m) in other.iter() {
            let e = out.0.entry(f).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    /// `self / other`, assuming `other` divides `self` as multisets.
    fn quotient(&self, other: &DenFactors) -> DenFactors {
        let mut out = self.clone();
        for (f, m) in other.iter() {
            let e = out.0.get_mut(&f).expect("factor multiset is not a divisor");
            assert!(*e >= m, "factor multiset is not a divisor");
            *e -= m;
            if *e == 0 {
                out.0.remove(&f);
            }
        }
        out
    }

    pub fn poly(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for (f, m) in self.iter() {
            acc = &acc * &f.poly().pow(m);
        }
        acc
    }
}

impl fmt::Display for DenFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(d, m)| if m == 1 { d.to_string() } else { format!("{d}^{m}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `num / den` with `den` kept in factored form.
///
/// The normal form has no catalog factor of `den` dividing `num`. Equality is
/// decided by cross-multiplication, so two values compare equal even when
/// their stored factorizations differ.
#[derive(Clone)]
pub struct RationalLaurent {
    num: LaurentPoly,
    den: DenFactors,
}

impl RationalLaurent {
    pub fn new(num: LaurentPoly, den: DenFactors) -> Self {
        let mut r = RationalLaurent { num, den };
        r.normalize();
        r
    }

    /// Build without cancelling common factors.
    pub fn new_unreduced(num: LaurentPoly, den: DenFactors) -> Self {
        RationalLaurent { num, den }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalLaurent { num, den: DenFactors::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &DenFactors {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial itself when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Cancel every catalog factor of the denominator that divides the numerator.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = DenFactors::one();
            return;
        }
        let factors: Vec<(DenFactor, u32)> = self.den.iter().collect();
        for (f, m) in factors {
            let fp = f.poly();
            for _ in 0..m {
                match self.num.div_exact(&fp) {
                    Some(q) => {
                        self.num = q;
                        self.den = self.den.quotient(&DenFactors::single(f));
                    }
                    None => break,
                }
            }
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Divide by additional catalog factors.
    pub fn div_factors(&self, extra: &DenFactors) -> RationalLaurent {
        RationalLaurent { num: self.num.clone(), den: self.den.product(extra) }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RationalLaurent {
        RationalLaurent { num: &self.num * p, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> RationalLaurent {
        RationalLaurent { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg_v(&self) -> Option<RationalLaurent> {
        // v -> -v maps (1 - q^j) to itself; (1 + v^{2i+1}) would leave the catalog.
        if self.den.iter().any(|(f, _)| matches!(f, DenFactor::OnePlusVOdd(_))) {
            return None;
        }
        Some(RationalLaurent { num: self.num.neg_v(), den: self.den.clone() })
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &RationalLaurent) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let l = self.den.lcm(&other.den);
        let a = &self.num * &l.quotient(&self.den).poly();
        let b = &other.num * &l.quotient(&other.den).poly();
        a == b
    }

    fn add_impl(&self, other: &RationalLaurent, sign: i64) -> RationalLaurent {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign < 0 { -other } else { other.clone() };
        }
        let l = self.den.lcm(&other.den);
        let a = if l == self.den { self.num.clone() } else { &self.num * &l.quotient(&self.den).poly() };
        let b = if l == other.den { other.num.clone() } else { &other.num * &l.quotient(&other.den).poly() };
        let num = if sign < 0 { a - b } else { a + b };
        RationalLaurent { num, den: l }
    }
}

impl PartialEq for RationalLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<'a> Add<&'a RationalLaurent> for &'a RationalLaurent {
    type Output = RationalLaurent;
    fn add(self, o: &RationalLaurent) -> RationalLaurent {
        self.add_impl(o, 1)
    }
}

impl Add for RationalLaurent {
    type Output = RationalLaurent;
    fn add(self, o: RationalLaurent) -> RationalLaurent {
        self.add_impl(&o, 1)
    }
}

impl<'a> Sub<&'a RationalLaurent> for &'a RationalLaurent {
    type Output = RationalLaurent;
    fn sub(self, o: &RationalLaurent) -> RationalLaurent {
        self.add_impl(o, -1)
    }
}

impl Sub for RationalLaurent {
    type Output = RationalLaurent;
    fn sub(self, o: RationalLaurent) -> RationalLaurent {
        self.add_impl(&o, -1)
    }
}

impl<'a> Mul<&'a RationalLaurent> for &'a RationalLaurent {
    type Output = RationalLaurent;
    fn mul(self, o: &RationalLaurent) -> RationalLaurent {
        RationalLaurent { num: &self.num * &o.num, den: self.den.product(&o.den) }
    }
}

impl Mul for RationalLaurent {
    type Output = RationalLaurent;
    fn mul(self, o: RationalLaurent) -> RationalLaurent {
        &self * &o
    }
}

impl Neg for &RationalLaurent {
    type Output = RationalLaurent;
    fn neg(self) -> RationalLaurent {
        RationalLaurent { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalLaurent {
    type Output = RationalLaurent;
    fn neg(self) -> RationalLaurent {
        RationalLaurent { num: -self.num, den: self.den }
    }
}

impl From<LaurentPoly> for RationalLaurent {
    fn from(p: LaurentPoly) -> Self {
        RationalLaurent::from_poly(p)
    }
}

impl fmt::Debug for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.num, self.den)
    }
}

impl fmt::Display for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

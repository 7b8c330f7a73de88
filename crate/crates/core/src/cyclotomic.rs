//! Cyclotomic fields `Q(ω)`, `ω` a primitive `L`-th root of unity, and the
//! evaluation maps of Laurent and rational-Laurent functions at roots of unity.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::coeff::{is_power_of_two, Coeff};
use crate::error::{Error, Result};
use crate::ring::{DenFactor, LaurentPoly, RationalLaurent};

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn int_poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic polynomial; panics if not exact.
fn int_poly_div_monic(a: &IntPoly, d: &IntPoly) -> IntPoly {
    let mut rem = a.clone();
    let dd = d.len() - 1;
    if rem.len() <= dd {
        panic!("division is not exact");
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let t = rem[i + dd].clone();
        if t.is_zero() {
            continue;
        }
        for (j, c) in d.iter().enumerate() {
            rem[i + j] -= &t * c;
        }
        quot[i] = t;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division is not exact");
    quot
}

/// `Φ_n`, computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = int_poly_div_monic(&p, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Q[x] / Φ_L` together with the residues of `x^j`, `0 <= j < L`.
#[derive(Debug)]
pub struct CycField {
    l: u64,
    phi: IntPoly,
    degree: usize,
    powers: Vec<Vec<BigInt>>,
}

impl CycField {
    pub fn new(l: u64) -> Arc<CycField> {
        let phi = cyclotomic_poly(l);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(l as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..l {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow with x^d = -sum phi_i x^i
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi[i];
                }
            }
        }
        Arc::new(CycField { l, phi, degree, powers })
    }

    pub fn order(&self) -> u64 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    fn power(&self, j: i64) -> &[BigInt] {
        &self.powers[j.rem_euclid(self.l as i64) as usize]
    }
}

/// An element of `Q(ω)` in canonical form `num / den`: `den > 0` and
/// `gcd(num_0, ..., num_{d-1}, den) = 1`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(field: &Arc<CycField>, num: Vec<BigInt>, den: BigInt) -> CycNum {
        let mut z = CycNum { field: field.clone(), num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(field: &Arc<CycField>) -> CycNum {
        CycNum { field: field.clone(), num: vec![BigInt::zero(); field.degree], den: BigInt::one() }
    }

    pub fn one(field: &Arc<CycField>) -> CycNum {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> CycNum {
        let mut z = Self::zero(field);
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(field: &Arc<CycField>, r: &BigRational) -> CycNum {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = r.numer().clone();
        Self::from_parts(field, num, r.denom().clone())
    }

    /// `ω^j` for any integer `j`.
    pub fn omega_pow(field: &Arc<CycField>, j: i64) -> CycNum {
        CycNum { field: field.clone(), num: field.power(j).to_vec(), den: BigInt::one() }
    }

    /// Build from rational coefficients of `1, ω, ..., ω^{n-1}` for any `n`.
    pub fn from_power_coeffs(field: &Arc<CycField>, coeffs: &[BigRational]) -> CycNum {
        let mut den = BigInt::one();
        for c in coeffs {
            if !c.is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let mut num = vec![BigInt::zero(); field.degree];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (slot, p) in num.iter_mut().zip(field.power(j as i64)) {
                if !p.is_zero() {
                    *slot += &scaled * p;
                }
            }
        }
        Self::from_parts(field, num, den)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Residue coefficients in the power basis `1, ω, ..., ω^{d-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// All coefficient denominators are powers of two.
    pub fn is_dyadic(&self) -> bool {
        is_power_of_two(&self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn same_field(&self, o: &CycNum) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field.l == o.field.l,
            "cyclotomic numbers from different fields"
        );
    }

    fn add_impl(&self, o: &CycNum, sign: i64) -> CycNum {
        self.same_field(o);
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| if sign > 0 { a + b } else { a - b }).collect();
            return Self::from_parts(&self.field, num, self.den.clone());
        }
        let den = self.den.lcm(&o.den);
        let fa = &den / &self.den;
        let fb = &den / &o.den;
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| if sign > 0 { a * &fa + b * &fb } else { a * &fa - b * &fb })
            .collect();
        Self::from_parts(&self.field, num, den)
    }

    fn mul_impl(&self, o: &CycNum) -> CycNum {
        self.same_field(o);
        let d = self.field.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = wide[..d].to_vec();
        for (j, c) in wide.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(self.field.power(j as i64)) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        Self::from_parts(&self.field, num, &self.den * &o.den)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(&self.field, num, &self.den * r.denom())
    }

    /// Multiply by `ω^j`.
    pub fn mul_omega_pow(&self, j: i64) -> CycNum {
        self.mul_impl(&Self::omega_pow(&self.field, j))
    }

    /// Inverse via the extended Euclidean algorithm on the representative and `Φ_L`.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = self.field.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let inv = qpoly_inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_power_coeffs(&self.field, &inv))
    }

    pub fn pow(&self, n: i64) -> Result<CycNum> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = CycNum::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Complex value with `ω = exp(2πi / L)`.
    pub fn approx(&self) -> (f64, f64) {
        let l = self.field.l as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs().iter().enumerate() {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / l;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    pub fn to_json(&self) -> Value {
        let (re, im) = self.approx();
        json!({
            "L": self.field.l,
            "coeffs": self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "approx": [format!("{re:.12}"), format!("{im:.12}")],
        })
    }
}

fn qpoly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_sub_scaled_shift(a: &mut Vec<BigRational>, b: &[BigRational], c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, x) in b.iter().enumerate() {
        a[i + shift] -= c * x;
    }
}

/// Inverse of `a` modulo `m` in `Q[x]`, `None` when they are not coprime.
fn qpoly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0: Vec<BigRational> = m.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    qpoly_trim(&mut r0);
    qpoly_trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        // (r0, s0) <- (r0 - t r1, s0 - t s1) until deg r0 < deg r1, then swap
        while r0.len() >= r1.len() && !r0.is_empty() {
            let shift = r0.len() - r1.len();
            let c = r0.last().unwrap() / r1.last().unwrap();
            qpoly_sub_scaled_shift(&mut r0, &r1, &c, shift);
            qpoly_sub_scaled_shift(&mut s0, &s1, &c, shift);
            qpoly_trim(&mut r0);
            qpoly_trim(&mut s0);
        }
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
    }
    // r0 is the gcd, s0 * a = r0 (mod m)
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.iter().map(|x| x / &c).collect())
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.add_impl(o, 1)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        self.add_impl(&o, 1)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.add_impl(o, -1)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        self.add_impl(&o, -1)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.mul_impl(o)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        self.mul_impl(&o)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        self.field.l == o.field.l && self.den == o.den && self.num == o.num
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{j}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[L={}]({self})", self.field.l)
    }
}

/// Roots of unity for an order `r`: `ω` of order `4r`, `ξ = ω^4`, and the
/// square root `ζ` of `ξ` used by the evaluation map.
#[derive(Clone, Debug)]
pub struct RootSystem {
    r: u64,
    field: Arc<CycField>,
    zeta_exp: i64,
    two_star: Option<u64>,
    i_exp: Option<i64>,
}

pub fn make_root_system(r: u64) -> RootSystem {
    RootSystem::new(r)
}

impl RootSystem {
    pub fn new(r: u64) -> RootSystem {
        assert!(r >= 1, "order must be positive");
        let l = 4 * r;
        let field = CycField::new(l);
        let (zeta_exp, two_star) = if r % 2 == 1 {
            let ts = (r + 1) / 2;
            (((4 * ts) % l) as i64, Some(ts % r.max(1)))
        } else {
            (2, None)
        };
        let mut rs = RootSystem { r, field, zeta_exp, two_star, i_exp: None };
        let ord = rs.zeta_order();
        if ord % 4 == 0 {
            rs.i_exp = Some(zeta_exp * (ord / 4) as i64);
        }
        rs
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn two_star(&self) -> Option<u64> {
        self.two_star
    }

    /// `ζ = ω^s`.
    pub fn zeta_exp(&self) -> i64 {
        self.zeta_exp
    }

    pub fn zeta_order(&self) -> u64 {
        if self.r % 2 == 1 {
            self.r
        } else {
            2 * self.r
        }
    }

    pub fn omega(&self) -> CycNum {
        CycNum::omega_pow(&self.field, 1)
    }

    pub fn xi(&self) -> CycNum {
        CycNum::omega_pow(&self.field, 4)
    }

    pub fn zeta(&self) -> CycNum {
        CycNum::omega_pow(&self.field, self.zeta_exp)
    }

    pub fn i_value(&self) -> Option<CycNum> {
        self.i_exp.map(|e| CycNum::omega_pow(&self.field, e))
    }

    pub fn zero(&self) -> CycNum {
        CycNum::zero(&self.field)
    }

    pub fn one(&self) -> CycNum {
        CycNum::one(&self.field)
    }

    pub fn int(&self, n: i64) -> CycNum {
        CycNum::from_int(&self.field, n)
    }

    pub fn omega_pow(&self, j: i64) -> CycNum {
        CycNum::omega_pow(&self.field, j)
    }

    /// `ev(f)` for a Laurent polynomial: `v -> ζ`, `I -> ζ^{ord ζ / 4}`.
    pub fn ev_poly(&self, p: &LaurentPoly) -> Result<CycNum> {
        let l = self.field.l as i64;
        let mut buckets = vec![BigRational::zero(); l as usize];
        for (e, c) in p.terms() {
            let j = ((e as i128 * self.zeta_exp as i128).rem_euclid(l as i128)) as usize;
            if !c.re.is_zero() {
                buckets[j] += &c.re;
            }
            if !c.im.is_zero() {
                let ie = self.i_exp.ok_or(Error::MissingI)?;
                let k = (j as i64 + ie).rem_euclid(l) as usize;
                buckets[k] += &c.im;
            }
        }
        Ok(CycNum::from_power_coeffs(&self.field, &buckets))
    }

    pub fn ev_coeff(&self, c: &Coeff) -> Result<CycNum> {
        self.ev_poly(&LaurentPoly::constant(c.clone()))
    }

    /// `ev(f)` for a rational-Laurent function; errors on a vanishing denominator.
    pub fn ev(&self, f: &RationalLaurent) -> Result<CycNum> {
        let num = self.ev_poly(f.num())?;
        if f.den().is_one() || num.is_zero() {
            return Ok(num);
        }
        let mut den = self.one();
        for (fac, m) in f.den().iter() {
            let d = self.ev_poly(&fac.poly())?;
            if d.is_zero() {
                return Err(Error::Pole(format!("{fac} vanishes at r = {}", self.r)));
            }
            den = &den * &d.pow(m as i64)?;
        }
        Ok(&num * &den.inverse()?)
    }

    /// Whether a catalog factor is nonzero at this root.
    pub fn factor_is_unit(&self, f: DenFactor) -> bool {
        self.ev_poly(&f.poly()).map(|z| !z.is_zero()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), ip(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert_eq!(cyclotomic_poly(105)[7], BigInt::from(-2));
    }

    #[test]
    fn root_systems() {
        let rs = RootSystem::new(1);
        assert!(rs.xi().is_one());
        assert!(rs.zeta().is_one());
        assert_eq!(&rs.omega() * &rs.omega(), rs.int(-1));

        let rs = RootSystem::new(3);
        assert_eq!(rs.two_star(), Some(2));
        assert_eq!(rs.zeta(), rs.xi().pow(2).unwrap());
        assert_eq!(&rs.zeta() * &rs.zeta(), rs.xi());

        let rs = RootSystem::new(4);
        assert_eq!(rs.zeta_order(), 8);
        assert_eq!(rs.zeta(), rs.omega_pow(2));
        let i = rs.i_value().unwrap();
        assert_eq!(&i * &i, rs.int(-1));
        assert!(RootSystem::new(5).i_value().is_none());
    }

    #[test]
    fn inverses() {
        let rs = RootSystem::new(3);
        assert_eq!(rs.one().inverse().unwrap(), rs.one());
        assert_eq!(rs.omega().inverse().unwrap(), rs.omega_pow(11));
        let z = &rs.one() + &rs.zeta();
        assert!((&z * &z.inverse().unwrap()).is_one());
        assert_eq!(rs.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let rs = RootSystem::new(5);
        assert_eq!(rs.ev_poly(&LaurentPoly::from_int(7)).unwrap(), rs.int(7));
        assert_eq!(rs.ev_poly(&LaurentPoly::v_pow(1)).unwrap(), rs.xi().pow(3).unwrap());
        assert_eq!(rs.ev_poly(&LaurentPoly::constant(Coeff::i())), Err(Error::MissingI));

        let rs = RootSystem::new(4);
        let f = RationalLaurent::new_unreduced(LaurentPoly::one(), crate::ring::DenFactors::single(DenFactor::OnePlusVOdd(0)));
        let want = (&rs.one() + &rs.omega_pow(2)).inverse().unwrap();
        assert_eq!(rs.ev(&f).unwrap(), want);
        let g = RationalLaurent::new_unreduced(LaurentPoly::one(), crate::ring::DenFactors::single(DenFactor::OneMinusQPow(4)));
        assert!(matches!(rs.ev(&g), Err(Error::Pole(_))));
    }

    #[test]
    fn json_shape() {
        let rs = RootSystem::new(2);
        let v = rs.omega().to_json();
        assert_eq!(v["L"], 8);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 4);
        assert_eq!(v["approx"][0], "0.707106781187");
    }
}

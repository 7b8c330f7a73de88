//! Unified invariants as truncated Habiro-type series, their evaluation at
//! roots of unity and their Ohtsuki expansion.

use std::collections::BTreeMap;

use rayon::prelude::*;

use num_traits::Zero;

use crate::coeff::Coeff;
use crate::cyclotomic::{CycNum, RootSystem};
use crate::error::{Error, Result};
use crate::laplace::{coho_chi, spin_chi};
use crate::ring::qcomb::{b_rational, b_refined, habiro_window, habiro_window_den, odd_poch, sign};
use crate::ring::series::{taylor_v1, PowerSeries, SeriesVar};
use crate::ring::{DenFactor, DenFactors, LaurentPoly, RationalLaurent};
use crate::surgery::{Framing, StructureKind, StructureVector, SurgeryPresentation};

/// The completion a series is meant to live in; decides where it may be evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    ZHabiro,
    TwoTorsion,
    Spin,
    Coho,
}

impl RingTag {
    pub fn name(self) -> &'static str {
        match self {
            RingTag::ZHabiro => "Z[q]^",
            RingTag::TwoTorsion => "Gamma^S",
            RingTag::Spin => "Gamma^T",
            RingTag::Coho => "Gamma^S2",
        }
    }

    /// Whether evaluation at `rs` is defined for this ring.
    pub fn admits(self, rs: &RootSystem) -> Result<()> {
        match self {
            // ord ζ is odd or divisible by 4, never 2 mod 4
            RingTag::ZHabiro | RingTag::TwoTorsion => Ok(()),
            RingTag::Spin => spin_chi(rs).map(|_| ()),
            RingTag::Coho => coho_chi(rs).map(|_| ()),
        }
    }
}

/// One term with its vanishing certificate: the indices `j` of the window
/// `k+1..=2k+1` for which `1 - q^j` divides `num * u`, where `u` is a product
/// of factors that are units at every admissible root of order `r >= 2`:
/// `(1-q)^m (1-v) prod_{i<=k} (1+v^{2i+1})^t` and the denominator itself.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub k: u32,
    pub value: RationalLaurent,
    pub certificate: Vec<u32>,
}

impl SeriesTerm {
    fn new(k: u32, value: RationalLaurent, shape: Shape) -> SeriesTerm {
        let value = value.normalized();
        let certificate = if value.is_zero() {
            (k + 1..=2 * k + 1).collect()
        } else {
            let mut u = &DenFactor::one_minus_q().poly().pow(shape.m as u32) * &LaurentPoly::binomial(-1, 1);
            for i in 0..=k {
                u = &u * &DenFactor::OnePlusVOdd(i).poly().pow(shape.t as u32);
            }
            let n = &(value.num() * &u) * &value.den().poly();
            (k + 1..=2 * k + 1).filter(|&j| n.div_exact(&DenFactor::OneMinusQPow(j).poly()).is_some()).collect()
        };
        SeriesTerm { k, value, certificate }
    }

    /// Whether the certificate proves the term vanishes at `rs`.
    pub fn vanishes_at(&self, rs: &RootSystem) -> bool {
        if self.value.is_zero() {
            return true;
        }
        rs.r() >= 2
            && self.value.den().iter().all(|(f, _)| rs.factor_is_unit(f))
            && self.certificate.iter().any(|&j| j as u64 % rs.r() == 0)
    }

    /// The full window divides the numerator.
    pub fn window_certified(&self) -> bool {
        self.certificate.len() == self.k as usize + 1
    }
}

/// Number of components `m` and of 2-framed ones `t`, which fix the unit
/// multiplier of the certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    m: usize,
    t: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HabiroSeries {
    terms: Vec<SeriesTerm>,
    truncation: u32,
    tag: RingTag,
    shape: Shape,
}

impl HabiroSeries {
    /// The constant series `1`.
    pub fn one(truncation: u32, tag: RingTag) -> HabiroSeries {
        let shape = Shape { m: 0, t: 0 };
        let terms = (0..truncation)
            .map(|k| SeriesTerm::new(k, if k == 0 { RationalLaurent::one() } else { RationalLaurent::zero() }, shape))
            .collect();
        HabiroSeries { terms, truncation, tag, shape }
    }

    pub fn terms(&self) -> &[SeriesTerm] {
        &self.terms
    }

    pub fn term(&self, k: u32) -> Option<&RationalLaurent> {
        self.terms.get(k as usize).map(|t| &t.value)
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    /// Termwise comparison through index `k_max` (inclusive).
    pub fn termwise_eq(&self, other: &HabiroSeries, k_max: u32) -> bool {
        (0..=k_max).all(|k| match (self.term(k), other.term(k)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }

    /// Termwise sum; the result keeps the smaller truncation.
    pub fn add(&self, other: &HabiroSeries, tag: RingTag) -> HabiroSeries {
        let truncation = self.truncation.min(other.truncation);
        let shape = Shape { m: self.shape.m.max(other.shape.m), t: self.shape.t.max(other.shape.t) };
        let terms = (0..truncation as usize)
            .map(|k| SeriesTerm::new(k as u32, &self.terms[k].value + &other.terms[k].value, shape))
            .collect();
        HabiroSeries { terms, truncation, tag, shape }
    }
}

/// Default truncation for a target order.
pub fn default_truncation(r: u64) -> u32 {
    2 * r as u32 + 2
}

/// Per-component weight `g_i(j)` in front of the table entry.
#[derive(Clone, Copy, Debug)]
enum Weight {
    Plain,
    /// spin (`x = ±1`) or coho (`x = ±I`) refinement with `c_i`
    Refined(StructureKind, u8),
}

fn refined_x(kind: StructureKind, c: u8, j: u32, plus: bool) -> Coeff {
    let e = c as i64 + if plus { j as i64 } else { 1 };
    match kind {
        StructureKind::Spin => Coeff::from_int(sign(e)),
        StructureKind::Coho => Coeff::i().scale_int(-sign(e)),
    }
}

fn g_weight(f: Framing, w: Weight, j: u32) -> Result<RationalLaurent> {
    let jj = j as i64;
    let v_neg = || LaurentPoly::v_pow(-jj).scale_int(sign(jj));
    Ok(match (f, w) {
        (Framing::PlusOne, _) => RationalLaurent::from_poly(LaurentPoly::q_pow(-jj * (jj + 3) / 2).scale_int(sign(jj))),
        (Framing::MinusOne, _) => RationalLaurent::one(),
        (Framing::PlusTwo, Weight::Plain) => b_rational(j).mul_poly(&v_neg()),
        (Framing::MinusTwo, Weight::Plain) => b_rational(j),
        (Framing::PlusTwo, Weight::Refined(kind, c)) => b_refined(j, &refined_x(kind, c, j, true))?.mul_poly(&v_neg()),
        (Framing::MinusTwo, Weight::Refined(kind, c)) => b_refined(j, &refined_x(kind, c, j, false))?,
    })
}

/// All index tuples of one factor with `max = k` and a nonzero entry.
fn factor_support(p: &SurgeryPresentation, f: usize, k: u32) -> Vec<(Vec<u32>, RationalLaurent)> {
    p.table().factors()[f].entries_at(k)
}

/// Shared construction: `(1+v)^t (1-q)^{-m} sum_{max k = k} prod_f D_f prod_i h_i(k_i)`.
fn build(p: &SurgeryPresentation, weights: &[Weight], truncation: u32, tag: RingTag) -> Result<HabiroSeries> {
    let m = p.arity();
    let table = p.table();
    let nf = table.factors().len();
    let framings = p.framings();
    let shape = Shape { m, t: p.h1_rank() };
    // h_i(j) = (q^{j+1})_{j+1} g_i(j)
    let h: Vec<Vec<RationalLaurent>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..truncation)
                .map(|j| Ok(g_weight(framings[i], weights[i], j)?.mul_poly(&habiro_window(j)).normalized()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // E_f(k): contributions of factor f with local max exactly k
    let e: Vec<Vec<RationalLaurent>> = (0..nf)
        .map(|f| {
            let comps = table.components_of(f);
            (0..truncation)
                .into_par_iter()
                .map(|k| {
                    let mut acc = RationalLaurent::zero();
                    for (idx, d) in factor_support(p, f, k) {
                        let mut t = d;
                        for (&ki, &i) in idx.iter().zip(&comps) {
                            t = &t * &h[i][ki as usize];
                        }
                        acc = &acc + &t;
                    }
                    acc.normalized()
                })
                .collect()
        })
        .collect();
    let pre = RationalLaurent::new_unreduced(
        LaurentPoly::binomial(1, 1).pow(p.h1_rank() as u32),
        DenFactors::one().with(DenFactor::one_minus_q(), m as u32),
    );
    // below[f][k] = sum_{j<k} E_f(j)
    let below: Vec<Vec<RationalLaurent>> = e
        .iter()
        .map(|ef| {
            let mut out = Vec::with_capacity(ef.len());
            let mut acc = RationalLaurent::zero();
            for x in ef {
                out.push(acc.clone());
                acc = (&acc + x).normalized();
            }
            out
        })
        .collect();
    let terms = (0..truncation)
        .into_par_iter()
        .map(|k| {
            let ku = k as usize;
            // at: some factor reaches k; lt: all factors below k
            let mut at = RationalLaurent::zero();
            let mut lt = RationalLaurent::one();
            for f in 0..nf {
                let upto = &e[f][ku] + &below[f][ku];
                at = (&(&at * &upto) + &(&lt * &e[f][ku])).normalized();
                lt = (&lt * &below[f][ku]).normalized();
            }
            if nf == 0 {
                at = if k == 0 { RationalLaurent::one() } else { RationalLaurent::zero() };
                return SeriesTerm::new(k, at, shape);
            }
            SeriesTerm::new(k, &pre * &at, shape)
        })
        .collect();
    Ok(HabiroSeries { terms, truncation, tag, shape })
}

/// `I_M` for an integral homology sphere (only `±1` framings).
pub fn unified_zhs(p: &SurgeryPresentation, truncation: u32) -> Result<HabiroSeries> {
    if p.h1_rank() > 0 {
        return Err(Error::Presentation("unified_zhs needs a presentation without ±2 framings".into()));
    }
    build(p, &vec![Weight::Plain; p.arity()], truncation, RingTag::ZHabiro)
}

/// `I_M` for `H_1 = (Z/2)^t`, `t >= 1`.
pub fn unified_2torsion(p: &SurgeryPresentation, truncation: u32) -> Result<HabiroSeries> {
    if p.h1_rank() == 0 {
        return Err(Error::Presentation("unified_2torsion needs at least one ±2 framing".into()));
    }
    build(p, &vec![Weight::Plain; p.arity()], truncation, RingTag::TwoTorsion)
}

/// `unified_zhs` or `unified_2torsion` as the presentation requires.
pub fn unified(p: &SurgeryPresentation, truncation: u32) -> Result<HabiroSeries> {
    if p.h1_rank() == 0 {
        unified_zhs(p, truncation)
    } else {
        unified_2torsion(p, truncation)
    }
}

fn unified_refined(p: &SurgeryPresentation, c: &StructureVector, truncation: u32, kind: StructureKind) -> Result<HabiroSeries> {
    if c.kind != kind || !c.satisfies(p) {
        return Err(Error::InvalidArgument(format!("({}) is not a {kind:?} vector for this presentation", c.bits())));
    }
    let weights: Vec<Weight> = c.c.iter().map(|&ci| Weight::Refined(kind, ci)).collect();
    let tag = match kind {
        StructureKind::Spin => RingTag::Spin,
        StructureKind::Coho => RingTag::Coho,
    };
    build(p, &weights, truncation, tag)
}

/// `I_{M,σ_c}` for a spin structure.
pub fn unified_spin(p: &SurgeryPresentation, c: &StructureVector, truncation: u32) -> Result<HabiroSeries> {
    unified_refined(p, c, truncation, StructureKind::Spin)
}

/// `I_{M,σ_c}` for a cohomology class.
pub fn unified_coho(p: &SurgeryPresentation, c: &StructureVector, truncation: u32) -> Result<HabiroSeries> {
    unified_refined(p, c, truncation, StructureKind::Coho)
}

/// Refined series through a stabilization: the sum over the two extensions
/// of `c` to `P # ℝP³`.
pub fn refine_nondiagonal(p: &SurgeryPresentation, c: &StructureVector, truncation: u32) -> Result<HabiroSeries> {
    if !c.satisfies(p) {
        return Err(Error::InvalidArgument(format!("({}) is not a {:?} vector for this presentation", c.bits(), c.kind)));
    }
    let stab = p.stabilize_rp3();
    let slot = p.stabilization_slot();
    let ext = |bit: u8| {
        let mut v = c.c.clone();
        v.insert(slot, bit);
        StructureVector { c: v, kind: c.kind }
    };
    let a = unified_refined(&stab, &ext(0), truncation, c.kind)?;
    let b = unified_refined(&stab, &ext(1), truncation, c.kind)?;
    Ok(a.add(&b, a.tag()))
}

/// Which product the alternative two-torsion form uses for `k_0 < i <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H2Variant {
    /// `prod (1 + v^{2i+1})`
    Plus,
    /// `prod (1 - v^{2i+1})`
    Minus,
}

/// Alternative form for one `±2` component (listed first) and the rest `±1`:
/// `sum_k (sum_{max = k} C_k (-v)^{-k_0} prod_{i=k_0+1}^{k} (1 ± v^{2i+1})
/// prod^{+1} (-1)^{k_i} q^{-k_i(k_i+3)/2}) (-v^2; -v)_{2k}`.
pub fn unified_h2(p: &SurgeryPresentation, truncation: u32, variant: H2Variant) -> Result<HabiroSeries> {
    if p.h1_rank() != 1 {
        return Err(Error::Presentation("the alternative form needs exactly one ±2 framing".into()));
    }
    let m = p.arity();
    let table = p.table();
    let framings = p.framings();
    let s = match variant {
        H2Variant::Plus => 1,
        H2Variant::Minus => -1,
    };
    let terms = (0..truncation)
        .into_par_iter()
        .map(|k| {
            // every tuple with max = k, assembled factor by factor
            let mut tuples: Vec<(Vec<u32>, RationalLaurent)> = vec![(vec![0; m], RationalLaurent::one())];
            for f in 0..table.factors().len() {
                let comps = table.components_of(f);
                let local: Vec<(Vec<u32>, RationalLaurent)> = (0..=k).flat_map(|j| factor_support(p, f, j)).collect();
                tuples = tuples
                    .iter()
                    .flat_map(|(idx, d)| {
                        let comps = &comps;
                        local.iter().map(move |(li, ld)| {
                            let mut idx = idx.clone();
                            for (&x, &i) in li.iter().zip(comps) {
                                idx[i] = x;
                            }
                            (idx, d * ld)
                        })
                    })
                    .collect();
            }
            let mut acc = RationalLaurent::zero();
            for (idx, d) in tuples.into_iter().filter(|(i, _)| i.iter().copied().max() == Some(k)) {
                // C = D (1-q)^{1-m} prod (q^{k_i+1})_{k_i+1} / (q^{k+1})_{k+1}
                let mut num: LaurentPoly = idx.iter().map(|&ki| habiro_window(ki)).product();
                let k0 = idx[0];
                if framings[0] == Framing::PlusTwo {
                    num = num.shift(-(k0 as i64)).scale_int(sign(k0 as i64));
                }
                for i in k0 + 1..=k {
                    num = &num * &LaurentPoly::binomial(s, 2 * i as i64 + 1);
                }
                for (i, &ki) in idx.iter().enumerate().skip(1) {
                    if framings[i] == Framing::PlusOne {
                        let kk = ki as i64;
                        num = num.shift(-kk * (kk + 3)).scale_int(sign(kk));
                    }
                }
                num = &num * &odd_poch(k);
                let den = habiro_window_den(k).with(DenFactor::one_minus_q(), m as u32 - 1);
                acc = &acc + &d.mul_poly(&num).div_factors(&den);
            }
            SeriesTerm::new(k, acc, Shape { m, t: 1 })
        })
        .collect();
    Ok(HabiroSeries { terms, truncation, tag: RingTag::TwoTorsion, shape: Shape { m, t: 1 } })
}

/// `ev(I) = sum_{k < K} ev(term_k)`; refuses when `K < r`.
pub fn evaluate(s: &HabiroSeries, rs: &RootSystem) -> Result<CycNum> {
    s.tag.admits(rs)?;
    if (s.truncation as u64) < rs.r() {
        return Err(Error::Truncation { truncation: s.truncation as usize, order: rs.r() });
    }
    let parts: Vec<CycNum> = s
        .terms
        .par_iter()
        .filter(|t| !t.vanishes_at(rs))
        .map(|t| rs.ev(&t.value))
        .collect::<Result<_>>()?;
    Ok(parts.iter().fold(rs.zero(), |a, b| &a + b))
}

/// The Ohtsuki series in `q - 1` through degree `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct OhtsukiSeries {
    pub series: PowerSeries,
    pub integral: bool,
    pub dyadic: bool,
}

/// `sum_{k <= D} taylor(term_k)`, checking that term `k` has valuation at least `k`.
pub fn ohtsuki(s: &HabiroSeries, degree: usize) -> Result<OhtsukiSeries> {
    if !matches!(s.tag, RingTag::ZHabiro | RingTag::TwoTorsion) {
        return Err(Error::Inadmissible(format!("no Ohtsuki series for ring {}", s.tag.name())));
    }
    if (s.truncation as usize) <= degree {
        return Err(Error::Truncation { truncation: s.truncation as usize, order: degree as u64 + 1 });
    }
    let parts: Vec<PowerSeries> = s.terms[..=degree]
        .par_iter()
        .map(|t| {
            let ser = taylor_v1(&t.value, degree)?;
            if ser.coeffs()[..t.k as usize].iter().any(|c| !c.is_zero()) {
                return Err(Error::Valuation(t.k as usize));
            }
            Ok(ser)
        })
        .collect::<Result<_>>()?;
    let series = parts.iter().fold(PowerSeries::zero(SeriesVar::QMinus1, degree), |a, b| a.add(b));
    Ok(OhtsukiSeries { integral: series.is_integral(), dyadic: series.is_dyadic(), series })
}

/// Sum of several series with the same truncation, termwise.
pub fn sum_series(parts: &[HabiroSeries], tag: RingTag) -> Option<HabiroSeries> {
    let first = parts.first()?;
    Some(parts[1..].iter().fold(first.clone(), |a, b| a.add(b, tag)))
}

/// The terms as a map, for serialization.
pub fn term_map(s: &HabiroSeries) -> BTreeMap<u32, RationalLaurent> {
    s.terms.iter().map(|t| (t.k, t.value.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{tau_prime, InvariantFlavor};
    use crate::surgery::builtin;

    #[test]
    fn trivial_series() {
        let s3 = builtin("s3").unwrap();
        let s = unified_zhs(&s3, 4).unwrap();
        assert!(s.term(0).unwrap().as_poly().unwrap().is_one());
        assert!(s.term(1).unwrap().is_zero());
        let u = unified_zhs(&builtin("unknot_plus1").unwrap(), 4).unwrap();
        assert!(u.termwise_eq(&HabiroSeries::one(4, RingTag::ZHabiro), 3));
        let rp3 = unified_2torsion(&builtin("rp3").unwrap(), 4).unwrap();
        assert!(rp3.termwise_eq(&HabiroSeries::one(4, RingTag::TwoTorsion), 3));
        assert!(unified_zhs(&builtin("rp3").unwrap(), 4).is_err());
    }

    #[test]
    fn fig8_plus2_closed_form() {
        let s = unified_2torsion(&builtin("fig8_plus2").unwrap(), 6).unwrap();
        for k in 0..6u32 {
            let kk = k as i64;
            let want = odd_poch(k).shift(-kk * (kk + 2));
            assert_eq!(s.term(k).unwrap().as_poly(), Some(&want), "k={k}");
            assert!(s.terms()[k as usize].window_certified());
        }
    }

    #[test]
    fn route_equivalence_small() {
        let p = builtin("trefoil_plus1").unwrap();
        let rs = RootSystem::new(5);
        let s = unified_zhs(&p, 5).unwrap();
        assert_eq!(evaluate(&s, &rs).unwrap(), tau_prime(&p, &rs, InvariantFlavor::So3, None).unwrap());
        let q = builtin("fig8_plus2").unwrap();
        let rs = RootSystem::new(4);
        let s = unified_2torsion(&q, 4).unwrap();
        assert_eq!(evaluate(&s, &rs).unwrap(), tau_prime(&q, &rs, InvariantFlavor::Su2, None).unwrap());
        assert!(evaluate(&s, &RootSystem::new(5)).is_err());
    }
}

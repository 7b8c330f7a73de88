//! Brute-force state sums: the definitional WRT invariants.
//!
//! Everything here goes through coloured Jones polynomials and explicit
//! colour sums; no Laplace transform or Gauss-sum shortcut is used except
//! for the `ℝP³` normalizer in [`tau_prime`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::cyclotomic::{CycNum, RootSystem};
use crate::error::{Error, Result};
use crate::laplace::{GaussSums, Parity};
use crate::qjones::{CycCoeffTable, KnownKnot, TableFactor};
use crate::ring::qcomb::{cyclotomic_factor, qbracket};
use crate::ring::{DenFactors, LaurentPoly, RationalLaurent};
use crate::surgery::{StructureKind, StructureVector, SurgeryPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantFlavor {
    Su2,
    So3,
    Spin,
    Coho,
}

impl InvariantFlavor {
    pub fn from_name(s: &str) -> Option<InvariantFlavor> {
        match s {
            "su2" => Some(InvariantFlavor::Su2),
            "so3" => Some(InvariantFlavor::So3),
            "spin" => Some(InvariantFlavor::Spin),
            "coho" => Some(InvariantFlavor::Coho),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantFlavor::Su2 => "su2",
            InvariantFlavor::So3 => "so3",
            InvariantFlavor::Spin => "spin",
            InvariantFlavor::Coho => "coho",
        }
    }
}

/// `[n] P_k(n)`, the per-component factor of a term of the cyclotomic expansion.
fn component_poly(k: u32, n: i64) -> LaurentPoly {
    static CACHE: OnceLock<Mutex<HashMap<(u32, i64), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(k, n)) {
        return p.clone();
    }
    let p = &qbracket(n) * &cyclotomic_factor(k, n);
    cache.lock().unwrap().insert((k, n), p.clone());
    p
}

/// Divide `p` by every factor of `den`, or `None` if some division is inexact.
fn absorb(p: &LaurentPoly, den: &DenFactors) -> Option<LaurentPoly> {
    let mut out = p.clone();
    for (f, m) in den.iter() {
        let fp = f.poly();
        for _ in 0..m {
            out = out.div_exact(&fp)?;
        }
    }
    Some(out)
}

type AbsorbKey = (u32, i64, DenFactors);

/// `ev(J(n))` evaluated term by term. Each denominator is divided exactly into
/// the entry numerator or into one component factor; terms where that fails
/// are summed exactly before evaluation.
fn jones_at_root(fac: &TableFactor, colors: &[i64], rs: &RootSystem, memo: &Mutex<HashMap<AbsorbKey, Option<LaurentPoly>>>) -> Result<CycNum> {
    let bound = *colors.iter().min().expect("nonempty factor") as u32;
    let mut acc = rs.zero();
    let mut rest = RationalLaurent::zero();
    for k in 0..bound {
        for (idx, d) in fac.entries_at(k) {
            if idx.iter().zip(colors).any(|(&ki, &n)| ki as i64 >= n) {
                continue;
            }
            let mut polys: Vec<LaurentPoly> = idx.iter().zip(colors).map(|(&ki, &n)| component_poly(ki, n)).collect();
            let mut num = d.num().clone();
            let den = d.den();
            let mut done = den.is_one();
            if !done {
                if let Some(t) = absorb(&num, den) {
                    num = t;
                    done = true;
                }
            }
            for (j, (&ki, &n)) in idx.iter().zip(colors).enumerate() {
                if done {
                    break;
                }
                let key = (ki, n, den.clone());
                let hit = memo.lock().unwrap().get(&key).cloned();
                let q = match hit {
                    Some(q) => q,
                    None => {
                        let q = absorb(&polys[j], den);
                        memo.lock().unwrap().insert(key, q.clone());
                        q
                    }
                };
                if let Some(q) = q {
                    polys[j] = q;
                    done = true;
                }
            }
            if done {
                let mut t = rs.ev_poly(&num)?;
                for p in &polys {
                    if t.is_zero() {
                        break;
                    }
                    t = &t * &rs.ev_poly(p)?;
                }
                acc = &acc + &t;
            } else {
                let prod: LaurentPoly = polys.iter().fold(num, |a, p| &a * p);
                rest = &rest + &RationalLaurent::new(prod, den.clone());
            }
        }
    }
    if !rest.is_zero() {
        acc = &acc + &rs.ev(&rest.normalized())?;
    }
    Ok(acc)
}

/// All colour tuples in `1..2r` with the prescribed parities (`None` = any).
fn color_tuples(r: u64, parities: &[Option<u8>]) -> Vec<Vec<i64>> {
    let ranges: Vec<Vec<i64>> = parities
        .iter()
        .map(|p| (1..2 * r as i64).filter(|n| p.is_none_or(|b| n.rem_euclid(2) == b as i64)).collect())
        .collect();
    let mut out = vec![vec![]];
    for range in &ranges {
        out = out.into_iter().flat_map(|t| range.iter().map(move |&n| [t.clone(), vec![n]].concat())).collect();
    }
    out
}

/// Colour sum for one factor of the table.
fn factor_sum(fac: &TableFactor, framings: &[i64], parities: &[Option<u8>], rs: &RootSystem) -> Result<CycNum> {
    let brackets: Vec<CycNum> = (0..2 * rs.r() as i64).map(|n| rs.ev_poly(&qbracket(n))).collect::<Result<_>>()?;
    let tuples = color_tuples(rs.r(), parities);
    let memo = Mutex::new(HashMap::new());
    let terms: Vec<CycNum> = tuples
        .par_iter()
        .map(|colors| {
            let j = jones_at_root(fac, colors, rs, &memo)?;
            let e: i64 = framings.iter().zip(colors).map(|(&b, &n)| b * (n * n - 1)).sum();
            let mut t = j.mul_omega_pow(e);
            for &n in colors {
                t = &t * &brackets[n as usize];
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().fold(rs.zero(), |acc, t| &acc + t))
}

/// `F_L(ξ)`, or `F^c_L(ξ)` over colours `n_i ≡ c_i + 1 (mod 2)` when a sector is given.
///
/// The colour sum over a disjoint union factors, so each factor of the
/// table is summed on its own and the results are multiplied.
pub fn f_link(p: &SurgeryPresentation, rs: &RootSystem, sector: Option<&[u8]>) -> Result<CycNum> {
    if let Some(c) = sector {
        if c.len() != p.arity() {
            return Err(Error::ArityMismatch { expected: p.arity(), got: c.len() });
        }
    }
    let table: &CycCoeffTable = p.table();
    let framings = p.framing_values();
    let mut acc = rs.one();
    for (f, fac) in table.factors().iter().enumerate() {
        let comps = table.components_of(f);
        let b: Vec<i64> = comps.iter().map(|&i| framings[i]).collect();
        let par: Vec<Option<u8>> = comps.iter().map(|&i| sector.map(|c| (c[i] + 1) % 2)).collect();
        acc = &acc * &factor_sum(fac, &b, &par, rs)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn unknot(b: i64) -> SurgeryPresentation {
    SurgeryPresentation::new(vec![b], CycCoeffTable::builtin(KnownKnot::Unknot), None).expect("unknot")
}

/// `F_{U^+}^{σ_+} F_{U^-}^{σ_-}` with the given colour parity.
fn normalizer(p: &SurgeryPresentation, rs: &RootSystem, odd: bool) -> Result<CycNum> {
    let sector: Option<&[u8]> = if odd { Some(&[0]) } else { None };
    let up = f_link(&unknot(1), rs, sector)?;
    let um = f_link(&unknot(-1), rs, sector)?;
    if up.is_zero() || um.is_zero() {
        return Err(Error::Degenerate(format!("F of a ±1-framed unknot vanishes at r = {}", rs.r())));
    }
    Ok(&up.pow(p.sigma_plus() as i64)? * &um.pow(p.sigma_minus() as i64)?)
}

/// `τ_M(ξ) = F_L / (F_{U^+}^{σ_+} F_{U^-}^{σ_-})`.
pub fn tau_su2(p: &SurgeryPresentation, rs: &RootSystem) -> Result<CycNum> {
    Ok(&f_link(p, rs, None)? * &normalizer(p, rs, false)?.inverse()?)
}

/// The SO(3) invariant: odd colours only, `r` odd and at least 3.
pub fn tau_so3(p: &SurgeryPresentation, rs: &RootSystem) -> Result<CycNum> {
    if rs.r() % 2 == 0 || rs.r() < 3 {
        return Err(Error::Inadmissible(format!("SO(3) invariants need odd r >= 3, got r = {}", rs.r())));
    }
    let odd = vec![0u8; p.arity()];
    Ok(&f_link(p, rs, Some(&odd))? * &normalizer(p, rs, true)?.inverse()?)
}

/// Whether refinements of this kind are defined at `rs`.
pub fn refinement_admissible(kind: StructureKind, rs: &RootSystem) -> Result<()> {
    match kind {
        StructureKind::Spin if rs.zeta_order() % 4 == 0 => Ok(()),
        StructureKind::Coho if rs.r() % 4 == 2 => Ok(()),
        StructureKind::Spin => Err(Error::Inadmissible(format!("spin refinements need 4 | ord ζ, got r = {}", rs.r()))),
        StructureKind::Coho => {
            Err(Error::Inadmissible(format!("cohomological refinements need ord ξ ≡ 2 mod 4, got r = {}", rs.r())))
        }
    }
}

/// `τ_{M,σ_c} = F^c_L / (F_{U^+}^{σ_+} F_{U^-}^{σ_-})`.
pub fn tau_refined(p: &SurgeryPresentation, c: &StructureVector, rs: &RootSystem) -> Result<CycNum> {
    refinement_admissible(c.kind, rs)?;
    if !c.satisfies(p) {
        return Err(Error::InvalidArgument(format!("({}) is not a {:?} vector for this presentation", c.bits(), c.kind)));
    }
    Ok(&f_link(p, rs, Some(&c.c))? * &normalizer(p, rs, false)?.inverse()?)
}

/// `τ_{ℝP³}` from Gauss sums: `γ_2 / ((1 + ζ^{-1}) γ_1)`, with `γ¹` for SO(3).
pub fn tau_rp3(rs: &RootSystem, flavor: InvariantFlavor) -> Result<CycNum> {
    let parity = if flavor == InvariantFlavor::So3 { Parity::Odd } else { Parity::All };
    let gs = GaussSums::new(rs);
    let den = &(&rs.one() + &rs.zeta().pow(-1)?) * gs.nonzero(1, parity)?;
    let t = gs.get(2, parity) * &den.inverse()?;
    if t.is_zero() {
        return Err(Error::Degenerate(format!("τ of ℝP³ vanishes at r = {}", rs.r())));
    }
    Ok(t)
}

/// Any flavor of `τ`, before normalization.
pub fn tau(p: &SurgeryPresentation, rs: &RootSystem, flavor: InvariantFlavor, sector: Option<&StructureVector>) -> Result<CycNum> {
    match (flavor, sector) {
        (InvariantFlavor::Su2, None) => tau_su2(p, rs),
        (InvariantFlavor::So3, None) => tau_so3(p, rs),
        (InvariantFlavor::Spin | InvariantFlavor::Coho, Some(c)) => {
            let kind = if flavor == InvariantFlavor::Spin { StructureKind::Spin } else { StructureKind::Coho };
            if c.kind != kind {
                return Err(Error::InvalidArgument("sector kind does not match the flavor".into()));
            }
            tau_refined(p, c, rs)
        }
        (InvariantFlavor::Spin | InvariantFlavor::Coho, None) => {
            Err(Error::InvalidArgument(format!("flavor {} needs a sector", flavor.name())))
        }
        (_, Some(_)) => Err(Error::InvalidArgument(format!("flavor {} takes no sector", flavor.name()))),
    }
}

/// `τ′ = τ / τ_{ℝP³}^n` with `n` the number of 2-framed components.
pub fn tau_prime(p: &SurgeryPresentation, rs: &RootSystem, flavor: InvariantFlavor, sector: Option<&StructureVector>) -> Result<CycNum> {
    let t = tau(p, rs, flavor, sector)?;
    let n = p.h1_rank() as i64;
    if n == 0 {
        return Ok(t);
    }
    Ok(&t * &tau_rp3(rs, flavor)?.pow(-n)?)
}

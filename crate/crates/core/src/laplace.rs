//! Gauss sums, the Laplace transform `q^{aλ} -> q^{-a²/b}` and its refined
//! parity variants, and the closed-form surgery formula for knots.

use crate::coeff::Coeff;
use crate::cyclotomic::{CycNum, RootSystem};
use crate::error::{Error, Result};
use crate::qjones::CycCoeffTable;
use crate::ring::qcomb::{f_block, habiro_window, odd_poch, sign};
use crate::ring::{BiPoly, LaurentPoly};

/// Which colours a Gauss sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(eps: u8) -> Parity {
        if eps % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn admits(self, n: u64) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// SU(2) or SO(3) normalization of the knot-surgery formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Su2,
    So3,
}

fn check_framing(b: i64) -> Result<()> {
    if matches!(b, 1 | -1 | 2 | -2) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("unsupported framing {b}")))
    }
}

/// `γ_b = sum_n ω^{b (n² - 1)}` over `0 <= n < 2r` of the given parity.
pub fn gauss_sum(b: i64, rs: &RootSystem, parity: Parity) -> Result<CycNum> {
    check_framing(b)?;
    let mut acc = rs.zero();
    for n in (0..2 * rs.r()).filter(|&n| parity.admits(n)) {
        let n = n as i64;
        acc = &acc + &rs.omega_pow(b * (n * n - 1));
    }
    Ok(acc)
}

/// `γ_b` and `γ^ε_b` for `b ∈ {±1, ±2}` at one root system.
#[derive(Clone, Debug)]
pub struct GaussSums {
    values: Vec<((i64, Parity), CycNum)>,
}

impl GaussSums {
    pub fn new(rs: &RootSystem) -> GaussSums {
        let mut values = Vec::new();
        for b in [1, -1, 2, -2] {
            for p in [Parity::All, Parity::Even, Parity::Odd] {
                values.push(((b, p), gauss_sum(b, rs, p).expect("framing in range")));
            }
        }
        GaussSums { values }
    }

    pub fn get(&self, b: i64, p: Parity) -> &CycNum {
        &self.values.iter().find(|(k, _)| *k == (b, p)).expect("framing in range").1
    }

    /// The sum, or a degeneracy error when it vanishes.
    pub fn nonzero(&self, b: i64, p: Parity) -> Result<&CycNum> {
        let g = self.get(b, p);
        if g.is_zero() {
            Err(Error::Degenerate(format!("Gauss sum γ_{b} ({p:?}) vanishes")))
        } else {
            Ok(g)
        }
    }
}

/// `L_b`: replace every `q^{aλ}` by `q^{-a²/b}`, linearly over `v`.
pub fn laplace(b: i64, f: &BiPoly) -> Result<LaurentPoly> {
    check_framing(b)?;
    let mut out = LaurentPoly::zero();
    for (a, p) in f.x_terms() {
        out = out + p.shift(-2 * a * a / b);
    }
    Ok(out)
}

/// Spin-refined transform: keeps `q^{aλ}` iff `a + ε + χ` is even.
pub fn laplace_refined_spin(b: i64, eps: u8, chi: u8, f: &BiPoly) -> Result<LaurentPoly> {
    if b.abs() != 2 {
        return Err(Error::InvalidArgument("refined transforms need b = ±2".into()));
    }
    let mut out = LaurentPoly::zero();
    for (a, p) in f.x_terms() {
        if (a + eps as i64 + chi as i64).rem_euclid(2) == 0 {
            out = out + p.shift(-a * a * b.signum());
        }
    }
    Ok(out)
}

/// Cohomological refinement: `q^{aλ} -> ½(1 ∓ (-1)^{a+ε+χ} I) v^{∓a²}` for `b = ±2`.
///
/// Here `χ` is a sign bit: the refined Gauss sums at the root satisfy
/// `γ¹_{±2} = ±(-1)^χ I γ⁰_{±2}` (see [`coho_chi`]).
pub fn laplace_refined_coho(b: i64, eps: u8, chi: u8, f: &BiPoly) -> Result<LaurentPoly> {
    if b.abs() != 2 {
        return Err(Error::InvalidArgument("refined transforms need b = ±2".into()));
    }
    let s = b.signum();
    let half = Coeff::from_frac(1, 2);
    let mut out = LaurentPoly::zero();
    for (a, p) in f.x_terms() {
        let t = -s * sign(a + eps as i64 + chi as i64);
        let c = &half * &(Coeff::from_int(1) + Coeff::i().scale_int(t));
        out = out + p.shift(-a * a * s).scale(&c);
    }
    Ok(out)
}

/// `χ` for spin refinements: requires `4 | r`; `χ = 1` iff `ord ζ ≡ 8 (mod 16)`.
pub fn spin_chi(rs: &RootSystem) -> Result<u8> {
    if rs.r() % 4 != 0 {
        return Err(Error::Inadmissible(format!("spin refinements need 4 | r, got r = {}", rs.r())));
    }
    Ok(((rs.r() / 4) % 2) as u8)
}

/// `χ` for cohomological refinements: requires `r ≡ 2 (mod 4)`; with
/// `r = 2k`, `ζ^{k²} = (-1)^χ I`.
pub fn coho_chi(rs: &RootSystem) -> Result<u8> {
    if rs.r() % 4 != 2 {
        return Err(Error::Inadmissible(format!("cohomological refinements need r ≡ 2 mod 4, got r = {}", rs.r())));
    }
    let k = rs.r() / 2;
    Ok((((k - 1) / 2) % 2) as u8)
}

/// Closed form of `L_{±1}(F_k)`.
pub fn lemma_one(b: i64, k: u32) -> LaurentPoly {
    let w = habiro_window(k).scale_int(2);
    if b > 0 {
        let k = k as i64;
        w.shift(-(k + 1) * (k + 2)).scale_int(-sign(k))
    } else {
        w
    }
}

/// Closed form of `L_{±2}(F_k)`.
pub fn lemma_two(b: i64, k: u32) -> LaurentPoly {
    let base = (&LaurentPoly::binomial(-1, 1) * &odd_poch(k)).scale_int(2);
    if b > 0 {
        let k = k as i64;
        base.shift(-k - 1).scale_int(-sign(k))
    } else {
        base
    }
}

fn sn(b: i64) -> i64 {
    b.signum()
}

/// `τ = γ_b / (2 (1 - ξ^{-sn b}) γ_{sn b}) * sum_{n < r} ev(C_n) ev(L_b(F_n))`
/// for surgery on a knot with framing `b`.
pub fn theorem_le_tau(table: &CycCoeffTable, b: i64, rs: &RootSystem, flavor: Flavor) -> Result<CycNum> {
    check_framing(b)?;
    if table.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: table.arity() });
    }
    if rs.r() == 1 {
        return Err(Error::Degenerate("1 - ξ^{±1} vanishes at r = 1".into()));
    }
    let parity = match flavor {
        Flavor::Su2 => {
            if b.abs() == 2 && rs.r() % 2 == 1 {
                return Err(Error::Inadmissible("SU(2) with framing ±2 needs even r".into()));
            }
            Parity::All
        }
        Flavor::So3 => {
            if rs.r() % 2 == 0 {
                return Err(Error::Inadmissible("SO(3) invariants need odd r".into()));
            }
            Parity::Odd
        }
    };
    let gs = GaussSums::new(rs);
    let ratio = gs.get(b, parity) * &gs.nonzero(sn(b), parity)?.inverse()?;
    let one_minus = &rs.one() - &rs.xi().pow(-sn(b))?;
    let pre = &ratio * &(&one_minus + &one_minus).inverse()?;
    let fac = &table.factors()[0];
    let mut sum = rs.zero();
    for n in 0..rs.r() as u32 {
        let c = fac.entry(&[n]);
        if c.is_zero() {
            continue;
        }
        let l = laplace(b, &f_block(n))?;
        let term = rs.ev(&c.mul_poly(&l))?;
        if !term.is_zero() {
            sum = &sum + &term;
        }
    }
    Ok(&pre * &sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qjones::KnownKnot;

    #[test]
    fn gauss_sums_small() {
        let rs = RootSystem::new(1);
        let g = gauss_sum(1, &rs, Parity::All).unwrap();
        assert_eq!(g, &rs.omega_pow(-1) + &rs.one());
        for r in 1..=8 {
            let rs = RootSystem::new(r);
            for b in [1, -1, 2, -2] {
                let all = gauss_sum(b, &rs, Parity::All).unwrap();
                let split = &gauss_sum(b, &rs, Parity::Even).unwrap() + &gauss_sum(b, &rs, Parity::Odd).unwrap();
                assert_eq!(all, split);
            }
        }
        assert!(gauss_sum(3, &RootSystem::new(3), Parity::All).is_err());
    }

    #[test]
    fn lemmas_low_degree() {
        for k in 0..6 {
            let f = f_block(k);
            for b in [1, -1] {
                assert_eq!(laplace(b, &f).unwrap(), lemma_one(b, k), "b={b} k={k}");
            }
            for b in [2, -2] {
                assert_eq!(laplace(b, &f).unwrap(), lemma_two(b, k), "b={b} k={k}");
            }
        }
        assert!(laplace(1, &BiPoly::one()).unwrap().is_one());
    }

    #[test]
    fn refined_transforms_split_the_plain_one() {
        let f = f_block(3);
        for b in [2, -2] {
            for chi in 0..2 {
                let s = &laplace_refined_spin(b, 0, chi, &f).unwrap() + &laplace_refined_spin(b, 1, chi, &f).unwrap();
                assert_eq!(s, laplace(b, &f).unwrap());
                let c = &laplace_refined_coho(b, 0, chi, &f).unwrap() + &laplace_refined_coho(b, 1, chi, &f).unwrap();
                assert_eq!(c, laplace(b, &f).unwrap());
            }
        }
        let x = BiPoly::monomial(Coeff::from_int(1), 1, 0);
        assert_eq!(laplace_refined_spin(2, 0, 1, &x).unwrap(), LaurentPoly::v_pow(-1));
        assert!(laplace_refined_spin(2, 1, 1, &x).unwrap().is_zero());
    }

    #[test]
    fn chi_values() {
        assert_eq!(spin_chi(&RootSystem::new(4)).unwrap(), 1);
        assert_eq!(spin_chi(&RootSystem::new(8)).unwrap(), 0);
        assert!(spin_chi(&RootSystem::new(6)).is_err());
        for r in [2u64, 6, 10, 14] {
            let rs = RootSystem::new(r);
            let chi = coho_chi(&rs).unwrap();
            let k = (r / 2) as i64;
            let lhs = rs.zeta().pow(k * k).unwrap();
            let i = rs.i_value().unwrap();
            assert_eq!(lhs, if chi == 0 { i } else { -i });
        }
    }

    #[test]
    fn unknot_fast_path_is_one() {
        let u = CycCoeffTable::builtin(KnownKnot::Unknot);
        for r in 2..7 {
            let rs = RootSystem::new(r);
            assert!(theorem_le_tau(&u, 1, &rs, Flavor::Su2).unwrap().is_one());
            assert!(theorem_le_tau(&u, -1, &rs, Flavor::Su2).unwrap().is_one());
        }
        assert!(theorem_le_tau(&u, 1, &RootSystem::new(1), Flavor::Su2).is_err());
    }
}

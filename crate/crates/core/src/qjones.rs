//! Cyclotomic expansions of coloured Jones polynomials.
//!
//! A table stores, for every multi-index `k`, the coefficient `D_k` of the
//! expansion `J'(n) = sum_k D_k prod_i (q^{1+n_i})_{k_i} (q^{1-n_i})_{k_i}`.
//! For knots `D_k` is the usual Habiro coefficient.

use std::collections::BTreeMap;

use crate::cyclotomic::{CycNum, RootSystem};
use crate::error::{Error, Result};
use crate::ring::qcomb::{cyclotomic_factor, habiro_window, habiro_window_den, qbracket, sign};
use crate::ring::{DenFactor, DenFactors, LaurentPoly, RationalLaurent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnownKnot {
    Unknot,
    TrefoilRight,
    TrefoilLeft,
    Fig8,
    Whitehead,
}

impl KnownKnot {
    pub const ALL: [KnownKnot; 5] =
        [KnownKnot::Unknot, KnownKnot::TrefoilRight, KnownKnot::TrefoilLeft, KnownKnot::Fig8, KnownKnot::Whitehead];

    pub fn name(self) -> &'static str {
        match self {
            KnownKnot::Unknot => "unknot",
            KnownKnot::TrefoilRight => "trefoil_right",
            KnownKnot::TrefoilLeft => "trefoil_left",
            KnownKnot::Fig8 => "fig8",
            KnownKnot::Whitehead => "whitehead",
        }
    }

    pub fn from_name(s: &str) -> Option<KnownKnot> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            KnownKnot::Whitehead => 2,
            _ => 1,
        }
    }

    /// Habiro coefficient `C_k` (for the Whitehead link, of the diagonal index `(k, k)`).
    pub fn habiro_coefficient(self, k: u32) -> LaurentPoly {
        let k = k as i64;
        match self {
            KnownKnot::Unknot if k == 0 => LaurentPoly::one(),
            KnownKnot::Unknot => LaurentPoly::zero(),
            KnownKnot::TrefoilRight => LaurentPoly::q_pow(-k * (k + 2)),
            KnownKnot::TrefoilLeft => LaurentPoly::q_pow(k),
            KnownKnot::Fig8 => LaurentPoly::q_pow(-k * (k + 1) / 2).scale_int(sign(k)),
            KnownKnot::Whitehead => LaurentPoly::v_pow(-k * (k + 1)).scale_int(sign(k)),
        }
    }

    /// Indices `k` with `max k_i = k` and nonzero coefficient.
    pub fn support_at(self, k: u32) -> Vec<Vec<u32>> {
        match self {
            KnownKnot::Unknot if k > 0 => vec![],
            KnownKnot::Whitehead => vec![vec![k, k]],
            _ => vec![vec![k]],
        }
    }

    pub fn entry(self, idx: &[u32]) -> RationalLaurent {
        assert_eq!(idx.len(), self.arity(), "index arity");
        match self {
            KnownKnot::Whitehead => {
                if idx[0] != idx[1] {
                    return RationalLaurent::zero();
                }
                let k = idx[0];
                let num = &self.habiro_coefficient(k) * &LaurentPoly::binomial(-1, 2);
                RationalLaurent::new(num, habiro_window_den(k))
            }
            _ => RationalLaurent::from_poly(self.habiro_coefficient(idx[0])),
        }
    }
}

/// A user-supplied table with finitely many nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitTable {
    pub arity: usize,
    pub entries: BTreeMap<Vec<u32>, RationalLaurent>,
}

impl ExplicitTable {
    /// Convert entries given in the normalization
    /// `J' = sum_k (sum_{max k_i = k} C_k (1-q)^m prod_i P_{k_i}(n_i) / (q^{k_i+1})_{k_i+1}) (q^{k+1})_{k+1} / (1-q)`.
    pub fn from_link_form(arity: usize, entries: BTreeMap<Vec<u32>, RationalLaurent>) -> ExplicitTable {
        let entries = entries
            .into_iter()
            .map(|(idx, c)| {
                let k = idx.iter().copied().max().unwrap_or(0);
                let mut num = c.num() * &LaurentPoly::binomial(-1, 2).pow(arity as u32 - 1);
                num = &num * &habiro_window(k);
                let den = idx.iter().fold(c.den().clone(), |d, &ki| d.product(&habiro_window_den(ki)));
                (idx, RationalLaurent::new(num, den))
            })
            .collect();
        ExplicitTable { arity, entries }
    }

    pub fn max_index(&self) -> u32 {
        self.entries.keys().flat_map(|k| k.iter().copied()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TableFactor {
    Builtin(KnownKnot),
    Explicit(ExplicitTable),
}

impl TableFactor {
    pub fn arity(&self) -> usize {
        match self {
            TableFactor::Builtin(k) => k.arity(),
            TableFactor::Explicit(t) => t.arity,
        }
    }

    pub fn entry(&self, idx: &[u32]) -> RationalLaurent {
        match self {
            TableFactor::Builtin(k) => k.entry(idx),
            TableFactor::Explicit(t) => t.entries.get(idx).cloned().unwrap_or_else(RationalLaurent::zero),
        }
    }

    /// Nonzero entries with `max k_i = k`.
    pub fn entries_at(&self, k: u32) -> Vec<(Vec<u32>, RationalLaurent)> {
        match self {
            TableFactor::Builtin(kn) => kn.support_at(k).into_iter().map(|i| (i.clone(), kn.entry(&i))).collect(),
            TableFactor::Explicit(t) => t
                .entries
                .iter()
                .filter(|(i, e)| i.iter().copied().max().unwrap_or(0) == k && !e.is_zero())
                .map(|(i, e)| (i.clone(), e.clone()))
                .collect(),
        }
    }

    fn check_colors(&self, colors: &[i64]) -> Result<()> {
        if colors.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: colors.len() });
        }
        if colors.iter().any(|&n| n < 1) {
            return Err(Error::InvalidArgument("colours must be positive".into()));
        }
        Ok(())
    }

    /// `extra * J'(n)`, summed termwise with exact division where possible.
    fn expansion_times(&self, colors: &[i64], extra: &LaurentPoly) -> RationalLaurent {
        // P_k(n) vanishes for k >= n, so the sum is finite.
        let bound = *colors.iter().min().unwrap() as u32;
        let mut exact = LaurentPoly::zero();
        let mut rest = RationalLaurent::zero();
        for k in 0..bound {
            for (idx, d) in self.entries_at(k) {
                if idx.iter().zip(colors).any(|(&ki, &n)| ki as i64 >= n) {
                    continue;
                }
                let p: LaurentPoly = idx.iter().zip(colors).map(|(&ki, &n)| cyclotomic_factor(ki, n)).product();
                let num = &(d.num() * &p) * extra;
                if d.den().is_one() {
                    exact = exact + num;
                    continue;
                }
                // factor-by-factor binomial division is linear in the degree
                let t = RationalLaurent::new(num, d.den().clone());
                match t.as_poly() {
                    Some(t) => exact = exact + t.clone(),
                    None => rest = &rest + &t,
                }
            }
        }
        (&RationalLaurent::from_poly(exact) + &rest).normalized()
    }

    /// `J'(n) = J(n) / prod [n_i]` at colours `n_i >= 1`.
    pub fn jprime(&self, colors: &[i64]) -> Result<RationalLaurent> {
        self.check_colors(colors)?;
        Ok(self.expansion_times(colors, &LaurentPoly::one()))
    }

    /// The zero-framed coloured Jones polynomial `J(n) = J'(n) prod [n_i]`.
    pub fn jones(&self, colors: &[i64]) -> Result<LaurentPoly> {
        self.check_colors(colors)?;
        let brackets: LaurentPoly = colors.iter().map(|&n| qbracket(n)).product();
        let j = self.expansion_times(colors, &brackets);
        match j.as_poly() {
            Some(p) => Ok(p.clone()),
            None => Err(Error::InvalidArgument(format!("J at {colors:?} is not a Laurent polynomial"))),
        }
    }

    /// All stored numerators have integer coefficients.
    pub fn is_integral(&self, up_to: u32) -> bool {
        (0..=up_to).all(|k| self.entries_at(k).iter().all(|(_, e)| e.num().has_integer_coeffs() && e.is_real()))
    }

    pub fn name(&self) -> String {
        match self {
            TableFactor::Builtin(k) => k.name().to_string(),
            TableFactor::Explicit(t) => format!("explicit({})", t.arity),
        }
    }
}

/// Coefficient table of a disjoint union of links: a product of factor tables.
///
/// `slots[i] = (f, j)` says that component `i` is component `j` of factor `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycCoeffTable {
    factors: Vec<TableFactor>,
    slots: Vec<(usize, usize)>,
}

impl CycCoeffTable {
    pub fn empty() -> Self {
        CycCoeffTable { factors: vec![], slots: vec![] }
    }

    pub fn single(f: TableFactor) -> Self {
        let slots = (0..f.arity()).map(|j| (0, j)).collect();
        CycCoeffTable { factors: vec![f], slots }
    }

    pub fn builtin(k: KnownKnot) -> Self {
        Self::single(TableFactor::Builtin(k))
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn factors(&self) -> &[TableFactor] {
        &self.factors
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    /// Components belonging to factor `f`, in factor order.
    pub fn components_of(&self, f: usize) -> Vec<usize> {
        let mut comps: Vec<(usize, usize)> =
            self.slots.iter().enumerate().filter(|(_, s)| s.0 == f).map(|(i, s)| (s.1, i)).collect();
        comps.sort();
        comps.into_iter().map(|(_, i)| i).collect()
    }

    pub fn product(&self, other: &CycCoeffTable) -> CycCoeffTable {
        let off = self.factors.len();
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().map(|&(f, j)| (f + off, j)));
        CycCoeffTable { factors, slots }
    }

    /// Reorder components: new component `i` is old component `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CycCoeffTable {
        assert_eq!(perm.len(), self.slots.len());
        CycCoeffTable { factors: self.factors.clone(), slots: perm.iter().map(|&i| self.slots[i]).collect() }
    }

    fn split<T: Clone>(&self, f: usize, xs: &[T]) -> Vec<T> {
        self.components_of(f).into_iter().map(|i| xs[i].clone()).collect()
    }

    /// `D_k` of the product table.
    pub fn entry(&self, idx: &[u32]) -> Result<RationalLaurent> {
        if idx.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: idx.len() });
        }
        let mut acc = RationalLaurent::one();
        for (f, fac) in self.factors.iter().enumerate() {
            acc = &acc * &fac.entry(&self.split(f, idx));
        }
        Ok(acc.normalized())
    }

    pub fn factor_colors(&self, f: usize, colors: &[i64]) -> Vec<i64> {
        self.split(f, colors)
    }

    pub fn jprime(&self, colors: &[i64]) -> Result<RationalLaurent> {
        if colors.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: colors.len() });
        }
        let mut acc = RationalLaurent::one();
        for (f, fac) in self.factors.iter().enumerate() {
            acc = &acc * &fac.jprime(&self.split(f, colors))?;
        }
        Ok(acc.normalized())
    }

    pub fn jones(&self, colors: &[i64]) -> Result<LaurentPoly> {
        if colors.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: colors.len() });
        }
        let mut acc = LaurentPoly::one();
        for (f, fac) in self.factors.iter().enumerate() {
            acc = &acc * &fac.jones(&self.split(f, colors))?;
        }
        Ok(acc)
    }
}

/// `J'_K(λ)`; a Laurent polynomial for knots.
pub fn jprime_knot(table: &CycCoeffTable, lambda: i64) -> Result<LaurentPoly> {
    if table.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: table.arity() });
    }
    let j = table.jprime(&[lambda])?;
    j.as_poly().cloned().ok_or_else(|| Error::InvalidArgument("knot table with non-polynomial J'".into()))
}

pub fn jprime_link(table: &CycCoeffTable, colors: &[i64]) -> Result<RationalLaurent> {
    table.jprime(colors)
}

/// `ev(J'(n) prod [n_i]) * prod ω^{b_i (n_i^2 - 1)}`.
pub fn jones_colored(table: &CycCoeffTable, framings: &[i64], colors: &[i64], rs: &RootSystem) -> Result<CycNum> {
    if framings.len() != colors.len() {
        return Err(Error::ArityMismatch { expected: colors.len(), got: framings.len() });
    }
    let j = table.jones(colors)?;
    let e: i64 = framings.iter().zip(colors).map(|(&b, &n)| b * (n * n - 1)).sum();
    Ok(rs.ev_poly(&j)?.mul_omega_pow(e))
}

/// `(1 - q)^e` as a denominator.
pub fn one_minus_q_den(e: u32) -> DenFactors {
    DenFactors::one().with(DenFactor::one_minus_q(), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qcomb::pochhammer;

    #[test]
    fn first_colours() {
        for k in KnownKnot::ALL {
            let t = CycCoeffTable::builtin(k);
            let ones = vec![1; k.arity()];
            assert_eq!(t.jprime(&ones).unwrap(), RationalLaurent::one(), "{k:?}");
        }
        let tref = CycCoeffTable::builtin(KnownKnot::TrefoilRight);
        let want = &LaurentPoly::one() + &(&LaurentPoly::q_pow(-3) * &(&pochhammer(3, 1) * &pochhammer(-1, 1)));
        assert_eq!(jprime_knot(&tref, 2).unwrap(), want);
        assert!(jprime_knot(&CycCoeffTable::builtin(KnownKnot::Unknot), 5).unwrap().is_one());
    }

    #[test]
    fn whitehead_entries() {
        let w = CycCoeffTable::builtin(KnownKnot::Whitehead);
        for mu in 1..5 {
            assert_eq!(w.jprime(&[1, mu]).unwrap(), RationalLaurent::one());
        }
        // k in {0, 1}: 1 - v^{-2} (1 - q) P_1(2)^2 / ((1 - q^2)(1 - q^3))
        let p1 = &pochhammer(3, 1) * &pochhammer(-1, 1);
        let t1 = RationalLaurent::new(
            &(&LaurentPoly::v_pow(-2).scale_int(-1) * &LaurentPoly::binomial(-1, 2)) * &(&p1 * &p1),
            habiro_window_den(1),
        );
        let want = (&RationalLaurent::one() + &t1).normalized();
        assert_eq!(w.jprime(&[2, 2]).unwrap(), want);
        assert_eq!(RationalLaurent::from_poly(w.jones(&[2, 2]).unwrap()), want.mul_poly(&qbracket(2).pow(2)));
        assert!(w.entry(&[1, 2]).unwrap().is_zero());
        // the link-form normalization has C_(k,k) = (-1)^k v^{-k(k+1)}
        let mut entries = BTreeMap::new();
        for k in 0..4u32 {
            entries.insert(vec![k, k], RationalLaurent::from_poly(KnownKnot::Whitehead.habiro_coefficient(k)));
        }
        let t = ExplicitTable::from_link_form(2, entries);
        for k in 0..4u32 {
            assert_eq!(t.entries[&vec![k, k]], KnownKnot::Whitehead.entry(&[k, k]));
        }
    }

    #[test]
    fn products_and_permutations() {
        let a = CycCoeffTable::builtin(KnownKnot::TrefoilRight);
        let b = CycCoeffTable::builtin(KnownKnot::Whitehead);
        let ab = a.product(&b).permuted(&[1, 0, 2]);
        assert_eq!(ab.components_of(0), vec![1]);
        assert_eq!(ab.components_of(1), vec![0, 2]);
        let lhs = ab.jprime(&[2, 3, 3]).unwrap();
        let rhs = &a.jprime(&[3]).unwrap() * &b.jprime(&[2, 3]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(ab.entry(&[1, 2, 1]).unwrap(), &a.factors[0].entry(&[2]) * &b.factors[0].entry(&[1, 1]));
    }

    #[test]
    fn framing_and_brackets() {
        let rs = RootSystem::new(5);
        let u = CycCoeffTable::builtin(KnownKnot::Unknot);
        assert_eq!(jones_colored(&u, &[0], &[3], &rs).unwrap(), rs.ev_poly(&qbracket(3)).unwrap());
        assert!(jones_colored(&u, &[1], &[5], &rs).unwrap().is_zero());
        let f = CycCoeffTable::builtin(KnownKnot::Fig8);
        let want = rs.ev_poly(&(&jprime_knot(&f, 2).unwrap() * &qbracket(2))).unwrap().mul_omega_pow(6);
        assert_eq!(jones_colored(&f, &[2], &[2], &rs).unwrap(), want);
    }
}

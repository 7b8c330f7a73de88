//! Surgery presentations on algebraically split links with framings ±1, ±2.

use std::fmt;

use crate::error::{Error, Result};
use crate::qjones::{CycCoeffTable, KnownKnot};

/// Framings in the order the presentation convention lists them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Framing {
    PlusTwo,
    MinusTwo,
    PlusOne,
    MinusOne,
}

impl Framing {
    pub fn value(self) -> i64 {
        match self {
            Framing::PlusTwo => 2,
            Framing::MinusTwo => -2,
            Framing::PlusOne => 1,
            Framing::MinusOne => -1,
        }
    }

    pub fn from_value(b: i64) -> Result<Framing> {
        match b {
            2 => Ok(Framing::PlusTwo),
            -2 => Ok(Framing::MinusTwo),
            1 => Ok(Framing::PlusOne),
            -1 => Ok(Framing::MinusOne),
            _ => Err(Error::Presentation(format!("unsupported framing {b}"))),
        }
    }

    pub fn is_two(self) -> bool {
        matches!(self, Framing::PlusTwo | Framing::MinusTwo)
    }

    pub fn is_positive(self) -> bool {
        self.value() > 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Spin,
    Coho,
}

/// A mod-2 vector `c` solving `L c ≡ diag L` (spin) or `L c ≡ 0` (coho).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureVector {
    pub c: Vec<u8>,
    pub kind: StructureKind,
}

impl StructureVector {
    /// Re-check the defining congruence against the diagonal linking matrix.
    pub fn satisfies(&self, p: &SurgeryPresentation) -> bool {
        if self.c.len() != p.arity() {
            return false;
        }
        p.framings.iter().zip(&self.c).all(|(f, &ci)| {
            let lhs = (f.value() * ci as i64).rem_euclid(2);
            let rhs = match self.kind {
                StructureKind::Spin => f.value().rem_euclid(2),
                StructureKind::Coho => 0,
            };
            ci <= 1 && lhs == rhs
        })
    }

    pub fn bits(&self) -> String {
        self.c.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryPresentation {
    name: Option<String>,
    framings: Vec<Framing>,
    table: CycCoeffTable,
}

impl SurgeryPresentation {
    /// Build and validate; components must already follow the ordering convention.
    pub fn new(framings: Vec<i64>, table: CycCoeffTable, name: Option<String>) -> Result<Self> {
        let framings = framings.into_iter().map(Framing::from_value).collect::<Result<Vec<_>>>()?;
        let p = SurgeryPresentation { name, framings, table };
        p.validate()?;
        Ok(p)
    }

    /// Build from components in any order, sorting them into convention order.
    pub fn sorted(framings: Vec<i64>, table: CycCoeffTable, name: Option<String>) -> Result<Self> {
        let framings = framings.into_iter().map(Framing::from_value).collect::<Result<Vec<_>>>()?;
        if framings.len() != table.arity() {
            return Err(Error::ArityMismatch { expected: table.arity(), got: framings.len() });
        }
        let mut perm: Vec<usize> = (0..framings.len()).collect();
        perm.sort_by_key(|&i| framings[i]);
        let framings = perm.iter().map(|&i| framings[i]).collect();
        let p = SurgeryPresentation { name, framings, table: table.permuted(&perm) };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.framings.len() != self.table.arity() {
            return Err(Error::ArityMismatch { expected: self.table.arity(), got: self.framings.len() });
        }
        if self.framings.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Presentation(
                "ordering convention: components must be listed +2, then -2, then +1, then -1".into(),
            ));
        }
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn framings(&self) -> &[Framing] {
        &self.framings
    }

    pub fn framing_values(&self) -> Vec<i64> {
        self.framings.iter().map(|f| f.value()).collect()
    }

    pub fn table(&self) -> &CycCoeffTable {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.framings.len()
    }

    fn count(&self, f: Framing) -> usize {
        self.framings.iter().filter(|&&g| g == f).count()
    }

    pub fn s_plus(&self) -> usize {
        self.count(Framing::PlusTwo)
    }

    pub fn s_minus(&self) -> usize {
        self.count(Framing::MinusTwo)
    }

    pub fn l_plus(&self) -> usize {
        self.count(Framing::PlusOne)
    }

    pub fn l_minus(&self) -> usize {
        self.count(Framing::MinusOne)
    }

    pub fn sigma_plus(&self) -> usize {
        self.s_plus() + self.l_plus()
    }

    pub fn sigma_minus(&self) -> usize {
        self.s_minus() + self.l_minus()
    }

    /// `H_1 = (Z/2)^t`.
    pub fn h1_rank(&self) -> usize {
        self.s_plus() + self.s_minus()
    }

    fn structures(&self, kind: StructureKind) -> Vec<StructureVector> {
        let twos: Vec<usize> = (0..self.arity()).filter(|&i| self.framings[i].is_two()).collect();
        let forced = match kind {
            StructureKind::Spin => 1,
            StructureKind::Coho => 0,
        };
        let t = twos.len();
        (0..1u64 << t)
            .map(|bits| {
                let mut c = vec![forced; self.arity()];
                for (j, &i) in twos.iter().enumerate() {
                    // the first 2-framed component is the most significant bit
                    c[i] = ((bits >> (t - 1 - j)) & 1) as u8;
                }
                StructureVector { c, kind }
            })
            .collect()
    }

    pub fn spin_structures(&self) -> Vec<StructureVector> {
        self.structures(StructureKind::Spin)
    }

    pub fn coho_classes(&self) -> Vec<StructureVector> {
        self.structures(StructureKind::Coho)
    }

    /// Disjoint union of the links, re-sorted to the ordering convention.
    pub fn connected_sum(&self, other: &SurgeryPresentation) -> SurgeryPresentation {
        let mut framings = self.framing_values();
        framings.extend(other.framing_values());
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}#{b}")),
            (a, b) => a.clone().or(b.clone()),
        };
        SurgeryPresentation::sorted(framings, self.table.product(&other.table), name)
            .expect("sum of valid presentations is valid")
    }

    pub fn stabilize_rp3(&self) -> SurgeryPresentation {
        self.connected_sum(&builtin("rp3").expect("builtin"))
    }

    /// Index of the component added by [`Self::stabilize_rp3`].
    pub fn stabilization_slot(&self) -> usize {
        self.s_plus()
    }
}

impl fmt::Display for SurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fr: Vec<String> = self.framings.iter().map(|x| format!("{:+}", x.value())).collect();
        write!(f, "{}[{}]", self.name.as_deref().unwrap_or("presentation"), fr.join(","))
    }
}

fn knot(k: KnownKnot, b: i64, name: &str) -> SurgeryPresentation {
    SurgeryPresentation::new(vec![b], CycCoeffTable::builtin(k), Some(name.into())).expect("builtin")
}

pub const BUILTIN_NAMES: &[&str] = &[
    "s3",
    "rp3",
    "poincare",
    "unknot_plus1",
    "unknot_minus1",
    "unknot_minus2",
    "trefoil_plus1",
    "trefoil_minus1",
    "trefoil_plus2",
    "trefoil_minus2",
    "left_trefoil_plus1",
    "left_trefoil_minus1",
    "fig8_plus1",
    "fig8_minus1",
    "fig8_plus2",
    "fig8_minus2",
    "whitehead",
];

/// Builtin presentations by name.
pub fn builtin(name: &str) -> Option<SurgeryPresentation> {
    use KnownKnot::*;
    let p = match name {
        "s3" => SurgeryPresentation::new(vec![], CycCoeffTable::empty(), Some("s3".into())).ok()?,
        "rp3" => knot(Unknot, 2, name),
        "poincare" => knot(TrefoilRight, 1, name),
        "unknot_plus1" => knot(Unknot, 1, name),
        "unknot_minus1" => knot(Unknot, -1, name),
        "unknot_minus2" => knot(Unknot, -2, name),
        "trefoil_plus1" => knot(TrefoilRight, 1, name),
        "trefoil_minus1" => knot(TrefoilRight, -1, name),
        "trefoil_plus2" => knot(TrefoilRight, 2, name),
        "trefoil_minus2" => knot(TrefoilRight, -2, name),
        "left_trefoil_plus1" => knot(TrefoilLeft, 1, name),
        "left_trefoil_minus1" => knot(TrefoilLeft, -1, name),
        "fig8_plus1" => knot(Fig8, 1, name),
        "fig8_minus1" => knot(Fig8, -1, name),
        "fig8_plus2" => knot(Fig8, 2, name),
        "fig8_minus2" => knot(Fig8, -2, name),
        "whitehead" => SurgeryPresentation::new(vec![2, -1], CycCoeffTable::builtin(Whitehead), Some(name.into())).ok()?,
        _ => return None,
    };
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(c: &[u8], kind: StructureKind) -> StructureVector {
        StructureVector { c: c.to_vec(), kind }
    }

    #[test]
    fn validation() {
        let u = CycCoeffTable::builtin(KnownKnot::Unknot);
        assert!(SurgeryPresentation::new(vec![1], u.clone(), None).is_ok());
        assert!(matches!(SurgeryPresentation::new(vec![3], u.clone(), None), Err(Error::Presentation(_))));
        let two = u.product(&u);
        let e = SurgeryPresentation::new(vec![-2, 2], two.clone(), None).unwrap_err();
        assert!(e.to_string().contains("ordering convention"));
        assert!(SurgeryPresentation::new(vec![1], two, None).is_err());
    }

    #[test]
    fn structures() {
        use StructureKind::*;
        let rp3 = builtin("rp3").unwrap();
        assert_eq!(rp3.spin_structures(), vec![sv(&[0], Spin), sv(&[1], Spin)]);
        assert_eq!(rp3.coho_classes(), vec![sv(&[0], Coho), sv(&[1], Coho)]);
        let p = builtin("poincare").unwrap();
        assert_eq!(p.spin_structures(), vec![sv(&[1], Spin)]);
        assert_eq!(p.coho_classes(), vec![sv(&[0], Coho)]);
        let w = builtin("whitehead").unwrap();
        assert_eq!(w.coho_classes(), vec![sv(&[0, 0], Coho), sv(&[1, 0], Coho)]);
        for s in w.spin_structures().iter().chain(&w.coho_classes()) {
            assert!(s.satisfies(&w));
        }
        assert!(!sv(&[0, 0], Spin).satisfies(&w));
    }

    #[test]
    fn sums_and_stabilization() {
        let s3 = builtin("s3").unwrap();
        let p = builtin("trefoil_plus1").unwrap();
        assert_eq!(p.connected_sum(&s3).framing_values(), vec![1]);
        let q = p.connected_sum(&builtin("rp3").unwrap());
        assert_eq!(q.framing_values(), vec![2, 1]);
        assert_eq!(q.table().components_of(0), vec![1]);
        assert_eq!(s3.stabilize_rp3().framing_values(), vec![2]);
        let w = builtin("whitehead").unwrap().stabilize_rp3();
        assert_eq!(w.framing_values(), vec![2, 2, -1]);
        assert_eq!(w.h1_rank(), 2);
        assert_eq!(w.spin_structures().len(), 4);
        assert_eq!((w.sigma_plus(), w.sigma_minus()), (2, 1));
    }
}

//! Fractional ideals `∏ m_j^{e_j}` of a semilocal PID.

use std::fmt;

use super::base::BaseRing;
use super::lat::Lattice;
use crate::arith::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    pub base: BaseRing,
    pub exps: Vec<i64>,
}

impl FracIdeal {
    pub fn new(base: &BaseRing, exps: Vec<i64>) -> FracIdeal {
        assert_eq!(exps.len(), base.rank());
        FracIdeal { base: base.clone(), exps }
    }

    pub fn unit(base: &BaseRing) -> FracIdeal {
        FracIdeal::new(base, vec![0; base.rank()])
    }

    pub fn principal(base: &BaseRing, x: &FieldElem) -> FracIdeal {
        FracIdeal::new(base, base.vvec(x))
    }

    pub fn generator(&self) -> FieldElem {
        self.base.elem(&self.exps)
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        x.is_zero() || self.base.vvec(x).iter().zip(&self.exps).all(|(v, e)| v >= e)
    }

    /// `self ⊆ o`.
    pub fn is_sub(&self, o: &FracIdeal) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a >= b)
    }

    pub fn mul(&self, o: &FracIdeal) -> FracIdeal {
        FracIdeal::new(&self.base, self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect())
    }

    pub fn add(&self, o: &FracIdeal) -> FracIdeal {
        FracIdeal::new(&self.base, self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn intersect(&self, o: &FracIdeal) -> FracIdeal {
        FracIdeal::new(&self.base, self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn pow(&self, k: i64) -> FracIdeal {
        FracIdeal::new(&self.base, self.exps.iter().map(|a| a * k).collect())
    }

    pub fn to_lattice(&self) -> Lattice {
        Lattice::span(&self.base, 1, [vec![self.generator()]])
    }

    /// The ideal of a nonzero rank-one lattice in `K^1`.
    pub fn from_lattice(l: &Lattice) -> Option<FracIdeal> {
        if l.dim != 1 || l.rank() != 1 {
            return None;
        }
        Some(FracIdeal::principal(&l.base, &l.rows[0][0]))
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator())
    }
}

//! Semilocal PIDs `R = {x : v_j(x) ≥ 0 for all j}` inside a field.

use std::fmt;

use thiserror::Error;

use crate::arith::{residue, residue_lift, uniformizer, val, Field, FieldElem, Val, ValError, Valuation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("base ring needs at least one valuation")]
    NoValuations,
    #[error("valuation {0} listed twice")]
    Duplicate(String),
    #[error("uniformizers of {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error(transparent)]
    Val(#[from] ValError),
    #[error("base ring or ambient dimension mismatch")]
    Mismatch,
    #[error("generators have rank {rank}, a full lattice needs {dim}")]
    NotFull { rank: usize, dim: usize },
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("{0}")]
    Structure(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    pub field: Field,
    pub vals: Vec<Valuation>,
    pub unis: Vec<FieldElem>,
}

impl BaseRing {
    pub fn new(field: Field, vals: Vec<Valuation>) -> Result<BaseRing, LatticeError> {
        if vals.is_empty() {
            return Err(LatticeError::NoValuations);
        }
        let mut unis = vec![];
        for (k, v) in vals.iter().enumerate() {
            if vals[..k].contains(v) {
                return Err(LatticeError::Duplicate(v.to_string()));
            }
            unis.push(uniformizer(v, &field)?);
        }
        for (j, u) in unis.iter().enumerate() {
            for (k, w) in vals.iter().enumerate() {
                if j != k && val(w, u)? != Val::Finite(0) {
                    return Err(LatticeError::NotCoprime(vals[j].to_string(), w.to_string()));
                }
            }
        }
        Ok(BaseRing { field, vals, unis })
    }

    /// ℤ localized at one rational prime.
    pub fn padic(p: u64) -> BaseRing {
        BaseRing::new(Field::Q, vec![Valuation::padic(p).unwrap()]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    /// Valuation vector of a nonzero element.
    pub fn vvec(&self, x: &FieldElem) -> Vec<i64> {
        self.vals
            .iter()
            .map(|v| val(v, x).expect("element outside base field").finite().expect("zero has no valuation vector"))
            .collect()
    }

    pub fn is_integral(&self, x: &FieldElem) -> bool {
        x.is_zero() || self.vvec(x).iter().all(|&k| k >= 0)
    }

    pub fn is_unit(&self, x: &FieldElem) -> bool {
        !x.is_zero() && self.vvec(x).iter().all(|&k| k == 0)
    }

    /// `∏ π_j^{e_j}`.
    pub fn elem(&self, e: &[i64]) -> FieldElem {
        let mut r = self.field.one();
        for (u, &k) in self.unis.iter().zip(e) {
            if k != 0 {
                r = &r * &u.pow(k);
            }
        }
        r
    }

    /// Canonical representative of `x + R` in `K/R`: the sum of principal
    /// parts at each prime, written with canonical digits.
    pub fn rep(&self, x: &FieldElem) -> FieldElem {
        let mut out = self.field.zero();
        if x.is_zero() {
            return out;
        }
        for (j, v) in self.vals.iter().enumerate() {
            let k = val(v, x).unwrap().finite().unwrap();
            if k >= 0 {
                continue;
            }
            let pi = &self.unis[j];
            let pinv = pi.inv();
            let mut u = x * &pi.pow(-k);
            for n in k..0 {
                let d = residue_lift(&self.field, &residue(v, &u).unwrap());
                if !d.is_zero() {
                    out = &out + &(&d * &pi.pow(n));
                    u = &u - &d;
                }
                u = &u * &pinv;
            }
        }
        out
    }

    /// Canonical representative of `x` modulo `p·R`, `p` nonzero.
    pub fn reduce(&self, x: &FieldElem, p: &FieldElem) -> FieldElem {
        p * &self.rep(&(x / p))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vals.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.field.name(), v.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn reps_are_canonical() {
        let r = BaseRing::new(Field::Q, vec![Valuation::PAdic(2), Valuation::PAdic(3)]).unwrap();
        let a = Field::Q.from_rat(rat(7, 12));
        let b = Field::Q.from_rat(rat(7, 12) + rat(5, 7));
        assert_eq!(r.rep(&a), r.rep(&b));
        assert!(r.is_integral(&(&a - &r.rep(&a))));
        assert!(BaseRing::new(Field::Q, vec![Valuation::PAdic(2), Valuation::PAdic(2)]).is_err());
    }
}

//! Exact scalars, polynomials, the supported fields and their valuations.

pub mod field;
pub mod parse;
pub mod poly;
pub mod valuation;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use field::{Field, FieldElem, Var};
pub use parse::{parse_elem, ParseError};
pub use poly::{BPoly, Coef, UPoly};
pub use valuation::{residue, residue_lift, uniformizer, uniformizer_pair, val, Residue, Val, ValError, Valuation};

/// Arbitrary precision rational; always reduced with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicity of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

//! Lattices over semilocal PIDs, fractional ideals and algebra structure.

pub mod algebra;
pub mod base;
pub mod ideal;
pub mod lat;
pub mod linalg;

pub use algebra::{Algebra, AlgebraDesc};
pub use base::{BaseRing, LatticeError};
pub use ideal::FracIdeal;
pub use lat::Lattice;
pub use linalg::{Mat, Vector};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};

    fn q(n: i64) -> crate::arith::FieldElem {
        Field::Q.int(n)
    }

    fn std(n: usize) -> (BaseRing, Algebra, Lattice) {
        let r = BaseRing::padic(5);
        let a = Algebra::matrix(Field::Q, n);
        let l = Lattice::standard(&r, n * n);
        (r, a, l)
    }

    #[test]
    fn redundant_generators() {
        let (_, _, l) = std(2);
        let five = l.scale(&q(5));
        assert_eq!(five.add(&l), l);
        assert_eq!(five.intersect(&l), five);
        assert_eq!(l.quotient_length(&five).unwrap(), 4);
    }

    #[test]
    fn hurwitz_canonical_form() {
        let r = BaseRing::padic(2);
        let h = Field::Q.from_rat(rat(1, 2));
        let g = vec![
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(1), q(0), q(0)],
            vec![q(0), q(0), q(1), q(0)],
            vec![h.clone(), h.clone(), h.clone(), h],
        ];
        let l = Lattice::full(&r, 4, g).unwrap();
        assert_eq!(l.det_vval(), vec![-1]);
        let h = Field::Q.from_rat(rat(1, 2));
        assert_eq!(l.rows[0], vec![h.clone(), h.clone(), h.clone(), h]);
        assert_eq!(l.rows[3], vec![q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn colon_and_products() {
        let (_, a, b) = std(2);
        assert_eq!(b.mult(&b, &a), b);
        assert_eq!(b.colon_left(&b, &a).unwrap(), b);
        let five = b.scale(&q(5));
        assert_eq!(five.colon_left(&b, &a).unwrap(), five);
        assert_eq!(five.mult(&b.scale(&Field::Q.from_rat(rat(1, 5))), &a), b);
    }

    #[test]
    fn column_ideal_quotients() {
        let (r, a, b) = std(2);
        let c = Lattice::span(&r, 4, [a.basis(0), a.basis(2)]);
        assert!(c.is_simple_quotient(&c.scale(&q(5)), &b, &a).unwrap());
        assert!(!b.is_simple_quotient(&b.scale(&q(5)), &b, &a).unwrap());
        let d1 = Lattice::standard(&r, 1);
        let m1 = Algebra::matrix(Field::Q, 1);
        assert!(!d1.is_simple_quotient(&d1.scale(&q(25)), &d1, &m1).unwrap());
        assert!(d1.is_simple_quotient(&d1.scale(&q(5)), &d1, &m1).unwrap());
    }

    #[test]
    fn line_intersection() {
        let (r, _, b) = std(2);
        let line = Lattice::span(&r, 4, [vec![q(1), q(1), q(0), q(0)]]);
        let big = line.scale(&Field::Q.from_rat(rat(1, 25)));
        let i = b.scale(&q(5)).intersect(&big);
        assert_eq!(i, line.scale(&q(5)));
    }
}

use std::sync::Arc;

use gbs::arith::{rat, Field};
use gbs::filtration::{AlgebraFiltration, FieldFiltration, Filt, StepFunction, Tail};
use gbs::glider::{associated_strong, Glider, TailRule};
use gbs::lattice::{BaseRing, FracIdeal, Lattice};

fn q(n: i64) -> gbs::arith::FieldElem {
    Field::Q.int(n)
}

#[test]
fn membership() {
    let f = FieldFiltration::padic(5);
    assert!(f.member(-2, &q(50)));
    assert!(!f.member(-3, &q(50)));
    let pq = FieldFiltration::pq(2, 3);
    assert!(pq.member(0, &Field::Q.from_rat(rat(1, 5))));
    assert!(!pq.member(0, &Field::Q.from_rat(rat(1, 2))));
}

#[test]
fn strongness() {
    assert!(FieldFiltration::padic(5).is_strong());
    assert!(FieldFiltration::pq(2, 3).is_strong());
    assert!(!FieldFiltration::modified_dvr(5).is_strong());
}

#[test]
fn steps() {
    assert_eq!(FieldFiltration::padic(5).estep(), Some(1));
    assert_eq!(FieldFiltration::half_step(5).estep(), Some(2));
    assert_eq!(FieldFiltration::modified_dvr(5).estep(), None);
    // F_{−2}·F_{−2} = F_{−4} for the half-step filtration, by ideal arithmetic
    let h = FieldFiltration::half_step(5);
    for n in 1..=4 {
        assert_eq!(h.level(-2).pow(n), h.level(-2 * n));
    }
}

#[test]
fn jacobson() {
    assert!(FieldFiltration::padic(5).jacobson_check());
    assert!(FieldFiltration::pq(2, 3).jacobson_check());
    let raw = StepFunction::from_parts(-1, vec![vec![0], vec![0]], Tail::new(1, vec![1]), Tail::new(1, vec![1]));
    assert!(!raw.jacobson_check());
    assert!(raw.validate().is_err());
}

#[test]
fn rejects_bad_step_functions() {
    let flat = StepFunction::new(0, vec![vec![0]], Tail::new(1, vec![0]), Tail::new(1, vec![1]));
    assert!(flat.is_err());
    let sub = StepFunction::new(-1, vec![vec![-1], vec![0], vec![3]], Tail::new(1, vec![1]), Tail::new(1, vec![1]));
    assert!(sub.is_err());
}

#[test]
fn products_of_levels() {
    for f in [FieldFiltration::padic(5), FieldFiltration::modified_dvr(5), FieldFiltration::half_step(3)] {
        for n in -6..=6 {
            for m in -6..=6 {
                assert!(f.level(n).mul(&f.level(m)).is_sub(&f.level(n + m)));
            }
        }
    }
}

#[test]
fn associated_strong_filtrations() {
    let f = FieldFiltration::padic(5);
    let filt = Arc::new(Filt::Field(f.clone()));
    let m = Glider::negative_part(filt, 0);
    assert_eq!(associated_strong(&f, &m).unwrap().level(-3), f.level(-3));

    let md = FieldFiltration::modified_dvr(5);
    let filt = Arc::new(Filt::Field(md.clone()));
    let r = Lattice::standard(&md.base, 1);
    let m = Glider::new(filt, vec![r], TailRule::MultiplyBy(FracIdeal::new(&md.base, vec![1])));
    let s = associated_strong(&md, &m).unwrap();
    assert!(s.is_dvr_valuation());
    for n in 0..5 {
        assert!(md.level(-n).is_sub(&s.level(-n)));
    }

    let h = FieldFiltration::half_step(5);
    let filt = Arc::new(Filt::Field(h.clone()));
    let m = Glider::negative_part(filt, 0);
    let s = associated_strong(&h, &m).unwrap();
    assert_eq!(s.estep(), Some(2));
    for n in -8..=8 {
        assert_eq!(s.level(n), h.level(n));
    }
}

#[test]
fn associated_strong_errors() {
    let f = FieldFiltration::padic(5);
    let filt = Arc::new(Filt::Field(f.clone()));
    assert!(associated_strong(&f, &Glider::negative_part(filt.clone(), 1)).is_err());
    let up = Glider::new(filt, vec![f.lattice(0), f.lattice(1)], TailRule::Constant);
    assert!(associated_strong(&f, &up).is_err());
}

#[test]
fn induced_on_k() {
    let fa = AlgebraFiltration::matrix(FieldFiltration::padic(5), 2);
    assert_eq!(fa.induced_on_k().unwrap(), fa.base);
    assert!(fa.is_strong());

    let r = BaseRing::padic(5);
    let b = Lattice::standard(&r, 4);
    let five = FracIdeal::new(&r, vec![1]);
    let levels = vec![b.scale(&q(5)), b.clone(), b.scale(&Field::Q.from_rat(rat(1, 5)))];
    let ex = AlgebraFiltration::explicit(
        fa.alg.clone(),
        -1,
        levels,
        (1, five.pow(-1)),
        (1, five.clone()),
    )
    .unwrap();
    assert!(ex.base.is_dvr_valuation());
    assert!(ex.is_strong());
    for n in -4..=4 {
        assert_eq!(ex.level(n), fa.level(n));
    }
}

use std::sync::Arc;

use gbs::arith::Field;
use gbs::enumerate::{
    bs_left_ideal, classify, enumerate_gbs_csa, enumerate_gbs_field, find_negative_part_witness, in_left_ideal,
    realize, realize_csa, realize_field, BsPoint, GbsElement, Verdict,
};
use gbs::filtration::{AlgebraFiltration, FieldFiltration, Filt};
use gbs::glider::{classify_subglider, Glider, TailRule, TrivialityVerdict};
use gbs::lattice::{FracIdeal, Lattice};

fn q(n: i64) -> gbs::arith::FieldElem {
    Field::Q.int(n)
}

fn fv5() -> Arc<Filt> {
    Arc::new(Filt::Field(FieldFiltration::padic(5)))
}

#[test]
fn axiom_check() {
    let f = fv5();
    assert!(Glider::negative_part(f.clone(), 0).is_glider().is_ok());
    let up = Glider::new(f.clone(), vec![f.level(0), f.level(1)], TailRule::Constant);
    let fail = up.is_glider().unwrap_err();
    assert_eq!((fail.i, fail.j), (1, 1));
    assert!(!f.level(0).contains_vec(&fail.witness));
}

#[test]
fn bodies_and_lengths() {
    let f = fv5();
    let m = Glider::negative_part(f.clone(), 0);
    assert!(m.body().is_zero());
    assert_eq!(m.essential_length(), None);
    let l = f.level(-3);
    let c = Glider::new(f.clone(), vec![f.level(0), f.level(-1), f.level(-2), l.clone()], TailRule::Constant);
    assert_eq!(c.body(), l);
    assert_eq!(c.essential_length(), Some(2));
    let z = Glider::new(f.clone(), vec![f.level(0), f.level(-1)], TailRule::ZeroAfter);
    assert_eq!(z.essential_length(), Some(1));
    let u = Glider::new(f.clone(), vec![f.level(-1)], TailRule::MultiplyBy(FracIdeal::unit(f.base())));
    assert_eq!(u.body(), f.level(-1));
    assert_eq!(c.shift(1).unwrap().essential_length(), Some(1));
}

#[test]
fn shifts() {
    let f = fv5();
    let m = Glider::negative_part(f.clone(), 0);
    assert!(m.shift(1).unwrap().same_chain(&Glider::negative_part(f.clone(), -1)));
    assert!(m.scale(&q(5)).same_chain(&Glider::negative_part(f.clone(), -1)));
    assert!(m.shift(4).unwrap().is_glider().is_ok());
    assert!(m.shift(-1).is_err());
}

#[test]
fn triviality() {
    let f = fv5();
    let m = Glider::negative_part(f.clone(), 0);
    let shifted = m.shift(1).unwrap();
    match classify_subglider(&shifted, &m).unwrap() {
        TrivialityVerdict::TrivialT3 { alpha } => assert!(alpha.iter().enumerate().all(|(n, a)| *a == n as i64 + 1)),
        v => panic!("{v:?}"),
    }
    let cut = Glider::new(f.clone(), vec![f.level(0), f.level(-1)], TailRule::ZeroAfter);
    assert_eq!(classify_subglider(&cut, &m).unwrap(), TrivialityVerdict::TrivialT2(2));
    let big = Glider::negative_part(f.clone(), 1);
    assert!(matches!(classify_subglider(&big, &m).unwrap(), TrivialityVerdict::NotSubglider { level: 0, .. }));
}

#[test]
fn pq_example() {
    let f = Arc::new(Filt::Field(FieldFiltration::pq(2, 3)));
    let m = Glider::negative_part(f.clone(), 0);
    let n = m.scale(&q(2));
    assert_eq!(n.level(1), Lattice::span(f.base(), 1, [vec![q(12)]]));
    match classify_subglider(&n, &m).unwrap() {
        TrivialityVerdict::NonTrivial { level, sandwich: Some((k, w)) } => {
            assert_eq!((level, k), (0, 0));
            assert_eq!(w, Lattice::span(f.base(), 1, [vec![q(2)]]));
        }
        v => panic!("{v:?}"),
    }
    // the level-one sandwich (6) ⊋ (12) ⊋ (36)
    assert!(m.level(2).is_sub(&n.level(1)) && n.level(1).is_sub(&m.level(1)));
    assert!(n.level(1) != m.level(1) && n.level(1) != m.level(2));
    match classify(&m) {
        Verdict::Reducible { witness, verdict } => {
            assert!(witness.same_chain(&n));
            assert!(matches!(verdict, TrivialityVerdict::NonTrivial { .. }));
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn field_classification() {
    let f = fv5();
    let m = Glider::negative_part(f.clone(), 2);
    assert_eq!(classify(&m).element(), Some(&GbsElement::field(2)));
    let skip = Glider::new(f.clone(), vec![f.level(0), f.level(-2)], TailRule::FiltrationTail);
    match classify(&skip) {
        Verdict::Reducible { verdict: TrivialityVerdict::NonTrivial { sandwich: Some((0, w)), .. }, .. } => {
            assert_eq!(w, f.level(-1))
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn field_enumeration() {
    assert_eq!(enumerate_gbs_field(&FieldFiltration::padic(5), -1, 1).len(), 3);
    assert!(enumerate_gbs_field(&FieldFiltration::pq(2, 3), -5, 5).is_empty());
    let md = FieldFiltration::modified_dvr(5);
    let els = enumerate_gbs_field(&md, -1, 1);
    assert_eq!(els, enumerate_gbs_field(&FieldFiltration::padic(5), -1, 1));
    let filt = Arc::new(Filt::Field(md));
    for g in els {
        assert_eq!(classify(&realize(filt.clone(), &g)).element(), Some(&g));
    }
    let f = fv5();
    for n in -2..=2 {
        let m = realize_field(f.clone(), n).scale(&q(5));
        assert_eq!(classify(&m).element(), Some(&GbsElement::field(n - 1)));
    }
}

#[test]
fn left_ideals() {
    let p = BsPoint::new(vec![q(1), q(1)]).unwrap();
    let b = bs_left_ideal(&p);
    assert_eq!(b[0], vec![q(1), q(1), q(0), q(0)]);
    assert_eq!(b[1], vec![q(0), q(0), q(1), q(1)]);
    let a = gbs::lattice::Algebra::matrix(Field::Q, 2);
    for x in 0..4 {
        for v in &b {
            assert!(in_left_ideal(&p, &a.mul(&a.basis(x), v)));
        }
    }
    assert!(BsPoint::new(vec![q(0), q(0)]).is_err());
    assert_eq!(BsPoint::new(vec![q(0), q(3)]).unwrap(), BsPoint::standard(&Field::Q, 2, 1));
}

#[test]
fn csa_classification() {
    let fa = AlgebraFiltration::matrix(FieldFiltration::padic(5), 2);
    let f = Arc::new(Filt::Algebra(fa.clone()));
    let p = BsPoint::standard(&Field::Q, 2, 0);
    let m = realize_csa(f.clone(), &p, 0);
    assert_eq!(classify(&m).element(), Some(&GbsElement::csa(p.clone(), 0)));

    let whole = Glider::negative_part(f.clone(), 0);
    assert!(matches!(classify(&whole), Verdict::Reducible { .. }));

    let skip = Glider::new(f.clone(), vec![m.level(0), m.level(2)], TailRule::FiltrationTail);
    match classify(&skip) {
        Verdict::Reducible { verdict: TrivialityVerdict::NonTrivial { sandwich: Some((0, w)), .. }, .. } => {
            assert_eq!(w, m.level(1))
        }
        v => panic!("{v:?}"),
    }
    let pts = [p.clone(), BsPoint::standard(&Field::Q, 2, 1)];
    let els = enumerate_gbs_csa(&fa, 0, 1, &pts).unwrap();
    assert_eq!(els.len(), 4);
    for g in &els {
        assert_eq!(classify(&realize(f.clone(), g)).element(), Some(g));
    }
    assert!(enumerate_gbs_csa(&fa, 0, 1, &[]).unwrap().is_empty());
}

#[test]
fn negative_part_witness() {
    let fa = AlgebraFiltration::matrix(FieldFiltration::padic(5), 2);
    assert!(find_negative_part_witness(&fa).is_ok());
    let fa1 = AlgebraFiltration::matrix(FieldFiltration::padic(5), 1);
    assert!(find_negative_part_witness(&fa1).is_err());
}

use gbs::arith::{rat, Field, FieldElem};
use gbs::brandt::{is_maximal_order, sample_units, verify_groupoid, BrandtError, NormalGliderIdeal};
use gbs::filtration::{AlgebraFiltration, FieldFiltration, Filt};
use gbs::lattice::{Algebra, FracIdeal, Lattice};
use gbs::orders::{explicit_filtration, radical, OrderData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> FieldElem {
    Field::Q.int(n)
}

fn setup() -> (Algebra, FieldFiltration, Lattice) {
    let fk = FieldFiltration::padic(5);
    (Algebra::matrix(Field::Q, 2), fk.clone(), Lattice::standard(&fk.base, 4))
}

fn shifted(k: i64) -> NormalGliderIdeal {
    let (a, fk, b) = setup();
    NormalGliderIdeal::chain(a, fk, b.scale(&q(5).pow(k))).unwrap()
}

/// `g·L·g⁻¹` through the 2×2 matrix formula, independent of the colon solver.
fn conjugate(a: &Algebra, l: &Lattice, g: &[FieldElem]) -> Lattice {
    let det = &(&g[0] * &g[3]) - &(&g[1] * &g[2]);
    let gi: Vec<FieldElem> = vec![&g[3] / &det, -(&g[1] / &det), -(&g[2] / &det), &g[0] / &det];
    Lattice::span(&l.base, 4, l.rows.iter().map(|r| a.mul(&a.mul(g, r), &gi)))
}

#[test]
fn glider_orders() {
    let (a, fk, b) = setup();
    let m = shifted(0);
    assert_eq!(m.left_order().unwrap(), b);
    assert_eq!(m.right_order().unwrap(), b);

    let h = OrderData::hurwitz2();
    let p = radical(&h, 0).unwrap();
    let hk = explicit_filtration(&h, &[1]).unwrap().base;
    let chain = NormalGliderIdeal::new(
        h.alg.clone(),
        hk,
        vec![h.lattice.clone(), p.ideal.clone()],
        2,
        FracIdeal::new(h.base(), vec![1]),
    )
    .unwrap();
    assert_eq!(chain.level(3), h.pow(&p.ideal, 3));
    assert_eq!(chain.left_order().unwrap(), h.lattice);
    assert!(is_maximal_order(&h.alg, &h.lattice).unwrap());

    let g = vec![q(1), q(2), q(3), q(7)];
    let gb = NormalGliderIdeal::translate(a.clone(), fk, &b, &g, &a.one()).unwrap();
    assert_eq!(gb.left_order().unwrap(), conjugate(&a, &b, &g));
    assert_eq!(gb.right_order().unwrap(), b);
}

#[test]
fn products() {
    let (a, _, _) = setup();
    let m = shifted(1);
    let n = NormalGliderIdeal::translate(a.clone(), m.fk.clone(), &m.level(0), &[q(1), q(1), q(0), q(1)], &a.one())
        .unwrap();
    let mn = m.product(&n).unwrap();
    let unfold =
        m.level(0).mult(&n.level(2), &a).add(&m.level(1).mult(&n.level(1), &a)).add(&m.level(2).mult(&n.level(0), &a));
    assert_eq!(mn.level(2), unfold);

    let id = shifted(0);
    assert!(id.product(&id).unwrap().same_chain(&id));
    for k in -2..=2 {
        for l in -2..=2 {
            assert!(shifted(k).product(&shifted(l)).unwrap().same_chain(&shifted(k + l)));
        }
    }
}

#[test]
fn inverses() {
    let (_, fk, b) = setup();
    let m = shifted(0);
    let inv = m.inverse().unwrap();
    for i in 0..=6 {
        assert_eq!(inv.level(i), b.scale(&q(5).pow(i)));
    }
    let pi = shifted(1).inverse().unwrap();
    assert!(pi.same_chain(&shifted(-1)));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (a, _, _) = setup();
    let mut done = 0;
    while done < 10 {
        let g: Vec<FieldElem> = (0..4).map(|_| q(rng.gen_range(-6..=6))).collect();
        let h: Vec<FieldElem> = (0..4).map(|_| q(rng.gen_range(-6..=6))).collect();
        if a.inverse(&g).is_none() || a.inverse(&h).is_none() {
            continue;
        }
        let top = b.scale(&q(5).pow(rng.gen_range(-2..=2)));
        let m = NormalGliderIdeal::translate(a.clone(), fk.clone(), &top, &g, &h).unwrap();
        assert!(m.inverse().unwrap().inverse().unwrap().same_chain(&m));
        done += 1;
    }
}

#[test]
fn inverse_needs_maximal_order() {
    let (a, fk, _) = setup();
    let two = |k: usize| a.basis(k).iter().map(|x| x * &q(5)).collect::<Vec<_>>();
    let small = Lattice::full(&fk.base, 4, [a.one(), two(0), two(1), two(2)]).unwrap();
    assert!(!is_maximal_order(&a, &small).unwrap());
    let m = NormalGliderIdeal::chain(a, fk, small).unwrap();
    assert_eq!(m.inverse().unwrap_err(), BrandtError::NotMaximal);
}

#[test]
fn rejects_non_gliders() {
    let (a, fk, b) = setup();
    let up = NormalGliderIdeal::new(a.clone(), fk.clone(), vec![b.clone(), b.clone()], 1, FracIdeal::new(&fk.base, vec![1]));
    assert!(matches!(up, Err(BrandtError::NotNormal(_))));
    let thin = Lattice::span(&fk.base, 4, [a.one()]);
    let bad = NormalGliderIdeal::new(a, fk.clone(), vec![thin], 1, FracIdeal::new(&fk.base, vec![1]));
    assert!(matches!(bad, Err(BrandtError::NotNormal(_))));
}

#[test]
fn strong_case_unit() {
    let (_, fk, _) = setup();
    let fa = Filt::Algebra(AlgebraFiltration::matrix(fk, 2));
    let m = shifted(0);
    let e = m.unit_left().unwrap();
    for i in 0..=6 {
        assert_eq!(e.level(i), fa.level(-i));
    }
    assert!(e.same_chain(&m.modulizer_left().unwrap()));
    assert!(e.product(&e).unwrap().same_chain(&e));
    assert!(e.product(&m).unwrap().same_chain(&m));
    assert!(e.unit_left().unwrap().same_chain(&e));
    assert!(e.is_multiplicative());
}

#[test]
fn units_and_orders() {
    let (a, fk, b) = setup();
    let units = sample_units(&a);
    for (g, h) in &units {
        let m = NormalGliderIdeal::translate(a.clone(), fk.clone(), &b, g, h).unwrap();
        let el = m.unit_left().unwrap();
        assert!(el.same_chain(&m.modulizer_left().unwrap()));
        assert!(m.unit_right().unwrap().same_chain(&m.modulizer_right().unwrap()));
        assert!(el.is_multiplicative());
        assert_eq!(el.level(0), conjugate(&a, &b, g));
        let mi = m.inverse().unwrap();
        if let Ok(p) = m.proper_product(&mi) {
            let lo = p.left_order().unwrap();
            assert!(m.left_order().unwrap().is_sub(&lo));
        }
    }
}

#[test]
fn groupoid_samples() {
    let shifts: Vec<_> = (-2..=2).map(shifted).collect();
    let r = verify_groupoid(&shifts).unwrap();
    assert!(r.all_pass(), "{r:?}");
    assert!(r.blocked.is_empty());

    let (a, fk, b) = setup();
    let conj: Vec<_> = sample_units(&a)
        .iter()
        .map(|(g, h)| NormalGliderIdeal::translate(a.clone(), fk.clone(), &b, g, h).unwrap())
        .collect();
    let r = verify_groupoid(&conj).unwrap();
    assert!(r.all_pass(), "{r:?}");
    assert_eq!(r.axioms[2].checked, 24);
    assert!(!r.blocked.is_empty());
    let (s, t) = r.blocked[0];
    assert_eq!(conj[s].proper_product(&conj[t]).unwrap_err(), BrandtError::NotProper);
}

#[test]
fn hurwitz_units() {
    let h = OrderData::hurwitz2();
    let p = radical(&h, 0).unwrap();
    let hk = explicit_filtration(&h, &[1]).unwrap().base;
    let m = NormalGliderIdeal::new(h.alg.clone(), hk, vec![h.lattice.clone(), p.ideal.clone()], 2, FracIdeal::new(h.base(), vec![1]))
        .unwrap();
    let e = m.unit_left().unwrap();
    assert!(e.same_chain(&m.modulizer_left().unwrap()));
    assert!(m.inverse().unwrap().inverse().unwrap().same_chain(&m));
    // the inverse of the P-chain starts at Λ and steps by P
    let inv = m.inverse().unwrap();
    assert_eq!(inv.level(1), p.ideal);
    assert!(!inv.level(0).scale(&Field::Q.from_rat(rat(1, 2))).is_sub(&h.lattice));
}

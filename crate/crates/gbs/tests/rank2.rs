use gbs::arith::{val, Field, FieldElem, Val, Valuation};
use gbs::enumerate::{classify, GbsElement, Verdict};
use gbs::lattice::FracIdeal;
use gbs::rank2::{
    classify_z2_glider, horizontal_coarsening, leading_coefficient, realize_z2, residue_base, residue_glider,
    vertical_body_glider, x_adic_base, LexIdeal, Z2Filtration, Z2Glider, Z2Tail, Z2Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x() -> FieldElem {
    Field::QXY.gen().unwrap()
}

fn y() -> FieldElem {
    Field::QXY.y().unwrap()
}

fn mono(a: i64, b: i64) -> FieldElem {
    &x().pow(a) * &y().pow(b)
}

/// A polynomial from `(a, b, c)` terms and its lex-least exponent, read off the support.
fn poly(terms: &[(i64, i64, i64)]) -> (FieldElem, (i64, i64)) {
    let mut f = Field::QXY.zero();
    for &(a, b, c) in terms {
        f = &f + &(&Field::QXY.int(c) * &mono(a, b));
    }
    let least = terms.iter().filter(|t| t.2 != 0).map(|t| (t.0, t.1)).min().unwrap();
    (f, least)
}

fn random_terms(rng: &mut ChaCha8Rng) -> Vec<(i64, i64, i64)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = vec![];
    for _ in 0..rng.gen_range(1..=4) {
        let e = (rng.gen_range(0..4), rng.gen_range(0..4));
        if seen.insert(e) {
            out.push((e.0, e.1, rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        }
    }
    out
}

#[test]
fn lex_valuation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = Valuation::Composite2;
    for _ in 0..60 {
        let (f, lf) = poly(&random_terms(&mut rng));
        let (g, lg) = poly(&random_terms(&mut rng));
        assert_eq!(val(&v, &f).unwrap(), Val::Finite2(lf.0, lf.1));
        let fg = val(&v, &(&f * &g)).unwrap();
        assert_eq!(fg, Val::Finite2(lf.0 + lg.0, lf.1 + lg.1));
        let q = val(&v, &(&f / &g)).unwrap();
        assert_eq!(q, Val::Finite2(lf.0 - lg.0, lf.1 - lg.1));
    }
}

#[test]
fn lex_ideals() {
    use LexIdeal::*;
    let chain = [Whole, Row(-1), Cut(-1, 5), Cut(0, -3), Cut(0, 0), Row(1), Cut(1, 2), Zero];
    for (s, a) in chain.iter().enumerate() {
        for (t, b) in chain.iter().enumerate() {
            assert_eq!(a.is_sub(*b), s >= t, "{a} {b}");
        }
    }
    assert_eq!(Cut(0, 0).mul(Row(2)), Row(2));
    assert!(Row(0).contains(&y().pow(-7)));
    assert!(!Cut(0, 0).contains(&y().pow(-1)));
    assert!(Cut(0, 0).contains(&(&x() * &y().pow(-9))));
    let f = Z2Filtration::Composite;
    assert!(!f.member(0, 0, &y().inv()));
    assert!(horizontal_coarsening(f).member(0, &y().inv()));
    assert!(!horizontal_coarsening(f).member(0, &x().inv()));
}

#[test]
fn round_trip() {
    for m in -2..=2 {
        for n in -2..=2 {
            let g = realize_z2(m, n, (2, 2));
            assert!(g.is_glider().is_ok());
            assert_eq!(classify_z2_glider(&g), Z2Verdict::Irreducible { m, n });
        }
    }
}

#[test]
fn vertical_bodies() {
    for m in -2..=2 {
        let g = realize_z2(m, 1, (2, 3));
        let b = vertical_body_glider(&g).unwrap();
        for j in 0..=5 {
            // x^{j−m} y^{−k} lies in every level of column j, x^{j−m−1} y^k in none below level k
            for i in 0..=6 {
                assert!(g.level(j, i).contains(&mono(j - m, -40)));
            }
            assert!(!g.level(j, 6).contains(&mono(j - m - 1, 4)));
            assert_eq!(b.level(j), FracIdeal::new(&x_adic_base(), vec![j - m]).to_lattice());
        }
        assert_eq!(classify(&b).element(), Some(&GbsElement::field(m)));
    }
    let constant = Z2Glider::new(
        Z2Filtration::Composite,
        vec![vec![LexIdeal::Row(0), LexIdeal::Row(0)]],
        Z2Tail::ZeroAfter,
        Z2Tail::Constant,
    )
    .unwrap();
    assert_eq!(constant.column_body(0), LexIdeal::Row(0));
    let dead = Z2Glider::new(
        Z2Filtration::Composite,
        vec![vec![LexIdeal::Cut(-1, 0), LexIdeal::Cut(-1, 1)]],
        Z2Tail::ZeroAfter,
        Z2Tail::ZeroAfter,
    )
    .unwrap();
    assert!(dead.is_glider().is_ok());
    let b = vertical_body_glider(&dead).unwrap();
    assert!(b.level(0).is_zero());
    assert!(!matches!(classify(&b), Verdict::Irreducible { .. }));
}

#[test]
fn residues() {
    let g = realize_z2(1, -1, (2, 2));
    for s in 0..=2 {
        let r = residue_glider(&g, s).unwrap();
        assert_eq!(classify(&r).element(), Some(&GbsElement::field(-1)));
        for i in 0..=4 {
            // the leading coefficient of the generator x^e y^{i+1} is y^{i+1}
            let gen = mono(s - 2, i + 1);
            assert!(g.level(s, i).contains(&gen));
            let lc = leading_coefficient(&gen).unwrap();
            assert_eq!(lc, Field::QY.y().unwrap().pow(i + 1));
            assert_eq!(r.level(i), FracIdeal::new(&residue_base(), vec![i + 1]).to_lattice());
        }
    }
    assert!(residue_glider(&g, 3).is_err());
    let zero_col = Z2Glider::new(
        Z2Filtration::Composite,
        vec![vec![LexIdeal::Cut(0, 0), LexIdeal::Cut(1, 0)]],
        Z2Tail::ZeroAfter,
        Z2Tail::ZeroAfter,
    )
    .unwrap();
    assert!(residue_glider(&zero_col, 0).unwrap().level(1).is_zero());
}

#[test]
fn skipped_vertical_level() {
    let (m, n) = (0, 0);
    let mut grid = vec![];
    for j in 0..=2 {
        let col = (0..=2)
            .map(|i| if j == 0 { LexIdeal::Cut(-m - 1, 2 * i - n) } else { LexIdeal::Row(j - m) })
            .collect();
        grid.push(col);
    }
    let g = Z2Glider::new(Z2Filtration::Composite, grid, Z2Tail::Multiply(1, 0), Z2Tail::Multiply(0, 2)).unwrap();
    assert!(g.is_glider().is_ok());
    match classify_z2_glider(&g) {
        Z2Verdict::Reducible { witness, cell, between: (hi, lo) } => {
            assert_eq!(witness, g.scale(0, 1));
            let w = witness.level(cell.0, cell.1);
            assert!(g.level(lo.0, lo.1).is_sub(w) && w.is_sub(g.level(hi.0, hi.1)));
            assert!(w != g.level(lo.0, lo.1) && w != g.level(hi.0, hi.1));
        }
        v => panic!("{v:?}"),
    }
    // the column bodies still form the irreducible x-adic chain
    assert_eq!(classify(&vertical_body_glider(&g).unwrap()).element(), Some(&GbsElement::field(m)));

    let mut bad = realize_z2(0, 0, (1, 1));
    bad.grid[0][1] = LexIdeal::Cut(-1, 2);
    assert!(bad.is_glider().is_err());
    assert!(matches!(classify_z2_glider(&bad), Z2Verdict::OutOfClass(_)));
}

#[test]
fn rank_one_presentation() {
    let grid = (0..=1).map(|j| vec![LexIdeal::Row(j), LexIdeal::Row(j)]).collect();
    let g = Z2Glider::new(Z2Filtration::HorizontalOnly, grid, Z2Tail::Multiply(1, 0), Z2Tail::Constant).unwrap();
    assert!(g.is_glider().is_ok());
    assert!(matches!(classify_z2_glider(&g), Z2Verdict::OutOfClass(_)));
}

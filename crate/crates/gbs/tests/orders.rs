use gbs::arith::{rat, Field, FieldElem, Valuation};
use gbs::lattice::{Algebra, BaseRing, FracIdeal, Lattice};
use gbs::orders::{
    ceil_div, ceil_sum_compare, explicit_filtration, induced_degree_minus_one, maxorder_strong_check, radical,
    strong_by_intersection, CeilCmp, OrderData, OrderError,
};

fn q(n: i64) -> FieldElem {
    Field::Q.int(n)
}

fn naive_ceil(k: i64, e: i64) -> i64 {
    let f = k / e;
    if f * e < k {
        f + 1
    } else {
        f
    }
}

#[test]
fn ceil_comparison_matches_direct_evaluation() {
    for e in 1..=7 {
        for k in 0..=25 {
            assert_eq!(ceil_div(k, e), naive_ceil(k, e));
            for l in 0..=25 {
                let lhs = naive_ceil(k, e) + naive_ceil(l, e);
                let rhs = naive_ceil(k + l, e);
                assert!(lhs >= rhs);
                let want = if lhs == rhs { CeilCmp::Equal } else { CeilCmp::Strict };
                assert_eq!(ceil_sum_compare(e, k, l).unwrap(), want, "e={e} k={k} l={l}");
            }
        }
    }
    assert_eq!(ceil_sum_compare(0, 1, 1), Err(OrderError::ZeroIndex));
}

/// Reduced norm of `a + bi + cj + dk` in `(−1, −1)`.
fn hnorm(x: &[FieldElem]) -> gbs::arith::Rat {
    x.iter().map(|c| c.as_rat().unwrap()).map(|c| &c * &c).sum()
}

#[test]
fn hurwitz_prime() {
    let b = OrderData::hurwitz2();
    b.verify().unwrap();
    let p = radical(&b, 0).unwrap();
    assert_eq!(p.e, 2);
    assert_eq!(b.lattice.quotient_length(&p.ideal).unwrap(), 2);
    // residues of Λ mod 2Λ with even norm are exactly the classes in P
    let mut in_p = 0;
    for mask in 0..16u32 {
        let mut x = vec![q(0); 4];
        for (t, row) in b.lattice.rows.iter().enumerate() {
            if mask >> t & 1 == 1 {
                x = x.iter().zip(row).map(|(a, c)| a + c).collect();
            }
        }
        let even = (hnorm(&x) / rat(2, 1)).is_integer();
        assert_eq!(p.ideal.contains_vec(&x), even, "{x:?}");
        in_p += even as usize;
    }
    assert_eq!(in_p, 4);
}

#[test]
fn maxorder_criterion_agrees_with_intersections() {
    let five = BaseRing::padic(5);
    let orders = [OrderData::mnr(&five, 2), OrderData::hurwitz2()];
    for b in &orders {
        let e = radical(b, 0).unwrap().e;
        for k in 0..=4 {
            let claim = maxorder_strong_check(b, &[k]).unwrap();
            assert_eq!(claim, k % e == 0);
            assert_eq!(strong_by_intersection(b, &[k]).unwrap(), claim, "k={k}");
            if k > 0 {
                let fa = explicit_filtration(b, &[k]).unwrap();
                assert_eq!(fa.base.is_strong(), claim, "k={k}");
            }
        }
    }
}

#[test]
fn degree_minus_one() {
    let s = BaseRing::new(Field::Q, vec![Valuation::PAdic(2), Valuation::PAdic(3)]).unwrap();
    let b = OrderData::mnr(&s, 2);
    let primes: Vec<_> = (0..2).map(|j| radical(&b, j).unwrap()).collect();
    assert!(primes.iter().all(|p| p.e == 1));
    let got = induced_degree_minus_one(&s, &[(primes[0].clone(), 2), (primes[1].clone(), 3)]).unwrap();
    assert_eq!(got, FracIdeal::new(&s, vec![2, 3]));
    let i = b.pow(&primes[0].ideal, 2).mult(&b.pow(&primes[1].ideal, 3), &b.alg);
    assert_eq!(i.line_ideal(&b.alg.one()).unwrap(), got);
    assert_eq!(
        induced_degree_minus_one(&s, &[(primes[0].clone(), 1), (primes[0].clone(), 1)]),
        Err(OrderError::RepeatedPrime(0))
    );

    let h = OrderData::hurwitz2();
    let p = radical(&h, 0).unwrap();
    for k in 0..=5 {
        let got = induced_degree_minus_one(h.base(), &[(p.clone(), k)]).unwrap();
        assert_eq!(h.pow(&p.ideal, k).line_ideal(&h.alg.one()).unwrap(), got);
        assert_eq!(got.exps, vec![naive_ceil(k, 2)]);
    }
}

#[test]
fn custom_orders() {
    let r = BaseRing::padic(2);
    let alg = Algebra::matrix(Field::Q, 2);
    let full = OrderData::custom(alg.clone(), Lattice::standard(&r, 4), true).unwrap();
    let p = radical(&full, 0).unwrap();
    assert_eq!(p.e, 1);
    assert_eq!(p.ideal, full.lattice.scale(&q(2)));

    let two = |k| alg.basis(k).iter().map(|x| x * &q(2)).collect::<Vec<_>>();
    let small = Lattice::full(&r, 4, [alg.one(), two(0), two(1), two(2)]).unwrap();
    let thin = OrderData::custom(alg.clone(), small.clone(), false).unwrap();
    assert_eq!(radical(&thin, 0), Err(OrderError::NotMaximal));
    assert_eq!(maxorder_strong_check(&thin, &[1]), Err(OrderError::NotMaximal));

    let not_ring = Lattice::full(&r, 4, [alg.one(), alg.basis(1), alg.basis(2), two(0)]).unwrap();
    assert!(matches!(OrderData::custom(alg, not_ring, false), Err(OrderError::NotOrder(_))));
}

/// `M_2(ℤ_(2)[i])` with `P = M_2((1+i)R)`. Relative to the prime `1+i` of `ℚ(i)`
/// the order is unramified; relative to `2` it has `P² = 2B`, ramification 2.
#[test]
fn gaussian_matrix_order() {
    let r = BaseRing::new(Field::QI, vec![Valuation::gauss(1, 1).unwrap()]).unwrap();
    let b = OrderData::mnr(&r, 2);
    let one_i = &Field::QI.one() + &Field::QI.gen().unwrap();
    let two = Field::QI.int(2);
    let p = b.lattice.scale(&one_i);

    let rad = radical(&b, 0).unwrap();
    assert_eq!(rad.ideal, p);
    assert_eq!(rad.e, 1);
    assert!(maxorder_strong_check(&b, &[1]).unwrap());
    assert!(explicit_filtration(&b, &[1]).unwrap().base.is_strong());

    // relative to 2: P ⊋ 2B = P²
    let p2 = p.mult(&p, &b.alg);
    assert_eq!(p2, b.lattice.scale(&two));
    assert!(p2.is_sub(&p) && p2 != p);
    // F_{−1}A = P meets K in (1+i)R, not in 2R: the k = 1 filtration does not extend the 2-adic one
    let one = b.alg.one();
    let meet = |l: &Lattice| l.line_ideal(&one).unwrap();
    assert_eq!(meet(&p).generator(), one_i);
    assert_eq!(meet(&p2), FracIdeal::principal(&r, &two));
    let fa = explicit_filtration(&b, &[2]).unwrap();
    assert_eq!(fa.base.level(-1), FracIdeal::principal(&r, &two));
    assert!(fa.base.is_strong());
}

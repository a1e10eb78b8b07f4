//! Discrete and rank-2 valuations on the supported fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::field::{Field, FieldElem, Var};
use super::poly::{inv_mod, mod_p, BPoly, Coef, UPoly};
use super::{is_prime, vp_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    PAdic(u64),
    /// The Gaussian prime `a + bi`.
    GaussPrime(i64, i64),
    XAdic,
    YAdic,
    PolyPrime(UPoly),
    /// x-adic followed by y-adic on the residue field, lexicographic values.
    Composite2,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValError {
    #[error("valuation {0} is not defined on {1}")]
    Mismatch(String, String),
    #[error("element has negative valuation, no residue")]
    NegativeValuation,
    #[error("Composite2 has rank 2, use uniformizer_pair")]
    RankTwo,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("unsupported Gaussian prime {0}: use 1+i, an inert p = 3 mod 4, or a+bi with a^2+b^2 prime")]
    BadGaussPrime(String),
}

/// Valuation value; `Infinite` is the value of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Infinite,
    Finite(i64),
    Finite2(i64, i64),
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(k) => Some(k),
            _ => None,
        }
    }

    pub fn pair(self) -> Option<(i64, i64)> {
        match self {
            Val::Finite2(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, o: &Val) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Val {
    fn cmp(&self, o: &Val) -> Ordering {
        match (self, o) {
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
            (Val::Infinite, _) => Ordering::Greater,
            (_, Val::Infinite) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite2(a, b), Val::Finite2(c, d)) => (a, b).cmp(&(c, d)),
            _ => panic!("comparing rank-1 and rank-2 values"),
        }
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Infinite, _) | (_, Val::Infinite) => Val::Infinite,
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            (Val::Finite2(a, b), Val::Finite2(c, d)) => Val::Finite2(a + c, b + d),
            _ => panic!("adding rank-1 and rank-2 values"),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Infinite => write!(f, "inf"),
            Val::Finite(k) => write!(f, "{k}"),
            Val::Finite2(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GaussKind {
    Ramified,
    Inert(u64),
    Split(u64),
}

impl Valuation {
    pub fn padic(p: u64) -> Result<Valuation, ValError> {
        if is_prime(p) {
            Ok(Valuation::PAdic(p))
        } else {
            Err(ValError::NotPrime(p.to_string()))
        }
    }

    pub fn gauss(a: i64, b: i64) -> Result<Valuation, ValError> {
        let v = Valuation::GaussPrime(a, b);
        v.gauss_kind()?;
        Ok(v)
    }

    /// Irreducibility is checked by root and factor search up to degree 3 over ℚ
    /// and exhaustively over F_p for small degree.
    pub fn poly_prime(f: UPoly) -> Result<Valuation, ValError> {
        let f = f.monic();
        let d = f.deg().unwrap_or(0);
        let bad = || ValError::NotPrime(format!("{}", super::parse::show_upoly(&f, "x")));
        if d == 0 {
            return Err(bad());
        }
        if f.low_deg() != Some(0) && d > 1 {
            return Err(bad());
        }
        match f.coef {
            Coef::Q => {
                if d > 3 || (d > 1 && has_rational_root(&f)) {
                    return Err(bad());
                }
            }
            Coef::Fp(p) => {
                if !fp_irreducible(&f, p) {
                    return Err(bad());
                }
            }
        }
        Ok(Valuation::PolyPrime(f))
    }

    fn gauss_kind(&self) -> Result<GaussKind, ValError> {
        let Valuation::GaussPrime(a, b) = *self else { unreachable!() };
        let bad = || ValError::BadGaussPrime(format!("{a}+{b}i"));
        if (a, b) == (1, 1) {
            return Ok(GaussKind::Ramified);
        }
        if b == 0 && a > 0 && is_prime(a as u64) && a % 4 == 3 {
            return Ok(GaussKind::Inert(a as u64));
        }
        if a > 0 && b > 0 {
            let n = (a * a + b * b) as u64;
            if is_prime(n) && n % 4 == 1 {
                return Ok(GaussKind::Split(n));
            }
        }
        Err(bad())
    }

    pub fn is_rank_two(&self) -> bool {
        matches!(self, Valuation::Composite2)
    }

    pub fn defined_on(&self, f: &Field) -> bool {
        match self {
            Valuation::PAdic(_) => *f == Field::Q,
            Valuation::GaussPrime(..) => *f == Field::QI,
            Valuation::XAdic => matches!(f, Field::QX | Field::FpX(_) | Field::QXY),
            Valuation::YAdic => matches!(f, Field::QY | Field::QXY),
            Valuation::PolyPrime(p) => match (&p.coef, f) {
                (Coef::Q, Field::QX) => true,
                (Coef::Fp(p), Field::FpX(q)) => p == q,
                _ => false,
            },
            Valuation::Composite2 => *f == Field::QXY,
        }
    }

    fn check(&self, f: &Field) -> Result<(), ValError> {
        if self.defined_on(f) {
            Ok(())
        } else {
            Err(ValError::Mismatch(self.to_string(), f.name()))
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::PAdic(p) => write!(f, "{p}-adic"),
            Valuation::GaussPrime(a, b) => {
                let e = FieldElem::Gauss(Rat::from_integer((*a).into()), Rat::from_integer((*b).into()));
                write!(f, "({e})-adic")
            }
            Valuation::XAdic => write!(f, "x-adic"),
            Valuation::YAdic => write!(f, "y-adic"),
            Valuation::PolyPrime(p) => write!(f, "({})-adic", super::parse::show_upoly(p, "x")),
            Valuation::Composite2 => write!(f, "composite(x,y)"),
        }
    }
}

fn has_rational_root(f: &UPoly) -> bool {
    // clear denominators, then rational root theorem
    let l = f.c.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.c.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let mut v = vec![];
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                v.push(d.clone());
                v.push(n / &d);
            }
            d += 1;
        }
        v
    };
    for p in divs(&a0) {
        for q in divs(&an) {
            for s in [1, -1] {
                let r = Rat::new(&p * s, q.clone());
                if f.eval(&r).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn fp_irreducible(f: &UPoly, p: u64) -> bool {
    let d = f.deg().unwrap_or(0);
    if d <= 1 {
        return d == 1;
    }
    // trial division by all monic polynomials of degree 1..=d/2
    for k in 1..=d / 2 {
        let count = (p as usize).pow(k as u32);
        for idx in 0..count {
            let mut c = vec![];
            let mut t = idx;
            for _ in 0..k {
                c.push(Rat::from_integer(((t % p as usize) as i64).into()));
                t /= p as usize;
            }
            c.push(Rat::one());
            let g = UPoly::new(Coef::Fp(p), c);
            if f.divrem(&g).1.is_zero() {
                return false;
            }
        }
    }
    true
}

type GInt = (BigInt, BigInt);

/// Write a Gaussian rational as `(A + Bi)/d` with integers and `d > 0`.
fn gauss_split(a: &Rat, b: &Rat) -> (GInt, BigInt) {
    let d = a.denom().lcm(b.denom());
    let da = Rat::from_integer(d.clone());
    (((a * &da).to_integer(), (b * &da).to_integer()), d)
}

fn gdiv(x: &GInt, pi: &GInt) -> Option<GInt> {
    let n = &pi.0 * &pi.0 + &pi.1 * &pi.1;
    let re = &x.0 * &pi.0 + &x.1 * &pi.1;
    let im = &x.1 * &pi.0 - &x.0 * &pi.1;
    if (&re % &n).is_zero() && (&im % &n).is_zero() {
        Some((re / &n, im / &n))
    } else {
        None
    }
}

fn gval(x: &GInt, pi: &GInt) -> i64 {
    let mut x = x.clone();
    let mut k = 0;
    while let Some(q) = gdiv(&x, pi) {
        x = q;
        k += 1;
    }
    k
}

fn gauss_val(kind: GaussKind, pi: &GInt, a: &Rat, b: &Rat) -> i64 {
    let (beta, d) = gauss_split(a, b);
    let vd = match kind {
        GaussKind::Ramified => 2 * vp_int(&d, &BigInt::from(2)),
        GaussKind::Inert(p) | GaussKind::Split(p) => vp_int(&d, &BigInt::from(p)),
    };
    gval(&beta, pi) - vd
}

fn poly_val(num: &UPoly, den: &UPoly, f: Option<&UPoly>) -> i64 {
    match f {
        None => num.low_deg().unwrap() as i64 - den.low_deg().unwrap() as i64,
        Some(f) => num.multiplicity(f) as i64 - den.multiplicity(f) as i64,
    }
}

fn bval_x(num: &BPoly, den: &BPoly) -> i64 {
    num.low_x().unwrap() as i64 - den.low_x().unwrap() as i64
}

fn bval_y(num: &BPoly, den: &BPoly) -> i64 {
    num.low_y().unwrap() as i64 - den.low_y().unwrap() as i64
}

/// Value of `x` under `v`; `Val::Infinite` exactly for zero.
pub fn val(v: &Valuation, x: &FieldElem) -> Result<Val, ValError> {
    v.check(&x.field())?;
    if x.is_zero() {
        return Ok(Val::Infinite);
    }
    let k = match (v, x) {
        (Valuation::PAdic(p), FieldElem::Rational(r)) => {
            let p = BigInt::from(*p);
            vp_int(r.numer(), &p) - vp_int(r.denom(), &p)
        }
        (Valuation::GaussPrime(pa, pb), FieldElem::Gauss(a, b)) => {
            let kind = v.gauss_kind()?;
            gauss_val(kind, &(BigInt::from(*pa), BigInt::from(*pb)), a, b)
        }
        (Valuation::XAdic, FieldElem::RatFunc { var: Var::X, num, den }) => poly_val(num, den, None),
        (Valuation::YAdic, FieldElem::RatFunc { var: Var::Y, num, den }) => poly_val(num, den, None),
        (Valuation::PolyPrime(f), FieldElem::RatFunc { var: Var::X, num, den }) => poly_val(num, den, Some(f)),
        (Valuation::XAdic, FieldElem::RatFunc2 { num, den }) => bval_x(num, den),
        (Valuation::YAdic, FieldElem::RatFunc2 { num, den }) => bval_y(num, den),
        (Valuation::Composite2, FieldElem::RatFunc2 { num, den }) => {
            let a = bval_x(num, den);
            let (n0, d0) = x_residue_parts(num, den);
            let b = n0.low_deg().unwrap() as i64 - d0.low_deg().unwrap() as i64;
            return Ok(Val::Finite2(a, b));
        }
        _ => return Err(ValError::Mismatch(v.to_string(), x.field().name())),
    };
    Ok(Val::Finite(k))
}

/// Numerator and denominator of the x = 0 specialization of `f·x^{-v_x(f)}`.
fn x_residue_parts(num: &BPoly, den: &BPoly) -> (UPoly, UPoly) {
    let n = num.unshift(num.low_x().unwrap(), 0);
    let d = den.unshift(den.low_x().unwrap(), 0);
    (n.x_coeff(0), d.x_coeff(0))
}

/// A uniformizer of a rank-1 valuation, as an element of `field`.
pub fn uniformizer(v: &Valuation, field: &Field) -> Result<FieldElem, ValError> {
    v.check(field)?;
    Ok(match v {
        Valuation::PAdic(p) => field.int(*p as i64),
        Valuation::GaussPrime(a, b) => FieldElem::Gauss(Rat::from_integer((*a).into()), Rat::from_integer((*b).into())),
        Valuation::XAdic => field.gen().unwrap(),
        Valuation::YAdic => field.y().unwrap(),
        Valuation::PolyPrime(f) => field.poly(f.clone()),
        Valuation::Composite2 => return Err(ValError::RankTwo),
    })
}

/// Elements of value (1,0) and (0,1) for the composite valuation.
pub fn uniformizer_pair(v: &Valuation) -> Result<(FieldElem, FieldElem), ValError> {
    if *v != Valuation::Composite2 {
        return Err(ValError::Mismatch(v.to_string(), "rank 2".into()));
    }
    let f = Field::QXY;
    Ok((f.gen().unwrap(), f.y().unwrap()))
}

/// An element of a residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Residue {
    Fp { p: u64, v: BigInt },
    /// `a + b·i` in F_{p²} = F_p[i]/(i² + 1).
    Fp2 { p: u64, a: BigInt, b: BigInt },
    Rational(Rat),
    /// Residue of ℚ(x,y) at x = 0 (in ℚ(y)) or at y = 0 (in ℚ(x)).
    Elem(FieldElem),
    PolyMod { modulus: UPoly, rep: UPoly },
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        match self {
            Residue::Fp { v, .. } => v.is_zero(),
            Residue::Fp2 { a, b, .. } => a.is_zero() && b.is_zero(),
            Residue::Rational(r) => r.is_zero(),
            Residue::Elem(e) => e.is_zero(),
            Residue::PolyMod { rep, .. } => rep.is_zero(),
        }
    }

    pub fn mul(&self, o: &Residue) -> Residue {
        match (self, o) {
            (Residue::Fp { p, v }, Residue::Fp { v: w, .. }) => {
                Residue::Fp { p: *p, v: (v * w).mod_floor(&BigInt::from(*p)) }
            }
            (Residue::Fp2 { p, a, b }, Residue::Fp2 { a: c, b: d, .. }) => {
                let m = BigInt::from(*p);
                Residue::Fp2 { p: *p, a: (a * c - b * d).mod_floor(&m), b: (a * d + b * c).mod_floor(&m) }
            }
            (Residue::Rational(a), Residue::Rational(b)) => Residue::Rational(a * b),
            (Residue::Elem(a), Residue::Elem(b)) => Residue::Elem(a * b),
            (Residue::PolyMod { modulus, rep }, Residue::PolyMod { rep: r2, .. }) => Residue::PolyMod {
                modulus: modulus.clone(),
                rep: rep.mul(r2).divrem(modulus).1,
            },
            _ => panic!("residue field mismatch"),
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Fp { p, v } => write!(f, "{v} mod {p}"),
            Residue::Fp2 { p, a, b } => write!(f, "{a}+{b}i mod {p}"),
            Residue::Rational(r) => write!(f, "{r}"),
            Residue::Elem(e) => write!(f, "{e}"),
            Residue::PolyMod { modulus, rep } => write!(
                f,
                "{} mod {}",
                super::parse::show_upoly(rep, "x"),
                super::parse::show_upoly(modulus, "x")
            ),
        }
    }
}

fn red_rat(r: &Rat, p: u64) -> BigInt {
    mod_p(r, p)
}

/// Inverse of `f` modulo the irreducible `m`.
fn poly_inv_mod(f: &UPoly, m: &UPoly) -> UPoly {
    let (mut r0, mut r1) = (m.clone(), f.divrem(m).1);
    let (mut s0, mut s1) = (UPoly::zero(m.coef.clone()), UPoly::one(m.coef.clone()));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert_eq!(r0.deg(), Some(0), "not invertible modulo {m:?}");
    s0.scale(&m.coef.inv(&r0.lc())).divrem(m).1
}

/// Image of `x` in the residue field of `v`.
pub fn residue(v: &Valuation, x: &FieldElem) -> Result<Residue, ValError> {
    let value = val(v, x)?;
    let nonneg = match value {
        Val::Infinite => true,
        Val::Finite(k) => k >= 0,
        Val::Finite2(a, b) => (a, b) >= (0, 0),
    };
    if !nonneg {
        return Err(ValError::NegativeValuation);
    }
    let positive = match value {
        Val::Infinite => true,
        Val::Finite(k) => k > 0,
        Val::Finite2(a, b) => (a, b) > (0, 0),
    };
    Ok(match (v, x) {
        (Valuation::PAdic(p), FieldElem::Rational(r)) => {
            Residue::Fp { p: *p, v: if positive { BigInt::zero() } else { red_rat(r, *p) } }
        }
        (Valuation::GaussPrime(pa, pb), FieldElem::Gauss(a, b)) => {
            let kind = v.gauss_kind()?;
            gauss_residue(kind, (*pa, *pb), a, b, positive)
        }
        (Valuation::XAdic | Valuation::YAdic, FieldElem::RatFunc { num, den, .. }) => {
            let r = if positive { Rat::zero() } else { num.coeff(0) * num.coef.inv(&den.coeff(0)) };
            match num.coef {
                Coef::Q => Residue::Rational(r),
                Coef::Fp(p) => Residue::Fp { p, v: red_rat(&r, p) },
            }
        }
        (Valuation::PolyPrime(f), FieldElem::RatFunc { num, den, .. }) => {
            let rep = if positive {
                UPoly::zero(f.coef.clone())
            } else {
                num.mul(&poly_inv_mod(den, f)).divrem(f).1
            };
            Residue::PolyMod { modulus: f.clone(), rep }
        }
        (Valuation::XAdic, FieldElem::RatFunc2 { num, den }) => {
            if positive {
                Residue::Elem(Field::QY.zero())
            } else {
                Residue::Elem(FieldElem::ratfunc(Var::Y, num.x_coeff(0), den.x_coeff(0)))
            }
        }
        (Valuation::YAdic, FieldElem::RatFunc2 { num, den }) => {
            if positive {
                Residue::Elem(Field::QX.zero())
            } else {
                Residue::Elem(FieldElem::ratfunc(Var::X, num.y_coeff(0), den.y_coeff(0)))
            }
        }
        (Valuation::Composite2, FieldElem::RatFunc2 { num, den }) => {
            if positive {
                Residue::Rational(Rat::zero())
            } else {
                let (n0, d0) = x_residue_parts(num, den);
                Residue::Rational(n0.coeff(0) / d0.coeff(0))
            }
        }
        _ => unreachable!(),
    })
}

fn gauss_residue(kind: GaussKind, pi: (i64, i64), a: &Rat, b: &Rat, positive: bool) -> Residue {
    let pi_g: GInt = (pi.0.into(), pi.1.into());
    let (beta, d) = gauss_split(a, b);
    match kind {
        GaussKind::Ramified => {
            if positive {
                return Residue::Fp { p: 2, v: BigInt::zero() };
            }
            let two = BigInt::from(2);
            let s = vp_int(&d, &two);
            let mut x = beta;
            for _ in 0..2 * s {
                x = gdiv(&x, &pi_g).unwrap();
            }
            Residue::Fp { p: 2, v: (x.0 + x.1).mod_floor(&two) }
        }
        GaussKind::Inert(p) => {
            if positive {
                return Residue::Fp2 { p, a: BigInt::zero(), b: BigInt::zero() };
            }
            let pb = BigInt::from(p);
            let s = vp_int(&d, &pb);
            let ps = pb.pow(s as u32);
            let (x0, x1) = (&beta.0 / &ps, &beta.1 / &ps);
            let d0 = &d / &ps;
            let inv = inv_mod(&d0, p);
            Residue::Fp2 { p, a: (x0 * &inv).mod_floor(&pb), b: (x1 * &inv).mod_floor(&pb) }
        }
        GaussKind::Split(n) => {
            if positive {
                return Residue::Fp { p: n, v: BigInt::zero() };
            }
            let nb = BigInt::from(n);
            let r = split_root(pi, n);
            let red = |g: &GInt| (&g.0 + &g.1 * &r).mod_floor(&nb);
            let s = vp_int(&d, &nb);
            let mut x = beta;
            for _ in 0..s {
                x = gdiv(&x, &pi_g).unwrap();
            }
            let d0 = &d / nb.pow(s as u32);
            let conj: GInt = (pi.0.into(), (-pi.1).into());
            let cinv = inv_mod(&red(&conj), n);
            let mut val = red(&x) * inv_mod(&d0, n);
            for _ in 0..s {
                val = (val * &cinv).mod_floor(&nb);
            }
            Residue::Fp { p: n, v: val.mod_floor(&nb) }
        }
    }
}

/// The image of `i` in F_N for the split prime `a + bi` of norm `N`.
fn split_root(pi: (i64, i64), n: u64) -> BigInt {
    let nb = BigInt::from(n);
    (BigInt::from(-pi.0) * inv_mod(&BigInt::from(pi.1), n)).mod_floor(&nb)
}

/// Canonical lift of a residue into the valuation ring, inside `field`.
/// Digits are integers in `[0, p)`, Gaussian integers with coordinates in `[0, p)`,
/// constants, or polynomials of degree below the modulus.
pub fn residue_lift(field: &Field, r: &Residue) -> FieldElem {
    match r {
        Residue::Fp { v: k, .. } => field.from_rat(Rat::from_integer(k.clone())),
        Residue::Fp2 { a, b, .. } => {
            FieldElem::Gauss(Rat::from_integer(a.clone()), Rat::from_integer(b.clone()))
        }
        Residue::Rational(q) => field.from_rat(q.clone()),
        Residue::Elem(e) => match (e, field) {
            (FieldElem::RatFunc { var: Var::Y, num, den }, Field::QXY) => {
                FieldElem::ratfunc2(BPoly::from_y(num), BPoly::from_y(den))
            }
            (FieldElem::RatFunc { var: Var::X, num, den }, Field::QXY) => {
                FieldElem::ratfunc2(BPoly::from_x(num), BPoly::from_x(den))
            }
            _ => panic!("cannot lift {e} into {}", field.name()),
        },
        Residue::PolyMod { rep, .. } => field.poly(rep.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn padic_values() {
        let v = Valuation::PAdic(5);
        assert_eq!(val(&v, &FieldElem::Rational(int(50))).unwrap(), Val::Finite(2));
        assert_eq!(val(&v, &FieldElem::Rational(int(0))).unwrap(), Val::Infinite);
        assert_eq!(val(&v, &FieldElem::Rational(rat(3, 25))).unwrap(), Val::Finite(-2));
    }

    #[test]
    fn gauss_values() {
        let g = |a, b| FieldElem::Gauss(int(a), int(b));
        let v = Valuation::gauss(2, 1).unwrap();
        assert_eq!(val(&v, &g(5, 0)).unwrap(), Val::Finite(1));
        assert_eq!(val(&v, &g(2, -1)).unwrap(), Val::Finite(0));
        let r = Valuation::gauss(1, 1).unwrap();
        assert_eq!(val(&r, &g(2, 0)).unwrap(), Val::Finite(2));
        assert_eq!(val(&r, &FieldElem::Gauss(rat(1, 2), int(0))).unwrap(), Val::Finite(-2));
        assert!(Valuation::gauss(3, 1).is_err());
    }

    #[test]
    fn split_residue_is_multiplicative() {
        let v = Valuation::gauss(2, 1).unwrap();
        let a = FieldElem::Gauss(rat(1, 3), int(2));
        let b = FieldElem::Gauss(int(3), rat(-1, 7));
        let ra = residue(&v, &a).unwrap();
        let rb = residue(&v, &b).unwrap();
        assert_eq!(residue(&v, &(&a * &b)).unwrap(), ra.mul(&rb));
        // (2+i)/5 = 1/(2-i) has value 0
        let c = FieldElem::Gauss(rat(2, 5), rat(1, 5));
        let rc = residue(&v, &c).unwrap();
        let rd = residue(&v, &FieldElem::Gauss(int(2), int(-1))).unwrap();
        assert_eq!(rc.mul(&rd), Residue::Fp { p: 5, v: 1.into() });
    }

    #[test]
    fn composite_value() {
        let f = Field::QXY;
        let x = f.gen().unwrap();
        let y = f.y().unwrap();
        let e = &x.pow(2) * &y.pow(3) + x.pow(3);
        assert_eq!(val(&Valuation::Composite2, &e).unwrap(), Val::Finite2(2, 3));
    }
}

//! Univariate polynomials over ℚ or F_p, and bivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Coefficient domain of a univariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coef {
    Q,
    Fp(u64),
}

impl Coef {
    pub fn norm(&self, r: Rat) -> Rat {
        match self {
            Coef::Q => r,
            Coef::Fp(p) => Rat::from_integer(mod_p(&r, *p)),
        }
    }

    pub fn inv(&self, r: &Rat) -> Rat {
        match self {
            Coef::Q => r.recip(),
            Coef::Fp(p) => {
                let v = mod_p(r, *p);
                Rat::from_integer(inv_mod(&v, *p))
            }
        }
    }
}

/// Reduce a rational into `[0, p)`; the denominator must be prime to `p`.
pub fn mod_p(r: &Rat, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb);
    let d = r.denom().mod_floor(&pb);
    (n * inv_mod(&d, p)).mod_floor(&pb)
}

pub fn inv_mod(a: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let e = a.extended_gcd(&pb);
    assert!(e.gcd.is_one(), "{a} is not invertible mod {p}");
    e.x.mod_floor(&pb)
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    pub coef: Coef,
    pub c: Vec<Rat>,
}

impl UPoly {
    pub fn zero(coef: Coef) -> Self {
        UPoly { coef, c: vec![] }
    }

    pub fn constant(coef: Coef, r: Rat) -> Self {
        UPoly::new(coef, vec![r])
    }

    pub fn one(coef: Coef) -> Self {
        UPoly::constant(coef, Rat::one())
    }

    /// The monomial `x`.
    pub fn var(coef: Coef) -> Self {
        UPoly::new(coef, vec![Rat::zero(), Rat::one()])
    }

    pub fn new(coef: Coef, c: Vec<Rat>) -> Self {
        let mut c: Vec<Rat> = c.into_iter().map(|r| coef.norm(r)).collect();
        while c.last().is_some_and(|r| r.is_zero()) {
            c.pop();
        }
        UPoly { coef, c }
    }

    pub fn monomial(coef: Coef, r: Rat, deg: usize) -> Self {
        let mut c = vec![Rat::zero(); deg + 1];
        c[deg] = r;
        UPoly::new(coef, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Multiplicity of the root 0.
    pub fn low_deg(&self) -> Option<usize> {
        self.c.iter().position(|r| !r.is_zero())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect();
        UPoly::new(self.coef.clone(), c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coef.clone(), self.c.iter().map(|r| -r).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rat) -> UPoly {
        UPoly::new(self.coef.clone(), self.c.iter().map(|a| a * r).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.coef.clone());
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(self.coef.clone(), c)
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly::new(self.coef.clone(), c)
    }

    /// Drop the lowest `k` coefficients (exact division by `x^k` when they vanish).
    pub fn unshift(&self, k: usize) -> UPoly {
        UPoly::new(self.coef.clone(), self.c.iter().skip(k).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one(self.coef.clone());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let inv = self.coef.inv(&d.lc());
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = self.coef.norm(r.last().unwrap() * &inv);
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = self.coef.norm(&r[k + j] - &t * b);
            }
            q[k] = t;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(self.coef.clone(), q), UPoly::new(self.coef.clone(), r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.coef.inv(&self.lc()))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, r: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * r + a;
        }
        self.coef.norm(acc)
    }

    /// Multiplicity of the factor `f` (which must be non-constant).
    pub fn multiplicity(&self, f: &UPoly) -> usize {
        let mut k = 0;
        let mut g = self.clone();
        loop {
            let (q, r) = g.divrem(f);
            if !r.is_zero() {
                return k;
            }
            g = q;
            k += 1;
        }
    }

    /// Substitute `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> UPoly {
        let mut c = vec![Rat::zero(); (self.c.len().max(1) - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * k] = a.clone();
        }
        UPoly::new(self.coef.clone(), c)
    }

    pub fn write(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let terms: Vec<(Rat, Vec<(&str, usize)>)> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (a.clone(), vec![(var, k)]))
            .collect();
        write_terms(f, &terms)
    }
}

/// Print a sum of monomials in the canonical infix form.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Rat, Vec<(&str, usize)>)],
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (a, mons)) in terms.iter().enumerate() {
        let mons: Vec<String> = mons
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let neg = a.is_negative();
        let abs = a.abs();
        if idx == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mons.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", mons.join("*"))?;
        } else {
            write!(f, "{abs}*{}", mons.join("*"))?;
        }
    }
    Ok(())
}

/// Sparse bivariate polynomial over ℚ keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    pub t: BTreeMap<(usize, usize), Rat>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn constant(r: Rat) -> Self {
        BPoly::monomial(r, 0, 0)
    }

    pub fn one() -> Self {
        BPoly::constant(Rat::one())
    }

    pub fn monomial(r: Rat, i: usize, j: usize) -> Self {
        let mut t = BTreeMap::new();
        if !r.is_zero() {
            t.insert((i, j), r);
        }
        BPoly { t }
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.t.len() == 1 && self.t.get(&(0, 0)).is_some_and(|r| r.is_one())
    }

    fn insert(&mut self, k: (usize, usize), r: Rat) {
        let e = self.t.entry(k).or_insert_with(Rat::zero);
        *e += r;
        if e.is_zero() {
            self.t.remove(&k);
        }
    }

    pub fn add(&self, o: &BPoly) -> BPoly {
        let mut r = self.clone();
        for (k, v) in &o.t {
            r.insert(*k, v.clone());
        }
        r
    }

    pub fn neg(&self) -> BPoly {
        BPoly { t: self.t.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn sub(&self, o: &BPoly) -> BPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rat) -> BPoly {
        if r.is_zero() {
            return BPoly::zero();
        }
        BPoly { t: self.t.iter().map(|(k, v)| (*k, v * r)).collect() }
    }

    pub fn mul(&self, o: &BPoly) -> BPoly {
        let mut r = BPoly::zero();
        for ((i, j), a) in &self.t {
            for ((k, l), b) in &o.t {
                r.insert((i + k, j + l), a * b);
            }
        }
        r
    }

    /// Leading term in lexicographic `(deg_x, deg_y)` order.
    pub fn lead(&self) -> Option<((usize, usize), Rat)> {
        self.t.iter().next_back().map(|(k, v)| (*k, v.clone()))
    }

    pub fn low_x(&self) -> Option<usize> {
        self.t.keys().map(|k| k.0).min()
    }

    pub fn low_y(&self) -> Option<usize> {
        self.t.keys().map(|k| k.1).min()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.t.keys().map(|k| k.0).max()
    }

    /// Divide by `x^a y^b`; the caller guarantees exactness.
    pub fn unshift(&self, a: usize, b: usize) -> BPoly {
        BPoly { t: self.t.iter().map(|((i, j), v)| ((i - a, j - b), v.clone())).collect() }
    }

    /// Coefficient of `x^k` as a polynomial in `y`.
    pub fn x_coeff(&self, k: usize) -> UPoly {
        let mut c = vec![];
        for ((i, j), v) in &self.t {
            if *i == k {
                if c.len() <= *j {
                    c.resize(j + 1, Rat::zero());
                }
                c[*j] = v.clone();
            }
        }
        UPoly::new(Coef::Q, c)
    }

    /// Coefficient of `y^k` as a polynomial in `x`.
    pub fn y_coeff(&self, k: usize) -> UPoly {
        let mut c = vec![];
        for ((i, j), v) in &self.t {
            if *j == k {
                if c.len() <= *i {
                    c.resize(i + 1, Rat::zero());
                }
                c[*i] = v.clone();
            }
        }
        UPoly::new(Coef::Q, c)
    }

    fn to_rec(&self) -> Vec<UPoly> {
        let n = self.deg_x().map_or(0, |d| d + 1);
        (0..n).map(|k| self.x_coeff(k)).collect()
    }

    fn from_rec(v: &[UPoly]) -> BPoly {
        let mut r = BPoly::zero();
        for (i, p) in v.iter().enumerate() {
            for (j, a) in p.c.iter().enumerate() {
                r.insert((i, j), a.clone());
            }
        }
        r
    }

    pub fn from_x(p: &UPoly) -> BPoly {
        BPoly::from_rec(&p.c.iter().map(|a| UPoly::constant(Coef::Q, a.clone())).collect::<Vec<_>>())
    }

    pub fn from_y(p: &UPoly) -> BPoly {
        BPoly::from_rec(&[p.clone()])
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> BPoly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.recip()),
            None => BPoly::zero(),
        }
    }

    /// Exact quotient `self / d`; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BPoly) -> BPoly {
        let r = rec_div_exact(&self.to_rec(), &d.to_rec());
        BPoly::from_rec(&r)
    }

    pub fn gcd(&self, o: &BPoly) -> BPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let (a, b) = (self.to_rec(), o.to_rec());
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut a = prim(&a);
        let mut b = prim(&b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                a = vec![UPoly::one(Coef::Q)];
                break;
            }
            let r = prem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { prim(&r) };
        }
        let g: Vec<UPoly> = a.iter().map(|p| p.mul(&c)).collect();
        BPoly::from_rec(&g).monic()
    }

    pub fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, Vec<(&str, usize)>)> = self
            .t
            .iter()
            .rev()
            .map(|((i, j), v)| (v.clone(), vec![("x", *i), ("y", *j)]))
            .collect();
        write_terms(f, &terms)
    }
}

fn trim(v: &mut Vec<UPoly>) {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
}

fn content(v: &[UPoly]) -> UPoly {
    v.iter().fold(UPoly::zero(Coef::Q), |g, p| g.gcd(p))
}

fn prim(v: &[UPoly]) -> Vec<UPoly> {
    let c = content(v);
    let mut r: Vec<UPoly> = v.iter().map(|p| p.divrem(&c).0).collect();
    trim(&mut r);
    r
}

/// Pseudo-remainder of `a` by `b` in ℚ[y][x].
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    trim(&mut r);
    while r.len() >= b.len() {
        let la = r.last().unwrap().clone();
        let k = r.len() - b.len();
        let mut next: Vec<UPoly> = r.iter().map(|p| p.mul(&lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[k + j] = next[k + j].sub(&bj.mul(&la));
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn rec_div_exact(a: &[UPoly], d: &[UPoly]) -> Vec<UPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut d = d.to_vec();
    trim(&mut d);
    assert!(!d.is_empty(), "division by zero polynomial");
    if r.len() < d.len() {
        assert!(r.is_empty(), "inexact bivariate division");
        return vec![];
    }
    let mut q = vec![UPoly::zero(Coef::Q); r.len() - d.len() + 1];
    let ld = d.last().unwrap().clone();
    while r.len() >= d.len() {
        let (t, rem) = r.last().unwrap().divrem(&ld);
        assert!(rem.is_zero(), "inexact bivariate division");
        let k = r.len() - d.len();
        for (j, dj) in d.iter().enumerate() {
            r[k + j] = r[k + j].sub(&dj.mul(&t));
        }
        q[k] = t;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact bivariate division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn univariate_gcd() {
        let x = UPoly::var(Coef::Q);
        let one = UPoly::one(Coef::Q);
        let a = x.add(&one).mul(&x.sub(&one));
        let b = x.add(&one).mul(&x.add(&one));
        assert_eq!(a.gcd(&b), x.add(&one));
    }

    #[test]
    fn fp_division() {
        let c = Coef::Fp(5);
        let p = UPoly::new(c.clone(), vec![q(1), q(0), q(1)]);
        let d = UPoly::new(c.clone(), vec![q(2), q(1)]);
        let (qq, r) = p.divrem(&d);
        assert_eq!(qq.mul(&d).add(&r), p);
        assert_eq!(r, UPoly::zero(c));
    }

    #[test]
    fn bivariate_gcd() {
        let x = BPoly::monomial(q(1), 1, 0);
        let y = BPoly::monomial(q(1), 0, 1);
        let g = x.add(&y).mul(&x);
        let a = g.mul(&y.add(&BPoly::one()));
        let b = g.mul(&x.sub(&y));
        assert_eq!(a.gcd(&b), g.monic());
        assert_eq!(a.div_exact(&g), y.add(&BPoly::one()));
    }
}

//! The supported fields and their elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{BPoly, Coef, UPoly};
use super::Rat;

/// Field tags: ℚ, ℚ(i), ℚ(x), ℚ(y), F_p(x), ℚ(x,y).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Q,
    QI,
    QX,
    QY,
    FpX(u64),
    QXY,
}

/// Name of the transcendental in a univariate function field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl Field {
    pub fn zero(&self) -> FieldElem {
        self.from_rat(Rat::zero())
    }

    pub fn one(&self) -> FieldElem {
        self.from_rat(Rat::one())
    }

    pub fn int(&self, n: i64) -> FieldElem {
        self.from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_rat(&self, r: Rat) -> FieldElem {
        match self {
            Field::Q => FieldElem::Rational(r),
            Field::QI => FieldElem::Gauss(r, Rat::zero()),
            Field::QX => FieldElem::rf(Var::X, UPoly::constant(Coef::Q, r), UPoly::one(Coef::Q)),
            Field::QY => FieldElem::rf(Var::Y, UPoly::constant(Coef::Q, r), UPoly::one(Coef::Q)),
            Field::FpX(p) => {
                let c = Coef::Fp(*p);
                FieldElem::rf(Var::X, UPoly::constant(c.clone(), r), UPoly::one(c))
            }
            Field::QXY => FieldElem::rf2(BPoly::constant(r), BPoly::one()),
        }
    }

    /// The generator `x` (or `y` for ℚ(y)); `i` for ℚ(i).
    pub fn gen(&self) -> Option<FieldElem> {
        match self {
            Field::Q => None,
            Field::QI => Some(FieldElem::Gauss(Rat::zero(), Rat::one())),
            Field::QX => Some(FieldElem::rf(Var::X, UPoly::var(Coef::Q), UPoly::one(Coef::Q))),
            Field::QY => Some(FieldElem::rf(Var::Y, UPoly::var(Coef::Q), UPoly::one(Coef::Q))),
            Field::FpX(p) => {
                let c = Coef::Fp(*p);
                Some(FieldElem::rf(Var::X, UPoly::var(c.clone()), UPoly::one(c)))
            }
            Field::QXY => Some(FieldElem::rf2(BPoly::monomial(Rat::one(), 1, 0), BPoly::one())),
        }
    }

    pub fn y(&self) -> Option<FieldElem> {
        match self {
            Field::QXY => Some(FieldElem::rf2(BPoly::monomial(Rat::one(), 0, 1), BPoly::one())),
            Field::QY => self.gen(),
            _ => None,
        }
    }

    /// Embed a univariate polynomial in the field's own variable.
    pub fn poly(&self, p: UPoly) -> FieldElem {
        match self {
            Field::QX | Field::FpX(_) => FieldElem::rf(Var::X, p.clone(), UPoly::one(p.coef)),
            Field::QY => FieldElem::rf(Var::Y, p, UPoly::one(Coef::Q)),
            _ => panic!("{self:?} has no polynomial variable"),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Q => "Q".into(),
            Field::QI => "Q(i)".into(),
            Field::QX => "Q(x)".into(),
            Field::QY => "Q(y)".into(),
            Field::FpX(p) => format!("F{p}(x)"),
            Field::QXY => "Q(x,y)".into(),
        }
    }

    pub fn parse_name(s: &str) -> Option<Field> {
        match s {
            "Q" => Some(Field::Q),
            "Q(i)" => Some(Field::QI),
            "Q(x)" => Some(Field::QX),
            "Q(y)" => Some(Field::QY),
            "Q(x,y)" => Some(Field::QXY),
            _ => {
                let p = s.strip_prefix('F')?.strip_suffix("(x)")?.parse::<u64>().ok()?;
                super::is_prime(p).then_some(Field::FpX(p))
            }
        }
    }
}

/// Exact element of one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(Rat),
    Gauss(Rat, Rat),
    RatFunc { var: Var, num: UPoly, den: UPoly },
    RatFunc2 { num: BPoly, den: BPoly },
}

impl FieldElem {
    fn rf(var: Var, num: UPoly, den: UPoly) -> Self {
        FieldElem::RatFunc { var, num, den }
    }

    fn rf2(num: BPoly, den: BPoly) -> Self {
        FieldElem::RatFunc2 { num, den }
    }

    /// Reduced univariate fraction with monic denominator.
    pub fn ratfunc(var: Var, num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let c = num.coef.clone();
            return FieldElem::rf(var, UPoly::zero(c.clone()), UPoly::one(c));
        }
        let g = num.gcd(&den);
        let (n, d) = (num.divrem(&g).0, den.divrem(&g).0);
        let s = d.coef.inv(&d.lc());
        FieldElem::rf(var, n.scale(&s), d.scale(&s))
    }

    /// Reduced bivariate fraction with monic denominator.
    pub fn ratfunc2(num: BPoly, den: BPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return FieldElem::rf2(num, BPoly::one());
        }
        let g = num.gcd(&den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let s = d.lead().unwrap().1.recip();
        FieldElem::rf2(n.scale(&s), d.scale(&s))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Q,
            FieldElem::Gauss(..) => Field::QI,
            FieldElem::RatFunc { var: Var::Y, .. } => Field::QY,
            FieldElem::RatFunc { num, .. } => match num.coef {
                Coef::Q => Field::QX,
                Coef::Fp(p) => Field::FpX(p),
            },
            FieldElem::RatFunc2 { .. } => Field::QXY,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Gauss(a, b) => a.is_zero() && b.is_zero(),
            FieldElem::RatFunc { num, .. } => num.is_zero(),
            FieldElem::RatFunc2 { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    /// The rational value if the element is a constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            FieldElem::Rational(r) => Some(r.clone()),
            FieldElem::Gauss(a, b) => b.is_zero().then(|| a.clone()),
            FieldElem::RatFunc { num, den, .. } => {
                (num.deg().unwrap_or(0) == 0 && den.is_one()).then(|| num.coeff(0))
            }
            FieldElem::RatFunc2 { num, den } => {
                (den.is_one() && num.t.keys().all(|k| *k == (0, 0))).then(|| {
                    num.t.get(&(0, 0)).cloned().unwrap_or_else(Rat::zero)
                })
            }
        }
    }

    fn check(&self, o: &FieldElem) {
        assert_eq!(self.field(), o.field(), "field mismatch in arithmetic");
    }

    pub fn add_ref(&self, o: &FieldElem) -> FieldElem {
        self.check(o);
        match (self, o) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Gauss(a, b), FieldElem::Gauss(c, d)) => FieldElem::Gauss(a + c, b + d),
            (FieldElem::RatFunc { var, num: n1, den: d1 }, FieldElem::RatFunc { num: n2, den: d2, .. }) => {
                if d1 == d2 {
                    FieldElem::ratfunc(*var, n1.add(n2), d1.clone())
                } else {
                    FieldElem::ratfunc(*var, n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                }
            }
            (FieldElem::RatFunc2 { num: n1, den: d1 }, FieldElem::RatFunc2 { num: n2, den: d2 }) => {
                if d1 == d2 {
                    FieldElem::ratfunc2(n1.add(n2), d1.clone())
                } else {
                    FieldElem::ratfunc2(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg_ref(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Gauss(a, b) => FieldElem::Gauss(-a, -b),
            FieldElem::RatFunc { var, num, den } => FieldElem::rf(*var, num.neg(), den.clone()),
            FieldElem::RatFunc2 { num, den } => FieldElem::rf2(num.neg(), den.clone()),
        }
    }

    pub fn mul_ref(&self, o: &FieldElem) -> FieldElem {
        self.check(o);
        match (self, o) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Gauss(a, b), FieldElem::Gauss(c, d)) => {
                FieldElem::Gauss(a * c - b * d, a * d + b * c)
            }
            (FieldElem::RatFunc { var, num: n1, den: d1 }, FieldElem::RatFunc { num: n2, den: d2, .. }) => {
                FieldElem::ratfunc(*var, n1.mul(n2), d1.mul(d2))
            }
            (FieldElem::RatFunc2 { num: n1, den: d1 }, FieldElem::RatFunc2 { num: n2, den: d2 }) => {
                FieldElem::ratfunc2(n1.mul(n2), d1.mul(d2))
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(a.recip()),
            FieldElem::Gauss(a, b) => {
                let n = a * a + b * b;
                FieldElem::Gauss(a / &n, -b / &n)
            }
            FieldElem::RatFunc { var, num, den } => FieldElem::ratfunc(*var, den.clone(), num.clone()),
            FieldElem::RatFunc2 { num, den } => FieldElem::ratfunc2(den.clone(), num.clone()),
        }
    }

    pub fn pow(&self, e: i64) -> FieldElem {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut r = self.field().one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        r
    }

    pub fn conj(&self) -> FieldElem {
        match self {
            FieldElem::Gauss(a, b) => FieldElem::Gauss(a.clone(), -b),
            _ => self.clone(),
        }
    }

    /// Substitute `x -> x^k` in a univariate function field element.
    pub fn compose_power(&self, k: usize) -> FieldElem {
        match self {
            FieldElem::RatFunc { var, num, den } => {
                FieldElem::ratfunc(*var, num.compose_power(k), den.compose_power(k))
            }
            _ => self.clone(),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                $body(self, o)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                $body(&self, &o)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                $body(&self, o)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElem, b: &FieldElem| a.add_ref(b));
binop!(Sub, sub, |a: &FieldElem, b: &FieldElem| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &FieldElem, b: &FieldElem| a.mul_ref(b));
binop!(Div, div, |a: &FieldElem, b: &FieldElem| a.mul_ref(&b.inv()));

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

struct PolyDisplay<'a>(&'a UPoly, Var);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write(f, self.1.name())
    }
}

struct BPolyDisplay<'a>(&'a BPoly);

impl fmt::Display for BPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write(f)
    }
}

fn paren(s: String, single: bool) -> String {
    if single {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{r}"),
            FieldElem::Gauss(a, b) => {
                use num_traits::Signed;
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                let im = if b.abs().is_one() { "i".to_string() } else { format!("{}i", b.abs()) };
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{im}")
                    } else {
                        write!(f, "{im}")
                    }
                } else {
                    write!(f, "{a}{}{im}", if b.is_negative() { "-" } else { "+" })
                }
            }
            FieldElem::RatFunc { var, num, den } => {
                let n = PolyDisplay(num, *var).to_string();
                if den.is_one() {
                    return write!(f, "{n}");
                }
                let d = PolyDisplay(den, *var).to_string();
                let nt = num.c.iter().filter(|c| !c.is_zero()).count() <= 1;
                let dt = den.c.iter().filter(|c| !c.is_zero()).count() <= 1 && den.lc().is_one();
                write!(f, "{}/{}", paren(n, nt && !num.lc().is_negative_like()), paren(d, dt))
            }
            FieldElem::RatFunc2 { num, den } => {
                let n = BPolyDisplay(num).to_string();
                if den.is_one() {
                    return write!(f, "{n}");
                }
                let d = BPolyDisplay(den).to_string();
                let nt = num.t.len() <= 1;
                let dt = den.t.len() <= 1;
                let nneg = num.lead().is_some_and(|(_, c)| c.is_negative_like());
                write!(f, "{}/{}", paren(n, nt && !nneg), paren(d, dt))
            }
        }
    }
}

trait NegLike {
    fn is_negative_like(&self) -> bool;
}

impl NegLike for Rat {
    fn is_negative_like(&self) -> bool {
        use num_traits::Signed;
        self.is_negative() || !self.is_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_inverse() {
        let a = FieldElem::Gauss(Rat::from_integer(2.into()), Rat::one());
        assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn ratfunc_normalizes() {
        let f = Field::QX;
        let x = f.gen().unwrap();
        let a = (&x * &x - f.one()) / (&x - f.one());
        assert_eq!(a, &x + &f.one());
        let b = f.int(2) / (f.int(2) * &x);
        assert_eq!(b, x.inv());
    }

    #[test]
    fn bivariate_normalizes() {
        let f = Field::QXY;
        let x = f.gen().unwrap();
        let y = f.y().unwrap();
        let a = (&x * &y + &y * &y) / (f.int(3) * &y);
        assert_eq!(a, (&x + &y) / f.int(3));
        assert_eq!(a.to_string(), "1/3*x + 1/3*y");
    }
}

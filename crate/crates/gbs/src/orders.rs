//! Orders, their prime ideals and ramification indices, and the strongness
//! criterion for filtrations with a maximal order in degree zero.

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{int, rat, Field, FieldElem};
use crate::filtration::{AlgebraFiltration, FiltrationError};
use crate::lattice::{linalg, Algebra, BaseRing, FracIdeal, Lattice, LatticeError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("ramification index needs e ≥ 1")]
    ZeroIndex,
    #[error("exponents must be nonnegative")]
    NegativeExponent,
    #[error("prime {0} listed twice")]
    RepeatedPrime(usize),
    #[error("not an order: {0}")]
    NotOrder(String),
    #[error("maximality required")]
    NotMaximal,
    #[error("radical search failed: {0}")]
    Radical(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeilCmp {
    Equal,
    Strict,
}

pub fn ceil_div(k: i64, e: i64) -> i64 {
    Integer::div_ceil(&k, &e)
}

/// Compares `⌈k/e⌉ + ⌈l/e⌉` with `⌈(k+l)/e⌉` through the residues of `k, l` mod `e`.
pub fn ceil_sum_compare(e: i64, k: i64, l: i64) -> Result<CeilCmp, OrderError> {
    if e < 1 {
        return Err(OrderError::ZeroIndex);
    }
    let (i, j) = (k.rem_euclid(e), l.rem_euclid(e));
    if i > 0 && j > 0 && i + j <= e {
        Ok(CeilCmp::Strict)
    } else {
        Ok(CeilCmp::Equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `M_n(R)`.
    MnR,
    /// The Hurwitz order of `(−1, −1)_ℚ` over `ℤ_(2)`.
    Hurwitz2,
    /// Caller-supplied; `maximal` is an assumption, never inferred.
    Custom { maximal: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderData {
    pub lattice: Lattice,
    pub alg: Algebra,
    pub builtin: Builtin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeData {
    pub ideal: Lattice,
    /// Index of `p` among the base valuations.
    pub prime: usize,
    pub e: i64,
}

fn check_ring(alg: &Algebra, b: &Lattice) -> Result<(), OrderError> {
    if b.dim != alg.dim || !b.is_full() {
        return Err(OrderError::NotOrder("not a full lattice in A".into()));
    }
    if !b.contains_vec(&alg.one()) {
        return Err(OrderError::NotOrder("1 ∉ B".into()));
    }
    if b.mult(b, alg) != *b {
        return Err(OrderError::NotOrder("B·B ≠ B".into()));
    }
    Ok(())
}

impl OrderData {
    pub fn mnr(base: &BaseRing, n: usize) -> OrderData {
        OrderData {
            lattice: Lattice::standard(base, n * n),
            alg: Algebra::matrix(base.field.clone(), n),
            builtin: Builtin::MnR,
        }
    }

    pub fn hurwitz2() -> OrderData {
        let alg = Algebra::quaternion(Field::Q, int(-1), int(-1)).unwrap();
        let base = BaseRing::padic(2);
        let h = Field::Q.from_rat(rat(1, 2));
        let gens = vec![alg.basis(0), alg.basis(1), alg.basis(2), vec![h.clone(), h.clone(), h.clone(), h]];
        let lattice = Lattice::full(&base, 4, gens).unwrap();
        OrderData { lattice, alg, builtin: Builtin::Hurwitz2 }
    }

    pub fn custom(alg: Algebra, lattice: Lattice, maximal: bool) -> Result<OrderData, OrderError> {
        check_ring(&alg, &lattice)?;
        Ok(OrderData { lattice, alg, builtin: Builtin::Custom { maximal } })
    }

    pub fn base(&self) -> &BaseRing {
        &self.lattice.base
    }

    pub fn is_maximal_assumed(&self) -> bool {
        !matches!(self.builtin, Builtin::Custom { maximal: false })
    }

    pub fn verify(&self) -> Result<(), OrderError> {
        check_ring(&self.alg, &self.lattice)
    }

    /// `x·B` for an element `x`.
    pub fn principal(&self, x: &[FieldElem]) -> Lattice {
        Lattice::span(self.base(), self.alg.dim, self.lattice.rows.iter().map(|b| self.alg.mul(x, b)))
    }

    pub fn pow(&self, p: &Lattice, k: i64) -> Lattice {
        let mut acc = self.lattice.clone();
        for _ in 0..k {
            acc = acc.mult(p, &self.alg);
        }
        acc
    }

    /// `P^{-1} = {x : x·P ⊆ B}`.
    pub fn inverse_ideal(&self, p: &Lattice) -> Result<Lattice, OrderError> {
        Ok(self.lattice.colon_left(p, &self.alg)?)
    }
}

/// The prime ideal of `B` over the `j`-th base prime and its ramification index.
pub fn radical(b: &OrderData, j: usize) -> Result<PrimeData, OrderError> {
    if j >= b.base().rank() {
        return Err(OrderError::Radical(format!("no base prime with index {j}")));
    }
    let pi = b.base().unis[j].clone();
    let pb = b.lattice.scale(&pi);
    let ideal = match b.builtin {
        Builtin::MnR => pb.clone(),
        Builtin::Hurwitz2 => {
            let one_i: Vector = linalg::add_vec(&b.alg.basis(0), &b.alg.basis(1));
            b.principal(&one_i)
        }
        Builtin::Custom { maximal } => {
            if !maximal {
                return Err(OrderError::NotMaximal);
            }
            nil_radical(b, j)?
        }
    };
    let bound = (b.alg.dim * b.alg.dim) as i64;
    let mut acc = ideal.clone();
    for e in 1..=bound {
        if acc.is_sub(&pb) {
            if acc != pb {
                return Err(OrderError::Radical(format!("P^{e} ⊊ pB: the order is not maximal")));
            }
            return Ok(PrimeData { ideal, prime: j, e });
        }
        acc = acc.mult(&ideal, &b.alg);
    }
    Err(OrderError::Radical(format!("no power of P up to {bound} lands in pB")))
}

/// Preimage of the Jacobson radical of `B/pB`: the `x` with `x·y` nilpotent for every `y`.
fn nil_radical(b: &OrderData, j: usize) -> Result<Lattice, OrderError> {
    let base = b.base();
    let p = match &base.vals[j] {
        crate::arith::Valuation::PAdic(p) => *p,
        v => return Err(OrderError::Radical(format!("residue enumeration needs a p-adic prime, got {v}"))),
    };
    let d = b.alg.dim;
    let size = (p as u128).checked_pow(d as u32).filter(|&s| s <= 1024);
    let Some(size) = size else {
        return Err(OrderError::Radical("B/pB is too large to probe".into()));
    };
    let pb = b.lattice.scale(&base.unis[j]);
    let elems: Vec<Vector> = (0..size)
        .map(|mut c| {
            let mut v = linalg::zeros(&base.field, d);
            for row in &b.lattice.rows {
                let a = Field::Q.int((c % p as u128) as i64);
                c /= p as u128;
                linalg::axpy(&mut v, &a, row);
            }
            v
        })
        .collect();
    let nilpotent = |x: &Vector| {
        let mut acc = x.clone();
        for _ in 0..d {
            if pb.contains_vec(&acc) {
                return true;
            }
            acc = b.alg.mul(&acc, x);
        }
        pb.contains_vec(&acc)
    };
    let rad: Vec<Vector> =
        elems.iter().filter(|x| elems.iter().all(|y| nilpotent(&b.alg.mul(x, y)))).cloned().collect();
    Ok(Lattice::span(base, d, rad).add(&pb))
}

/// `F_{−1}K = ∏ p_i^{⌈k_i/e_i⌉}` for `F_{−1}A = ∏ P_i^{k_i}`.
pub fn induced_degree_minus_one(base: &BaseRing, primes: &[(PrimeData, i64)]) -> Result<FracIdeal, OrderError> {
    let mut exps = vec![0; base.rank()];
    let mut seen = vec![false; base.rank()];
    for (p, k) in primes {
        if *k < 0 {
            return Err(OrderError::NegativeExponent);
        }
        if seen[p.prime] {
            return Err(OrderError::RepeatedPrime(p.prime));
        }
        seen[p.prime] = true;
        exps[p.prime] = ceil_div(*k, p.e);
    }
    Ok(FracIdeal::new(base, exps))
}

/// `∏ P_i^{k_i}` for `k_i ≥ 0`, one exponent per base prime.
pub fn prime_product(b: &OrderData, primes: &[PrimeData], ks: &[i64]) -> Lattice {
    let mut acc = b.lattice.clone();
    for (p, &k) in primes.iter().zip(ks) {
        acc = acc.mult(&b.pow(&p.ideal, k), &b.alg);
    }
    acc
}

/// The criterion: strong iff `e_i | k_i` for every base prime.
pub fn maxorder_strong_check(b: &OrderData, ks: &[i64]) -> Result<bool, OrderError> {
    if !b.is_maximal_assumed() {
        return Err(OrderError::NotMaximal);
    }
    if ks.iter().any(|&k| k < 0) {
        return Err(OrderError::NegativeExponent);
    }
    if ks.len() != b.base().rank() {
        return Err(OrderError::Radical(format!("need {} exponents", b.base().rank())));
    }
    for (j, &k) in ks.iter().enumerate() {
        if k % radical(b, j)?.e != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The explicit filtration with `F_{−1}A = I = ∏ P_i^{k_i}`: `F_{−n}A = I^n`, `F_nA = (I^{−1})^n`.
pub fn explicit_filtration(b: &OrderData, ks: &[i64]) -> Result<AlgebraFiltration, OrderError> {
    let primes: Vec<PrimeData> = (0..b.base().rank()).map(|j| radical(b, j)).collect::<Result<_, _>>()?;
    let i = prime_product(b, &primes, ks);
    let inv = b.inverse_ideal(&i)?;
    // I = x·B·(unit) is two-sided invertible; tails by the least power that is central
    let period = primes.iter().zip(ks).map(|(p, &k)| p.e / p.e.gcd(&k)).fold(1, |a, e| a.lcm(&e));
    let ip = b.pow(&i, period);
    let j = ip.line_ideal(&b.alg.one()).ok_or_else(|| OrderError::NotOrder("I ∩ K = 0".into()))?;
    if b.lattice.scale(&j.generator()) != ip {
        return Err(OrderError::Radical("I^period is not central".into()));
    }
    let mut levels = vec![];
    for n in -period..=period {
        levels.push(if n <= 0 { b.pow(&i, -n) } else { b.pow(&inv, n) });
    }
    Ok(AlgebraFiltration::explicit(b.alg.clone(), -period, levels, (period, j.pow(-1)), (period, j))?)
}

/// Strongness of `F_nK = F_nA ∩ K` for the filtration with `F_{−1}A = ∏ P_i^{k_i}`,
/// computed from lattice intersections alone.
pub fn strong_by_intersection(b: &OrderData, ks: &[i64]) -> Result<bool, OrderError> {
    if ks.iter().any(|&k| k < 0) {
        return Err(OrderError::NegativeExponent);
    }
    let primes: Vec<PrimeData> = (0..b.base().rank()).map(|j| radical(b, j)).collect::<Result<_, _>>()?;
    let i = prime_product(b, &primes, ks);
    let inv = b.inverse_ideal(&i)?;
    let one = b.alg.one();
    let span = 2 * primes.iter().map(|p| p.e).max().unwrap_or(1);
    let (mut neg, mut pos) = (b.lattice.clone(), b.lattice.clone());
    for _ in 1..=span {
        neg = neg.mult(&i, &b.alg);
        pos = pos.mult(&inv, &b.alg);
        let (a, c) = (pos.line_ideal(&one).unwrap(), neg.line_ideal(&one).unwrap());
        if a.mul(&c) != FracIdeal::unit(b.base()) {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Filtrations `F_nK` on a field and `F_nA` on an algebra, presented by a
//! step function with eventually periodic tails.
//!
//! `F_nK = {x : v_j(x) ≥ −φ_j(n)}` over the semilocal ring cut out by the
//! listed valuations. Beyond the window, `φ(n) = φ(n − e⁺) + c⁺` on the right
//! and `φ(n) = φ(n + e⁻) − c⁻` on the left.

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{Field, FieldElem};
use crate::lattice::{Algebra, BaseRing, FracIdeal, Lattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("invalid step function: {0}")]
    Step(String),
    #[error("invalid algebra filtration: {0}")]
    Algebra(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

type Res<T> = Result<T, FiltrationError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub period: i64,
    pub inc: Vec<i64>,
}

impl Tail {
    pub fn new(period: i64, inc: Vec<i64>) -> Tail {
        Tail { period, inc }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFunction {
    pub lo: i64,
    pub hi: i64,
    pub table: Vec<Vec<i64>>,
    pub plus: Tail,
    pub minus: Tail,
}

fn add_k(a: &[i64], c: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(c).map(|(x, y)| x + k * y).collect()
}

fn le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl StepFunction {
    /// Unvalidated; see [`StepFunction::new`].
    pub fn from_parts(lo: i64, table: Vec<Vec<i64>>, plus: Tail, minus: Tail) -> StepFunction {
        let hi = lo + table.len() as i64 - 1;
        StepFunction { lo, hi, table, plus, minus }
    }

    pub fn new(lo: i64, table: Vec<Vec<i64>>, plus: Tail, minus: Tail) -> Res<StepFunction> {
        let s = StepFunction::from_parts(lo, table, plus, minus);
        s.validate()?;
        Ok(s)
    }

    /// `φ(n) = (n, …, n)`: the valuation filtration of every listed valuation.
    pub fn linear(r: usize) -> StepFunction {
        StepFunction::from_parts(0, vec![vec![0; r]], Tail::new(1, vec![1; r]), Tail::new(1, vec![1; r]))
    }

    pub fn rank(&self) -> usize {
        self.table.first().map_or(0, |t| t.len())
    }

    pub fn at(&self, n: i64) -> Vec<i64> {
        if n > self.hi {
            let e = self.plus.period;
            let k = (n - self.hi + e - 1) / e;
            add_k(&self.table[(n - k * e - self.lo) as usize], &self.plus.inc, k)
        } else if n < self.lo {
            let e = self.minus.period;
            let k = (self.lo - n + e - 1) / e;
            add_k(&self.table[(n + k * e - self.lo) as usize], &self.minus.inc, -k)
        } else {
            self.table[(n - self.lo) as usize].clone()
        }
    }

    pub fn lcm_period(&self) -> i64 {
        self.plus.period.lcm(&self.minus.period)
    }

    /// Window plus two tail periods on each side.
    pub fn check_range(&self) -> (i64, i64) {
        (self.lo - 2 * self.minus.period - 1, self.hi + 2 * self.plus.period + 1)
    }

    pub fn validate(&self) -> Res<()> {
        let bad = |m: &str| Err(FiltrationError::Step(m.to_string()));
        let r = self.rank();
        if r == 0 {
            return bad("no valuations");
        }
        if self.table.iter().any(|t| t.len() != r) || self.plus.inc.len() != r || self.minus.inc.len() != r {
            return bad("rows of different lengths");
        }
        if self.lo > 0 || self.hi < 0 {
            return bad("window must contain 0");
        }
        if self.plus.period < 1 || self.minus.period < 1 {
            return bad("tail periods must be at least 1");
        }
        if self.hi - self.lo + 1 < self.plus.period.max(self.minus.period) {
            return bad("window shorter than a tail period");
        }
        for t in [&self.plus, &self.minus] {
            if t.inc.iter().any(|&c| c < 0) || t.inc.iter().all(|&c| c == 0) {
                return bad("tail increments must be nonnegative and nonzero");
            }
        }
        if self.at(0).iter().any(|&x| x != 0) {
            return bad("φ(0) must be 0");
        }
        if !self.jacobson_check() {
            return bad("φ(−1) must be ≤ −1 in every component");
        }
        let (a, b) = self.check_range();
        for n in a..b {
            if !le(&self.at(n), &self.at(n + 1)) {
                return bad(&format!("not monotone at {n}"));
            }
        }
        for n in a..=b {
            for m in a..=b {
                let s: Vec<i64> = self.at(n).iter().zip(self.at(m)).map(|(x, y)| x + y).collect();
                if !le(&s, &self.at(n + m)) {
                    return bad(&format!("not superadditive at ({n}, {m})"));
                }
            }
        }
        Ok(())
    }

    /// `F_{−1}K` lies in the Jacobson radical of `F_0K`.
    pub fn jacobson_check(&self) -> bool {
        if self.table.is_empty() || (-1 < self.lo && self.minus.period > self.hi - self.lo + 1) {
            return false;
        }
        self.at(-1).iter().all(|&x| x <= -1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldFiltration {
    pub base: BaseRing,
    pub phi: StepFunction,
}

impl FieldFiltration {
    pub fn new(base: BaseRing, phi: StepFunction) -> Res<FieldFiltration> {
        phi.validate()?;
        if phi.rank() != base.rank() {
            return Err(FiltrationError::Step(format!(
                "φ has {} components for {} valuations",
                phi.rank(),
                base.rank()
            )));
        }
        Ok(FieldFiltration { base, phi })
    }

    /// The valuation filtration `φ(n) = n` of every listed valuation at once.
    pub fn valuation(base: BaseRing) -> FieldFiltration {
        let r = base.rank();
        FieldFiltration::new(base, StepFunction::linear(r)).unwrap()
    }

    pub fn padic(p: u64) -> FieldFiltration {
        FieldFiltration::valuation(BaseRing::padic(p))
    }

    /// `F_0 = ℤ_S` for `S` generated by all primes but `p, q`; negative part `(pq)`-adic.
    pub fn pq(p: u64, q: u64) -> FieldFiltration {
        let vals = vec![crate::arith::Valuation::padic(p).unwrap(), crate::arith::Valuation::padic(q).unwrap()];
        FieldFiltration::valuation(BaseRing::new(Field::Q, vals).unwrap())
    }

    /// Valuation filtration with negative part `R ⊃ m² ⊃ m³ ⊃ …`.
    pub fn modified_dvr(p: u64) -> FieldFiltration {
        let phi = StepFunction::new(-1, vec![vec![-2], vec![0]], Tail::new(1, vec![1]), Tail::new(1, vec![1])).unwrap();
        FieldFiltration::new(BaseRing::padic(p), phi).unwrap()
    }

    /// `φ(n) = ⌊n/2⌋`.
    pub fn half_step(p: u64) -> FieldFiltration {
        let phi = StepFunction::new(
            -2,
            vec![vec![-1], vec![-1], vec![0], vec![0]],
            Tail::new(2, vec![1]),
            Tail::new(2, vec![1]),
        )
        .unwrap();
        FieldFiltration::new(BaseRing::padic(p), phi).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.base.field
    }

    pub fn level(&self, n: i64) -> FracIdeal {
        FracIdeal::new(&self.base, self.phi.at(n).iter().map(|x| -x).collect())
    }

    pub fn lattice(&self, n: i64) -> Lattice {
        self.level(n).to_lattice()
    }

    pub fn member(&self, n: i64, x: &FieldElem) -> bool {
        self.level(n).contains(x)
    }

    /// Degrees beyond which every check repeats with the tail periods.
    pub fn horizon(&self) -> i64 {
        self.phi.lo.abs().max(self.phi.hi) + 2 * self.phi.lcm_period()
    }

    pub fn is_strong(&self) -> bool {
        (1..=self.horizon()).all(|n| self.phi.at(n).iter().zip(self.phi.at(-n)).all(|(a, b)| a + b == 0))
    }

    /// The step `e` when this is a strong `e`-step filtration.
    pub fn estep(&self) -> Option<i64> {
        let h = self.horizon();
        let e = (1..=h + 1).find(|&e| self.phi.at(-e) != self.phi.at(-e - 1))?;
        let base = self.phi.at(-e);
        let reps = h / e + 2;
        for n in 1..=reps {
            if self.phi.at(-n * e) != add_k(&vec![0; base.len()], &base, n) {
                return None;
            }
            if self.phi.at(n * e).iter().zip(self.phi.at(-n * e)).any(|(a, b)| a + b != 0) {
                return None;
            }
        }
        for m in -reps..=reps {
            let v = self.phi.at(m * e);
            if (1..e).any(|t| self.phi.at(m * e + t) != v) {
                return None;
            }
        }
        Some(e)
    }

    pub fn jacobson_check(&self) -> bool {
        self.phi.jacobson_check()
    }

    /// One valuation with `φ(n) = n`.
    pub fn is_dvr_valuation(&self) -> bool {
        let (a, b) = self.phi.check_range();
        self.base.rank() == 1 && (a..=b).all(|n| self.phi.at(n)[0] == n)
    }

    /// One valuation with `φ(n) = n` for `n ≥ 0`.
    pub fn positive_is_dvr(&self) -> bool {
        let (_, b) = self.phi.check_range();
        self.base.rank() == 1 && (0..=b).all(|n| self.phi.at(n)[0] == n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgMode {
    /// `F_nA = F_nK·B`.
    Induced,
    /// Window lattices `L_lo..L_hi`, then `L_{n+e⁺} = J⁺L_n` and `L_{n−e⁻} = J⁻L_n`.
    Explicit { lo: i64, levels: Vec<Lattice>, plus: (i64, FracIdeal), minus: (i64, FracIdeal) },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraFiltration {
    pub alg: Algebra,
    /// `F_nA ∩ K`; computed from the levels in explicit mode.
    pub base: FieldFiltration,
    pub order: Lattice,
    pub mode: AlgMode,
}

fn check_order(alg: &Algebra, b: &Lattice) -> Res<()> {
    if !b.is_full() || b.dim != alg.dim {
        return Err(FiltrationError::Algebra("F_0A must be a full lattice in A".into()));
    }
    if !b.contains_vec(&alg.one()) || !b.mult(b, alg).is_sub(b) {
        return Err(FiltrationError::Algebra("F_0A is not a ring".into()));
    }
    Ok(())
}

impl AlgebraFiltration {
    pub fn induced(alg: Algebra, base: FieldFiltration, order: Lattice) -> Res<AlgebraFiltration> {
        check_order(&alg, &order)?;
        if order.base != base.base {
            return Err(FiltrationError::Lattice(LatticeError::Mismatch));
        }
        match order.line_ideal(&alg.one()) {
            Some(i) if i == FracIdeal::unit(&base.base) => {}
            _ => return Err(FiltrationError::Algebra("F_0A ∩ K must equal F_0K".into())),
        }
        Ok(AlgebraFiltration { alg, base, order, mode: AlgMode::Induced })
    }

    /// `M_n(F_0K)` with the induced filtration.
    pub fn matrix(base: FieldFiltration, n: usize) -> AlgebraFiltration {
        let alg = Algebra::matrix(base.field().clone(), n);
        let order = Lattice::standard(&base.base, n * n);
        AlgebraFiltration::induced(alg, base, order).unwrap()
    }

    pub fn explicit(
        alg: Algebra,
        lo: i64,
        levels: Vec<Lattice>,
        plus: (i64, FracIdeal),
        minus: (i64, FracIdeal),
    ) -> Res<AlgebraFiltration> {
        let hi = lo + levels.len() as i64 - 1;
        if lo > 0 || hi < 0 {
            return Err(FiltrationError::Algebra("window must contain 0".into()));
        }
        let order = levels[(-lo) as usize].clone();
        check_order(&alg, &order)?;
        let base_ring = order.base.clone();
        if levels.iter().any(|l| l.base != base_ring || !l.is_full()) {
            return Err(FiltrationError::Algebra("levels must be full lattices over one base".into()));
        }
        let mut f = AlgebraFiltration {
            alg,
            base: FieldFiltration::valuation(base_ring),
            order,
            mode: AlgMode::Explicit { lo, levels, plus, minus },
        };
        f.base = f.induced_on_k()?;
        let (a, b) = f.base.phi.check_range();
        for n in a..b {
            if !f.level(n).is_sub(&f.level(n + 1)) {
                return Err(FiltrationError::Algebra(format!("levels not ascending at {n}")));
            }
        }
        let p = f.base.phi.lcm_period();
        for n in lo - p..=hi + p {
            for m in lo - p..=hi + p {
                if !f.level(n).mult(&f.level(m), &f.alg).is_sub(&f.level(n + m)) {
                    return Err(FiltrationError::Algebra(format!("F_{n}·F_{m} ⊄ F_{}", n + m)));
                }
            }
        }
        Ok(f)
    }

    pub fn level(&self, n: i64) -> Lattice {
        match &self.mode {
            AlgMode::Induced => self.order.scale(&self.base.level(n).generator()),
            AlgMode::Explicit { lo, levels, plus, minus } => {
                let hi = lo + levels.len() as i64 - 1;
                if n > hi {
                    let k = (n - hi + plus.0 - 1) / plus.0;
                    levels[(n - k * plus.0 - lo) as usize].scale(&plus.1.pow(k).generator())
                } else if n < *lo {
                    let k = (lo - n + minus.0 - 1) / minus.0;
                    levels[(n + k * minus.0 - lo) as usize].scale(&minus.1.pow(k).generator())
                } else {
                    levels[(n - lo) as usize].clone()
                }
            }
        }
    }

    pub fn horizon(&self) -> i64 {
        match &self.mode {
            AlgMode::Induced => self.base.horizon(),
            AlgMode::Explicit { lo, levels, plus, minus } => {
                let hi = lo + levels.len() as i64 - 1;
                lo.abs().max(hi) + 2 * plus.0.lcm(&minus.0)
            }
        }
    }

    pub fn is_strong(&self) -> bool {
        match &self.mode {
            AlgMode::Induced => self.base.is_strong(),
            AlgMode::Explicit { .. } => {
                let (a, b, z) = (self.level(1), self.level(-1), self.level(0));
                a.mult(&b, &self.alg) == z && b.mult(&a, &self.alg) == z
            }
        }
    }

    /// `F_nK = F_nA ∩ K` as a field filtration.
    pub fn induced_on_k(&self) -> Res<FieldFiltration> {
        match &self.mode {
            AlgMode::Induced => Ok(self.base.clone()),
            AlgMode::Explicit { lo, levels, plus, minus } => {
                let one = self.alg.one();
                let mut table = vec![];
                for l in levels {
                    let i = l
                        .line_ideal(&one)
                        .ok_or_else(|| FiltrationError::Algebra("level meets K in zero".into()))?;
                    table.push(i.exps.iter().map(|x| -x).collect());
                }
                let tp = Tail::new(plus.0, plus.1.exps.iter().map(|x| -x).collect());
                let tm = Tail::new(minus.0, minus.1.exps.clone());
                FieldFiltration::new(self.order.base.clone(), StepFunction::new(*lo, table, tp, tm)?)
            }
        }
    }
}

/// A filtration on `K` (seen as `M_1(K)`) or on an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Filt {
    Field(FieldFiltration),
    Algebra(AlgebraFiltration),
}

impl Filt {
    pub fn fk(&self) -> &FieldFiltration {
        match self {
            Filt::Field(f) => f,
            Filt::Algebra(a) => &a.base,
        }
    }

    pub fn base(&self) -> &BaseRing {
        &self.fk().base
    }

    pub fn dim(&self) -> usize {
        match self {
            Filt::Field(_) => 1,
            Filt::Algebra(a) => a.alg.dim,
        }
    }

    pub fn alg(&self) -> Algebra {
        match self {
            Filt::Field(f) => Algebra::matrix(f.field().clone(), 1),
            Filt::Algebra(a) => a.alg.clone(),
        }
    }

    pub fn level(&self, n: i64) -> Lattice {
        match self {
            Filt::Field(f) => f.lattice(n),
            Filt::Algebra(a) => a.level(n),
        }
    }

    /// `F_n·X`.
    pub fn act(&self, n: i64, x: &Lattice) -> Lattice {
        match self {
            Filt::Field(f) => x.scale(&f.level(n).generator()),
            Filt::Algebra(a) => a.level(n).mult(x, &a.alg),
        }
    }

    pub fn horizon(&self) -> i64 {
        match self {
            Filt::Field(f) => f.horizon(),
            Filt::Algebra(a) => a.horizon(),
        }
    }

    pub fn is_strong(&self) -> bool {
        match self {
            Filt::Field(f) => f.is_strong(),
            Filt::Algebra(a) => a.is_strong(),
        }
    }
}

//! Glider ideals: descending chains `M_0 ⊇ M_1 ⊇ …` of lattices with
//! `F_i·M_j ⊆ M_{j−i}` for `0 ≤ i ≤ j`, given by a finite prefix and a tail rule.

use std::sync::Arc;

use thiserror::Error;

use crate::filtration::{FieldFiltration, Filt, FiltrationError, StepFunction, Tail};
use crate::lattice::{FracIdeal, Lattice, LatticeError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GliderError {
    #[error("gliders live over different filtrations")]
    Mismatch,
    #[error("malformed glider: {0}")]
    Structure(String),
    #[error("glider axiom fails at (i, j) = ({i}, {j})")]
    NotGlider { i: i64, j: i64 },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailRule {
    /// `M_{N+k} = F_{−k}K·M_N`.
    FiltrationTail,
    /// `M_{N+k} = I^k·M_N`.
    MultiplyBy(FracIdeal),
    Constant,
    ZeroAfter,
    /// `M_j = G_{j+offset}` for `j > N`.
    Follow(Box<Glider>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Glider {
    pub filt: Arc<Filt>,
    pub prefix: Vec<Lattice>,
    pub tail: TailRule,
}

/// First failure of the glider axiom: `witness ∈ F_i·M_j \ M_{j−i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub i: i64,
    pub j: i64,
    pub witness: Vector,
}

impl Glider {
    pub fn new(filt: Arc<Filt>, prefix: Vec<Lattice>, tail: TailRule) -> Glider {
        Glider { filt, prefix, tail }
    }

    /// `(F_n)_*`: `M_j = F_{n−j}`, presented with a filtration tail.
    pub fn negative_part(filt: Arc<Filt>, n: i64) -> Glider {
        let l = filt.level(n);
        Glider::new(filt, vec![l], TailRule::FiltrationTail)
    }

    pub fn last(&self) -> i64 {
        self.prefix.len() as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.filt.dim()
    }

    pub fn level(&self, j: i64) -> Lattice {
        assert!(j >= 0, "glider levels start at 0");
        let n = self.last();
        if j <= n {
            return self.prefix[j as usize].clone();
        }
        let top = &self.prefix[n as usize];
        let k = j - n;
        match &self.tail {
            TailRule::FiltrationTail => top.scale(&self.filt.fk().level(-k).generator()),
            TailRule::MultiplyBy(i) => top.scale(&i.pow(k).generator()),
            TailRule::Constant => top.clone(),
            TailRule::ZeroAfter => Lattice::zero(&top.base, top.dim),
            TailRule::Follow(g, off) => g.level(j + off),
        }
    }

    pub fn levels(&self, upto: i64) -> Vec<Lattice> {
        (0..=upto).map(|j| self.level(j)).collect()
    }

    /// Levels `0..=horizon` decide every quantifier for the supported tails.
    pub fn horizon(&self) -> i64 {
        let n = self.last();
        match &self.tail {
            TailRule::FiltrationTail => n + self.filt.horizon(),
            TailRule::Follow(g, off) => (n + 2).max(g.horizon() - off + 2),
            _ => n + 2,
        }
    }

    /// Shape checks: nonempty prefix, matching ambient, descent to the horizon.
    pub fn validate(&self) -> Result<(), GliderError> {
        if self.prefix.is_empty() {
            return Err(GliderError::Structure("empty prefix".into()));
        }
        let base = self.filt.base();
        for l in &self.prefix {
            if l.dim != self.dim() || &l.base != base {
                return Err(GliderError::Structure("prefix lattice has the wrong ambient".into()));
            }
        }
        if let TailRule::MultiplyBy(i) = &self.tail {
            if &i.base != base || i.exps.iter().any(|&e| e < 0) {
                return Err(GliderError::Structure("MultiplyBy needs an integral ideal".into()));
            }
        }
        if let TailRule::Follow(g, off) = &self.tail {
            if g.filt != self.filt || *off + self.last() < -1 {
                return Err(GliderError::Structure("Follow target must share the filtration".into()));
            }
        }
        let lv = self.levels(self.horizon());
        for j in 1..lv.len() {
            if !lv[j].is_sub(&lv[j - 1]) {
                return Err(GliderError::Structure(format!("M_{j} ⊄ M_{}", j - 1)));
            }
        }
        Ok(())
    }

    /// The glider axiom on `0 ≤ i ≤ j ≤ horizon`, with the first failure.
    pub fn is_glider(&self) -> Result<(), AxiomFailure> {
        let h = self.horizon();
        let lv = self.levels(h);
        for j in 0..=h {
            for i in 0..=j {
                let img = self.filt.act(i, &lv[j as usize]);
                if let Some(w) = img.witness_outside(&lv[(j - i) as usize]) {
                    return Err(AxiomFailure { i, j, witness: w });
                }
            }
        }
        Ok(())
    }

    /// `B(M) = ∩ M_n`.
    pub fn body(&self) -> Lattice {
        let top = &self.prefix[self.prefix.len() - 1];
        let zero = Lattice::zero(&top.base, top.dim);
        match &self.tail {
            TailRule::Constant => top.clone(),
            TailRule::ZeroAfter | TailRule::FiltrationTail => zero,
            TailRule::MultiplyBy(i) if i.exps.iter().all(|&e| e == 0) => top.clone(),
            TailRule::MultiplyBy(_) => zero,
            TailRule::Follow(g, _) => g.body(),
        }
    }

    /// Least `T` with `M_t = M_T` for all `t ≥ T`, if the chain stabilizes.
    pub fn stable_from(&self) -> Option<i64> {
        let n = self.last();
        let top_zero = self.prefix[n as usize].is_zero();
        let mut t = match &self.tail {
            TailRule::Constant => n,
            TailRule::ZeroAfter => n + 1,
            TailRule::FiltrationTail if top_zero => n,
            TailRule::MultiplyBy(i) if top_zero || i.exps.iter().all(|&e| e == 0) => n,
            TailRule::FiltrationTail | TailRule::MultiplyBy(_) => return None,
            TailRule::Follow(g, off) => (n + 1).max(g.stable_from()? - off),
        };
        while t > 0 && self.level(t - 1) == self.level(t) {
            t -= 1;
        }
        Some(t)
    }

    /// Least `d` with `M_{d+1} = M_{d+n}` for all `n`; `None` when infinite.
    pub fn essential_length(&self) -> Option<i64> {
        self.stable_from().map(|t| (t - 1).max(0))
    }

    /// `(M_γ)_δ = M_{γ+δ}`.
    pub fn shift(&self, gamma: i64) -> Result<Glider, GliderError> {
        if gamma < 0 {
            return Err(GliderError::Structure("index shifts must be nonnegative".into()));
        }
        let n = self.last();
        if gamma <= n {
            let tail = match &self.tail {
                TailRule::Follow(g, off) => TailRule::Follow(g.clone(), off + gamma),
                t => t.clone(),
            };
            return Ok(Glider::new(self.filt.clone(), self.prefix[gamma as usize..].to_vec(), tail));
        }
        let tail = match &self.tail {
            TailRule::Follow(g, off) => TailRule::Follow(g.clone(), off + gamma),
            TailRule::FiltrationTail => TailRule::Follow(Box::new(self.clone()), gamma),
            t => t.clone(),
        };
        Ok(Glider::new(self.filt.clone(), vec![self.level(gamma)], tail))
    }

    /// `x·M` levelwise.
    pub fn scale(&self, x: &crate::arith::FieldElem) -> Glider {
        let tail = match &self.tail {
            TailRule::Follow(g, off) => TailRule::Follow(Box::new(g.scale(x)), *off),
            t => t.clone(),
        };
        Glider::new(self.filt.clone(), self.prefix.iter().map(|l| l.scale(x)).collect(), tail)
    }

    /// Levelwise equality up to the larger horizon.
    pub fn same_chain(&self, o: &Glider) -> bool {
        let h = self.horizon().max(o.horizon());
        (0..=h).all(|j| self.level(j) == o.level(j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialityVerdict {
    NotSubglider { level: i64, witness: Vector },
    TrivialT1(i64),
    TrivialT2(i64),
    /// `N_n = M_{α(n)}` for `n` up to the horizon.
    TrivialT3 { alpha: Vec<i64> },
    /// `N_level` is not an `M`-level; `sandwich = (k, W)` with `M_k ⊋ W ⊋ M_{k+1}`.
    NonTrivial { level: i64, sandwich: Option<(i64, Lattice)> },
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Self::TrivialT1(_) | Self::TrivialT2(_) | Self::TrivialT3 { .. })
    }
}

/// Decide whether `n` is a subglider of `m` and which triviality type it has.
pub fn classify_subglider(n: &Glider, m: &Glider) -> Result<TrivialityVerdict, GliderError> {
    if n.filt != m.filt {
        return Err(GliderError::Mismatch);
    }
    let h = n.horizon().max(m.horizon());
    let nl = n.levels(h);
    let ml = m.levels(h);
    for j in 0..=h as usize {
        if let Some(w) = nl[j].witness_outside(&ml[j]) {
            return Ok(TrivialityVerdict::NotSubglider { level: j as i64, witness: w });
        }
    }
    for j in 0..=h as usize {
        if nl[j].is_zero() && !ml[j].is_zero() {
            return Ok(TrivialityVerdict::TrivialT2(j as i64));
        }
    }
    let (bn, bm) = (n.body(), m.body());
    for j in 0..=h as usize {
        if nl[j] == bn && ml[j] != bm {
            return Ok(TrivialityVerdict::TrivialT1(j as i64));
        }
    }
    // Greedy α: the least admissible index at each step. The indices k with
    // M_k = N_j form an interval, so any valid α dominates the greedy one.
    let cap = 4 * h + 8;
    let mut alpha = vec![];
    let mut next = 0;
    for (j, nj) in nl.iter().enumerate() {
        let mut k = next;
        let found = loop {
            if k > next + cap {
                break None;
            }
            let mk = m.level(k);
            if mk == *nj {
                break Some(k);
            }
            if !nj.is_sub(&mk) {
                break None;
            }
            k += 1;
        };
        match found {
            Some(k) => {
                alpha.push(k);
                next = k + 1;
            }
            None => {
                return Ok(TrivialityVerdict::NonTrivial { level: j as i64, sandwich: sandwich(nj, m, cap) });
            }
        }
    }
    Ok(TrivialityVerdict::TrivialT3 { alpha })
}

/// `W = X + M_{k+1}` for the largest `k` with `X ⊆ M_k`, when strictly between.
fn sandwich(x: &Lattice, m: &Glider, cap: i64) -> Option<(i64, Lattice)> {
    let mut k = 0;
    while k < cap && x.is_sub(&m.level(k + 1)) {
        k += 1;
    }
    let (mk, mk1) = (m.level(k), m.level(k + 1));
    let w = x.add(&mk1);
    (w != mk && w != mk1 && x.is_sub(&mk)).then_some((k, w))
}

/// The strong filtration with the positive part of `f` and negative part `M`.
///
/// `m` must be a glider over `f` with `M_0 = F_0K`, presented with a
/// filtration tail or a `MultiplyBy` tail.
pub fn associated_strong(f: &FieldFiltration, m: &Glider) -> Result<FieldFiltration, GliderError> {
    if *m.filt != Filt::Field(f.clone()) {
        return Err(GliderError::Mismatch);
    }
    m.validate()?;
    if let Err(e) = m.is_glider() {
        return Err(GliderError::NotGlider { i: e.i, j: e.j });
    }
    if m.level(0) != f.lattice(0) {
        return Err(GliderError::Structure("M_0 must equal F_0K".into()));
    }
    let n = m.last();
    let (lo, minus) = match &m.tail {
        TailRule::FiltrationTail => {
            let p = &f.phi.minus;
            (-(n + f.phi.lo.abs() + p.period), p.clone())
        }
        TailRule::MultiplyBy(i) => (-n.max(1), Tail::new(1, i.exps.clone())),
        _ => return Err(GliderError::Unsupported("the tail rule does not present a filtration".into())),
    };
    let hi = f.phi.hi.max(f.phi.plus.period - 1);
    let mut table = vec![];
    for k in lo..=hi {
        if k >= 0 {
            table.push(f.phi.at(k));
        } else {
            let l = m.level(-k);
            let i = FracIdeal::from_lattice(&l).ok_or_else(|| GliderError::Structure(format!("M_{} is zero", -k)))?;
            table.push(i.exps.iter().map(|x| -x).collect());
        }
    }
    let phi = StepFunction::new(lo, table, f.phi.plus.clone(), minus)?;
    let s = FieldFiltration::new(f.base.clone(), phi)?;
    if s.estep().is_none() {
        return Err(GliderError::Unsupported("the negative part does not give a strong e-step filtration".into()));
    }
    Ok(s)
}

//! Normal FK-glider ideals in a central simple algebra and the glider Brandt groupoid.
//!
//! A normal glider ideal is a descending chain of full lattices `M_0 ⊇ M_1 ⊇ …`
//! with `F_iK·M_j ⊆ M_{j−i}`, stored as a prefix plus a periodic tail
//! `M_j = J·M_{j−p}` past the prefix, with `J` a fractional ideal of the base.
//! Products and inverses of such chains are again of this shape, so every
//! quantifier over all degrees reduces to the prefix plus two periods.

use thiserror::Error;

use crate::arith::{rat, Field};
use crate::filtration::FieldFiltration;
use crate::lattice::{Algebra, AlgebraDesc, FracIdeal, Lattice, LatticeError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrandtError {
    #[error("not a normal glider ideal: {0}")]
    NotNormal(String),
    #[error("ideals live over different algebras, filtrations or tails")]
    Mismatch,
    #[error("the left order is not maximal, which inverses require (inverse)")]
    NotMaximal,
    #[error("maximality is only decidable for matrix algebras and (-1,-1)")]
    Undecidable,
    #[error("improper product: right unit of the first factor differs from left unit of the second")]
    NotProper,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

type Res<T> = Result<T, BrandtError>;

#[derive(Clone, Debug)]
pub struct NormalGliderIdeal {
    pub alg: Algebra,
    pub fk: FieldFiltration,
    pub prefix: Vec<Lattice>,
    pub period: i64,
    pub mult: FracIdeal,
}

/// Whether a lattice is an order with `x·y` closure, `1`, and full rank.
pub fn is_order(alg: &Algebra, b: &Lattice) -> bool {
    b.is_full() && b.contains_vec(&alg.one()) && b.mult(b, alg).is_sub(b)
}

fn reference_maximal(alg: &Algebra, like: &Lattice) -> Res<Lattice> {
    let base = &like.base;
    match &alg.desc {
        AlgebraDesc::Matrix(n) => Ok(Lattice::standard(base, n * n)),
        AlgebraDesc::Quaternion(a, b) if *a == rat(-1, 1) && *b == rat(-1, 1) && base.field == Field::Q => {
            let h = Field::Q.from_rat(rat(1, 2));
            let gens = vec![alg.basis(0), alg.basis(1), alg.basis(2), vec![h.clone(), h.clone(), h.clone(), h]];
            Ok(Lattice::full(base, 4, gens)?)
        }
        _ => Err(BrandtError::Undecidable),
    }
}

/// Maximal orders of a local csa are conjugate, and conjugation has determinant one,
/// so an order is maximal iff its covolume matches a known maximal order.
pub fn is_maximal_order(alg: &Algebra, b: &Lattice) -> Res<bool> {
    if !is_order(alg, b) {
        return Ok(false);
    }
    Ok(b.det_vval() == reference_maximal(alg, b)?.det_vval())
}

impl NormalGliderIdeal {
    pub fn new(alg: Algebra, fk: FieldFiltration, prefix: Vec<Lattice>, period: i64, mult: FracIdeal) -> Res<Self> {
        if period < 1 || prefix.len() < period as usize {
            return Err(BrandtError::NotNormal("the prefix must cover one tail period".into()));
        }
        if prefix.iter().any(|l| l.dim != alg.dim || !l.is_full()) {
            return Err(BrandtError::NotNormal("every level must be a full lattice in A".into()));
        }
        if mult.exps.iter().any(|&e| e < 0) || mult.exps.iter().all(|&e| e == 0) {
            return Err(BrandtError::NotNormal("the tail must shrink the chain".into()));
        }
        let m = NormalGliderIdeal { alg, fk, prefix, period, mult };
        m.check()?;
        Ok(m)
    }

    /// `M_i = F_{−i}K·top`, with the tail read off the negative tail of `FK`.
    pub fn chain(alg: Algebra, fk: FieldFiltration, top: Lattice) -> Res<Self> {
        let minus = &fk.phi.minus;
        let len = fk.phi.lo.abs() + minus.period + 1;
        let prefix = (0..len).map(|i| top.scale(&fk.level(-i).generator())).collect();
        let mult = FracIdeal::new(&fk.base, minus.inc.clone());
        NormalGliderIdeal::new(alg, fk.clone(), prefix, minus.period, mult)
    }

    /// `M_i = F_{−i}K·g·top·h`.
    pub fn translate(alg: Algebra, fk: FieldFiltration, top: &Lattice, g: &[crate::arith::FieldElem], h: &[crate::arith::FieldElem]) -> Res<Self> {
        let gens = top.rows.iter().map(|r| alg.mul(&alg.mul(g, r), h));
        let l = Lattice::span(&top.base, alg.dim, gens);
        NormalGliderIdeal::chain(alg, fk, l)
    }

    pub fn len(&self) -> i64 {
        self.prefix.len() as i64
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn level(&self, i: i64) -> Lattice {
        assert!(i >= 0);
        if i < self.len() {
            return self.prefix[i as usize].clone();
        }
        let k = (i - self.len()) / self.period + 1;
        self.prefix[(i - k * self.period) as usize].scale(&self.mult.pow(k).generator())
    }

    /// Degrees at which every tail-invariant statement has been seen twice.
    pub fn horizon(&self) -> i64 {
        self.len() + 2 * self.period
    }

    pub fn levels(&self, upto: i64) -> Vec<Lattice> {
        (0..=upto).map(|i| self.level(i)).collect()
    }

    fn compatible(&self, o: &NormalGliderIdeal) -> Res<()> {
        if self.alg != o.alg || self.fk != o.fk || self.period != o.period || self.mult != o.mult {
            return Err(BrandtError::Mismatch);
        }
        Ok(())
    }

    /// Levelwise equality on both horizons.
    pub fn same_chain(&self, o: &NormalGliderIdeal) -> bool {
        let h = self.horizon().max(o.horizon());
        self.alg == o.alg && (0..=h).all(|i| self.level(i) == o.level(i))
    }

    fn check(&self) -> Res<()> {
        let h = self.horizon();
        for i in 0..h {
            if !self.level(i + 1).is_sub(&self.level(i)) {
                return Err(BrandtError::NotNormal(format!("M_{} ⊄ M_{i}", i + 1)));
            }
        }
        for j in 0..=h {
            for i in -h..=j {
                let x = self.fk.level(i).generator();
                if !self.level(j).scale(&x).is_sub(&self.level(j - i)) {
                    return Err(BrandtError::NotNormal(format!("F_{i}K·M_{j} ⊄ M_{}", j - i)));
                }
            }
        }
        for (side, o) in [("left", self.left_order()?), ("right", self.right_order()?)] {
            if !is_order(&self.alg, &o) {
                return Err(BrandtError::NotNormal(format!("the {side} glider order is not an order")));
            }
        }
        Ok(())
    }

    /// `∩_i O_l(M_i)`; degrees past the horizon repeat up to a central factor.
    pub fn left_order(&self) -> Res<Lattice> {
        let mut acc = self.level(0).colon_left(&self.level(0), &self.alg)?;
        for i in 1..=self.horizon() {
            acc = acc.intersect(&self.level(i).colon_left(&self.level(i), &self.alg)?);
        }
        Ok(acc)
    }

    pub fn right_order(&self) -> Res<Lattice> {
        let mut acc = self.level(0).colon_right(&self.level(0), &self.alg)?;
        for i in 1..=self.horizon() {
            acc = acc.intersect(&self.level(i).colon_right(&self.level(i), &self.alg)?);
        }
        Ok(acc)
    }

    fn with_prefix(&self, prefix: Vec<Lattice>) -> NormalGliderIdeal {
        NormalGliderIdeal { alg: self.alg.clone(), fk: self.fk.clone(), prefix, period: self.period, mult: self.mult.clone() }
    }

    /// `(M·N)_i = Σ_{k=0}^{i} M_k·N_{i−k}`, with no properness requirement.
    ///
    /// Past `len M + len N + p` every summand is `J` times a summand one period
    /// lower, so the product inherits the tail.
    pub fn product(&self, n: &NormalGliderIdeal) -> Res<NormalGliderIdeal> {
        self.compatible(n)?;
        let len = self.len() + n.len() + self.period;
        let prefix = (0..len)
            .map(|i| {
                let mut acc = self.level(0).mult(&n.level(i), &self.alg);
                for k in 1..=i {
                    acc = acc.add(&self.level(k).mult(&n.level(i - k), &self.alg));
                }
                acc
            })
            .collect();
        Ok(self.with_prefix(prefix))
    }

    /// `(M⁻¹)_i = {x : M·x·M ⊆ M_i}` by two colon solves.
    pub fn inverse(&self) -> Res<NormalGliderIdeal> {
        if !is_maximal_order(&self.alg, &self.left_order()?)? {
            return Err(BrandtError::NotMaximal);
        }
        let top = self.level(0);
        let prefix = (0..self.len())
            .map(|i| {
                let l = self.level(i).colon_right(&top, &self.alg)?;
                Ok(l.colon_left(&top, &self.alg)?)
            })
            .collect::<Res<Vec<_>>>()?;
        Ok(self.with_prefix(prefix))
    }

    pub fn unit_left(&self) -> Res<NormalGliderIdeal> {
        self.product(&self.inverse()?)
    }

    pub fn unit_right(&self) -> Res<NormalGliderIdeal> {
        self.inverse()?.product(self)
    }

    fn modulizer(&self, left: bool) -> Res<NormalGliderIdeal> {
        let order = if left { self.left_order()? } else { self.right_order()? };
        let len = 2 * self.len() + self.period;
        let reach = len + self.horizon();
        let prefix = (0..len)
            .map(|d| {
                let mut acc = order.clone();
                for n in d..=d + reach {
                    let (x, y) = (self.level(n), self.level(n - d));
                    let c = if left { x.colon_left(&y, &self.alg)? } else { x.colon_right(&y, &self.alg)? };
                    acc = acc.intersect(&c);
                }
                Ok(acc)
            })
            .collect::<Res<Vec<_>>>()?;
        Ok(self.with_prefix(prefix))
    }

    /// `{x ∈ B^l : x·M_{n−d} ⊆ M_n for all n ≥ d}`, computed without inverses.
    pub fn modulizer_left(&self) -> Res<NormalGliderIdeal> {
        self.modulizer(true)
    }

    /// `{x ∈ B^r : M_{n−d}·x ⊆ M_n for all n ≥ d}`.
    pub fn modulizer_right(&self) -> Res<NormalGliderIdeal> {
        self.modulizer(false)
    }

    /// Product gated on `E^r(M) = E^l(N)`.
    pub fn proper_product(&self, n: &NormalGliderIdeal) -> Res<NormalGliderIdeal> {
        if !self.unit_right()?.same_chain(&n.unit_left()?) {
            return Err(BrandtError::NotProper);
        }
        self.product(n)
    }

    /// `M_i·M_j ⊆ M_{i+j}` on the horizon.
    pub fn is_multiplicative(&self) -> bool {
        let h = self.horizon();
        (0..=h).all(|i| (0..=h - i).all(|j| self.level(i).mult(&self.level(j), &self.alg).is_sub(&self.level(i + j))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: u8,
    pub passed: bool,
    /// Number of instances checked.
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidReport {
    pub axioms: Vec<AxiomReport>,
    /// Ordered pairs of sample indices whose product is not proper.
    pub blocked: Vec<(usize, usize)>,
}

impl GroupoidReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }
}

struct Tally {
    axiom: u8,
    checked: usize,
    bad: Option<String>,
}

impl Tally {
    fn new(axiom: u8) -> Tally {
        Tally { axiom, checked: 0, bad: None }
    }

    fn see(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.bad.is_none() {
            self.bad = Some(what());
        }
    }

    fn done(self) -> AxiomReport {
        AxiomReport { axiom: self.axiom, passed: self.bad.is_none(), checked: self.checked, counterexample: self.bad }
    }
}

fn order_chain(m: &NormalGliderIdeal, b: &Lattice) -> Res<NormalGliderIdeal> {
    NormalGliderIdeal::chain(m.alg.clone(), m.fk.clone(), b.clone())
}

/// Checks the five groupoid axioms on a sample.
///
/// 1. units are idempotent and absorb `M` on the correct side;
/// 2. proper products have the outer units;
/// 3. associativity on all ordered triples of distinct elements;
/// 4. `M·M⁻¹` and `M⁻¹·M` equal the modulizers;
/// 5. any two left units are connected by `F^-B·F^-C`.
pub fn verify_groupoid(sample: &[NormalGliderIdeal]) -> Res<GroupoidReport> {
    for m in sample.iter().skip(1) {
        sample[0].compatible(m)?;
    }
    let inv: Vec<_> = sample.iter().map(|m| m.inverse()).collect::<Res<_>>()?;
    let el: Vec<_> = sample.iter().zip(&inv).map(|(m, i)| m.product(i)).collect::<Res<_>>()?;
    let er: Vec<_> = sample.iter().zip(&inv).map(|(m, i)| i.product(m)).collect::<Res<_>>()?;

    let mut a1 = Tally::new(1);
    for (k, m) in sample.iter().enumerate() {
        for (e, side) in [(&el[k], "left"), (&er[k], "right")] {
            a1.see(e.product(e)?.same_chain(e), || format!("{side} unit of #{k} is not idempotent"));
        }
        a1.see(el[k].product(m)?.same_chain(m), || format!("E^l·M ≠ M for #{k}"));
        a1.see(m.product(&er[k])?.same_chain(m), || format!("M·E^r ≠ M for #{k}"));
    }

    let mut a2 = Tally::new(2);
    let mut blocked = vec![];
    for (s, m) in sample.iter().enumerate() {
        for (t, n) in sample.iter().enumerate() {
            if !er[s].same_chain(&el[t]) {
                blocked.push((s, t));
                continue;
            }
            let p = m.proper_product(n)?;
            let ok = p.unit_left()?.same_chain(&el[s]) && p.unit_right()?.same_chain(&er[t]);
            a2.see(ok, || format!("units of #{s}·#{t} are not E^l(#{s}), E^r(#{t})"));
        }
    }

    let mut a3 = Tally::new(3);
    for (s, m) in sample.iter().enumerate() {
        for (t, n) in sample.iter().enumerate() {
            for (u, v) in sample.iter().enumerate() {
                if s == t || t == u || s == u {
                    continue;
                }
                let ok = m.product(n)?.product(v)?.same_chain(&m.product(&n.product(v)?)?);
                a3.see(ok, || format!("(#{s}·#{t})·#{u} ≠ #{s}·(#{t}·#{u})"));
            }
        }
    }

    let mut a4 = Tally::new(4);
    for (k, m) in sample.iter().enumerate() {
        a4.see(el[k].same_chain(&m.modulizer_left()?), || format!("M·M⁻¹ ≠ left modulizer for #{k}"));
        a4.see(er[k].same_chain(&m.modulizer_right()?), || format!("M⁻¹·M ≠ right modulizer for #{k}"));
    }

    let mut a5 = Tally::new(5);
    for (s, m) in sample.iter().enumerate() {
        for t in 0..sample.len() {
            let fb = order_chain(m, &m.left_order()?)?;
            let fc = order_chain(m, &sample[t].left_order()?)?;
            let c = fb.product(&fc)?;
            let ok = c.unit_left()?.same_chain(&el[s]) && c.unit_right()?.same_chain(&el[t]);
            a5.see(ok, || format!("F^-B·F^-C does not connect the units of #{s} and #{t}"));
        }
    }

    Ok(GroupoidReport { axioms: vec![a1.done(), a2.done(), a3.done(), a4.done(), a5.done()], blocked })
}

/// `g` and `h` for the conjugate-translate sample over `M_2`.
pub fn sample_units(alg: &Algebra) -> Vec<(Vector, Vector)> {
    let f = &alg.field;
    let m = |a: i64, b: i64, c: i64, d: i64| vec![f.int(a), f.int(b), f.int(c), f.int(d)];
    vec![
        (m(1, 0, 0, 1), m(1, 0, 0, 1)),
        (m(1, 1, 0, 1), m(1, 0, 0, 1)),
        (m(1, 0, 0, 1), m(5, 0, 0, 1)),
        (m(5, 0, 0, 1), m(1, 0, 2, 1)),
    ]
}

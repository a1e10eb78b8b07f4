//! ℤ²-lex filtrations on `K = ℚ(x,y)` for the composite valuation
//! (`x`-adic, then `y`-adic on the residue field `ℚ(y)`), and gliders indexed by ℕ².
//!
//! Submodules of `K` over the valuation ring `R'` are totally ordered and of
//! four kinds, see [`LexIdeal`]. Index `(j, i)`: `j` is horizontal (the `x`
//! direction, dominant in the lex order), `i` is vertical.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{residue, val, Field, FieldElem, Residue, Val, Valuation};
use crate::enumerate::{classify, Verdict};
use crate::filtration::{FieldFiltration, Filt};
use crate::glider::{Glider, TailRule};
use crate::lattice::{BaseRing, FracIdeal, Lattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rank2Error {
    #[error("index {0} outside the window")]
    Window(i64),
    #[error("grid shape does not match the window")]
    Shape,
    #[error("out of class: {0}")]
    OutOfClass(String),
}

/// An `R'`-submodule of `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LexIdeal {
    Zero,
    /// `{f : v(f) ≥ (a, b)}`, the principal ideal `x^a y^b R'`.
    Cut(i64, i64),
    /// `{f : v_x(f) ≥ a} = x^a·O_x`, the union of `Cut(a, b)` over all `b`.
    Row(i64),
    Whole,
}

impl LexIdeal {
    /// Position in the total inclusion order, as a key comparable lexicographically.
    fn key(self) -> (i64, i64, i64) {
        // larger key = smaller module
        match self {
            LexIdeal::Whole => (i64::MIN, 0, 0),
            LexIdeal::Row(a) => (a, 0, i64::MIN),
            LexIdeal::Cut(a, b) => (a, 1, b),
            LexIdeal::Zero => (i64::MAX, 0, 0),
        }
    }

    pub fn is_sub(self, o: LexIdeal) -> bool {
        self.key() >= o.key()
    }

    pub fn is_zero(self) -> bool {
        self == LexIdeal::Zero
    }

    pub fn mul(self, o: LexIdeal) -> LexIdeal {
        use LexIdeal::*;
        match (self, o) {
            (Zero, _) | (_, Zero) => Zero,
            (Whole, _) | (_, Whole) => Whole,
            (Cut(a, b), Cut(c, d)) => Cut(a + c, b + d),
            (Cut(a, _), Row(c)) | (Row(a), Cut(c, _)) | (Row(a), Row(c)) => Row(a + c),
        }
    }

    /// `x^a y^b · self`.
    pub fn shift(self, a: i64, b: i64) -> LexIdeal {
        self.mul(LexIdeal::Cut(a, b))
    }

    pub fn contains(self, f: &FieldElem) -> bool {
        match (self, val(&Valuation::Composite2, f).expect("element of ℚ(x,y)")) {
            (_, Val::Infinite) => true,
            (LexIdeal::Zero, _) => false,
            (LexIdeal::Whole, _) => true,
            (LexIdeal::Row(a), Val::Finite2(c, _)) => c >= a,
            (LexIdeal::Cut(a, b), Val::Finite2(c, d)) => (c, d) >= (a, b),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for LexIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexIdeal::Zero => write!(f, "0"),
            LexIdeal::Cut(a, b) => write!(f, "x^{a}y^{b}R'"),
            LexIdeal::Row(a) => write!(f, "x^{a}O_x"),
            LexIdeal::Whole => write!(f, "K"),
        }
    }
}

/// A ℤ²-filtration on `ℚ(x,y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z2Filtration {
    /// `F_{(a,b)} = {f : v(f) ≥ (−a, −b)}` for the composite valuation.
    Composite,
    /// `F_{(a,b)} = f^h_a`: the `x`-adic filtration with a trivial second index.
    HorizontalOnly,
}

impl Z2Filtration {
    pub fn level(self, a: i64, b: i64) -> LexIdeal {
        match self {
            Z2Filtration::Composite => LexIdeal::Cut(-a, -b),
            Z2Filtration::HorizontalOnly => LexIdeal::Row(-a),
        }
    }

    pub fn member(self, a: i64, b: i64, f: &FieldElem) -> bool {
        self.level(a, b).contains(f)
    }
}

/// The ring `O_x ⊂ ℚ(x,y)` of the first-stage valuation.
pub fn x_adic_base() -> BaseRing {
    BaseRing::new(Field::QXY, vec![Valuation::XAdic]).unwrap()
}

/// The `y`-adic ring of the residue field `ℚ(y)`.
pub fn residue_base() -> BaseRing {
    BaseRing::new(Field::QY, vec![Valuation::YAdic]).unwrap()
}

/// `f^h_m = {f : v_x(f) ≥ −m}`, which is `∪_n F_{(m,n)}`.
pub fn horizontal_coarsening(_f: Z2Filtration) -> FieldFiltration {
    FieldFiltration::valuation(x_adic_base())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z2Tail {
    /// Each step past the window multiplies by `x^a y^b`.
    Multiply(i64, i64),
    Constant,
    ZeroAfter,
}

impl Z2Tail {
    fn step(self, l: LexIdeal, k: i64) -> LexIdeal {
        match self {
            Z2Tail::Multiply(a, b) => l.shift(a * k, b * k),
            Z2Tail::Constant => l,
            Z2Tail::ZeroAfter => LexIdeal::Zero,
        }
    }
}

/// `grid[j][i] = M_{(j,i)}` on `[0, J] × [0, I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Glider {
    pub filt: Z2Filtration,
    pub grid: Vec<Vec<LexIdeal>>,
    pub tail_j: Z2Tail,
    pub tail_i: Z2Tail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2AxiomFailure {
    pub from: (i64, i64),
    pub to: (i64, i64),
}

impl Z2Glider {
    pub fn new(filt: Z2Filtration, grid: Vec<Vec<LexIdeal>>, tail_j: Z2Tail, tail_i: Z2Tail) -> Result<Z2Glider, Rank2Error> {
        if grid.is_empty() || grid[0].is_empty() || grid.iter().any(|c| c.len() != grid[0].len()) {
            return Err(Rank2Error::Shape);
        }
        Ok(Z2Glider { filt, grid, tail_j, tail_i })
    }

    /// `(J, I)`.
    pub fn window(&self) -> (i64, i64) {
        (self.grid.len() as i64 - 1, self.grid[0].len() as i64 - 1)
    }

    pub fn level(&self, j: i64, i: i64) -> LexIdeal {
        assert!(j >= 0 && i >= 0);
        let (jj, ii) = self.window();
        if i > ii {
            return self.tail_i.step(self.level(j, ii), i - ii);
        }
        if j > jj {
            return self.tail_j.step(self.grid[jj as usize][i as usize], j - jj);
        }
        self.grid[j as usize][i as usize]
    }

    fn cells(&self, extra: i64) -> Vec<(i64, i64)> {
        let (jj, ii) = self.window();
        let mut out = vec![];
        for j in 0..=jj + extra {
            for i in 0..=ii + extra {
                out.push((j, i));
            }
        }
        out
    }

    /// `F_{c−d}·M_c ⊆ M_d` for cells `c ≥ d` in lex order, on the window plus one tail step.
    pub fn is_glider(&self) -> Result<(), Z2AxiomFailure> {
        let cells = self.cells(1);
        for &c in &cells {
            for &d in cells.iter().filter(|&&d| d <= c) {
                let f = self.filt.level(c.0 - d.0, c.1 - d.1);
                if !f.mul(self.level(c.0, c.1)).is_sub(self.level(d.0, d.1)) {
                    return Err(Z2AxiomFailure { from: c, to: d });
                }
            }
        }
        Ok(())
    }

    pub fn is_sub(&self, o: &Z2Glider) -> bool {
        self.cells(2).iter().all(|&(j, i)| self.level(j, i).is_sub(o.level(j, i)))
    }

    pub fn same_grid(&self, o: &Z2Glider) -> bool {
        self.cells(2).iter().all(|&(j, i)| self.level(j, i) == o.level(j, i))
    }

    /// `x^a y^b · M`.
    pub fn scale(&self, a: i64, b: i64) -> Z2Glider {
        let grid = self.grid.iter().map(|c| c.iter().map(|l| l.shift(a, b)).collect()).collect();
        Z2Glider { grid, ..self.clone() }
    }

    /// Body of column `j`: `∩_i M_{(j,i)}`, exact from the vertical tail.
    pub fn column_body(&self, j: i64) -> LexIdeal {
        let top = self.level(j, self.window().1);
        match (self.tail_i, top) {
            (Z2Tail::ZeroAfter, _) | (_, LexIdeal::Zero) => LexIdeal::Zero,
            (Z2Tail::Constant, l) | (Z2Tail::Multiply(0, 0), l) => l,
            (Z2Tail::Multiply(a, _), _) if a > 0 => LexIdeal::Zero,
            (Z2Tail::Multiply(0, _), LexIdeal::Cut(a, _)) => LexIdeal::Row(a + 1),
            (Z2Tail::Multiply(..), l) => l,
        }
    }
}

/// `M_{(j,i)} = F_{(m+1−j, n−i)}`, so that `∩_i M_{(0,i)} = ∪_k F_{(m,k)}`.
pub fn realize_z2(m: i64, n: i64, window: (i64, i64)) -> Z2Glider {
    let grid = (0..=window.0)
        .map(|j| (0..=window.1).map(|i| Z2Filtration::Composite.level(m + 1 - j, n - i)).collect())
        .collect();
    Z2Glider { filt: Z2Filtration::Composite, grid, tail_j: Z2Tail::Multiply(1, 0), tail_i: Z2Tail::Multiply(0, 1) }
}

/// `B^v(M)`: the column bodies, a glider over `f^hK`.
pub fn vertical_body_glider(m: &Z2Glider) -> Result<Glider, Rank2Error> {
    let base = x_adic_base();
    let filt = Arc::new(Filt::Field(horizontal_coarsening(m.filt)));
    let as_lattice = |l: LexIdeal| match l {
        LexIdeal::Zero => Ok(Lattice::zero(&base, 1)),
        LexIdeal::Row(a) => Ok(FracIdeal::new(&base, vec![a]).to_lattice()),
        other => Err(Rank2Error::OutOfClass(format!("column body {other} is not an O_x-lattice"))),
    };
    let jj = m.window().0;
    let prefix = (0..=jj).map(|j| as_lattice(m.column_body(j))).collect::<Result<Vec<_>, _>>()?;
    let tail = match m.tail_j {
        Z2Tail::ZeroAfter => TailRule::ZeroAfter,
        Z2Tail::Constant | Z2Tail::Multiply(0, _) => TailRule::Constant,
        Z2Tail::Multiply(a, _) if a > 0 => TailRule::MultiplyBy(FracIdeal::new(&base, vec![a])),
        Z2Tail::Multiply(..) => return Err(Rank2Error::OutOfClass("the horizontal tail grows".into())),
    };
    Ok(Glider::new(filt, prefix, tail))
}

/// `M^res_s`: the leading `x`-coefficients of `M_{(s,i)}`, as `y`-adic ideals of `ℚ(y)`.
///
/// Row `s` starts at `M_{(s,0)} = Cut(e, q)`; the `i`-th level is `M_{(s,i)}` modulo
/// its part of `x`-value above `e`, read through `f ↦ (x^{−e}f)(0, y)`.
pub fn residue_glider(m: &Z2Glider, s: i64) -> Result<Glider, Rank2Error> {
    let (jj, ii) = m.window();
    if s < 0 || s > jj {
        return Err(Rank2Error::Window(s));
    }
    let e = match m.level(s, 0) {
        LexIdeal::Cut(e, _) => e,
        other => return Err(Rank2Error::OutOfClass(format!("M_(s,0) = {other} has no leading x-level"))),
    };
    let base = residue_base();
    let piece = |l: LexIdeal| match l {
        LexIdeal::Cut(a, b) if a == e => Ok(FracIdeal::new(&base, vec![b]).to_lattice()),
        LexIdeal::Cut(..) | LexIdeal::Zero => Ok(Lattice::zero(&base, 1)),
        LexIdeal::Row(a) if a > e => Ok(Lattice::zero(&base, 1)),
        other => Err(Rank2Error::OutOfClass(format!("{other} has residue all of ℚ(y)"))),
    };
    let prefix = (0..=ii).map(|i| piece(m.level(s, i))).collect::<Result<Vec<_>, _>>()?;
    let tail = match m.tail_i {
        Z2Tail::Multiply(0, b) if b > 0 => TailRule::MultiplyBy(FracIdeal::new(&base, vec![b])),
        Z2Tail::Multiply(..) | Z2Tail::ZeroAfter => TailRule::ZeroAfter,
        Z2Tail::Constant => TailRule::Constant,
    };
    Ok(Glider::new(Arc::new(Filt::Field(FieldFiltration::valuation(base))), prefix, tail))
}

/// The `y`-adic residue of `x^{−e}·f` in `ℚ(y)`, for `v_x(f) = e`.
pub fn leading_coefficient(f: &FieldElem) -> Option<FieldElem> {
    let e = val(&Valuation::XAdic, f).ok()?.finite()?;
    let x = Field::QXY.gen()?;
    match residue(&Valuation::XAdic, &(f * &x.pow(-e))).ok()? {
        Residue::Elem(g) => Some(g),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Z2Verdict {
    Irreducible { m: i64, n: i64 },
    /// `witness ⊆ M` with `witness_cell` strictly between two adjacent levels of `M`
    /// and equal to no level of `M`.
    Reducible { witness: Z2Glider, cell: (i64, i64), between: ((i64, i64), (i64, i64)) },
    OutOfClass(String),
}

/// Checks a candidate witness: a ℤ²-subglider with a level strictly inside an adjacent step.
pub fn check_witness(n: &Z2Glider, m: &Z2Glider) -> Option<((i64, i64), ((i64, i64), (i64, i64)))> {
    if n.is_glider().is_err() || !n.is_sub(m) {
        return None;
    }
    let cells = m.cells(2);
    let levels: Vec<LexIdeal> = cells.iter().map(|&(j, i)| m.level(j, i)).collect();
    for &(j, i) in &m.cells(1) {
        let w = n.level(j, i);
        if levels.contains(&w) {
            continue;
        }
        for (dj, di) in [(0, 1), (1, 0)] {
            for &(a, b) in &[(j, i), (j - dj, i - di)] {
                if a < 0 || b < 0 {
                    continue;
                }
                let (hi, lo) = (m.level(a, b), m.level(a + dj, b + di));
                if lo.is_sub(w) && w.is_sub(hi) && lo != w && w != hi {
                    return Some(((j, i), ((a, b), (a + dj, b + di))));
                }
            }
        }
    }
    None
}

pub fn classify_z2_glider(m: &Z2Glider) -> Z2Verdict {
    if m.filt == Z2Filtration::HorizontalOnly {
        return Z2Verdict::OutOfClass("the filtration is essentially a ℤ-filtration".into());
    }
    if let Err(e) = m.is_glider() {
        return Z2Verdict::OutOfClass(format!("not a ℤ²-glider: F·M_{:?} ⊄ M_{:?}", e.from, e.to));
    }
    if let LexIdeal::Cut(a, b) = m.level(0, 0) {
        let (mm, nn) = (-a - 1, -b);
        if realize_z2(mm, nn, m.window()).same_grid(m) {
            return Z2Verdict::Irreducible { m: mm, n: nn };
        }
    }
    for (a, b) in [(0, 1), (1, 0)] {
        let w = m.scale(a, b);
        if let Some((cell, between)) = check_witness(&w, m) {
            return Z2Verdict::Reducible { witness: w, cell, between };
        }
    }
    Z2Verdict::OutOfClass("no normal form and no scalar witness".into())
}

/// The shift of the vertical body glider as a ℤ-glider over `f^hK`, if irreducible.
pub fn body_shift(m: &Z2Glider) -> Result<Option<i64>, Rank2Error> {
    let g = vertical_body_glider(m)?;
    Ok(match classify(&g) {
        Verdict::Irreducible { element, .. } => Some(element.shift()),
        _ => None,
    })
}

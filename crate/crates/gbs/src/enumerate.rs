//! Brauer–Severi points, classification of glider ideals and windowed
//! enumeration of glider Brauer–Severi elements.

use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, FieldElem};
use crate::filtration::{AlgMode, AlgebraFiltration, FieldFiltration, Filt};
use crate::glider::{classify_subglider, Glider, GliderError, TailRule, TrivialityVerdict};
use crate::lattice::{Algebra, AlgebraDesc, BaseRing, FracIdeal, Lattice, LatticeError, Vector};

/// A point of `P^{n−1}(K)`; the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BsPoint {
    pub coords: Vec<FieldElem>,
}

impl BsPoint {
    pub fn new(coords: Vec<FieldElem>) -> Result<BsPoint, LatticeError> {
        let k = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| LatticeError::Structure("the zero vector is not a point".into()))?;
        let s = coords[k].inv();
        Ok(BsPoint { coords: coords.iter().map(|c| c * &s).collect() })
    }

    /// The `k`-th coordinate point.
    pub fn standard(field: &Field, n: usize, k: usize) -> BsPoint {
        let mut c = vec![field.zero(); n];
        c[k] = field.one();
        BsPoint { coords: c }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// `v = E_11·p`: the matrix whose first row is `p`.
    pub fn vector(&self) -> Vector {
        let n = self.n();
        let f = self.coords[0].field();
        let mut v = vec![f.zero(); n * n];
        v[..n].clone_from_slice(&self.coords);
        v
    }
}

impl fmt::Display for BsPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(" : "))
    }
}

/// Basis `E_i1·v` of the left ideal `A·v ⊆ M_n(K)`: matrices with every row in `K·p`.
pub fn bs_left_ideal(p: &BsPoint) -> Vec<Vector> {
    let n = p.n();
    let f = p.coords[0].field();
    (0..n)
        .map(|i| {
            let mut v = vec![f.zero(); n * n];
            v[i * n..(i + 1) * n].clone_from_slice(&p.coords);
            v
        })
        .collect()
}

/// Whether every row of the matrix `x` is a multiple of `p`.
pub fn in_left_ideal(p: &BsPoint, x: &[FieldElem]) -> bool {
    let n = p.n();
    let k = p.coords.iter().position(|c| !c.is_zero()).unwrap();
    x.chunks(n).all(|row| {
        let c = &row[k];
        row.iter().zip(&p.coords).all(|(a, b)| *a == c * b)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GbsKind {
    /// `(F_nK)_*`.
    Field { shift: i64 },
    /// `(F_mA·v)_*`.
    Csa { point: BsPoint, shift: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GbsElement {
    pub kind: GbsKind,
}

impl GbsElement {
    pub fn field(shift: i64) -> GbsElement {
        GbsElement { kind: GbsKind::Field { shift } }
    }

    pub fn csa(point: BsPoint, shift: i64) -> GbsElement {
        GbsElement { kind: GbsKind::Csa { point, shift } }
    }

    pub fn shift(&self) -> i64 {
        match &self.kind {
            GbsKind::Field { shift } | GbsKind::Csa { shift, .. } => *shift,
        }
    }
}

impl fmt::Display for GbsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GbsKind::Field { shift } => write!(f, "(F_{shift})_*"),
            GbsKind::Csa { point, shift } => write!(f, "(F_{shift}A·v)_* at {point}"),
        }
    }
}

/// How an irreducible verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    /// Through the strong filtration sharing the positive part.
    AssociatedStrong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible { element: GbsElement, route: Route },
    Reducible { witness: Glider, verdict: TrivialityVerdict },
    OutOfClass(String),
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible { .. })
    }

    pub fn element(&self) -> Option<&GbsElement> {
        match self {
            Verdict::Irreducible { element, .. } => Some(element),
            _ => None,
        }
    }
}

fn uniformizer(f: &FieldFiltration) -> FieldElem {
    f.base.unis[0].clone()
}

/// `M_j = m_v^{j−n}`: the valuation chain `(F^v_n)_*`.
pub fn realize_field(filt: Arc<Filt>, n: i64) -> Glider {
    let fk = filt.fk();
    let pi = uniformizer(fk);
    let top = Lattice::span(&fk.base, 1, [vec![pi.pow(-n)]]);
    let step = crate::lattice::FracIdeal::new(&fk.base, vec![1]);
    Glider::new(filt, vec![top], TailRule::MultiplyBy(step))
}

/// `(F_mA·v)_*` with `v = E_11·p`.
pub fn realize_csa(filt: Arc<Filt>, p: &BsPoint, m: i64) -> Glider {
    let a = filt.alg();
    let v = p.vector();
    let fm = filt.level(m);
    let top = Lattice::span(filt.base(), a.dim, fm.rows.iter().map(|b| a.mul(b, &v)));
    Glider::new(filt, vec![top], TailRule::FiltrationTail)
}

pub fn realize(filt: Arc<Filt>, g: &GbsElement) -> Glider {
    match &g.kind {
        GbsKind::Field { shift } => realize_field(filt, *shift),
        GbsKind::Csa { point, shift } => realize_csa(filt, point, *shift),
    }
}

fn check_glider(m: &Glider) -> Result<(), String> {
    m.validate().map_err(|e| e.to_string())?;
    m.is_glider().map_err(|e| format!("glider axiom fails at (i, j) = ({}, {})", e.i, e.j))
}

/// `W + Σ_{a ≥ 1} F_a·M_{i+a}`: the smallest level `i` compatible with the later levels.
fn close_level(m: &Glider, i: i64, w: &Lattice) -> Lattice {
    let h = m.horizon() + 2;
    let mut acc = w.clone();
    for a in 1..=h {
        acc = acc.add(&m.filt.act(a, &m.level(i + a)));
    }
    acc
}

/// Bounded witness search: accepts the first candidate that is a glider and
/// classifies as a non-trivial subglider of `m`.
fn find_witness(m: &Glider, columns: &[Vec<Vector>]) -> Option<(Glider, TrivialityVerdict)> {
    let filt = &m.filt;
    let base = filt.base().clone();
    let order = filt.level(0);
    let alg = filt.alg();
    let h = m.horizon();
    let mut cands: Vec<Glider> = vec![];

    // a level whose quotient is not simple, refined by a submodule strictly between
    for i in 0..=h {
        let (x, y) = (m.level(i), m.level(i + 1));
        if x == y || x.is_simple_quotient(&y, &order, &alg).unwrap_or(true) {
            continue;
        }
        let mut ws: Vec<Lattice> = base.unis.iter().map(|pi| x.scale(pi).add(&y)).collect();
        for u in &x.rows {
            ws.push(Lattice::span(&base, x.dim, order.rows.iter().map(|b| alg.mul(b, u))).add(&y));
        }
        for w in ws {
            if w == x || w == y {
                continue;
            }
            let w = close_level(m, i, &w);
            if w == x {
                continue;
            }
            let mut prefix = m.levels(i - 1);
            prefix.push(w);
            cands.push(Glider::new(filt.clone(), prefix, TailRule::Follow(Box::new(m.clone()), 0)));
        }
        break;
    }
    // intersections with coordinate left ideals
    if !matches!(m.tail, TailRule::Follow(..)) {
        for col in columns {
            let prefix = m.prefix.iter().map(|l| l.intersect_subspace(col)).collect();
            cands.push(Glider::new(filt.clone(), prefix, m.tail.clone()));
        }
    }
    // scalar subgliders π_j·M
    for pi in &base.unis {
        cands.push(m.scale(pi));
    }
    for c in cands {
        if c.is_glider().is_err() {
            continue;
        }
        if let Ok(v @ TrivialityVerdict::NonTrivial { .. }) = classify_subglider(&c, m) {
            return Some((c, v));
        }
    }
    None
}

pub fn classify_field_glider(m: &Glider) -> Verdict {
    let Filt::Field(f) = &*m.filt else {
        return Verdict::OutOfClass("not a field glider".into());
    };
    if let Err(e) = check_glider(m) {
        return Verdict::OutOfClass(e);
    }
    let top = m.level(0);
    if top.is_zero() {
        return Verdict::OutOfClass("the zero glider".into());
    }
    if f.positive_is_dvr() {
        let n = -f.base.vvec(&top.rows[0][0])[0];
        if m.same_chain(&realize_field(m.filt.clone(), n)) {
            let route = if f.is_dvr_valuation() { Route::Direct } else { Route::AssociatedStrong };
            return Verdict::Irreducible { element: GbsElement::field(n), route };
        }
    }
    match find_witness(m, &[]) {
        Some((witness, verdict)) => Verdict::Reducible { witness, verdict },
        None => Verdict::OutOfClass("no witness in the bounded candidate set".into()),
    }
}

fn split_matrix(filt: &Filt) -> Option<(&AlgebraFiltration, usize)> {
    match filt {
        Filt::Algebra(a) => match (&a.mode, &a.alg.desc) {
            (AlgMode::Induced, AlgebraDesc::Matrix(n)) if a.base.is_dvr_valuation() => Some((a, *n)),
            _ => None,
        },
        Filt::Field(_) => None,
    }
}

/// The point `p` when the `K`-span of `x` is a left ideal `A·v`.
fn extract_point(x: &Lattice, n: usize) -> Option<BsPoint> {
    if x.rank() != n {
        return None;
    }
    let row = x.rows[0].chunks(n).find(|r| r.iter().any(|c| !c.is_zero()))?;
    let p = BsPoint::new(row.to_vec()).ok()?;
    x.rows.iter().all(|r| in_left_ideal(&p, r)).then_some(p)
}

pub fn classify_csa_glider(m: &Glider) -> Verdict {
    let Some((fa, n)) = split_matrix(&m.filt) else {
        return Verdict::OutOfClass("needs the induced filtration of a DVR valuation on a matrix algebra".into());
    };
    if let Err(e) = check_glider(m) {
        return Verdict::OutOfClass(e);
    }
    let top = m.level(0);
    if m.body().is_zero() {
        if let Some(p) = extract_point(&top, n) {
            let v = p.vector();
            if let Some(i) = top.line_ideal(&v) {
                let shift = -i.exps[0];
                if m.same_chain(&realize_csa(m.filt.clone(), &p, shift)) {
                    return Verdict::Irreducible { element: GbsElement::csa(p, shift), route: Route::Direct };
                }
            }
        }
    }
    let f = fa.alg.field.clone();
    let columns: Vec<Vec<Vector>> = (0..n).map(|k| bs_left_ideal(&BsPoint::standard(&f, n, k))).collect();
    match find_witness(m, &columns) {
        Some((witness, verdict)) => Verdict::Reducible { witness, verdict },
        None => Verdict::OutOfClass("no witness in the bounded candidate set".into()),
    }
}

pub fn classify(m: &Glider) -> Verdict {
    match &*m.filt {
        Filt::Field(_) => classify_field_glider(m),
        Filt::Algebra(_) => classify_csa_glider(m),
    }
}

/// `FieldKind(n)` for `a ≤ n ≤ b` when the positive part is a DVR valuation filtration.
pub fn enumerate_gbs_field(f: &FieldFiltration, a: i64, b: i64) -> Vec<GbsElement> {
    if !f.positive_is_dvr() {
        return vec![];
    }
    (a..=b).map(GbsElement::field).collect()
}

/// The product of the given points with the shift window, ordered by point then shift.
pub fn enumerate_gbs_csa(
    fa: &AlgebraFiltration,
    a: i64,
    b: i64,
    points: &[BsPoint],
) -> Result<Vec<GbsElement>, GliderError> {
    let filt = Filt::Algebra(fa.clone());
    let Some((_, n)) = split_matrix(&filt) else {
        return Err(GliderError::Unsupported("needs the induced filtration of a DVR valuation on M_n(K)".into()));
    };
    let mut pts: Vec<BsPoint> = vec![];
    for p in points {
        if p.n() != n {
            return Err(GliderError::Structure(format!("point {p} does not lie in P^{}", n - 1)));
        }
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    pts.sort_by_key(|p| p.to_string());
    Ok(pts.iter().flat_map(|p| (a..=b).map(move |s| GbsElement::csa(p.clone(), s))).collect())
}

/// The column chain `F_{−i}A·v`, `v = E_11`: a non-trivial subglider of `F^-B`.
pub fn find_negative_part_witness(fa: &AlgebraFiltration) -> Result<Glider, GliderError> {
    let n = match (&fa.mode, &fa.alg.desc) {
        (AlgMode::Induced, AlgebraDesc::Matrix(n)) => *n,
        _ => return Err(GliderError::Unsupported("needs an induced filtration on M_n(K)".into())),
    };
    if n < 2 {
        return Err(GliderError::Unsupported("n = 1: the negative part of a field filtration has no such witness".into()));
    }
    let filt = Arc::new(Filt::Algebra(fa.clone()));
    let p = BsPoint::standard(&fa.alg.field, n, 0);
    let w = realize_csa(filt.clone(), &p, 0);
    let whole = Glider::negative_part(filt, 0);
    match classify_subglider(&w, &whole)? {
        TrivialityVerdict::NonTrivial { .. } => Ok(w),
        v => Err(GliderError::Unsupported(format!("column chain classified as {v:?}"))),
    }
}

/// `M_n(F_0K)` with `F_mA = F_mK·M_n(F_0K)`, written out in explicit mode over the window of `φ`.
pub fn explicit_matrix(f: &FieldFiltration, n: usize) -> Result<AlgebraFiltration, GliderError> {
    let alg = Algebra::matrix(f.field().clone(), n);
    let order = Lattice::standard(&f.base, n * n);
    let phi = &f.phi;
    let levels = (phi.lo..=phi.hi).map(|m| order.scale(&f.level(m).generator())).collect();
    let plus = (phi.plus.period, FracIdeal::new(&f.base, phi.plus.inc.iter().map(|x| -x).collect()));
    let minus = (phi.minus.period, FracIdeal::new(&f.base, phi.minus.inc.clone()));
    Ok(AlgebraFiltration::explicit(alg, phi.lo, levels, plus, minus)?)
}

/// On `M_2(ℚ)` over `ℤ_(p)`: `H = [[R, R], [P, R]]` with radical `J`, and
/// `F_{−n} = J^{2n+1}` for `n ≥ 1`, `F_0 = H`, `F_1 = J^{−1}`, `F_n = J^{−2n}` for `n ≥ 2`.
/// Not strong: `F_1·F_{−1} = J² ≠ H`.
pub fn hereditary_skip(p: u64) -> Result<AlgebraFiltration, GliderError> {
    let base = BaseRing::padic(p);
    let alg = Algebra::matrix(Field::Q, 2);
    let q = |a: i64| Field::Q.int(a);
    let pi = q(p as i64);
    let e = |k: usize, c: &FieldElem| {
        let mut v = crate::lattice::linalg::zeros(&Field::Q, 4);
        v[k] = c.clone();
        v
    };
    let h = Lattice::span(&base, 4, [e(0, &q(1)), e(1, &q(1)), e(2, &pi), e(3, &q(1))]);
    let j = Lattice::span(&base, 4, [e(0, &pi), e(1, &q(1)), e(2, &pi), e(3, &pi)]);
    let jinv = h.colon_left(&j, &alg)?;
    let pw = |l: &Lattice, k: usize| (0..k).fold(h.clone(), |acc, _| acc.mult(l, &alg));
    let levels = vec![pw(&j, 5), pw(&j, 3), h.clone(), jinv.clone(), pw(&jinv, 4)];
    let plus = (1, FracIdeal::new(&base, vec![-1]));
    let minus = (1, FracIdeal::new(&base, vec![1]));
    Ok(AlgebraFiltration::explicit(alg, -2, levels, plus, minus)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    NotGlider,
    Reducible { witness: Glider, verdict: TrivialityVerdict },
    /// No witness in the bounded candidate set. This is not a proof of irreducibility.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub filtration: usize,
    pub glider: String,
    pub outcome: SearchOutcome,
}

/// Harness for non-strong filtrations on `M_n(K)` with a possibly nonempty GBS set.
/// Tries `(F_s)_*` and the column chains `F_{s−i}A ∩ A·e_k` for each shift, and runs
/// the bounded witness search on every glider among them. Strong candidates are skipped.
pub fn nonstrong_search(cands: &[AlgebraFiltration], shifts: std::ops::RangeInclusive<i64>) -> Vec<SearchRecord> {
    let mut out = vec![];
    for (c, fa) in cands.iter().enumerate() {
        if fa.is_strong() {
            continue;
        }
        let n = match fa.alg.desc {
            AlgebraDesc::Matrix(n) => n,
            _ => 0,
        };
        let field = fa.alg.field.clone();
        let columns: Vec<Vec<Vector>> = (0..n).map(|k| bs_left_ideal(&BsPoint::standard(&field, n, k))).collect();
        let filt = Arc::new(Filt::Algebra(fa.clone()));
        let h = filt.horizon() + 1;
        for s in shifts.clone() {
            let mut gliders = vec![(format!("(F_{s})_*"), Glider::negative_part(filt.clone(), s))];
            for (k, col) in columns.iter().enumerate() {
                let prefix = (0..=h).map(|i| filt.level(s - i).intersect_subspace(col)).collect();
                gliders.push((format!("F_({s}-i)A ∩ A·e_{k}"), Glider::new(filt.clone(), prefix, TailRule::FiltrationTail)));
            }
            for (name, m) in gliders {
                let outcome = if check_glider(&m).is_err() {
                    SearchOutcome::NotGlider
                } else {
                    match find_witness(&m, &columns) {
                        Some((witness, verdict)) => SearchOutcome::Reducible { witness, verdict },
                        None => SearchOutcome::Unresolved,
                    }
                };
                out.push(SearchRecord { filtration: c, glider: name, outcome });
            }
        }
    }
    out
}

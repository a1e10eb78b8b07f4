//! JSON documents. Every top-level document carries `"schema": "gbs/1"`; unknown keys are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use gbs::arith::{int, parse_elem, Field, FieldElem, Valuation};
use gbs::enumerate::{BsPoint, GbsElement, GbsKind};
use gbs::filtration::{AlgMode, AlgebraFiltration, FieldFiltration, Filt, StepFunction, Tail};
use gbs::glider::{Glider, TailRule};
use gbs::lattice::{Algebra, AlgebraDesc, BaseRing, FracIdeal, Lattice};
use gbs::rank2::{LexIdeal, Z2Filtration, Z2Glider, Z2Tail};
use gbs::tensor::{ExtKind, ExtensionData};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "gbs/1";

/// Input problems: the CLI maps these to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Res<T> = Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> Res<T> {
    Err(InputError(msg.into()))
}

fn wrap<E: fmt::Display>(what: &str) -> impl Fn(E) -> InputError + '_ {
    move |e| InputError(format!("{what}: {e}"))
}

pub trait Doc {
    fn schema(&self) -> &Option<String>;
}

macro_rules! doc {
    ($($t:ty),*) => {$(
        impl Doc for $t {
            fn schema(&self) -> &Option<String> {
                &self.schema
            }
        }
    )*};
}

/// Parse a top-level document; positions come from the JSON parser.
pub fn parse_doc<T: DeserializeOwned + Doc>(name: &str, text: &str) -> Res<T> {
    let v: T = serde_json::from_str(text)
        .map_err(|e| InputError(format!("{name}:{}:{}: {e}", e.line(), e.column())))?;
    match v.schema().as_deref() {
        Some(SCHEMA) => Ok(v),
        Some(s) => bad(format!("{name}: unsupported schema {s:?}, expected {SCHEMA:?}")),
        None => bad(format!("{name}: missing \"schema\": {SCHEMA:?}")),
    }
}

pub fn read_doc<T: DeserializeOwned + Doc>(path: &str) -> Res<T> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    parse_doc(path, &text)
}

// ---- scalars, bases, lattices

fn elem(field: &Field, s: &str) -> Res<FieldElem> {
    parse_elem(field, s).map_err(|e| InputError(format!("element {s:?} of {}: {e}", field.name())))
}

pub fn parse_valuation(field: &Field, s: &str) -> Res<Valuation> {
    let err = |e: gbs::arith::ValError| InputError(format!("valuation {s:?}: {e}"));
    let Some(core) = s.strip_suffix("-adic") else {
        return match s {
            "composite(x,y)" => Ok(Valuation::Composite2),
            _ => bad(format!("unknown valuation {s:?}")),
        };
    };
    match core {
        "x" => return Ok(Valuation::XAdic),
        "y" => return Ok(Valuation::YAdic),
        _ => {}
    }
    if let Ok(p) = core.parse::<u64>() {
        return Valuation::padic(p).map_err(err);
    }
    let inner = core.strip_prefix('(').and_then(|c| c.strip_suffix(')'));
    let Some(inner) = inner else { return bad(format!("unknown valuation {s:?}")) };
    match elem(field, inner)? {
        FieldElem::Gauss(a, b) if a.is_integer() && b.is_integer() => {
            let (a, b) = (a.to_integer().try_into(), b.to_integer().try_into());
            match (a, b) {
                (Ok(a), Ok(b)) => Valuation::gauss(a, b).map_err(err),
                _ => bad(format!("valuation {s:?}: coefficients too large")),
            }
        }
        FieldElem::RatFunc { num, den, .. } if den.is_one() => Valuation::poly_prime(num).map_err(err),
        _ => bad(format!("valuation {s:?}: expected a Gaussian integer or a polynomial")),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BaseJson {
    pub field: String,
    pub valuations: Vec<String>,
}

impl BaseJson {
    pub fn from_base(b: &BaseRing) -> BaseJson {
        BaseJson { field: b.field.name(), valuations: b.vals.iter().map(|v| v.to_string()).collect() }
    }

    pub fn build(&self) -> Res<BaseRing> {
        let field = Field::parse_name(&self.field).ok_or_else(|| InputError(format!("unknown field {:?}", self.field)))?;
        let vals = self.valuations.iter().map(|v| parse_valuation(&field, v)).collect::<Res<Vec<_>>>()?;
        BaseRing::new(field, vals).map_err(wrap("base ring"))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub base: BaseJson,
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> LatticeJson {
        LatticeJson {
            schema: None,
            base: BaseJson::from_base(&l.base),
            dim: l.dim,
            rows: l.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn build(&self) -> Res<Lattice> {
        let base = self.base.build()?;
        let mut gens = vec![];
        for r in &self.rows {
            if r.len() != self.dim {
                return bad(format!("lattice row has {} entries, dim is {}", r.len(), self.dim));
            }
            gens.push(r.iter().map(|s| elem(&base.field, s)).collect::<Res<Vec<_>>>()?);
        }
        Ok(Lattice::span(&base, self.dim, gens))
    }
}

// ---- filtrations

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TailJson {
    pub period: i64,
    pub inc: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct PhiJson {
    pub window: [i64; 2],
    pub table: BTreeMap<i64, Vec<i64>>,
    pub tail_plus: TailJson,
    pub tail_minus: TailJson,
}

impl PhiJson {
    fn from_step(s: &StepFunction) -> PhiJson {
        PhiJson {
            window: [s.lo, s.hi],
            table: s.table.iter().enumerate().map(|(k, v)| (s.lo + k as i64, v.clone())).collect(),
            tail_plus: TailJson { period: s.plus.period, inc: s.plus.inc.clone() },
            tail_minus: TailJson { period: s.minus.period, inc: s.minus.inc.clone() },
        }
    }

    fn build(&self) -> Res<StepFunction> {
        let [lo, hi] = self.window;
        if lo > hi {
            return bad("phi window is empty");
        }
        let keys: Vec<i64> = self.table.keys().copied().collect();
        if keys != (lo..=hi).collect::<Vec<_>>() {
            return bad(format!("phi table must have exactly the keys {lo}..={hi}"));
        }
        StepFunction::new(
            lo,
            self.table.values().cloned().collect(),
            Tail::new(self.tail_plus.period, self.tail_plus.inc.clone()),
            Tail::new(self.tail_minus.period, self.tail_minus.inc.clone()),
        )
        .map_err(wrap("phi"))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IdealTailJson {
    pub period: i64,
    pub ideal: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AlgebraJson {
    /// `M_n` or `(a,b)`.
    pub algebra: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<LatticeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LatticeJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_plus: Option<IdealTailJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_minus: Option<IdealTailJson>,
}

pub fn algebra_name(a: &Algebra) -> String {
    match &a.desc {
        AlgebraDesc::Matrix(n) => format!("M_{n}"),
        AlgebraDesc::Quaternion(x, y) => format!("({x},{y})"),
    }
}

pub fn parse_algebra(field: &Field, s: &str) -> Res<Algebra> {
    if let Some(n) = s.strip_prefix("M_") {
        return match n.parse::<usize>() {
            Ok(n) if (1..=4).contains(&n) => Ok(Algebra::matrix(field.clone(), n)),
            _ => bad(format!("matrix size in {s:?} must be 1..=4")),
        };
    }
    let inner = s.strip_prefix('(').and_then(|c| c.strip_suffix(')'));
    let parts: Vec<&str> = inner.map(|c| c.split(',').collect()).unwrap_or_default();
    if parts.len() != 2 {
        return bad(format!("unknown algebra {s:?}: use M_n or (a,b)"));
    }
    let r = |t: &str| match elem(&Field::Q, t.trim())? {
        FieldElem::Rational(q) => Ok(q),
        _ => bad("quaternion parameters must be rational"),
    };
    Algebra::quaternion(field.clone(), r(parts[0])?, r(parts[1])?).map_err(wrap("algebra"))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FiltrationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub field: String,
    pub valuations: Vec<String>,
    /// Omitted means `φ(n) = n` for every valuation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
}

fn ideal_tail(t: &(i64, FracIdeal)) -> IdealTailJson {
    IdealTailJson { period: t.0, ideal: t.1.exps.clone() }
}

impl FiltrationJson {
    pub fn from_filt(f: &Filt) -> FiltrationJson {
        let fk = f.fk();
        let b = BaseJson::from_base(&fk.base);
        let algebra = match f {
            Filt::Field(_) => None,
            Filt::Algebra(fa) => Some(match &fa.mode {
                AlgMode::Induced => AlgebraJson {
                    algebra: algebra_name(&fa.alg),
                    mode: "induced".into(),
                    order: Some(LatticeJson::from_lattice(&fa.order)),
                    window: None,
                    levels: None,
                    tail_plus: None,
                    tail_minus: None,
                },
                AlgMode::Explicit { lo, levels, plus, minus } => AlgebraJson {
                    algebra: algebra_name(&fa.alg),
                    mode: "explicit".into(),
                    order: None,
                    window: Some([*lo, lo + levels.len() as i64 - 1]),
                    levels: Some(levels.iter().map(LatticeJson::from_lattice).collect()),
                    tail_plus: Some(ideal_tail(plus)),
                    tail_minus: Some(ideal_tail(minus)),
                },
            }),
        };
        FiltrationJson {
            schema: None,
            field: b.field,
            valuations: b.valuations,
            phi: Some(PhiJson::from_step(&fk.phi)),
            algebra,
        }
    }

    pub fn build(&self) -> Res<Filt> {
        let base = BaseJson { field: self.field.clone(), valuations: self.valuations.clone() }.build()?;
        let phi = match &self.phi {
            Some(p) => p.build()?,
            None => StepFunction::linear(base.rank()),
        };
        let fk = FieldFiltration::new(base.clone(), phi).map_err(wrap("filtration"))?;
        let Some(a) = &self.algebra else { return Ok(Filt::Field(fk)) };
        let alg = parse_algebra(&base.field, &a.algebra)?;
        let same_base = |l: &Lattice| if l.base == base { Ok(()) } else { bad("lattice base differs from the filtration base") };
        match a.mode.as_str() {
            "induced" => {
                if a.window.is_some() || a.levels.is_some() || a.tail_plus.is_some() || a.tail_minus.is_some() {
                    return bad("induced mode takes only \"order\"");
                }
                let order = match &a.order {
                    Some(o) => o.build()?,
                    None => Lattice::standard(&base, alg.dim),
                };
                same_base(&order)?;
                AlgebraFiltration::induced(alg, fk, order).map(Filt::Algebra).map_err(wrap("filtration"))
            }
            "explicit" => {
                if a.order.is_some() {
                    return bad("explicit mode reads F_0A from \"levels\"");
                }
                let (Some([lo, hi]), Some(levels), Some(tp), Some(tm)) = (a.window, &a.levels, &a.tail_plus, &a.tail_minus) else {
                    return bad("explicit mode needs window, levels, tailPlus and tailMinus");
                };
                let levels = levels.iter().map(|l| l.build()).collect::<Res<Vec<_>>>()?;
                if levels.len() as i64 != hi - lo + 1 {
                    return bad("explicit levels do not match the window");
                }
                for l in &levels {
                    same_base(l)?;
                }
                let t = |x: &IdealTailJson| -> Res<(i64, FracIdeal)> {
                    if x.ideal.len() != base.rank() {
                        return bad("tail ideal has the wrong number of exponents");
                    }
                    Ok((x.period, FracIdeal::new(&base, x.ideal.clone())))
                };
                let fa = AlgebraFiltration::explicit(alg, lo, levels, t(tp)?, t(tm)?).map_err(wrap("filtration"))?;
                if self.phi.is_some() && fa.base != fk {
                    return bad("phi does not match the filtration induced on K by the levels");
                }
                Ok(Filt::Algebra(fa))
            }
            m => bad(format!("unknown algebra mode {m:?}")),
        }
    }
}

// ---- gliders

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GliderTailJson {
    Filtration,
    Multiply { ideal: Vec<i64> },
    Constant,
    Zero,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GliderJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub filtration: FiltrationJson,
    /// `K` or the algebra name; informational, checked on input.
    pub ambient: String,
    pub prefix: Vec<LatticeJson>,
    pub tail: GliderTailJson,
}

fn ambient(f: &Filt) -> String {
    match f {
        Filt::Field(_) => "K".into(),
        Filt::Algebra(fa) => algebra_name(&fa.alg),
    }
}

impl GliderJson {
    pub fn from_glider(g: &Glider) -> Res<GliderJson> {
        let tail = match &g.tail {
            TailRule::FiltrationTail => GliderTailJson::Filtration,
            TailRule::MultiplyBy(i) => GliderTailJson::Multiply { ideal: i.exps.clone() },
            TailRule::Constant => GliderTailJson::Constant,
            TailRule::ZeroAfter => GliderTailJson::Zero,
            TailRule::Follow(..) => return bad("a glider with a Follow tail has no JSON form"),
        };
        Ok(GliderJson {
            schema: None,
            filtration: FiltrationJson::from_filt(&g.filt),
            ambient: ambient(&g.filt),
            prefix: g.prefix.iter().map(LatticeJson::from_lattice).collect(),
            tail,
        })
    }

    pub fn build(&self) -> Res<Glider> {
        let filt = Arc::new(self.filtration.build()?);
        if ambient(&filt) != self.ambient {
            return bad(format!("ambient {:?} does not match the filtration ({})", self.ambient, ambient(&filt)));
        }
        let prefix = self.prefix.iter().map(|l| l.build()).collect::<Res<Vec<_>>>()?;
        if prefix.iter().any(|l| l.base != *filt.base() || l.dim != filt.dim()) {
            return bad("prefix lattices must live in the ambient over the filtration base");
        }
        let tail = match &self.tail {
            GliderTailJson::Filtration => TailRule::FiltrationTail,
            GliderTailJson::Multiply { ideal } => {
                if ideal.len() != filt.base().rank() {
                    return bad("tail ideal has the wrong number of exponents");
                }
                TailRule::MultiplyBy(FracIdeal::new(filt.base(), ideal.clone()))
            }
            GliderTailJson::Constant => TailRule::Constant,
            GliderTailJson::Zero => TailRule::ZeroAfter,
        };
        let g = Glider::new(filt, prefix, tail);
        g.validate().map_err(wrap("glider"))?;
        Ok(g)
    }
}

// ---- rank two

pub fn show_lex(l: LexIdeal) -> String {
    match l {
        LexIdeal::Zero => "0".into(),
        LexIdeal::Whole => "K".into(),
        LexIdeal::Row(a) => format!("row({a})"),
        LexIdeal::Cut(a, b) => format!("cut({a},{b})"),
    }
}

pub fn parse_lex(s: &str) -> Res<LexIdeal> {
    let args = |p: &str| -> Option<Vec<i64>> {
        let inner = s.strip_prefix(p)?.strip_prefix('(')?.strip_suffix(')')?;
        inner.split(',').map(|t| t.trim().parse().ok()).collect()
    };
    match s {
        "0" => return Ok(LexIdeal::Zero),
        "K" => return Ok(LexIdeal::Whole),
        _ => {}
    }
    match (args("row").as_deref(), args("cut").as_deref()) {
        (Some(&[a]), _) => Ok(LexIdeal::Row(a)),
        (_, Some(&[a, b])) => Ok(LexIdeal::Cut(a, b)),
        _ => bad(format!("unknown lex ideal {s:?}: use 0, K, row(a) or cut(a,b)")),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Z2TailJson {
    Multiply { by: [i64; 2] },
    Constant,
    Zero,
}

impl Z2TailJson {
    fn from_tail(t: Z2Tail) -> Z2TailJson {
        match t {
            Z2Tail::Multiply(a, b) => Z2TailJson::Multiply { by: [a, b] },
            Z2Tail::Constant => Z2TailJson::Constant,
            Z2Tail::ZeroAfter => Z2TailJson::Zero,
        }
    }

    fn build(&self) -> Z2Tail {
        match self {
            Z2TailJson::Multiply { by } => Z2Tail::Multiply(by[0], by[1]),
            Z2TailJson::Constant => Z2Tail::Constant,
            Z2TailJson::Zero => Z2Tail::ZeroAfter,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Z2GliderJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// `composite` (default) or `horizontal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<String>,
    pub window: [i64; 2],
    /// `grid[j][i]`.
    pub grid: Vec<Vec<String>>,
    #[serde(rename = "tailJ")]
    pub tail_j: Z2TailJson,
    #[serde(rename = "tailI")]
    pub tail_i: Z2TailJson,
}

impl Z2GliderJson {
    pub fn from_glider(g: &Z2Glider) -> Z2GliderJson {
        let (j, i) = g.window();
        Z2GliderJson {
            schema: None,
            filtration: match g.filt {
                Z2Filtration::Composite => None,
                Z2Filtration::HorizontalOnly => Some("horizontal".into()),
            },
            window: [j, i],
            grid: g.grid.iter().map(|c| c.iter().map(|l| show_lex(*l)).collect()).collect(),
            tail_j: Z2TailJson::from_tail(g.tail_j),
            tail_i: Z2TailJson::from_tail(g.tail_i),
        }
    }

    pub fn build(&self) -> Res<Z2Glider> {
        let filt = match self.filtration.as_deref() {
            None | Some("composite") => Z2Filtration::Composite,
            Some("horizontal") => Z2Filtration::HorizontalOnly,
            Some(f) => return bad(format!("unknown ℤ² filtration {f:?}")),
        };
        let grid = self.grid.iter().map(|c| c.iter().map(|s| parse_lex(s)).collect::<Res<Vec<_>>>()).collect::<Res<Vec<_>>>()?;
        let g = Z2Glider::new(filt, grid, self.tail_j.build(), self.tail_i.build()).map_err(wrap("ℤ² glider"))?;
        let (j, i) = g.window();
        if [j, i] != self.window {
            return bad(format!("window {:?} does not match the grid shape ({j}, {i})", self.window));
        }
        Ok(g)
    }
}

// ---- extensions

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtValuationJson {
    pub over: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    pub e: i64,
    pub f: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub minpoly: String,
    pub valuation: ExtValuationJson,
}

impl ExtensionJson {
    pub fn from_ext(x: &ExtensionData) -> ExtensionJson {
        let (minpoly, over, factor) = match x.kind {
            ExtKind::Gauss { p, a, b } => {
                let g = FieldElem::Gauss(int(a), int(b));
                ("t^2+1".to_string(), p.to_string(), Some(g.to_string()))
            }
            ExtKind::SquareRoot => ("t^2-x".to_string(), "x".to_string(), Some("t".to_string())),
        };
        ExtensionJson { schema: None, minpoly, valuation: ExtValuationJson { over, factor, e: x.e, f: x.f } }
    }

    pub fn build(&self) -> Res<ExtensionData> {
        let v = &self.valuation;
        let x = match self.minpoly.replace(' ', "").as_str() {
            "t^2+1" => {
                let p: u64 = v.over.parse().map_err(|_| InputError(format!("\"over\" must be a prime, got {:?}", v.over)))?;
                let factor = match &v.factor {
                    None => None,
                    Some(s) => match elem(&Field::QI, s)? {
                        FieldElem::Gauss(a, b) if a.is_integer() && b.is_integer() => {
                            let a: i64 = a.to_integer().try_into().map_err(|_| InputError("factor too large".into()))?;
                            let b: i64 = b.to_integer().try_into().map_err(|_| InputError("factor too large".into()))?;
                            Some((a, b))
                        }
                        _ => return bad(format!("factor {s:?} is not a Gaussian integer")),
                    },
                };
                let x = ExtensionData::gauss(p, factor).map_err(wrap("extension"))?;
                // p = 2 and inert p name their prime implicitly
                if let (Some(f), ExtKind::Gauss { a, b, .. }) = (factor, &x.kind) {
                    if f != (*a, *b) && !associate(f, (*a, *b)) {
                        return bad(format!("factor {:?} does not generate the chosen prime", v.factor));
                    }
                }
                x
            }
            "t^2-x" => {
                if v.over != "x" || v.factor.as_deref().is_some_and(|f| f != "t") {
                    return bad("t^2-x supports only w = t-adic over x-adic");
                }
                ExtensionData::square_root()
            }
            m => return bad(format!("unsupported minimal polynomial {m:?}: use t^2+1 or t^2-x")),
        };
        if (x.e, x.f) != (v.e, v.f) {
            return bad(format!("declared (e, f) = ({}, {}) but the extension has ({}, {})", v.e, v.f, x.e, x.f));
        }
        Ok(x)
    }
}

/// Gaussian integers differing by a unit.
fn associate(u: (i64, i64), v: (i64, i64)) -> bool {
    let (a, b) = v;
    [(a, b), (-b, a), (-a, -b), (b, -a)].contains(&u)
}

// ---- points, samples, orders

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default = "default_field")]
    pub field: String,
    pub points: Vec<Vec<String>>,
}

fn default_field() -> String {
    "Q".into()
}

impl PointsJson {
    pub fn build(&self) -> Res<Vec<BsPoint>> {
        let field = Field::parse_name(&self.field).ok_or_else(|| InputError(format!("unknown field {:?}", self.field)))?;
        self.points
            .iter()
            .map(|p| {
                let c = p.iter().map(|s| elem(&field, s)).collect::<Res<Vec<_>>>()?;
                BsPoint::new(c).map_err(wrap("point"))
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SampleElementJson {
    #[serde(default)]
    pub shift: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
}

/// Normal glider ideals `M_i = F_{−i}K·g·π^{shift}·B·h` over `B = M_n(F_0K)`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SampleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub field: String,
    pub valuations: Vec<String>,
    pub algebra: String,
    pub elements: Vec<SampleElementJson>,
}

impl SampleJson {
    pub fn build(&self) -> Res<Vec<gbs::brandt::NormalGliderIdeal>> {
        let base = BaseJson { field: self.field.clone(), valuations: self.valuations.clone() }.build()?;
        if base.rank() != 1 {
            return bad("Brandt samples need a single valuation");
        }
        let fk = FieldFiltration::valuation(base.clone());
        let alg = parse_algebra(&base.field, &self.algebra)?;
        if alg.n().is_none() {
            return bad("Brandt samples are supported over M_n only");
        }
        let b = Lattice::standard(&base, alg.dim);
        let mut out = vec![];
        for e in &self.elements {
            let unit = |v: &Option<Vec<String>>| -> Res<Vec<FieldElem>> {
                match v {
                    None => Ok(alg.one()),
                    Some(xs) if xs.len() == alg.dim => {
                        let x = xs.iter().map(|s| elem(&base.field, s)).collect::<Res<Vec<_>>>()?;
                        if alg.inverse(&x).is_none() {
                            return bad(format!("{xs:?} is not invertible"));
                        }
                        Ok(x)
                    }
                    Some(xs) => bad(format!("{xs:?} should have {} entries", alg.dim)),
                }
            };
            let top = b.scale(&base.unis[0].pow(e.shift));
            let m = gbs::brandt::NormalGliderIdeal::translate(alg.clone(), fk.clone(), &top, &unit(&e.g)?, &unit(&e.h)?)
                .map_err(wrap("sample element"))?;
            out.push(m);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OrderJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub algebra: String,
    pub order: LatticeJson,
    /// Maximality is the caller's claim; it is not inferred.
    pub maximal: bool,
}

impl OrderJson {
    pub fn build(&self) -> Res<gbs::orders::OrderData> {
        let l = self.order.build()?;
        let alg = parse_algebra(&l.base.field, &self.algebra)?;
        if l.dim != alg.dim {
            return bad("order dimension does not match the algebra");
        }
        gbs::orders::OrderData::custom(alg, l, self.maximal).map_err(wrap("order"))
    }
}

doc!(LatticeJson, FiltrationJson, GliderJson, Z2GliderJson, ExtensionJson, PointsJson, SampleJson, OrderJson);

// ---- outputs

pub fn element_json(g: &GbsElement) -> serde_json::Value {
    match &g.kind {
        GbsKind::Field { shift } => serde_json::json!({ "kind": "field", "shift": shift }),
        GbsKind::Csa { point, shift } => serde_json::json!({
            "kind": "csa",
            "point": point.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "shift": shift,
        }),
    }
}

pub fn ideal_json(m: &gbs::brandt::NormalGliderIdeal) -> serde_json::Value {
    serde_json::json!({
        "prefix": m.prefix.iter().map(|l| serde_json::to_value(LatticeJson::from_lattice(l)).unwrap()).collect::<Vec<_>>(),
        "period": m.period,
        "mult": m.mult.exps,
    })
}

/// Serialize a top-level document with its schema tag.
pub fn to_doc<T: Serialize>(v: &T) -> String {
    let mut val = serde_json::to_value(v).expect("serializable");
    if let serde_json::Value::Object(m) = &mut val {
        m.insert("schema".into(), SCHEMA.into());
    }
    serde_json::to_string_pretty(&val).expect("serializable")
}


/// Document kinds accepted by [`roundtrip`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Filtration,
    Lattice,
    Glider,
    Z2Glider,
    Extension,
}

/// Parse, build, and print back in canonical form.
pub fn roundtrip(kind: Kind, name: &str, text: &str) -> Res<String> {
    Ok(match kind {
        Kind::Filtration => to_doc(&FiltrationJson::from_filt(&parse_doc::<FiltrationJson>(name, text)?.build()?)),
        Kind::Lattice => to_doc(&LatticeJson::from_lattice(&parse_doc::<LatticeJson>(name, text)?.build()?)),
        Kind::Glider => to_doc(&GliderJson::from_glider(&parse_doc::<GliderJson>(name, text)?.build()?)?),
        Kind::Z2Glider => to_doc(&Z2GliderJson::from_glider(&parse_doc::<Z2GliderJson>(name, text)?.build()?)),
        Kind::Extension => to_doc(&ExtensionJson::from_ext(&parse_doc::<ExtensionJson>(name, text)?.build()?)),
    })
}

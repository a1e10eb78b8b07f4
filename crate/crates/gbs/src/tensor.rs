//! Extension of scalars along a quadratic extension `L/K`: the tensor
//! filtration `f_q = Σ_k F_kA ⊗ F_{q−k}L`, tensored gliders and the induced
//! map on glider Brauer–Severi elements.

use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{Field, FieldElem, Valuation};
use crate::enumerate::{BsPoint, GbsElement, GbsKind};
use crate::filtration::{AlgMode, AlgebraFiltration, FieldFiltration, Filt, StepFunction, Tail};
use crate::glider::{Glider, GliderError, TailRule};
use crate::lattice::{Algebra, AlgebraDesc, BaseRing, FracIdeal, Lattice, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtKind {
    /// `ℚ ⊂ ℚ(i)` with `w` the Gaussian prime `a + bi` over `p`.
    Gauss { p: u64, a: i64, b: i64 },
    /// `ℚ(x) ⊂ ℚ(t)`, `x = t²`, with `w` the `t`-adic valuation over the `x`-adic one.
    SquareRoot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub kind: ExtKind,
    /// `FK`: the valuation filtration of `v` on `K`.
    pub fk: FieldFiltration,
    /// `FL` with `F_nL = m_w^{−e·n}`, which induces `FK`.
    pub fl: FieldFiltration,
    /// The valuation filtration of `w` itself.
    pub fw: FieldFiltration,
    pub e: i64,
    pub f: i64,
}

fn scaled_linear(e: i64) -> StepFunction {
    StepFunction::from_parts(0, vec![vec![0]], Tail::new(1, vec![e]), Tail::new(1, vec![e]))
}

impl ExtensionData {
    /// `L = ℚ(i)` over `v_p`; `factor` picks the split prime `a + bi` when `p ≡ 1 mod 4`.
    pub fn gauss(p: u64, factor: Option<(i64, i64)>) -> Result<ExtensionData, GliderError> {
        let (a, b, e, f) = match (p % 4, factor) {
            _ if p == 2 => (1, 1, 2, 1),
            (3, _) => (p as i64, 0, 1, 2),
            (1, Some((a, b))) => (a, b, 1, 1),
            (1, None) => return Err(GliderError::Structure("a split prime needs a factor a+bi".into())),
            _ => return Err(GliderError::Structure(format!("{p} is not an odd prime or 2"))),
        };
        let w = Valuation::gauss(a, b).map_err(|e| GliderError::Structure(e.to_string()))?;
        let lb = BaseRing::new(Field::QI, vec![w])?;
        let fk = FieldFiltration::padic(p);
        let pk = Field::QI.int(p as i64);
        if lb.vvec(&pk) != vec![e] {
            return Err(GliderError::Structure(format!("{a}+{b}i does not lie over {p}")));
        }
        let fl = FieldFiltration::new(lb.clone(), scaled_linear(e))?;
        let fw = FieldFiltration::valuation(lb);
        Ok(ExtensionData { kind: ExtKind::Gauss { p, a, b }, fk, fl, fw, e, f })
    }

    pub fn square_root() -> ExtensionData {
        let kb = BaseRing::new(Field::QX, vec![Valuation::XAdic]).unwrap();
        let fk = FieldFiltration::valuation(kb.clone());
        let fl = FieldFiltration::new(kb.clone(), scaled_linear(2)).unwrap();
        ExtensionData { kind: ExtKind::SquareRoot, fk, fl, fw: FieldFiltration::valuation(kb), e: 2, f: 1 }
    }

    pub fn l_field(&self) -> Field {
        self.fl.field().clone()
    }

    pub fn embed(&self, x: &FieldElem) -> FieldElem {
        match (&self.kind, x) {
            (ExtKind::Gauss { .. }, FieldElem::Rational(r)) => FieldElem::Gauss(r.clone(), Zero::zero()),
            (ExtKind::SquareRoot, _) => x.compose_power(2),
            _ => panic!("element outside the base field"),
        }
    }

    pub fn embed_vec(&self, v: &[FieldElem]) -> Vector {
        v.iter().map(|x| self.embed(x)).collect()
    }

    /// `F_nL ∩ K = F_nK` on `[−w, w]`, tested on powers of the uniformizer of `v`.
    pub fn restricts(&self, width: i64) -> bool {
        let pi = &self.fk.base.unis[0];
        (-width..=width).all(|n| {
            (-2 * width..=2 * width).all(|k| {
                let x = pi.pow(k);
                self.fl.member(n, &self.embed(&x)) == self.fk.member(n, &x)
            })
        })
    }

    /// The `O_w`-span of a `K`-lattice.
    pub fn extend(&self, l: &Lattice) -> Lattice {
        Lattice::span(&self.fl.base, l.dim, l.rows.iter().map(|r| self.embed_vec(r)))
    }

    fn extend_alg(&self, a: &Algebra) -> Result<Algebra, GliderError> {
        match a.desc {
            AlgebraDesc::Matrix(n) => Ok(Algebra::matrix(self.l_field(), n)),
            AlgebraDesc::Quaternion(..) => Err(GliderError::Unsupported("quaternion algebras are not extended".into())),
        }
    }
}

/// `Σ_{|k−q| ≤ width} F_kA ⊗ F_{q−k}L`, computed term by term.
pub fn tensor_level_by_sum(fa: &Filt, ext: &ExtensionData, q: i64, width: i64) -> Lattice {
    let mut acc = Lattice::zero(&ext.fl.base, fa.dim());
    for k in q - width..=q + width {
        let term = ext.extend(&fa.level(k)).scale(&ext.fl.level(q - k).generator());
        acc = acc.add(&term);
    }
    acc
}

/// The filtration `f` on `A ⊗_K L`, as an induced filtration over `FL`.
///
/// Checks the closed form against the term-by-term sum on the window.
pub fn tensor_filtration(fa: &Filt, ext: &ExtensionData) -> Result<Arc<Filt>, GliderError> {
    if *fa.fk() != ext.fk {
        return Err(GliderError::Mismatch);
    }
    let out = match fa {
        Filt::Field(_) => Filt::Field(ext.fl.clone()),
        Filt::Algebra(a) => {
            if a.mode != AlgMode::Induced {
                return Err(GliderError::Unsupported("explicit algebra filtrations are not extended".into()));
            }
            let alg = ext.extend_alg(&a.alg)?;
            Filt::Algebra(AlgebraFiltration::induced(alg, ext.fl.clone(), ext.extend(&a.order))?)
        }
    };
    let h = fa.horizon();
    for q in -2..=2 {
        if tensor_level_by_sum(fa, ext, q, h) != out.level(q) {
            return Err(GliderError::Unsupported(format!("tensor filtration does not collapse at degree {q}")));
        }
    }
    Ok(Arc::new(out))
}

/// `(M ⊗ L)_p = Σ_{i ≥ p} M_i ⊗ F_{i−p}L`, the sum truncated once it stabilizes.
pub fn tensor_glider(m: &Glider, ext: &ExtensionData) -> Result<Glider, GliderError> {
    let target = tensor_filtration(&m.filt, ext)?;
    let span = m.horizon() + 2;
    let level = |p: i64| -> Result<Lattice, GliderError> {
        let mut acc = Lattice::zero(&ext.fl.base, m.dim());
        let mut last = acc.clone();
        for i in p..=p + 2 * span {
            acc = acc.add(&ext.extend(&m.level(i)).scale(&ext.fl.level(i - p).generator()));
            if i == p + span {
                last = acc.clone();
            }
        }
        if acc != last {
            return Err(GliderError::Unsupported(format!("the sum defining level {p} does not stabilize")));
        }
        Ok(acc)
    };
    let prefix = (0..=m.last()).map(level).collect::<Result<Vec<_>, _>>()?;
    let tail = match &m.tail {
        TailRule::FiltrationTail => TailRule::FiltrationTail,
        TailRule::MultiplyBy(i) => {
            TailRule::MultiplyBy(FracIdeal::new(&ext.fl.base, i.exps.iter().map(|x| x * ext.e).collect()))
        }
        TailRule::Constant => TailRule::Constant,
        TailRule::ZeroAfter => TailRule::ZeroAfter,
        TailRule::Follow(..) => return Err(GliderError::Unsupported("Follow tails are not extended".into())),
    };
    let out = Glider::new(target, prefix, tail);
    for p in out.last() + 1..=out.horizon() {
        if out.level(p) != level(p)? {
            return Err(GliderError::Unsupported(format!("tail rule does not survive extension at level {p}")));
        }
    }
    Ok(out)
}

/// The image of a glider Brauer–Severi element, with the filtration it lives over.
///
/// Unramified: the same shift over the tensor filtration. Ramified field case:
/// the element of the `w`-adic valuation filtration with the same top level,
/// i.e. shift `n·e`.
pub fn gbs_map(g: &GbsElement, fa: &Filt, ext: &ExtensionData) -> Result<(GbsElement, Arc<Filt>), GliderError> {
    if !fa.fk().is_dvr_valuation() {
        return Err(GliderError::Unsupported("the map needs a strong valuation filtration on K".into()));
    }
    match &g.kind {
        GbsKind::Field { shift } => {
            if ext.e == 1 {
                Ok((GbsElement::field(*shift), tensor_filtration(fa, ext)?))
            } else {
                Ok((GbsElement::field(shift * ext.e), Arc::new(Filt::Field(ext.fw.clone()))))
            }
        }
        GbsKind::Csa { point, shift } => {
            if ext.e != 1 {
                return Err(GliderError::Unsupported("ramified extensions are mapped only for fields".into()));
            }
            let p = BsPoint::new(ext.embed_vec(&point.coords))?;
            Ok((GbsElement::csa(p, *shift), tensor_filtration(fa, ext)?))
        }
    }
}

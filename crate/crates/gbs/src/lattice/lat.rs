//! Finitely generated `R`-submodules of `K^d` in canonical echelon form.
//!
//! Canonical form: rows are in echelon form with strictly increasing pivot
//! columns; every pivot equals `∏ π_j^{e_j}` for the base uniformizers; every
//! entry above a pivot is the canonical representative of its class modulo
//! the pivot ideal (see [`BaseRing::reduce`]). Two lattices are equal exactly
//! when their canonical rows agree.

use std::fmt;

use super::algebra::Algebra;
use super::base::{BaseRing, LatticeError};
use super::linalg::{self, axpy, is_zero_vec, scale_vec, Mat, Vector};
use crate::arith::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub base: BaseRing,
    pub dim: usize,
    pub rows: Mat,
    pub pivots: Vec<usize>,
}

fn gcd_step(base: &BaseRing, mut p: Vector, mut q: Vector, c: usize) -> (Vector, Vector) {
    let va = base.vvec(&p[c]);
    let vb = base.vvec(&q[c]);
    if vb.iter().zip(&va).all(|(b, a)| b <= a) && vb != va {
        std::mem::swap(&mut p, &mut q);
    } else if !va.iter().zip(&vb).all(|(a, b)| a <= b) {
        // neither divides: p += (∏ over tied primes π_j)·q reaches the componentwise minimum
        let tie: Vec<i64> = va.iter().zip(&vb).map(|(a, b)| i64::from(a == b)).collect();
        let m = base.elem(&tie);
        axpy(&mut p, &m, &q);
    }
    let f = -(&q[c] / &p[c]);
    axpy(&mut q, &f, &p);
    debug_assert!(q[c].is_zero());
    (p, q)
}

impl Lattice {
    /// The `R`-span of arbitrary generators, in canonical form.
    pub fn span(base: &BaseRing, dim: usize, gens: impl IntoIterator<Item = Vector>) -> Lattice {
        let mut pending: Vec<Vector> = gens.into_iter().filter(|g| !is_zero_vec(g)).collect();
        for g in &pending {
            assert_eq!(g.len(), dim, "generator of wrong length");
        }
        let mut rows: Mat = vec![];
        let mut pivots = vec![];
        for c in 0..dim {
            let (with, without): (Vec<_>, Vec<_>) = pending.into_iter().partition(|r| !r[c].is_zero());
            pending = without;
            let mut it = with.into_iter();
            let Some(mut p) = it.next() else { continue };
            for q in it {
                let (np, nq) = gcd_step(base, p, q, c);
                p = np;
                if !is_zero_vec(&nq) {
                    pending.push(nq);
                }
            }
            let e = base.vvec(&p[c]);
            let s = &base.elem(&e) / &p[c];
            if !s.is_one() {
                p = scale_vec(&s, &p);
            }
            rows.push(p);
            pivots.push(c);
        }
        for k in 0..rows.len() {
            let c = pivots[k];
            let piv = rows[k][c].clone();
            for i in 0..k {
                let e = rows[i][c].clone();
                if e.is_zero() {
                    continue;
                }
                let red = base.reduce(&e, &piv);
                if red != e {
                    let q = -(&(&e - &red) / &piv);
                    let rk = rows[k].clone();
                    axpy(&mut rows[i], &q, &rk);
                }
            }
        }
        Lattice { base: base.clone(), dim, rows, pivots }
    }

    /// A full lattice; errors if the generators do not span `K^d`.
    pub fn full(base: &BaseRing, dim: usize, gens: impl IntoIterator<Item = Vector>) -> Result<Lattice, LatticeError> {
        let l = Lattice::span(base, dim, gens);
        if l.rank() != dim {
            return Err(LatticeError::NotFull { rank: l.rank(), dim });
        }
        Ok(l)
    }

    pub fn zero(base: &BaseRing, dim: usize) -> Lattice {
        Lattice { base: base.clone(), dim, rows: vec![], pivots: vec![] }
    }

    /// `R^d`.
    pub fn standard(base: &BaseRing, dim: usize) -> Lattice {
        let gens = (0..dim).map(|k| {
            let mut v = linalg::zeros(&base.field, dim);
            v[k] = base.field.one();
            v
        });
        Lattice::span(base, dim, gens)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    fn compatible(&self, o: &Lattice) -> Result<(), LatticeError> {
        if self.base != o.base || self.dim != o.dim {
            Err(LatticeError::Mismatch)
        } else {
            Ok(())
        }
    }

    /// Coordinates of `x` in the row basis, if `x` lies in the `K`-span.
    pub fn coords(&self, x: &[FieldElem]) -> Option<Vector> {
        let mut x = x.to_vec();
        let mut c = vec![];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = &x[p] / &row[p];
            axpy(&mut x, &-a.clone(), row);
            c.push(a);
        }
        is_zero_vec(&x).then_some(c)
    }

    pub fn contains_vec(&self, x: &[FieldElem]) -> bool {
        self.coords(x).is_some_and(|c| c.iter().all(|a| self.base.is_integral(a)))
    }

    /// `self ⊆ o`.
    pub fn is_sub(&self, o: &Lattice) -> bool {
        self.rows.iter().all(|r| o.contains_vec(r))
    }

    /// First basis vector of `self` outside `o`.
    pub fn witness_outside(&self, o: &Lattice) -> Option<Vector> {
        self.rows.iter().find(|r| !o.contains_vec(r)).cloned()
    }

    pub fn add(&self, o: &Lattice) -> Lattice {
        self.compatible(o).expect("lattice sum");
        Lattice::span(&self.base, self.dim, self.rows.iter().chain(&o.rows).cloned())
    }

    pub fn scale(&self, c: &FieldElem) -> Lattice {
        Lattice::span(&self.base, self.dim, self.rows.iter().map(|r| scale_vec(c, r)))
    }

    /// Image under the linear map with matrix `m` (rows are images of basis vectors).
    pub fn map(&self, m: &Mat, out_dim: usize, base: &BaseRing) -> Lattice {
        let f = &base.field;
        Lattice::span(base, out_dim, self.rows.iter().map(|r| linalg::vecmat(f, r, m, out_dim)))
    }

    /// `{y : y·x ∈ R for all x}` for a full lattice.
    pub fn dual(&self) -> Lattice {
        assert!(self.is_full(), "dual of a non-full lattice");
        let inv = linalg::inverse(&self.base.field, &self.rows).expect("full lattice basis is invertible");
        Lattice::span(&self.base, self.dim, linalg::transpose(&inv, self.dim))
    }

    /// Intersection, via the subspace intersection and duality inside it.
    pub fn intersect(&self, o: &Lattice) -> Lattice {
        self.compatible(o).expect("lattice intersection");
        let (r, s) = (self.rank(), o.rank());
        if r == 0 || s == 0 {
            return Lattice::zero(&self.base, self.dim);
        }
        let f = &self.base.field;
        let stacked: Mat = self.rows.iter().chain(&o.rows).cloned().collect();
        let ker = linalg::left_kernel(f, &stacked, self.dim);
        let m = ker.len();
        if m == 0 {
            return Lattice::zero(&self.base, self.dim);
        }
        // W = Q·H_X = Q'·H_Y spans the common subspace
        let q: Mat = ker.iter().map(|k| k[..r].to_vec()).collect();
        let w = linalg::matmul(f, &q, &self.rows, self.dim);
        let cols = (0..r)
            .map(|i| ker.iter().map(|k| k[i].clone()).collect::<Vector>())
            .chain((0..s).map(|i| ker.iter().map(|k| -k[r + i].clone()).collect::<Vector>()));
        let t = Lattice::span(&self.base, m, cols);
        let d = t.dual();
        Lattice::span(&self.base, self.dim, d.rows.iter().map(|row| linalg::vecmat(f, row, &w, self.dim)))
    }

    /// `self ∩ V` for the `K`-span `V` of `basis`.
    ///
    /// Change coordinates so that `V` is spanned by the last coordinates; the
    /// echelon rows pivoting there span the intersection.
    pub fn intersect_subspace(&self, basis: &[Vector]) -> Lattice {
        let f = &self.base.field;
        let d = self.dim;
        let (vb, _) = linalg::rref(&basis.to_vec(), d);
        let vb: Mat = vb.into_iter().filter(|r| !is_zero_vec(r)).collect();
        let r = vb.len();
        if r == 0 || self.is_zero() {
            return Lattice::zero(&self.base, d);
        }
        let mut t: Mat = vec![];
        for k in 0..d {
            let mut e = linalg::zeros(f, d);
            e[k] = f.one();
            let mut trial: Mat = t.iter().chain(&vb).cloned().collect();
            trial.push(e.clone());
            if linalg::rank(&trial, d) == t.len() + r + 1 {
                t.push(e);
            }
            if t.len() == d - r {
                break;
            }
        }
        t.extend(vb);
        let tinv = linalg::inverse(f, &t).expect("completed basis is invertible");
        let moved = self.map(&tinv, d, &self.base);
        let kept: Vec<Vector> = moved
            .rows
            .iter()
            .zip(&moved.pivots)
            .filter(|(_, &p)| p >= d - r)
            .map(|(row, _)| row.clone())
            .collect();
        Lattice::span(&self.base, d, kept.iter().map(|row| linalg::vecmat(f, row, &t, d)))
    }

    /// `{t ∈ K : t·u ∈ self}`; `None` when it is zero.
    pub fn line_ideal(&self, u: &[FieldElem]) -> Option<super::FracIdeal> {
        let c = self.coords(u)?;
        let mut exps: Option<Vec<i64>> = None;
        for a in c.iter().filter(|a| !a.is_zero()) {
            let v = self.base.vvec(a);
            exps = Some(match exps {
                None => v,
                Some(e) => e.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        exps.map(|e| super::FracIdeal::new(&self.base, e.iter().map(|x| -x).collect()))
    }

    /// Sum of pivot exponents: the valuation vector of the determinant for full lattices.
    pub fn det_vval(&self) -> Vec<i64> {
        let mut acc = vec![0; self.base.rank()];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (a, e) in acc.iter_mut().zip(self.base.vvec(&row[p])) {
                *a += e;
            }
        }
        acc
    }

    /// Length of `self / y` as an `R`-module, for `y ⊆ self` of the same rank.
    pub fn quotient_length(&self, y: &Lattice) -> Result<u64, LatticeError> {
        self.compatible(y)?;
        if !y.is_sub(self) {
            return Err(LatticeError::NotContained("quotient_length needs Y ⊆ X".into()));
        }
        if y.rank() != self.rank() {
            return Err(LatticeError::Structure("quotient of different ranks has infinite length".into()));
        }
        let a = self.det_vval();
        let b = y.det_vval();
        Ok(a.iter().zip(&b).map(|(a, b)| (b - a) as u64).sum())
    }

    /// The lattice spanned by all products `x·y`.
    pub fn mult(&self, o: &Lattice, alg: &Algebra) -> Lattice {
        self.compatible(o).expect("lattice product");
        assert_eq!(self.dim, alg.dim);
        let mut gens = vec![];
        for x in &self.rows {
            for y in &o.rows {
                gens.push(alg.mul(x, y));
            }
        }
        Lattice::span(&self.base, self.dim, gens)
    }

    /// `{a : (a·y or y·a) ∈ self for all y ∈ other}`; `left` selects `a·y`.
    fn colon(&self, y: &Lattice, alg: &Algebra, left: bool) -> Result<Lattice, LatticeError> {
        self.compatible(y)?;
        if !self.is_full() {
            return Err(LatticeError::NotFull { rank: self.rank(), dim: self.dim });
        }
        let f = &self.base.field;
        let d = self.dim;
        let hinv = linalg::inverse(f, &self.rows).unwrap();
        let mut cols = vec![];
        for yk in &y.rows {
            let m = if left { alg.right_mult_matrix(yk) } else { alg.left_mult_matrix(yk) };
            let z = linalg::matmul(f, &m, &hinv, d);
            for c in 0..d {
                cols.push(z.iter().map(|r| r[c].clone()).collect::<Vector>());
            }
        }
        let t = Lattice::span(&self.base, d, cols);
        if !t.is_full() {
            return Err(LatticeError::Structure("colon is not a lattice: the divisor has an annihilator".into()));
        }
        Ok(t.dual())
    }

    /// `{a ∈ A : a·y ⊆ self}`.
    pub fn colon_left(&self, y: &Lattice, alg: &Algebra) -> Result<Lattice, LatticeError> {
        self.colon(y, alg, true)
    }

    /// `{a ∈ A : y·a ⊆ self}`.
    pub fn colon_right(&self, y: &Lattice, alg: &Algebra) -> Result<Lattice, LatticeError> {
        self.colon(y, alg, false)
    }

    /// Whether `self / y` is a simple left `order`-module.
    ///
    /// The quotient must be killed by a single base prime, and every basis
    /// vector `u` of `self` outside `y` must generate: `order·u + y = self`.
    pub fn is_simple_quotient(&self, y: &Lattice, order: &Lattice, alg: &Algebra) -> Result<bool, LatticeError> {
        self.compatible(y)?;
        if !y.is_sub(self) {
            return Err(LatticeError::NotContained("Y ⊄ X".into()));
        }
        if !order.mult(self, alg).is_sub(self) || !order.mult(y, alg).is_sub(y) {
            return Err(LatticeError::Structure("X or Y is not a left module over the order".into()));
        }
        if self == y {
            return Ok(false);
        }
        let killed = self.base.unis.iter().any(|pi| self.scale(pi).is_sub(y));
        if !killed {
            return Ok(false);
        }
        for u in &self.rows {
            if y.contains_vec(u) {
                continue;
            }
            let bu = Lattice::span(&self.base, self.dim, order.rows.iter().map(|b| alg.mul(b, u)));
            if bu.add(y) != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(", "))?;
        }
        write!(f, "]")
    }
}

//! Matrix algebras and quaternion algebras by structure constants.

use num_traits::Zero;

use super::base::LatticeError;
use super::linalg::{self, zeros, Mat, Vector};
use crate::arith::{Field, FieldElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraDesc {
    /// `M_n(K)` with basis `E_ij` in row-major order.
    Matrix(usize),
    /// `(a, b)_K` with basis `1, i, j, k`, `i² = a`, `j² = b`, `k = ij = -ji`.
    Quaternion(Rat, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub desc: AlgebraDesc,
    pub field: Field,
    pub dim: usize,
}

impl Algebra {
    pub fn matrix(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        Algebra { desc: AlgebraDesc::Matrix(n), field, dim: n * n }
    }

    /// The quaternion algebra `(a, b)`; checks associativity and that the center is `K`.
    pub fn quaternion(field: Field, a: Rat, b: Rat) -> Result<Algebra, LatticeError> {
        if a.is_zero() || b.is_zero() {
            return Err(LatticeError::Structure("quaternion parameters must be nonzero".into()));
        }
        let alg = Algebra { desc: AlgebraDesc::Quaternion(a, b), field, dim: 4 };
        if !alg.is_associative() {
            return Err(LatticeError::Structure("structure constants are not associative".into()));
        }
        if alg.center_dim() != 1 {
            return Err(LatticeError::Structure("center is larger than K".into()));
        }
        Ok(alg)
    }

    pub fn n(&self) -> Option<usize> {
        match self.desc {
            AlgebraDesc::Matrix(n) => Some(n),
            AlgebraDesc::Quaternion(..) => None,
        }
    }

    pub fn basis(&self, k: usize) -> Vector {
        let mut v = zeros(&self.field, self.dim);
        v[k] = self.field.one();
        v
    }

    pub fn one(&self) -> Vector {
        match self.desc {
            AlgebraDesc::Matrix(n) => {
                let mut v = zeros(&self.field, self.dim);
                for i in 0..n {
                    v[i * n + i] = self.field.one();
                }
                v
            }
            AlgebraDesc::Quaternion(..) => self.basis(0),
        }
    }

    pub fn scalar(&self, c: &FieldElem) -> Vector {
        self.one().iter().map(|x| x * c).collect()
    }

    /// `Some(c)` if `v = c·1`.
    pub fn as_scalar(&self, v: &[FieldElem]) -> Option<FieldElem> {
        let one = self.one();
        let k = one.iter().position(|x| !x.is_zero())?;
        let c = &v[k] / &one[k];
        let ok = v.iter().zip(&one).all(|(a, b)| *a == &c * b);
        ok.then_some(c)
    }

    pub fn mul(&self, u: &[FieldElem], v: &[FieldElem]) -> Vector {
        match &self.desc {
            AlgebraDesc::Matrix(n) => {
                let n = *n;
                let mut out = zeros(&self.field, self.dim);
                for i in 0..n {
                    for k in 0..n {
                        let a = &u[i * n + k];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let b = &v[k * n + j];
                            if !b.is_zero() {
                                out[i * n + j] = &out[i * n + j] + &(a * b);
                            }
                        }
                    }
                }
                out
            }
            AlgebraDesc::Quaternion(a, b) => {
                let f = &self.field;
                let a = f.from_rat(a.clone());
                let b = f.from_rat(b.clone());
                let one = f.one();
                let ab = -(&a * &b);
                // table[s][t] = (coefficient, index) of e_s·e_t
                let t: [[(FieldElem, usize); 4]; 4] = [
                    [(one.clone(), 0), (one.clone(), 1), (one.clone(), 2), (one.clone(), 3)],
                    [(one.clone(), 1), (a.clone(), 0), (one.clone(), 3), (a.clone(), 2)],
                    [(one.clone(), 2), (-one.clone(), 3), (b.clone(), 0), (-b.clone(), 1)],
                    [(one.clone(), 3), (-a.clone(), 2), (b.clone(), 1), (ab, 0)],
                ];
                let mut out = zeros(f, 4);
                for s in 0..4 {
                    if u[s].is_zero() {
                        continue;
                    }
                    for r in 0..4 {
                        if v[r].is_zero() {
                            continue;
                        }
                        let (c, k) = &t[s][r];
                        out[*k] = &out[*k] + &(&(&u[s] * &v[r]) * c);
                    }
                }
                out
            }
        }
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul(&self.basis(a), &self.basis(b));
                for c in 0..d {
                    let l = self.mul(&ab, &self.basis(c));
                    let r = self.mul(&self.basis(a), &self.mul(&self.basis(b), &self.basis(c)));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dimension over `K` of the center.
    pub fn center_dim(&self) -> usize {
        // rows: unknown coefficient index; columns: (basis t, coordinate) of [x, e_t]
        let d = self.dim;
        let mut m: Mat = vec![];
        for s in 0..d {
            let mut row = vec![];
            for t in 0..d {
                let c = linalg::sub_vec(
                    &self.mul(&self.basis(s), &self.basis(t)),
                    &self.mul(&self.basis(t), &self.basis(s)),
                );
                row.extend(c);
            }
            m.push(row);
        }
        linalg::left_kernel(&self.field, &m, d * d).len()
    }

    /// Matrix of `x ↦ x·y` (rows are images of basis vectors).
    pub fn right_mult_matrix(&self, y: &[FieldElem]) -> Mat {
        (0..self.dim).map(|t| self.mul(&self.basis(t), y)).collect()
    }

    /// Matrix of `x ↦ y·x`.
    pub fn left_mult_matrix(&self, y: &[FieldElem]) -> Mat {
        (0..self.dim).map(|t| self.mul(y, &self.basis(t))).collect()
    }

    /// Inverse of an element, if it is invertible.
    pub fn inverse(&self, x: &[FieldElem]) -> Option<Vector> {
        linalg::solve_left(&self.field, &self.left_mult_matrix(x), &self.one(), self.dim)
            .filter(|y| self.mul(x, y) == self.one() && self.mul(y, x) == self.one())
    }

    pub fn name(&self) -> String {
        match &self.desc {
            AlgebraDesc::Matrix(n) => format!("M{n}({})", self.field.name()),
            AlgebraDesc::Quaternion(a, b) => format!("({a},{b})_{}", self.field.name()),
        }
    }
}

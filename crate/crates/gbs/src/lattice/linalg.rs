//! Dense linear algebra over the supported fields. Vectors are rows.

use crate::arith::{Field, FieldElem};

pub type Vector = Vec<FieldElem>;
pub type Mat = Vec<Vector>;

pub fn zeros(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn is_zero_vec(v: &[FieldElem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn axpy(y: &mut [FieldElem], a: &FieldElem, x: &[FieldElem]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale_vec(a: &FieldElem, x: &[FieldElem]) -> Vector {
    x.iter().map(|xi| a * xi).collect()
}

pub fn add_vec(x: &[FieldElem], y: &[FieldElem]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[FieldElem], y: &[FieldElem]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `x·M` for a row vector `x`.
pub fn vecmat(field: &Field, x: &[FieldElem], m: &Mat, cols: usize) -> Vector {
    let mut out = zeros(field, cols);
    for (xi, row) in x.iter().zip(m) {
        axpy(&mut out, xi, row);
    }
    out
}

pub fn matmul(field: &Field, a: &Mat, b: &Mat, cols: usize) -> Mat {
    a.iter().map(|r| vecmat(field, r, b, cols)).collect()
}

/// Reduced row echelon form: returns the nonzero rows and their pivot columns.
pub fn rref(m: &Mat, cols: usize) -> (Mat, Vec<usize>) {
    let mut rows: Mat = m.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let mut piv = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv();
        rows[r] = scale_vec(&inv, &rows[r]);
        let pr = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pr);
            }
        }
        piv.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, piv)
}

pub fn rank(m: &Mat, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{a : a·M = 0}` for an `n × cols` matrix.
pub fn left_kernel(field: &Field, m: &Mat, cols: usize) -> Mat {
    let n = m.len();
    let mt = transpose(m, cols);
    let (rows, piv) = rref(&mt, n);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(field, n);
            v[f] = field.one();
            for (row, &p) in rows.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(field: &Field, m: &Mat) -> Option<Mat> {
    let n = m.len();
    let aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            let mut e = zeros(field, n);
            e[i] = field.one();
            row.extend(e);
            row
        })
        .collect();
    let (rows, piv) = rref(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `x·M = b`, if solvable.
pub fn solve_left(field: &Field, m: &Mat, b: &[FieldElem], cols: usize) -> Option<Vector> {
    let n = m.len();
    let mut mt = transpose(m, cols);
    for (row, bi) in mt.iter_mut().zip(b) {
        row.push(bi.clone());
    }
    let (rows, piv) = rref(&mt, n + 1);
    if piv.contains(&n) {
        return None;
    }
    let mut x = zeros(field, n);
    for (row, &p) in rows.iter().zip(&piv) {
        x[p] = row[n].clone();
    }
    Some(x)
}

pub fn det(field: &Field, m: &Mat) -> FieldElem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = field.one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return field.zero();
        };
        if k != c {
            a.swap(k, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv();
        let pr = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] * &inv);
                axpy(row, &f, &pr);
            }
        }
    }
    d
}

//! Dense exact linear algebra over `Scalar`.

use crate::field::{FieldSpec, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; zero rows are dropped.
/// Returns the pivot column of each remaining row.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, sel);
        let inv = m[row][col].inv().unwrap();
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let t = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of { v : m v = 0 } for an r x ncols matrix.
pub fn kernel(m: &Matrix, ncols: usize, field: &FieldSpec) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        out.push(v);
    }
    out
}

/// Row space in canonical RREF.
pub fn row_space(rows: &[Vec<Scalar>]) -> Matrix {
    let mut m = rows.to_vec();
    rref(&mut m);
    m
}

/// Whether `v` lies in the row space spanned by the RREF matrix `basis`.
pub fn in_span(basis: &Matrix, v: &[Scalar]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let pc = row.iter().position(|s| !s.is_zero()).unwrap();
        if !w[pc].is_zero() {
            let f = w[pc].clone();
            for c in 0..w.len() {
                let t = &f * &row[c];
                w[c] = &w[c] - &t;
            }
        }
    }
    w.iter().all(|s| s.is_zero())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut s = row[0].zero_like();
                    for (k, x) in row.iter().enumerate() {
                        s = &s + &(x * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, |r| r.len());
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn det(a: &Matrix) -> Scalar {
    let n = a.len();
    let mut m = a.clone();
    let mut d = m[0][0].one_like();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !m[r][col].is_zero()) else { return d.zero_like() };
        if sel != col {
            m.swap(sel, col);
            d = -d;
        }
        d = &d * &m[col][col];
        let inv = m[col][col].inv().unwrap();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
    }
    d
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let field = a[0][0].field();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
}

pub fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        s = &s + &(x * y);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FieldSpec::Rationals;
        let a = from_ints(&f, &[&[1, -1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert_eq!(det(&a), f.from_i64(-1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(&f, 3));
        let sing = from_ints(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert!(inverse(&sing).is_none());
        assert!(det(&sing).is_zero());
    }

    #[test]
    fn kernel_dimension() {
        let f = FieldSpec::PrimeField { p: 7 };
        let a = from_ints(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        let k = kernel(&a, 4, &f);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(dot(&a[0], v).is_zero());
        }
    }
}

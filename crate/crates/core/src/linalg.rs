//! Exact dense linear algebra over the base field.
//!
//! Everything reduces to Gauss-Jordan elimination with exact division;
//! there is no pivot-size heuristic because arithmetic never rounds.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};

/// Row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub field: FieldConfig,
    pub rows: usize,
    pub cols: usize,
    a: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldConfig, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: FieldConfig, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ConstructionFailure("ragged matrix rows".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        })
    }

    /// Like `from_rows` but with an explicit column count, so an empty
    /// row list still knows its width (its kernel is then everything).
    pub fn from_rows_with_cols(
        field: FieldConfig,
        rows: Vec<Vec<Scalar>>,
        cols: usize,
    ) -> Result<Self> {
        if rows.iter().any(|x| x.len() != cols) {
            return Err(Error::ConstructionFailure("ragged matrix rows".into()));
        }
        let r = rows.len();
        Ok(Matrix {
            field,
            rows: r,
            cols,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.a[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// In-place Gauss-Jordan reduction; returns the pivot column of each
    /// pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv().expect("pivot is nonzero");
            for k in col..self.cols {
                let v = &*self.at(row, k) * &inv;
                self.set(row, k, v);
            }
            for i in 0..self.rows {
                if i == row || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for k in col..self.cols {
                    let v = &*self.at(i, k) - &(&factor * self.at(row, k));
                    self.set(i, k, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, echelon-normalized: one vector per free
    /// column, with a 1 in that coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_rows: Vec<Option<usize>> = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_rows[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_rows[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (c, pr) in pivot_rows.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = -m.at(*r, free);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ConstructionFailure(
                "right-hand side length mismatch".into(),
            ));
        }
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.at(i, j) * &x[j]);
                }
                acc
            })
            .collect()
    }
}

/// Puts a list of coordinate vectors into reduced echelon form, dropping
/// dependent ones.  The result is a canonical basis of their span.
pub fn echelonize(field: FieldConfig, vecs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() {
        return vecs;
    }
    let mut m = Matrix::from_rows(field, vecs).expect("uniform lengths");
    let pivots = m.rref();
    (0..pivots.len())
        .map(|i| (0..m.cols).map(|j| m.at(i, j).clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k() -> FieldConfig {
        FieldConfig::Rationals
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            k(),
            rows.iter()
                .map(|r| r.iter().map(|&n| k().integer(n)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = a.clone().rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.rank(), 2);
        a.rref();
        let again = a.clone();
        a.rref();
        assert_eq!(a, again, "rref is idempotent");
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let kb = a.kernel_basis();
        assert_eq!(kb.len(), 1);
        for v in &kb {
            let out = a.mul_vec(v);
            assert!(out.iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let b = vec![k().integer(4), k().integer(9)];
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x[0], k().integer(2));
        assert_eq!(x[1], k().integer(3));
        let a2 = m(&[&[1, 1], &[1, 1]]);
        let b2 = vec![k().integer(0), k().integer(1)];
        assert!(a2.solve(&b2).unwrap().is_none());
    }

    #[test]
    fn echelonize_canonicalizes_span() {
        let v1 = vec![k().integer(2), k().integer(4), k().integer(0)];
        let v2 = vec![k().integer(1), k().integer(2), k().integer(1)];
        let v3 = vec![k().integer(3), k().integer(6), k().integer(1)];
        let e1 = echelonize(k(), vec![v1.clone(), v2.clone(), v3.clone()]);
        let e2 = echelonize(k(), vec![v3, v1, v2]);
        assert_eq!(e1, e2);
        assert_eq!(e1.len(), 2);
        assert_eq!(e1[0][0], k().one());
    }

    #[test]
    fn works_over_function_field_scalars() {
        let kf = FieldConfig::PrimeFnField(5);
        let t = crate::textio::parse_scalar("t", kf, 1).unwrap();
        let one = kf.one();
        let a = Matrix::from_rows(
            kf,
            vec![
                vec![t.clone(), one.clone()],
                vec![&t * &t, t.clone()],
            ],
        )
        .unwrap();
        // Rows are dependent: row2 = t * row1.
        assert_eq!(a.rank(), 1);
        let kb = a.kernel_basis();
        assert_eq!(kb.len(), 1);
        let out = a.mul_vec(&kb[0]);
        assert!(out.iter().all(|s| s.is_zero()));
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(entries in proptest::collection::vec(-5i64..5, 12)) {
            let rows: Vec<Vec<Scalar>> = entries
                .chunks(4)
                .map(|ch| ch.iter().map(|&n| k().integer(n)).collect())
                .collect();
            let a = Matrix::from_rows(k(), rows).unwrap();
            let kb = a.kernel_basis();
            prop_assert_eq!(a.rank() + kb.len(), 4);
            for v in kb {
                let out = a.mul_vec(&v);
                prop_assert!(out.iter().all(|s| s.is_zero()));
            }
        }
    }
}

//! Dense square matrices and vectors over a cyclotomic field.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::{CycNum, Cyclotomic};
use crate::error::{CycloError, GroupError};

pub type Vector = Vec<CycNum>;

/// Row-major `n × n` matrix. Ordering is lexicographic on the row-major
/// entry sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn identity(field: &Arc<Cyclotomic>, n: usize) -> Matrix {
        let data = (0..n * n)
            .map(|k| if k / n == k % n { field.one() } else { field.zero() })
            .collect();
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Matrix, GroupError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GroupError::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Matrix, GroupError> {
        let n = cols.len();
        if let Some(c) = cols.iter().find(|c| c.len() != n) {
            return Err(GroupError::DimensionMismatch {
                left: n,
                right: c.len(),
            });
        }
        let data = (0..n * n).map(|k| cols[k % n][k / n].clone()).collect();
        Ok(Matrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycNum]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn field(&self) -> &Arc<Cyclotomic> {
        self.data[0].field()
    }

    pub fn is_identity(&self) -> bool {
        self.data.iter().enumerate().all(|(k, x)| {
            if k / self.n == k % self.n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, GroupError> {
        if self.n != other.n {
            return Err(GroupError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let field = self.field().clone();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, GroupError> {
        if self.n != other.n {
            return Err(GroupError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn apply(&self, v: &[CycNum]) -> Vector {
        self.rows().map(|row| dot(row, v, self.field())).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        Matrix {
            n,
            data: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.n).fold(self.field().zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn embed(&self, field: &Arc<Cyclotomic>) -> Result<Matrix, CycloError> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x.embed(field)).collect::<Result<_, _>>()?,
        })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (Vec<Vector>, Vec<usize>) {
        let n = self.n;
        let mut rows: Vec<Vector> = self.rows().map(<[CycNum]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].inv().expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in col..n {
                        let d = &rows[r][j] * &f;
                        rows[i][j] = &rows[i][j] - &d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == n {
                break;
            }
        }
        (rows, pivots)
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let n = self.n;
        let field = self.field().clone();
        let (rows, pivots) = self.rref();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = alloc::vec![field.zero(); n];
                v[free] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rows[r][free];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let field = self.field().clone();
        let mut aug: Vec<Vector> = self
            .rows()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.to_vec();
                r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| !aug[i][col].is_zero())?;
            aug.swap(col, p);
            let inv = aug[col][col].inv().ok()?;
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != col && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for j in col..2 * n {
                        let d = &aug[col][j] * &f;
                        aug[i][j] = &aug[i][j] - &d;
                    }
                }
            }
        }
        let data = aug.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(Matrix { n, data })
    }

    /// Characteristic polynomial `det(xI - M)`, lowest degree first, by the
    /// Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Vec<CycNum> {
        let n = self.n;
        let field = self.field().clone();
        let mut coeffs = alloc::vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        let id = Matrix::identity(&field, n);
        let mut m = Matrix {
            n,
            data: alloc::vec![field.zero(); n * n],
        };
        for k in 1..=n {
            let shifted = Matrix {
                n,
                data: id.data.iter().map(|x| x * &coeffs[n - k + 1]).collect(),
            };
            m = self.mul(&m).expect("same dimension");
            m = Matrix {
                n,
                data: m.data.iter().zip(&shifted.data).map(|(a, b)| a + b).collect(),
            };
            let tr = self.mul(&m).expect("same dimension").trace();
            let scale = BigRational::new(BigInt::from(-1), BigInt::from(k as i64));
            coeffs[n - k] = tr.scale(&scale);
        }
        coeffs
    }
}

pub fn dot(a: &[CycNum], b: &[CycNum], field: &Arc<Cyclotomic>) -> CycNum {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            &acc + &(x * y)
        }
    })
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(field: &Arc<Cyclotomic>, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| field.integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_kernel_inverse() {
        let f = Cyclotomic::new(1);
        let m = int_matrix(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(CycNum::is_zero));
        assert!(m.inverse().is_none());
        let a = int_matrix(&f, &[&[2, 1], &[1, 1]]);
        assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn char_poly_of_rotation() {
        // rotation by 2π/3 in Q(ζ_3): diag(ζ, ζ^2) has char poly x^2 + x + 1
        let f = Cyclotomic::new(3);
        let m = Matrix::from_rows(alloc::vec![
            alloc::vec![f.root(1), f.zero()],
            alloc::vec![f.zero(), f.root(2)],
        ])
        .unwrap();
        let cp = m.char_poly();
        assert!(cp.iter().all(CycNum::is_one));
        assert!(m.pow(3).is_identity());
    }

    #[test]
    fn dimension_mismatch() {
        let f = Cyclotomic::new(1);
        let a = Matrix::identity(&f, 2);
        let b = Matrix::identity(&f, 3);
        assert!(matches!(a.mul(&b), Err(GroupError::DimensionMismatch { .. })));
    }
}

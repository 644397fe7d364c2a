//! Small dense square matrices over [`Scalar`].

use std::fmt;

use crate::scalar::{Mode, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    mode: Mode,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize, mode: Mode) -> Matrix {
        Matrix { n, mode, data: vec![Scalar::zero(mode); n * n] }
    }

    pub fn identity(n: usize, mode: Mode) -> Matrix {
        let mut m = Matrix::zeros(n, mode);
        for i in 0..n {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    /// Matrix sending `e_i` to `signs[i]·e_{perm[i]}`.
    pub fn signed_permutation(perm: &[usize], negate: &[bool], mode: Mode) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(n, mode);
        for i in 0..n {
            let s = if negate[i] { -1 } else { 1 };
            m.set(perm[i], i, Scalar::from_i64(mode, s));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix, ScalarError> {
        let n = rows.len();
        let mode = rows.first().and_then(|r| r.first()).map(Scalar::mode).unwrap_or(Mode::Exact);
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            for x in r {
                if x.mode() != mode {
                    return Err(ScalarError::ModeMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix { n, mode, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ScalarError> {
        if self.mode != other.mode {
            return Err(ScalarError::ModeMismatch);
        }
        let n = self.n;
        let mut out = Matrix::zeros(n, self.mode);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        Matrix { n: self.n, mode: self.mode, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.mode);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(self.mode), |acc, i| &acc + self.get(i, i))
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Matrix::identity(self.n, self.mode), tol)
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.transpose().mul(self).map(|p| p.is_identity(tol)).unwrap_or(false)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Scalar::one(self.mode);
        for col in 0..n {
            let pivot = match self.mode {
                Mode::Exact => (col..n).find(|&r| !a[r * n + col].is_zero()),
                Mode::Float => (col..n)
                    .max_by(|&r, &s| {
                        a[r * n + col].to_f64().abs().total_cmp(&a[s * n + col].to_f64().abs())
                    })
                    .filter(|&r| a[r * n + col].to_f64() != 0.0),
            };
            let Some(p) = pivot else {
                return Scalar::zero(self.mode);
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pv = a[col * n + col].clone();
            det = &det * &pv;
            let inv = pv.recip().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] * &inv;
                for j in col..n {
                    let v = &a[r * n + j] - &(&f * &a[col * n + j]);
                    a[r * n + j] = v;
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.data.chunks(self.n) {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

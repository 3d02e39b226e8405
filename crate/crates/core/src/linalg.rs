//! Small dense square matrices over [`Real`], with the Cholesky and Jacobi
//! kernels the eigensolver is built from.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Real>,
}

impl Matrix {
    pub fn zeros(n: usize, ctx: &PrecisionContext) -> Self {
        Self {
            n,
            data: vec![ctx.zero(); n * n],
        }
    }

    pub fn identity(n: usize, ctx: &PrecisionContext) -> Self {
        let mut m = Self::zeros(n, ctx);
        for i in 0..n {
            m[(i, i)] = ctx.one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Real], ctx: &PrecisionContext) -> Self {
        let mut m = Self::zeros(diag.len(), ctx);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are not square.
    pub fn from_rows(rows: Vec<Vec<Real>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Real] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut data = self.data.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                data[j * self.n + i] = self[(i, j)].clone();
            }
        }
        Self { n: self.n, data }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].bit_eq(&self[(j, i)])))
    }

    pub fn mul_vec(&self, v: &[Real], ctx: &PrecisionContext) -> Vec<Real> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(ctx.zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// xᵀ M y.
    pub fn bilinear(&self, x: &[Real], y: &[Real], ctx: &PrecisionContext) -> Real {
        dot(x, &self.mul_vec(y, ctx), ctx)
    }

    pub fn max_abs(&self, ctx: &PrecisionContext) -> Real {
        self.data.iter().fold(ctx.zero(), |acc, v| acc.max(&v.abs()).clone())
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self, ctx: &PrecisionContext) -> Real {
        (0..self.n).fold(ctx.zero(), |acc, i| {
            let row = self.row(i).iter().fold(ctx.zero(), |s, v| s + v.abs());
            acc.max(&row).clone()
        })
    }

    fn frobenius(&self, ctx: &PrecisionContext) -> Real {
        self.data.iter().fold(ctx.zero(), |acc, v| acc + v * v).sqrt()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Real;
    fn index(&self, (i, j): (usize, usize)) -> &Real {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Real {
        &mut self.data[i * self.n + j]
    }
}

pub fn dot(x: &[Real], y: &[Real], ctx: &PrecisionContext) -> Real {
    x.iter().zip(y).fold(ctx.zero(), |acc, (a, b)| acc + a * b)
}

/// Lower-triangular Cholesky factor L with S = L Lᵀ, unpivoted.
///
/// A non-positive pivot (1-based index in the error) means S is not positive
/// definite at the working precision.
pub fn cholesky(s: &Matrix, ctx: &PrecisionContext) -> Result<Matrix> {
    let n = s.dim();
    let mut l = Matrix::zeros(n, ctx);
    for j in 0..n {
        let mut diag = s[(j, j)].clone();
        for k in 0..j {
            diag = diag - &l[(j, k)] * &l[(j, k)];
        }
        if !diag.is_positive() || !diag.is_finite() {
            return Err(Error::IllConditionedBasis { pivot: j + 1 });
        }
        let ljj = diag.sqrt();
        for i in (j + 1)..n {
            let mut v = s[(i, j)].clone();
            for k in 0..j {
                v = v - &l[(i, k)] * &l[(j, k)];
            }
            l[(i, j)] = v / &ljj;
        }
        l[(j, j)] = ljj;
    }
    Ok(l)
}

/// Solves L x = b for lower-triangular L.
pub fn forward_substitute(l: &Matrix, b: &[Real]) -> Vec<Real> {
    let n = l.dim();
    let mut x: Vec<Real> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = b[i].clone();
        for (k, xk) in x.iter().enumerate() {
            v = v - &l[(i, k)] * xk;
        }
        x.push(v / &l[(i, i)]);
    }
    x
}

/// Solves Lᵀ x = b for lower-triangular L.
pub fn backward_substitute_transpose(l: &Matrix, b: &[Real], ctx: &PrecisionContext) -> Vec<Real> {
    let n = l.dim();
    let mut x = vec![ctx.zero(); n];
    for i in (0..n).rev() {
        let mut v = b[i].clone();
        for k in (i + 1)..n {
            v = v - &l[(k, i)] * &x[k];
        }
        x[i] = v / &l[(i, i)];
    }
    x
}

/// L⁻¹ H L⁻ᵀ for symmetric H, returned exactly symmetric.
pub fn congruence_inverse(l: &Matrix, h: &Matrix, ctx: &PrecisionContext) -> Matrix {
    let n = h.dim();
    // X = L⁻¹ H, column by column
    let mut x = Matrix::zeros(n, ctx);
    for j in 0..n {
        let col: Vec<Real> = (0..n).map(|i| h[(i, j)].clone()).collect();
        for (i, v) in forward_substitute(l, &col).into_iter().enumerate() {
            x[(i, j)] = v;
        }
    }
    // A = X L⁻ᵀ = (L⁻¹ Xᵀ)ᵀ; row i of X is column i of Xᵀ
    let mut a = Matrix::zeros(n, ctx);
    for i in 0..n {
        let y = forward_substitute(l, x.row(i));
        for (j, v) in y.into_iter().enumerate() {
            a[(j, i)] = v;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            a[(j, i)] = a[(i, j)].clone();
        }
    }
    a
}

/// Eigenvalues and column eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<Real>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<Real>>,
    pub sweeps: usize,
}

pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until every off-diagonal entry is below the unit
/// roundoff times the Frobenius norm. Output is in the order the diagonal
/// ends up in, unsorted.
pub fn jacobi_eigen(m: &Matrix, ctx: &PrecisionContext) -> Result<SymmetricEigen> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = Matrix::identity(n, ctx);
    let threshold = ctx.eps() * a.frobenius(ctx);
    let one = ctx.one();
    let two = ctx.int(2);

    for sweep in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)].clone();
                if apq.abs() <= threshold {
                    continue;
                }
                rotated = true;
                // Rutishauser's formulation: t = tan θ chosen with |θ| ≤ π/4
                let theta = (&a[(q, q)] - &a[(p, p)]) / (&two * &apq);
                let t = {
                    let root = (&theta * &theta + &one).sqrt();
                    let denom = theta.abs() + root;
                    let t = denom.recip();
                    if theta.is_negative() {
                        -t
                    } else {
                        t
                    }
                };
                let c = (&t * &t + &one).sqrt().recip();
                let s = &t * &c;
                let tau = &s / (&one + &c);

                let app = &a[(p, p)] - &t * &apq;
                let aqq = &a[(q, q)] + &t * &apq;
                a[(p, p)] = app;
                a[(q, q)] = aqq;
                a[(p, q)] = ctx.zero();
                a[(q, p)] = ctx.zero();
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[(r, p)].clone();
                        let arq = a[(r, q)].clone();
                        let new_rp = &arp - &s * (&arq + &tau * &arp);
                        let new_rq = &arq + &s * (&arp - &tau * &arq);
                        a[(r, p)] = new_rp.clone();
                        a[(p, r)] = new_rp;
                        a[(r, q)] = new_rq.clone();
                        a[(q, r)] = new_rq;
                    }
                    let vrp = v[(r, p)].clone();
                    let vrq = v[(r, q)].clone();
                    v[(r, p)] = &vrp - &s * (&vrq + &tau * &vrp);
                    v[(r, q)] = &vrq + &s * (&vrp - &tau * &vrq);
                }
            }
        }
        if !rotated {
            let values = (0..n).map(|i| a[(i, i)].clone()).collect();
            let vectors = (0..n).map(|k| (0..n).map(|r| v[(r, k)].clone()).collect()).collect();
            return Ok(SymmetricEigen {
                values,
                vectors,
                sweeps: sweep,
            });
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_JACOBI_SWEEPS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn sample(ctx: &PrecisionContext) -> Matrix {
        Matrix::from_rows(vec![
            vec![ctx.int(4), ctx.int(1), ctx.int(2)],
            vec![ctx.int(1), ctx.int(3), ctx.int(0)],
            vec![ctx.int(2), ctx.int(0), ctx.int(5)],
        ])
    }

    #[test]
    fn cholesky_reconstructs() {
        let ctx = ctx();
        let s = sample(&ctx);
        let l = cholesky(&s, &ctx).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v = (0..3).fold(ctx.zero(), |acc, k| acc + &l[(i, k)] * &l[(j, k)]);
                assert!((v - &s[(i, j)]).abs() < ctx.tolerance(2));
            }
            for j in (i + 1)..3 {
                assert!(l[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn cholesky_reports_failing_pivot() {
        let ctx = ctx();
        let s = Matrix::from_rows(vec![vec![ctx.int(1), ctx.int(2)], vec![ctx.int(2), ctx.int(1)]]);
        assert_eq!(cholesky(&s, &ctx), Err(Error::IllConditionedBasis { pivot: 2 }));
    }

    #[test]
    fn jacobi_diagonalizes() {
        let ctx = ctx();
        let m = sample(&ctx);
        let eig = jacobi_eigen(&m, &ctx).unwrap();
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let mv = m.mul_vec(v, &ctx);
            for (a, b) in mv.iter().zip(v) {
                assert!((a - &(lambda * b)).abs() < ctx.tolerance(3));
            }
            assert!((dot(v, v, &ctx) - ctx.one()).abs() < ctx.tolerance(3));
        }
        // trace is preserved
        let trace = eig.values.iter().fold(ctx.zero(), |acc, v| acc + v);
        assert!((trace - ctx.int(12)).abs() < ctx.tolerance(3));
    }

    #[test]
    fn jacobi_on_diagonal_input_is_immediate() {
        let ctx = ctx();
        let m = Matrix::from_diagonal(&[ctx.int(3), ctx.int(-1)], &ctx);
        let eig = jacobi_eigen(&m, &ctx).unwrap();
        assert_eq!(eig.sweeps, 0);
        assert_eq!(eig.values, vec![ctx.int(3), ctx.int(-1)]);
    }

    #[test]
    fn congruence_matches_direct_product() {
        let ctx = ctx();
        let s = sample(&ctx);
        let h = Matrix::from_rows(vec![
            vec![ctx.int(1), ctx.int(-1), ctx.int(0)],
            vec![ctx.int(-1), ctx.int(2), ctx.int(3)],
            vec![ctx.int(0), ctx.int(3), ctx.int(-2)],
        ]);
        let l = cholesky(&s, &ctx).unwrap();
        let a = congruence_inverse(&l, &h, &ctx);
        assert!(a.is_symmetric());
        // L A Lᵀ = H
        for i in 0..3 {
            for j in 0..3 {
                let mut v = ctx.zero();
                for p in 0..3 {
                    for q in 0..3 {
                        v = v + &l[(i, p)] * &a[(p, q)] * &l[(j, q)];
                    }
                }
                assert!((v - &h[(i, j)]).abs() < ctx.tolerance(3));
            }
        }
    }

    #[test]
    fn triangular_solves() {
        let ctx = ctx();
        let l = cholesky(&sample(&ctx), &ctx).unwrap();
        let b = vec![ctx.int(1), ctx.int(2), ctx.int(3)];
        let x = forward_substitute(&l, &b);
        let back = l.mul_vec(&x, &ctx);
        let y = backward_substitute_transpose(&l, &b, &ctx);
        let back_t = l.transpose().mul_vec(&y, &ctx);
        for i in 0..3 {
            assert!((&back[i] - &b[i]).abs() < ctx.tolerance(3));
            assert!((&back_t[i] - &b[i]).abs() < ctx.tolerance(3));
        }
    }
}

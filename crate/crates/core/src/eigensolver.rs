//! Symmetric-definite generalized eigenproblem H c = W S c.
//!
//! S = L Lᵀ (unpivoted Cholesky), Ã = L⁻¹ H L⁻ᵀ is diagonalized by cyclic
//! Jacobi rotations, and c = L⁻ᵀ y. The roots are the variational upper
//! bounds W_j^[N].

use crate::basis::AssembledSystem;
use crate::error::Result;
use crate::linalg::{backward_substitute_transpose, cholesky, congruence_inverse, jacobi_eigen, Matrix};
use crate::precision::{PrecisionContext, Real};

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub roots: Vec<Real>,
    /// S-orthonormal coefficient vectors, `vectors[k]` for `roots[k]`.
    pub vectors: Vec<Vec<Real>>,
    /// λ_max / λ_min of S.
    pub gram_condition: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn ground(&self) -> &Real {
        &self.roots[0]
    }

    /// The lowest `k` roots (fewer if the basis is smaller).
    pub fn lowest(&self, k: usize) -> &[Real] {
        &self.roots[..k.min(self.roots.len())]
    }

    pub fn roots_f64(&self) -> Vec<f64> {
        self.roots.iter().map(Real::to_f64).collect()
    }

    /// Decimal digits left after the Gram matrix conditioning eats its share.
    pub fn reliable_digits(&self, ctx: &PrecisionContext) -> f64 {
        f64::from(ctx.digits()) - self.gram_condition.log10()
    }
}

pub fn solve_generalized(system: &AssembledSystem, ctx: &PrecisionContext) -> Result<Spectrum> {
    let l = cholesky(&system.s, ctx)?;
    let reduced = congruence_inverse(&l, &system.h, ctx);
    let eig = jacobi_eigen(&reduced, ctx)?;

    let mut order: Vec<usize> = (0..eig.values.len()).collect();
    // stable: ties keep Jacobi order
    order.sort_by(|&i, &j| {
        eig.values[i]
            .partial_cmp(&eig.values[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let roots = order.iter().map(|&k| eig.values[k].clone()).collect();
    let vectors = order
        .iter()
        .map(|&k| backward_substitute_transpose(&l, &eig.vectors[k], ctx))
        .collect();
    Ok(Spectrum {
        roots,
        vectors,
        gram_condition: condition_estimate(&system.s, ctx)?,
    })
}

/// Ratio of the largest to the smallest eigenvalue of a symmetric matrix,
/// `+inf` if the smallest is not positive.
pub fn condition_estimate(s: &Matrix, ctx: &PrecisionContext) -> Result<f64> {
    let eig = jacobi_eigen(s, ctx)?;
    let mut values = eig.values.into_iter();
    let first = match values.next() {
        Some(v) => v,
        None => return Ok(1.0),
    };
    let (lo, hi) = values.fold((first.clone(), first), |(lo, hi), v| {
        let lo = if v < lo { v.clone() } else { lo };
        let hi = if v > hi { v } else { hi };
        (lo, hi)
    });
    if !lo.is_positive() {
        return Ok(f64::INFINITY);
    }
    Ok((hi / lo).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{assemble, BasisSpec, DerivativeForm};
    use crate::potential::MonomialPotential;

    #[test]
    fn identity_and_diagonal_conditions() {
        let ctx = PrecisionContext::default();
        assert_eq!(condition_estimate(&Matrix::identity(4, &ctx), &ctx).unwrap(), 1.0);
        let d = Matrix::from_diagonal(&[ctx.one(), ctx.parse("1e-8").unwrap()], &ctx);
        let c = condition_estimate(&d, &ctx).unwrap();
        assert!((c - 1e8).abs() < 1e-6, "{c}");
        let indefinite = Matrix::from_diagonal(&[ctx.one(), ctx.int(-1)], &ctx);
        assert_eq!(condition_estimate(&indefinite, &ctx).unwrap(), f64::INFINITY);
    }

    #[test]
    fn single_function_root_is_rayleigh_quotient() {
        let ctx = PrecisionContext::default();
        let sys = assemble(
            &MonomialPotential::harmonic(),
            &BasisSpec::even(1.0, 1, 0.0),
            &ctx,
            DerivativeForm::FirstDerivative,
        )
        .unwrap();
        let spec = solve_generalized(&sys, &ctx).unwrap();
        assert_eq!(spec.len(), 1);
        assert!((spec.ground() - ctx.ratio(1, 2)).abs() < ctx.tolerance(3));
    }

    #[test]
    fn eigenpairs_are_s_orthonormal_with_small_residual() {
        let ctx = PrecisionContext::default();
        let sys = assemble(
            &MonomialPotential::quartic(),
            &BasisSpec::even(2.0, 12, -1.0),
            &ctx,
            DerivativeForm::FirstDerivative,
        )
        .unwrap();
        let spec = solve_generalized(&sys, &ctx).unwrap();
        let tol = ctx.tolerance(10);
        let h_norm = sys.h.norm_inf(&ctx);
        for w in spec.roots.windows(2) {
            assert!(w[0] <= w[1]);
        }
        for (i, ci) in spec.vectors.iter().enumerate() {
            for (j, cj) in spec.vectors.iter().enumerate() {
                let g = sys.s.bilinear(ci, cj, &ctx);
                let target = if i == j { ctx.one() } else { ctx.zero() };
                assert!((g - target).abs() < tol, "({i}, {j})");
            }
            let hc = sys.h.mul_vec(ci, &ctx);
            let sc = sys.s.mul_vec(ci, &ctx);
            let c_max = ci.iter().fold(ctx.zero(), |m, v| m.max(&v.abs()).clone());
            let resid = hc
                .iter()
                .zip(&sc)
                .fold(ctx.zero(), |m, (a, b)| m.max(&(a - &spec.roots[i] * b).abs()).clone());
            assert!(resid / c_max < &tol * &h_norm, "residual for root {i}");
        }
    }
}

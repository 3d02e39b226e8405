//! Dense polynomials in x with [`Real`] coefficients.

use crate::precision::{PrecisionContext, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    /// `coeffs[k]` multiplies x^k.
    coeffs: Vec<Real>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Real>) -> Self {
        Self { coeffs }
    }

    pub fn monomial(power: usize, ctx: &PrecisionContext) -> Self {
        let mut coeffs = vec![ctx.zero(); power + 1];
        coeffs[power] = ctx.one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&Real> {
        self.coeffs.get(k)
    }

    /// p(0).
    pub fn constant(&self, ctx: &PrecisionContext) -> Real {
        self.coeffs.first().cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn eval(&self, x: &Real, ctx: &PrecisionContext) -> Real {
        self.coeffs.iter().rev().fold(ctx.zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self, ctx: &PrecisionContext) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(vec![ctx.zero()]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * ctx.int(k as i64))
            .collect();
        Self { coeffs }
    }

    /// p' - a·x·p, the polynomial factor of d/dx [p(x) e^{-a x²/2}].
    pub fn gaussian_derivative(&self, a: &Real, ctx: &PrecisionContext) -> Self {
        let d = self.derivative(ctx);
        let mut coeffs = vec![ctx.zero(); self.coeffs.len() + 1];
        for (k, c) in d.coeffs.iter().enumerate() {
            coeffs[k] = &coeffs[k] + c;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = &coeffs[k + 1] - a * c;
        }
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self, ctx: &PrecisionContext) -> Self {
        let mut coeffs = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Self { coeffs }
    }

    /// Σ_k c_k · moments[k + shift], i.e. ∫₀^∞ x^shift p(x) e^{-α x²} dx when
    /// `moments` tabulates M(·, α).
    pub fn integrate_against(&self, moments: &[Real], shift: usize, ctx: &PrecisionContext) -> Real {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(ctx.zero(), |acc, (k, c)| acc + c * &moments[k + shift])
    }
}

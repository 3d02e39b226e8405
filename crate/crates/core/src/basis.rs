//! Gaussian basis sets and closed-form assembly of the H and S matrices.
//!
//! For a parity-invariant potential the even and odd problems decouple and
//! each can be posed on the half-line x > 0. For an even state ψ the
//! full-line Rayleigh quotient is
//!
//! ```text
//!        2 ∫₀^∞ (½ψ'² + Vψ²) dx + g ψ(0)²        ∫₀^∞ (½ψ'² + Vψ²) dx + (g/2) ψ(0)²
//! W  =  ---------------------------------  =  -----------------------------------
//!                 2 ∫₀^∞ ψ² dx                               ∫₀^∞ ψ² dx
//! ```
//!
//! so the delta contributes `(g/2)·u_i(0)·u_j(0)` to the half-line matrix.
//! Only u₁ is nonzero at the origin, so only H₁₁ picks it up.
//!
//! The even basis is cusp-adapted: u₁ = (1 + g x) e^{-a x²/2} and
//! u_j = x^j e^{-a x²/2} for j ≥ 2, so that u_j'(0⁺) = g·u_j(0) for every j.
//! The odd basis is x^j e^{-a x²/2}, j = 1..n, vanishing at the origin.
//!
//! Writing u_j = p_j(x) e^{-a x²/2} and u_j' = q_j(x) e^{-a x²/2}, every
//! entry is a finite sum of moments M(s, a) = ∫₀^∞ x^s e^{-a x²} dx.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numerics::gaussian_moments;
use crate::par;
use crate::polynomial::Polynomial;
use crate::potential::MonomialPotential;
use crate::precision::{PrecisionContext, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Even states, cusp-adapted basis.
    EvenAdapted,
    /// Odd states, Dirichlet basis; blind to the delta.
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    /// Gaussian exponent a in e^{-a x²/2}.
    pub a: f64,
    /// Number of basis functions.
    pub n: usize,
    /// Delta strength. Ignored in the odd sector.
    pub g: f64,
    pub sector: Sector,
}

impl BasisSpec {
    pub fn even(a: f64, n: usize, g: f64) -> Self {
        Self {
            a,
            n,
            g,
            sector: Sector::EvenAdapted,
        }
    }

    pub fn odd(a: f64, n: usize) -> Self {
        Self {
            a,
            n,
            g: 0.0,
            sector: Sector::Odd,
        }
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::InvalidBasis(format!("width a = {} must be positive", self.a)));
        }
        if self.n == 0 {
            return Err(Error::InvalidBasis("basis size must be at least 1".into()));
        }
        if !self.g.is_finite() {
            return Err(Error::InvalidBasis(format!(
                "delta strength g = {} is not finite",
                self.g
            )));
        }
        Ok(())
    }
}

/// p_j and q_j of one basis function u_j = p_j e^{-a x²/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisPolynomial {
    pub value: Polynomial,
    /// q_j = p_j' − a·x·p_j, so that u_j' = q_j e^{-a x²/2}.
    pub derivative: Polynomial,
}

/// The j-th (1-based) basis function.
pub fn basis_polynomial(j: usize, spec: &BasisSpec, ctx: &PrecisionContext) -> Result<BasisPolynomial> {
    if j == 0 || j > spec.n {
        return Err(Error::IndexOutOfRange { index: j, n: spec.n });
    }
    let value = match spec.sector {
        Sector::EvenAdapted if j == 1 => Polynomial::new(vec![ctx.one(), ctx.real(spec.g)]),
        Sector::EvenAdapted | Sector::Odd => Polynomial::monomial(j, ctx),
    };
    let derivative = value.gaussian_derivative(&ctx.real(spec.a), ctx);
    Ok(BasisPolynomial { value, derivative })
}

/// How the kinetic energy is written before integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeForm {
    /// ½∫u_i'u_j' plus the delta term (g/2)u_i(0)u_j(0).
    #[default]
    FirstDerivative,
    /// −½∫u_i u_j'' with the flux −½u_i(0)u_j'(0) and the delta term; equal
    /// to the first form after integration by parts.
    SecondDerivative,
}

/// H and S together with what produced them.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub h: Matrix,
    pub s: Matrix,
    pub spec: BasisSpec,
    pub potential: MonomialPotential,
}

/// The separate pieces of H, for checks that need them individually.
#[derive(Debug, Clone)]
pub struct SystemParts {
    pub overlap: Matrix,
    pub kinetic: Matrix,
    pub potential: Matrix,
    /// Delta and flux terms at the origin.
    pub boundary: Matrix,
}

impl SystemParts {
    pub fn hamiltonian(&self, ctx: &PrecisionContext) -> Matrix {
        let n = self.overlap.dim();
        let mut h = Matrix::zeros(n, ctx);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = &self.kinetic[(i, j)] + &self.potential[(i, j)] + &self.boundary[(i, j)];
            }
        }
        h
    }
}

struct Entry {
    overlap: Real,
    kinetic: Real,
    potential: Real,
    boundary: Real,
}

pub fn assemble_parts(
    potential: &MonomialPotential,
    spec: &BasisSpec,
    ctx: &PrecisionContext,
    form: DerivativeForm,
) -> Result<SystemParts> {
    spec.validate()?;
    let n = spec.n;
    let a = ctx.real(spec.a);
    let g = ctx.real(spec.g);
    let basis: Vec<BasisPolynomial> = (1..=n).map(|j| basis_polynomial(j, spec, ctx)).collect::<Result<_>>()?;
    let second: Vec<Polynomial> = basis
        .iter()
        .map(|b| b.derivative.gaussian_derivative(&a, ctx))
        .collect();

    // highest power: p_i q_j'' has degree ≤ 2n + 2, p_i p_j x^b ≤ 2n + b
    let max_s = 2 * n as u32 + 2 + potential.max_exponent();
    let moments = gaussian_moments(max_s, &a, ctx)?;
    let half = ctx.ratio(1, 2);
    let even = spec.sector == Sector::EvenAdapted;

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let entries = par::map(pairs.clone(), |(i, j)| {
        let (bi, bj) = (&basis[i], &basis[j]);
        let pp = bi.value.mul(&bj.value, ctx);
        let overlap = pp.integrate_against(&moments, 0, ctx);
        let potential = potential.terms().iter().fold(ctx.zero(), |acc, t| {
            acc + ctx.real(t.coeff) * pp.integrate_against(&moments, t.exponent as usize, ctx)
        });
        let ui0 = bi.value.constant(ctx);
        let uj0 = bj.value.constant(ctx);
        let delta = if even { &half * &g * &ui0 * &uj0 } else { ctx.zero() };
        let (kinetic, boundary) = match form {
            DerivativeForm::FirstDerivative => {
                let qq = bi.derivative.mul(&bj.derivative, ctx);
                (&half * qq.integrate_against(&moments, 0, ctx), delta)
            }
            DerivativeForm::SecondDerivative => {
                let pr = bi.value.mul(&second[j], ctx);
                let kinetic = -(&half * pr.integrate_against(&moments, 0, ctx));
                let flux = -(&half * &ui0 * bj.derivative.constant(ctx));
                (kinetic, delta + flux)
            }
        };
        Entry {
            overlap,
            kinetic,
            potential,
            boundary,
        }
    });

    let mut parts = SystemParts {
        overlap: Matrix::zeros(n, ctx),
        kinetic: Matrix::zeros(n, ctx),
        potential: Matrix::zeros(n, ctx),
        boundary: Matrix::zeros(n, ctx),
    };
    for ((i, j), e) in pairs.into_iter().zip(entries) {
        for (m, v) in [
            (&mut parts.overlap, e.overlap),
            (&mut parts.kinetic, e.kinetic),
            (&mut parts.potential, e.potential),
            (&mut parts.boundary, e.boundary),
        ] {
            m[(j, i)] = v.clone();
            m[(i, j)] = v;
        }
    }
    Ok(parts)
}

/// Assembles H and S over the basis described by `spec`.
pub fn assemble(
    potential: &MonomialPotential,
    spec: &BasisSpec,
    ctx: &PrecisionContext,
    form: DerivativeForm,
) -> Result<AssembledSystem> {
    let parts = assemble_parts(potential, spec, ctx, form)?;
    Ok(AssembledSystem {
        h: parts.hamiltonian(ctx),
        s: parts.overlap,
        spec: *spec,
        potential: potential.clone(),
    })
}

//! Drivers built on assembly + eigensolver: convergence tables, the exact
//! harmonic reference spectrum, critical couplings, the large-|g| expansion,
//! Hellmann–Feynman checks and ground-state sweeps.

use crate::basis::{assemble, AssembledSystem, BasisSpec, DerivativeForm, Sector};
use crate::eigensolver::solve_generalized;
use crate::error::{Error, Result};
use crate::numerics::{gamma_real, recip_gamma};
use crate::par;
use crate::potential::MonomialPotential;
use crate::precision::{PrecisionContext, Real};
use crate::roots::find_root;

/// Lowest `k` roots for every basis size up to `n_max`.
#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub potential: MonomialPotential,
    pub g: f64,
    pub a: f64,
    pub k: usize,
    pub rows: Vec<TableRow>,
    /// Exact even levels, present only for ½x².
    pub exact_row: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    /// min(n, k) roots, ascending.
    pub roots: Vec<Real>,
}

impl ConvergenceTable {
    pub fn row(&self, n: usize) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Column j as (N, W_j) pairs.
    pub fn column(&self, j: usize) -> Vec<(usize, &Real)> {
        self.rows
            .iter()
            .filter_map(|r| r.roots.get(j).map(|w| (r.n, w)))
            .collect()
    }

    /// Cells where W_j^[N] < W_j^[N+1], which the variational principle forbids.
    pub fn monotonicity_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for j in 0..self.k {
            let col = self.column(j);
            for pair in col.windows(2) {
                if pair[1].1 > pair[0].1 {
                    bad.push((pair[1].0, j));
                }
            }
        }
        bad
    }
}

/// Assembles and solves one even or odd problem.
pub fn solve(
    potential: &MonomialPotential,
    spec: &BasisSpec,
    ctx: &PrecisionContext,
) -> Result<(AssembledSystem, crate::Spectrum)> {
    let system = assemble(potential, spec, ctx, DerivativeForm::FirstDerivative)?;
    let spectrum = solve_generalized(&system, ctx)?;
    Ok((system, spectrum))
}

/// W₀ for one basis.
pub fn ground_energy(potential: &MonomialPotential, spec: &BasisSpec, ctx: &PrecisionContext) -> Result<Real> {
    let (_, spectrum) = solve(potential, spec, ctx)?;
    Ok(spectrum.ground().clone())
}

pub fn convergence_table(
    potential: &MonomialPotential,
    g: f64,
    a: f64,
    n_max: usize,
    k: usize,
    ctx: &PrecisionContext,
) -> Result<ConvergenceTable> {
    if k == 0 || n_max < k {
        return Err(Error::Unsupported(format!(
            "table needs n_max ≥ k ≥ 1 (got n_max = {n_max}, k = {k})"
        )));
    }
    let first = if n_max >= 2 { 2 } else { 1 };
    let sizes: Vec<usize> = (first..=n_max).collect();
    let rows = par::try_map(sizes, |n| {
        let (_, spectrum) = solve(potential, &BasisSpec::even(a, n, g), ctx)?;
        Ok::<_, Error>(TableRow {
            n,
            roots: spectrum.lowest(k).to_vec(),
        })
    })?;
    let exact_row = if potential.is_harmonic() {
        Some(ho_exact_levels(g, k)?)
    } else {
        None
    };
    Ok(ConvergenceTable {
        potential: potential.clone(),
        g,
        a,
        k,
        rows,
        exact_row,
    })
}

/// Residual of the even-state quantization condition of ½x² + gδ(x),
///
/// ```text
/// g / Γ(¾ − E/2) + 2 / Γ(¼ − E/2) = 0,
/// ```
///
/// i.e. g = −2Γ(¾ − E/2)/Γ(¼ − E/2) multiplied through by both reciprocal
/// Gammas so that it has no poles. It follows from requiring the decaying
/// parabolic-cylinder solution to satisfy ψ'(0⁺) = gψ(0).
pub fn ho_quantization_residual(energy: f64, g: f64) -> f64 {
    g * recip_gamma(0.75 - energy / 2.0) + 2.0 * recip_gamma(0.25 - energy / 2.0)
}

/// The coupling for which `energy` is an even level of ½x² + gδ(x).
pub fn ho_coupling_for_energy(energy: f64) -> Result<f64> {
    let num = recip_gamma(0.25 - energy / 2.0);
    let den = recip_gamma(0.75 - energy / 2.0);
    if den == 0.0 {
        // E is an odd level; only g = ±∞ reaches it
        return Err(Error::Pole {
            at: 0.75 - energy / 2.0,
        });
    }
    Ok(-2.0 * num / den)
}

/// g₀ of ½x² + gδ(x): the coupling at which the ground level crosses zero,
/// −2Γ(¾)/Γ(¼).
pub fn ho_critical_coupling() -> f64 {
    -2.0 * gamma_real(0.75).expect("regular point") / gamma_real(0.25).expect("regular point")
}

const ORACLE_TOL: f64 = 1e-14;

/// The `k` lowest even levels of ½x² + gδ(x).
///
/// Level m lies between the zeros of 1/Γ(¾ − E/2), i.e. in
/// (2m − ½, 2m + 3/2), and below 3/2 for m = 0. For g ≥ 0 the ground
/// level is at least ½; for g < 0 it sits near −g²/2.
pub fn ho_exact_levels(g: f64, k: usize) -> Result<Vec<f64>> {
    if !g.is_finite() {
        return Err(Error::Domain {
            function: "ho_exact_levels",
            value: g,
        });
    }
    let f = |e: f64| Ok(ho_quantization_residual(e, g));
    (0..k)
        .map(|m| {
            let hi = 2.0 * m as f64 + 1.5;
            let lo = if m == 0 && g >= 0.0 {
                -0.5
            } else if m == 0 {
                let mut lo = -0.5 * g * g - 1.0;
                let mut step = 1.0;
                while ho_quantization_residual(lo, g) <= 0.0 {
                    lo -= step;
                    step *= 2.0;
                    if lo < -1e4 {
                        return Err(Error::Bracket {
                            lo,
                            hi,
                            f_lo: ho_quantization_residual(lo, g),
                            f_hi: ho_quantization_residual(hi, g),
                        });
                    }
                }
                lo
            } else {
                2.0 * m as f64 - 0.5
            };
            find_root(f, lo, hi, ORACLE_TOL * hi.abs().max(1.0))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CriticalCoupling {
    pub g0: f64,
    pub potential: MonomialPotential,
    pub a: f64,
    pub n: usize,
    /// Bracket the search started from (after any expansion).
    pub bracket: (f64, f64),
    pub tol: f64,
}

pub const DEFAULT_CRITICAL_TOL: f64 = 1e-13;

/// Solves W₀(g) = 0 for g. W₀ is strictly increasing in g, so a single sign
/// change brackets the root; the search starts at [−2, 0] and is widened
/// towards more negative g if needed.
pub fn critical_coupling(
    potential: &MonomialPotential,
    a: f64,
    n: usize,
    ctx: &PrecisionContext,
    tol: f64,
) -> Result<CriticalCoupling> {
    let w0 = |g: f64| ground_energy(potential, &BasisSpec::even(a, n, g), ctx).map(|w| w.to_f64());
    let (mut lo, hi) = (-2.0, 0.0);
    let f_hi = w0(hi)?;
    let mut f_lo = w0(lo)?;
    let mut expansions = 0;
    while f_lo > 0.0 && f_hi > 0.0 && expansions < 6 {
        lo *= 2.0;
        f_lo = w0(lo)?;
        expansions += 1;
    }
    let g0 = find_root(w0, lo, hi, tol)?;
    Ok(CriticalCoupling {
        g0,
        potential: potential.clone(),
        a,
        n,
        bracket: (lo, hi),
        tol,
    })
}

/// −g²/2 + Γ(b+1)·A·|g|^{−b}, the first two terms of the large-|g| expansion
/// of the bound ground state for a single monomial A|x|^b. For ½x² this is
/// −g²/2 + 1/g².
pub fn large_g_leading(potential: &MonomialPotential, g: f64) -> Result<f64> {
    let term = potential
        .single_term()
        .ok_or_else(|| Error::Unsupported("the large-coupling expansion is defined for a single monomial".into()))?;
    if g.is_nan() || g >= 0.0 {
        return Err(Error::Domain {
            function: "large_g_leading",
            value: g,
        });
    }
    let b = f64::from(term.exponent);
    Ok(-0.5 * g * g + gamma_real(b + 1.0)? * term.coeff * g.abs().powf(-b))
}

/// |ψ(0)|² for the full-line normalized state with half-line coefficients
/// `coeffs`: ψ(0) = c₁ and ‖ψ‖² = 2 cᵀ S c. Zero in the odd sector.
pub fn psi0_density(system: &AssembledSystem, coeffs: &[Real], ctx: &PrecisionContext) -> Real {
    if system.spec.sector == Sector::Odd {
        return ctx.zero();
    }
    let norm = system.s.bilinear(coeffs, coeffs, ctx);
    &coeffs[0] * &coeffs[0] / (ctx.int(2) * norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HellmannFeynman {
    /// (W₀(g+h) − W₀(g−h)) / 2h
    pub finite_difference: f64,
    /// |ψ(0)|² of the variational ground state at g.
    pub density: f64,
    pub residual: f64,
}

pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Compares the centered difference of W₀ in g with |ψ(0)|². The residual is
/// O(h²) plus the basis-truncation error of the density, which dominates for
/// moderate basis sizes because the point density converges more slowly than
/// the energy.
pub fn hellmann_feynman(
    potential: &MonomialPotential,
    spec: &BasisSpec,
    h: f64,
    ctx: &PrecisionContext,
) -> Result<HellmannFeynman> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Domain {
            function: "hellmann_feynman",
            value: h,
        });
    }
    let specs = vec![*spec, spec.with_g(spec.g + h), spec.with_g(spec.g - h)];
    let mut solved = par::try_map(specs, |s| solve(potential, &s, ctx))?.into_iter();
    let (system, spectrum) = solved.next().expect("three solves");
    let (_, plus) = solved.next().expect("three solves");
    let (_, minus) = solved.next().expect("three solves");
    let fd = (plus.ground() - minus.ground()) / ctx.real(2.0 * h);
    let density = psi0_density(&system, &spectrum.vectors[0], ctx);
    Ok(HellmannFeynman {
        finite_difference: fd.to_f64(),
        density: density.to_f64(),
        residual: (fd - density).abs().to_f64(),
    })
}

/// Residual-only convenience wrapper.
pub fn hellmann_feynman_residual(
    potential: &MonomialPotential,
    spec: &BasisSpec,
    h: f64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    hellmann_feynman(potential, spec, h, ctx).map(|hf| hf.residual)
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub g: f64,
    pub w0: Real,
    /// Two-term large-|g| value, absent where it is undefined (g ≥ 0).
    pub leading: Option<f64>,
    /// Whether |g| is large enough (g ≤ −1) for the expansion to be meaningful.
    pub in_regime: bool,
    /// Exact level for ½x².
    pub exact: Option<f64>,
}

pub const DEFAULT_SWEEP_SIZE: usize = 17;

pub fn sweep_ground_state(
    potential: &MonomialPotential,
    a: f64,
    n: usize,
    grid: &[f64],
    ctx: &PrecisionContext,
) -> Result<Vec<SweepPoint>> {
    let single = potential.single_term().is_some();
    let harmonic = potential.is_harmonic();
    par::try_map(grid.to_vec(), |g| {
        let w0 = ground_energy(potential, &BasisSpec::even(a, n, g), ctx)?;
        let leading = if single && g < 0.0 {
            Some(large_g_leading(potential, g)?)
        } else {
            None
        };
        let exact = if harmonic {
            Some(ho_exact_levels(g, 1)?[0])
        } else {
            None
        };
        Ok(SweepPoint {
            g,
            w0,
            leading,
            in_regime: leading.is_some() && g <= -1.0,
            exact,
        })
    })
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Lowest `k` roots for each Gaussian width in `widths`, for choosing a by
/// eye (lower is better, by the variational principle).
pub fn width_scan(
    potential: &MonomialPotential,
    g: f64,
    n: usize,
    k: usize,
    widths: &[f64],
    ctx: &PrecisionContext,
) -> Result<Vec<(f64, Vec<Real>)>> {
    par::try_map(widths.to_vec(), |a| {
        let (_, spectrum) = solve(potential, &BasisSpec::even(a, n, g), ctx)?;
        Ok((a, spectrum.lowest(k).to_vec()))
    })
}

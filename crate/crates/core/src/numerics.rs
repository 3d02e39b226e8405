//! Gamma function and the half-line Gaussian moment integral.
//!
//! Every matrix element reduces to
//!
//! ```text
//! M(s, α) = ∫₀^∞ x^s exp(-α x²) dx = ½ α^{-(s+1)/2} Γ((s+1)/2)
//! ```
//!
//! with integer `s`, so only Γ at positive half-integers is needed at full
//! working precision. [`gamma_real`] is a double-precision companion for the
//! harmonic-oscillator reference equation and the large-coupling expansion.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// Exact representation of `twice / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    /// `(s + 1) / 2`, the Gamma argument of the `s`-th moment.
    pub const fn moment_argument(s: u32) -> Self {
        Self { twice: s as i64 + 1 }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Γ(z) for positive half-integer `z` by upward recurrence from Γ(1) = 1 or
/// Γ(1/2) = √π. Only the final seed multiplication is inexact.
pub fn gamma_half_integer(z: HalfInteger, ctx: &PrecisionContext) -> Result<Real> {
    if z.twice <= 0 {
        return Err(Error::Domain {
            function: "gamma_half_integer",
            value: z.to_f64(),
        });
    }
    if z.is_integer() {
        // Γ(m) = (m-1)!
        let m = z.twice / 2;
        let mut acc = ctx.one();
        for k in 2..m {
            acc = acc * ctx.int(k);
        }
        Ok(acc)
    } else {
        // Γ(n + 1/2) = √π · Π_{k=1..n} (2k-1)/2
        let n = (z.twice - 1) / 2;
        let mut acc = ctx.sqrt_pi().clone();
        let half = ctx.ratio(1, 2);
        for k in 1..=n {
            acc = acc * ctx.int(2 * k - 1) * &half;
        }
        Ok(acc)
    }
}

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with the argument reduced exactly, so it vanishes at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

fn lanczos_positive(x: f64) -> f64 {
    // x >= 0.5
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) split in two halves to postpone overflow
    let half = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * series
}

/// Double-precision Γ(x) for real `x`, with reflection for `x < 1/2`.
///
/// Positive integers up to 171 are returned as exact factorials.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            function: "gamma_real",
            value: x,
        });
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole { at: x });
    }
    if x == x.floor() && x <= 171.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * lanczos_positive(1.0 - x)))
    } else {
        Ok(lanczos_positive(x))
    }
}

/// 1/Γ(x), an entire function: exactly zero at the non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * lanczos_positive(1.0 - x) / PI
    } else {
        1.0 / lanczos_positive(x)
    }
}

/// M(s, α) = ∫₀^∞ x^s e^{-α x²} dx = ½ α^{-(s+1)/2} Γ((s+1)/2).
pub fn gaussian_moment(s: u32, alpha: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !alpha.is_positive() {
        return Err(Error::Domain {
            function: "gaussian_moment",
            value: alpha.to_f64(),
        });
    }
    let gamma = gamma_half_integer(HalfInteger::moment_argument(s), ctx)?;
    let inv_sqrt_alpha = alpha.sqrt().recip();
    Ok(inv_sqrt_alpha.powi(s + 1) * gamma * ctx.ratio(1, 2))
}

/// Moments M(0, α), …, M(max_s, α).
pub fn gaussian_moments(max_s: u32, alpha: &Real, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    (0..=max_s).map(|s| gaussian_moment(s, alpha, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_integer_seeds() {
        let ctx = PrecisionContext::default();
        let g = gamma_half_integer(HalfInteger::from_twice(1), &ctx).unwrap();
        assert_eq!(&g, ctx.sqrt_pi());
        let g = gamma_half_integer(HalfInteger::from_int(1), &ctx).unwrap();
        assert_eq!(g, ctx.one());
        let g = gamma_half_integer(HalfInteger::from_int(3), &ctx).unwrap();
        assert_eq!(g, ctx.int(2));
        let g = gamma_half_integer(HalfInteger::from_int(6), &ctx).unwrap();
        assert_eq!(g, ctx.int(120));
    }

    #[test]
    fn half_integer_domain() {
        let ctx = PrecisionContext::default();
        for twice in [0, -1, -4] {
            assert!(matches!(
                gamma_half_integer(HalfInteger::from_twice(twice), &ctx),
                Err(Error::Domain { .. })
            ));
        }
    }

    #[test]
    fn gamma_real_examples() {
        assert_eq!(gamma_real(5.0).unwrap(), 24.0);
        assert!(rel(gamma_real(0.75).unwrap(), 1.225_416_702_465_177_6) < 1e-13);
        let sqrt_pi = PI.sqrt();
        assert!(rel(gamma_real(-0.5).unwrap(), -2.0 * sqrt_pi) < 1e-13);
        assert!(rel(gamma_real(0.5).unwrap(), sqrt_pi) < 1e-14);
    }

    #[test]
    fn gamma_quarter_reflection_product() {
        // Γ(1/4) Γ(3/4) = π √2
        let prod = gamma_real(0.25).unwrap() * gamma_real(0.75).unwrap();
        assert!(rel(prod, PI * 2f64.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_real_poles() {
        for x in [0.0, -1.0, -7.0] {
            assert_eq!(gamma_real(x), Err(Error::Pole { at: x }));
        }
        assert!(gamma_real(f64::NAN).is_err());
    }

    #[test]
    fn gamma_real_recurrence_over_range() {
        let mut x = -9.73;
        while x < 49.0 {
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "x = {x}: {lhs} vs {rhs}");
            x += 0.61;
        }
    }

    #[test]
    fn gamma_real_agrees_with_half_integer_path() {
        let ctx = PrecisionContext::default();
        for twice in 1..=40 {
            let z = HalfInteger::from_twice(twice);
            let exact = gamma_half_integer(z, &ctx).unwrap().to_f64();
            let approx = gamma_real(z.to_f64()).unwrap();
            assert!(rel(approx, exact) < 1e-13, "z = {z}: {approx} vs {exact}");
        }
    }

    #[test]
    fn recip_gamma_is_entire() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert!(rel(recip_gamma(2.5), 1.0 / gamma_real(2.5).unwrap()) < 1e-14);
        assert!(rel(recip_gamma(-2.5), 1.0 / gamma_real(-2.5).unwrap()) < 1e-13);
        // sign change across the zero at -1
        assert!(recip_gamma(-1.0 - 1e-9) * recip_gamma(-1.0 + 1e-9) < 0.0);
    }

    #[test]
    fn moment_examples() {
        let ctx = PrecisionContext::default();
        let one = ctx.one();
        let m0 = gaussian_moment(0, &one, &ctx).unwrap();
        assert!((m0 - ctx.sqrt_pi() * ctx.ratio(1, 2)).abs() < ctx.tolerance(1));
        let m1 = gaussian_moment(1, &one, &ctx).unwrap();
        assert!((m1 - ctx.ratio(1, 2)).abs() < ctx.tolerance(1));
        // (3/32) √(π/2)
        let m4 = gaussian_moment(4, &ctx.int(2), &ctx).unwrap();
        let expected = ctx.ratio(3, 32) * (ctx.pi() / ctx.int(2)).sqrt();
        assert!((m4 - expected).abs() < ctx.tolerance(1));
    }

    #[test]
    fn moment_domain() {
        let ctx = PrecisionContext::default();
        assert!(gaussian_moment(2, &ctx.zero(), &ctx).is_err());
        assert!(gaussian_moment(2, &ctx.int(-1), &ctx).is_err());
    }

    #[test]
    fn moment_recurrence() {
        let ctx = PrecisionContext::default();
        for alpha in [ctx.ratio(1, 2), ctx.one(), ctx.int(2), ctx.int(4)] {
            let ms = gaussian_moments(62, &alpha, &ctx).unwrap();
            for s in 0..=60u32 {
                let lhs = &ms[s as usize + 2];
                let rhs = &ms[s as usize] * ctx.int(i64::from(s) + 1) / (ctx.int(2) * &alpha);
                assert!(((lhs - &rhs) / lhs).abs() < ctx.tolerance(2), "s = {s}");
            }
        }
    }

    #[test]
    fn moment_matches_width_parametrized_form() {
        // ∫₀^∞ x^s e^{-a x²/2} dx = 2^{(s-1)/2} a^{-(s+1)/2} Γ((s+1)/2)
        let ctx = PrecisionContext::default();
        for a in [ctx.one(), ctx.int(2)] {
            let alpha = &a / ctx.int(2);
            for s in 0..=40u32 {
                let m = gaussian_moment(s, &alpha, &ctx).unwrap();
                let sqrt2 = ctx.int(2).sqrt();
                // 2^{(s-1)/2} = sqrt2^{s+1} / 2
                let pow2 = sqrt2.powi(s + 1) / ctx.int(2);
                let a_pow = a.sqrt().recip().powi(s + 1);
                let gamma = gamma_half_integer(HalfInteger::moment_argument(s), &ctx).unwrap();
                let rhs = pow2 * a_pow * gamma;
                assert!(((&m - &rhs) / &m).abs() < ctx.tolerance(2), "s = {s}");
            }
        }
    }
}

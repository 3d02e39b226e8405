//! Bracketed scalar root finding (Illinois-modified false position).

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;

/// Finds a root of `f` inside `[lo, hi]` to within `tol` in x.
///
/// `f(lo)` and `f(hi)` must differ in sign (or one of them vanish).
/// Each step is a secant step between the bracket ends; when the same end
/// is retained twice its function value is halved (Illinois), which keeps
/// the convergence superlinear. A bisection step is taken whenever the
/// secant point would not shrink the bracket.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    // which end was kept on the previous step: -1 = a, 1 = b
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        if (b - a).abs() <= tol {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        let width = b - a;
        if !(c > a + 0.01 * width && c < b - 0.01 * width) {
            c = 0.5 * (a + b);
        }
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fa.signum() {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        } else {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }
    }
    Err(Error::RootIterationLimit {
        iterations: MAX_ITERATIONS,
        last: 0.5 * (a + b),
    })
}

/// Widens `[lo, hi]` geometrically until `f` changes sign, at most
/// `max_expansions` times.
pub fn expand_bracket<F>(mut f: F, mut lo: f64, mut hi: f64, max_expansions: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    for _ in 0..max_expansions {
        if f_lo.signum() != f_hi.signum() || f_lo == 0.0 || f_hi == 0.0 {
            return Ok((lo, hi));
        }
        let width = hi - lo;
        if f_lo.abs() < f_hi.abs() {
            lo -= width;
            f_lo = f(lo)?;
        } else {
            hi += width;
            f_hi = f(hi)?;
        }
    }
    if f_lo.signum() != f_hi.signum() {
        return Ok((lo, hi));
    }
    Err(Error::Bracket { lo, hi, f_lo, f_hi })
}

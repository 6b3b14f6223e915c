//! Scalar constants: Bessel zeros, the Poincaré–Sobolev upper estimate and
//! the spectral-gap constant.

use crate::error::{domain, Result};
use crate::special::{bessel_zero, log_gamma, BesselKind};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Sobolev-type constant entering the gap estimate, at printed precision.
pub const LAMBDA_STAR: f64 = 2.539;

/// Margin kept from each end of the open minimization interval.
pub const INTERVAL_MARGIN: f64 = 1e-9;

/// Golden-section stops once the bracket is narrower than this.
pub const BRACKET_WIDTH: f64 = 1e-12;

pub fn j01() -> f64 {
    static J: OnceLock<f64> = OnceLock::new();
    *J.get_or_init(|| bessel_zero(BesselKind::J0))
}

pub fn j11() -> f64 {
    static J: OnceLock<f64> = OnceLock::new();
    *J.get_or_init(|| bessel_zero(BesselKind::J1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantResult {
    pub value: f64,
    pub minimizer_p: f64,
    /// The open interval the infimum runs over.
    pub interval: (f64, f64),
    pub iterations: usize,
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min, iterations)`.
pub fn golden_section_minimize(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while (b - a) > tol && iterations < 500 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        iterations += 1;
    }
    // the endpoints are candidates too: the infimum may sit at the margin
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    (best.0, best.1, iterations)
}

/// `ln` of the objective in the `A_{r,2}` estimate, without the area factor:
/// `((p−1)/(2−p))^{(p−1)/p} / (√π · 2^{1/p} · √(Γ(2/p) Γ(3−2/p)))`.
pub fn log_poincare_factor(p: f64) -> f64 {
    let lg = log_gamma(2.0 / p).unwrap_or(f64::NAN) + log_gamma(3.0 - 2.0 / p).unwrap_or(f64::NAN);
    (p - 1.0) / p * ((p - 1.0) / (2.0 - p)).ln() - 0.5 * PI.ln() - std::f64::consts::LN_2 / p - 0.5 * lg
}

/// `ln` of the objective defining the gap constant `γ_∞`:
/// `((p−1)/(2−p))^{2(p−1)/p} π^{−1/2} 4^{−1/p} / (Γ(2/p) Γ(3−2/p))`.
pub fn log_gap_factor(p: f64) -> f64 {
    let lg = log_gamma(2.0 / p).unwrap_or(f64::NAN) + log_gamma(3.0 - 2.0 / p).unwrap_or(f64::NAN);
    2.0 * (p - 1.0) / p * ((p - 1.0) / (2.0 - p)).ln() - 0.5 * PI.ln() - 4f64.ln() / p - lg
}

/// Lower end of the minimization interval, `2r/(r+2)`.
pub fn poincare_interval(r: f64) -> (f64, f64) {
    (2.0 * r / (r + 2.0), 2.0)
}

fn minimize_log(log_f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64, usize) {
    let (p, lv, it) = golden_section_minimize(&log_f, lo + INTERVAL_MARGIN, hi - INTERVAL_MARGIN, BRACKET_WIDTH);
    (p, lv.exp(), it)
}

/// Upper estimate for the Poincaré–Sobolev constant `A_{r,2}` of a domain of the given area.
pub fn poincare_constant_upper(r: f64, area: f64) -> Result<ConstantResult> {
    if !(r >= 2.0) || !r.is_finite() {
        return Err(domain(format!("Poincaré-Sobolev estimate needs r >= 2, got {r}")));
    }
    if !(area > 0.0) || !area.is_finite() {
        return Err(domain(format!("area must be positive, got {area}")));
    }
    let (lo, hi) = poincare_interval(r);
    let log_area = area.ln() / r;
    let (p, value, iterations) = minimize_log(|p| log_poincare_factor(p) + log_area, lo, hi);
    Ok(ConstantResult {
        value,
        minimizer_p: p,
        interval: (lo, hi),
        iterations,
    })
}

/// The gap constant `γ_∞`, an infimum over `p ∈ (4/3, 2)`.
pub fn gamma_infinity() -> ConstantResult {
    static G: OnceLock<ConstantResult> = OnceLock::new();
    *G.get_or_init(|| {
        let (lo, hi) = (4.0 / 3.0, 2.0);
        let (p, value, iterations) = minimize_log(log_gap_factor, lo, hi);
        ConstantResult {
            value,
            minimizer_p: p,
            interval: (lo, hi),
            iterations,
        }
    })
}

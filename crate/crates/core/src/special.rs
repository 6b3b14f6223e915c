//! Log-gamma and the two Bessel functions needed for disc eigenvalues.

use crate::error::{domain, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
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

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma needs a finite x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // Γ(x) Γ(1 − x) = π / sin(πx)
        return Ok((PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x));
    }
    Ok(lanczos_ln_gamma(x))
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// Above this argument the Hankel expansion replaces the power series.
const SERIES_LIMIT: f64 = 12.0;

pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_LIMIT {
        power_series(0, x)
    } else {
        hankel(0, x)
    }
}

pub fn bessel_j1(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    s * if x <= SERIES_LIMIT {
        power_series(1, x)
    } else {
        hankel(1, x)
    }
}

/// `Σ (−1)^k (x/2)^{2k+ν} / (k! (k+ν)!)`
fn power_series(nu: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let q = half * half;
    let mut term = if nu == 0 { 1.0 } else { half };
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * (kf + nu as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn hankel(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let chi = x - (nu as f64 / 2.0 + 0.25) * PI;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..30 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J0,
    J1,
}

/// First positive zero of `J0` or `J1`, bracketed by bisection and polished by Newton.
pub fn bessel_zero(kind: BesselKind) -> f64 {
    let (f, df): (fn(f64) -> f64, fn(f64) -> f64) = match kind {
        BesselKind::J0 => (bessel_j0, |x| -bessel_j1(x)),
        BesselKind::J1 => (bessel_j1, |x| bessel_j0(x) - bessel_j1(x) / x),
    };
    let (mut lo, mut hi) = match kind {
        BesselKind::J0 => (2.0, 3.0),
        BesselKind::J1 => (3.0, 4.5),
    };
    let flo = f(lo);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..20 {
        let step = f(x) / df(x);
        x -= step;
        if step.abs() < 1e-16 * x {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_exact_points() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        let half = log_gamma(0.5).unwrap();
        assert!((half - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_reference_values() {
        let table = [
            (0.001, 6.907_178_885_383_853_7),
            (0.1, 2.252_712_651_734_205_9),
            (1.5, -0.120_782_237_635_245_22),
            (3.7, 1.428_072_326_665_388_1),
            (10.0, 12.801_827_480_081_469),
            (25.5, 56.389_167_643_719_947),
            (100.0, 359.134_205_369_575_4),
        ];
        for (x, want) in table {
            let got = log_gamma(x).unwrap();
            assert!((got - want).abs() <= 1e-13 * want.abs(), "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn log_gamma_recurrence_on_unit_interval() {
        // ln Γ(x+1) − ln Γ(x) = ln x is where the (p-dependent) constants live
        for i in 1..50 {
            let x = 1.0 + i as f64 / 50.0;
            let d = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            assert!((d - x.ln()).abs() < 1e-14, "x={x}: {}", d - x.ln());
        }
    }

    #[test]
    fn bessel_reference_values() {
        let table = [
            (0.5, 0.938_469_807_240_812_9, 0.242_268_457_674_873_9),
            (2.4, 0.002_507_683_297_243_859_2, 0.520_185_268_181_931_1),
            (3.9, -0.401_826_014_887_639_9, -0.027_244_039_620_779_89),
            (7.0, 0.300_079_270_519_555_6, -0.004_682_823_482_345_833),
            (11.0, -0.171_190_300_407_196_1, -0.176_785_298_956_721_5),
            (15.0, -0.014_224_472_826_780_773, 0.205_104_038_613_522_76),
            (30.0, -0.086_367_983_581_040_21, -0.118_751_062_616_622_94),
        ];
        for (x, j0, j1) in table {
            assert!((bessel_j0(x) - j0).abs() < 1e-12, "J0({x})");
            assert!((bessel_j1(x) - j1).abs() < 1e-12, "J1({x})");
        }
        assert_eq!(bessel_j1(-0.5), -bessel_j1(0.5));
    }

    #[test]
    fn first_zeros() {
        let j01 = bessel_zero(BesselKind::J0);
        let j11 = bessel_zero(BesselKind::J1);
        assert!((j01 - 2.404_825_557_695_773).abs() < 1e-12);
        assert!((j11 - 3.831_705_970_207_512).abs() < 1e-12);
        assert!(bessel_j0(j01).abs() < 1e-15);
        assert_eq!(format!("{:.4}", j01), "2.4048");
        assert_eq!(format!("{:.4}", j11), "3.8317");
        assert_eq!(format!("{:.4}", j01 * j01), "5.7832");
    }
}

//! Gauss–Legendre rules and the two product rules used over base domains.
//!
//! Sums are accumulated with a fixed pairwise tree so the result does not
//! depend on how many worker threads evaluated the rows.

use crate::error::Result;
use crate::geometry::BaseDomain;
use crate::map::Complex;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the three-term recurrence, seeded with the
/// Tricomi asymptotic guess; accurate to round-off for `n` up to a few hundred.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_deriv(n, t);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_deriv(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Composite rule on `[a, b]`: `panels` equal panels, `order` nodes each.
pub fn composite(a: f64, b: f64, order: usize, panels: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let half = width / 2.0;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((lo + half * (1.0 + xi), half * wi));
        }
    }
    out
}

/// Pairwise (cascade) summation in a fixed tree order.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n if n <= 8 => v.iter().sum(),
        n => {
            let (l, r) = v.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// A tensor-product rule over a base domain, stored as two 1-D factors.
#[derive(Debug, Clone)]
pub struct ProductRule {
    kind: ProductKind,
    outer: Vec<(f64, f64)>,
    inner: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy)]
enum ProductKind {
    /// outer = x, inner = y
    Cartesian,
    /// outer = r (weight already carries r), inner = θ
    Polar { center: Complex },
}

impl ProductRule {
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64, order: usize, panels: usize) -> Self {
        ProductRule {
            kind: ProductKind::Cartesian,
            outer: composite(x0, x1, order, panels),
            inner: composite(y0, y1, order, panels),
        }
    }

    /// Radial composite Gauss–Legendre times a periodic trapezoid in angle.
    pub fn disc(center: Complex, radius: f64, radial: usize, panels: usize, angular: usize) -> Self {
        let outer = composite(0.0, radius, radial, panels)
            .into_iter()
            .map(|(r, w)| (r, w * r))
            .collect();
        let dtheta = 2.0 * PI / angular as f64;
        let inner = (0..angular).map(|j| (j as f64 * dtheta, dtheta)).collect();
        ProductRule {
            kind: ProductKind::Polar { center },
            outer,
            inner,
        }
    }

    pub fn for_base(base: &BaseDomain, cfg: &crate::norms::QuadratureConfig) -> Self {
        match *base {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                Self::rectangle(x0, x1, y0, y1, cfg.nodes_per_axis, cfg.panels_per_axis)
            }
            BaseDomain::Disc { center, radius } => Self::disc(
                center,
                radius,
                cfg.disc_radial_nodes,
                cfg.panels_per_axis,
                cfg.disc_angular_nodes * cfg.panels_per_axis,
            ),
        }
    }

    pub fn node_count(&self) -> usize {
        self.outer.len() * self.inner.len()
    }

    fn point(&self, s: f64, t: f64) -> Complex {
        match self.kind {
            ProductKind::Cartesian => Complex::new(s, t),
            ProductKind::Polar { center } => center + Complex::from_polar(s, t),
        }
    }

    /// Integrates `f` over the domain. Rows are evaluated in parallel and
    /// reduced pairwise in row order.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(Complex) -> Result<f64> + Sync,
    {
        let rows: Vec<f64> = self
            .outer
            .par_iter()
            .map(|&(s, ws)| -> Result<f64> {
                let mut terms = Vec::with_capacity(self.inner.len());
                for &(t, wt) in &self.inner {
                    terms.push(wt * f(self.point(s, t))?);
                }
                Ok(ws * pairwise_sum(&terms))
            })
            .collect::<Result<_>>()?;
        Ok(pairwise_sum(&rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_rules() {
        let (x, w) = gauss_legendre(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert!((x[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        for n in [4, 16, 40] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let deg = 2 * n - 2;
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((q - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn composite_integrates_exponential() {
        let q: f64 = composite(0.0, 3.0, 8, 4).iter().map(|(x, w)| w * x.exp()).sum();
        assert!((q - (3f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn disc_rule_area_and_moment() {
        let rule = ProductRule::disc(Complex::new(0.5, -1.0), 2.0, 8, 2, 32);
        let area = rule.integrate(|_| Ok(1.0)).unwrap();
        assert!((area - 4.0 * PI).abs() < 1e-12);
        // ∬ |z - c|^2 = π R^4 / 2
        let m2 = rule
            .integrate(|z| Ok((z - Complex::new(0.5, -1.0)).norm_sqr()))
            .unwrap();
        assert!((m2 - PI * 8.0).abs() < 1e-11);
    }
}

//! Norm functionals of the map derivative over the base domain.

use crate::error::{domain, Error, Result};
use crate::geometry::BaseDomain;
use crate::map::{AnalyticMap, Complex};
use crate::quadrature::ProductRule;
use rayon::prelude::*;

/// Refinements that disagree by more than this are reported as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 0.5;

const MAX_NODES: usize = 100_000_000;
const SUP_GRID: usize = 512;
const SUP_REFINE_STEPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre order per panel along each rectangle axis.
    pub nodes_per_axis: usize,
    /// Panels per axis (rectangles) or radial panels (discs).
    pub panels_per_axis: usize,
    /// Gauss–Legendre order per radial panel on discs.
    pub disc_radial_nodes: usize,
    /// Trapezoid nodes in angle per panel on discs.
    pub disc_angular_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes_per_axis: 16,
            panels_per_axis: 8,
            disc_radial_nodes: 16,
            disc_angular_nodes: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < 2
            || self.panels_per_axis < 1
            || self.disc_radial_nodes < 2
            || self.disc_angular_nodes < 4
        {
            return Err(domain(format!("quadrature counts out of range: {self:?}")));
        }
        let rect = (self.nodes_per_axis * self.panels_per_axis).pow(2);
        let disc = self.disc_radial_nodes * self.disc_angular_nodes * self.panels_per_axis.pow(2);
        if rect.max(disc) > MAX_NODES {
            return Err(domain(format!(
                "quadrature would use more than {MAX_NODES} nodes"
            )));
        }
        Ok(())
    }

    /// Same rule with twice as many panels per axis.
    pub fn refined(&self) -> Self {
        QuadratureConfig {
            panels_per_axis: self.panels_per_axis * 2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub value: f64,
    pub alpha: f64,
    pub estimated_rel_error: f64,
    pub node_count: usize,
}

/// Integrates `f` at the configured level and at doubled panels.
///
/// Returns `(fine value, relative disagreement, total nodes)`.
pub(crate) fn integrate_two_levels<F>(base: &BaseDomain, quad: &QuadratureConfig, f: F) -> Result<(f64, f64, usize)>
where
    F: Fn(Complex) -> Result<f64> + Sync,
{
    quad.validate()?;
    base.validate()?;
    let coarse_rule = ProductRule::for_base(base, quad);
    let fine_rule = ProductRule::for_base(base, &quad.refined());
    let coarse = coarse_rule.integrate(&f)?;
    let fine = fine_rule.integrate(&f)?;
    if !(coarse.is_finite() && fine.is_finite()) {
        return Err(Error::QuadratureDivergence {
            rel_diff: f64::INFINITY,
        });
    }
    let scale = if fine != 0.0 { fine.abs() } else { 1.0 };
    let rel = (coarse - fine).abs() / scale;
    Ok((fine, rel, coarse_rule.node_count() + fine_rule.node_count()))
}

fn finish(integral: f64, rel: f64, nodes: usize, alpha: f64) -> Result<NormReport> {
    if rel > DIVERGENCE_THRESHOLD {
        return Err(Error::QuadratureDivergence { rel_diff: rel });
    }
    let value = integral.max(0.0).powf(1.0 / alpha);
    // error of I^(1/α) from the error of I
    let coarse = (integral * (1.0 + rel)).max(0.0).powf(1.0 / alpha);
    let estimated_rel_error = if value > 0.0 {
        (coarse - value).abs() / value
    } else {
        0.0
    };
    Ok(NormReport {
        value,
        alpha,
        estimated_rel_error,
        node_count: nodes,
    })
}

/// `(∬_base |φ′|^α)^{1/α}`.
pub fn norm_alpha(
    map: &AnalyticMap,
    base: &BaseDomain,
    alpha: f64,
    quad: &QuadratureConfig,
) -> Result<NormReport> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(domain(format!("norm exponent must be finite and >= 1, got {alpha}")));
    }
    let (integral, rel, nodes) = integrate_two_levels(base, quad, |z| {
        let d = map.deriv(z)?;
        Ok(if alpha == 2.0 {
            d.norm_sqr()
        } else {
            d.norm().powf(alpha)
        })
    })?;
    finish(integral, rel, nodes, alpha)
}

/// Closed-form sup of `|φ′|` for the builtin maps the examples use.
fn sup_override(map: &AnalyticMap, base: &BaseDomain) -> Option<f64> {
    match (map, base) {
        (AnalyticMap::Identity, _) => Some(1.0),
        (AnalyticMap::Affine { a, .. }, _) => Some(a.norm()),
        (AnalyticMap::Exp, BaseDomain::Rectangle { x1, .. }) => Some(x1.exp()),
        // |sin′|² = (cos 2x + cosh 2y)/2 ≤ (1 + cosh 2|y|)/2, attained when x ∈ πℤ
        (AnalyticMap::Sin, BaseDomain::Rectangle { y0, y1, .. }) => {
            let y = y0.abs().max(y1.abs());
            Some(((1.0 + (2.0 * y).cosh()) / 2.0).sqrt())
        }
        _ => None,
    }
}

/// Essential supremum of `|φ′|` over the closure of the base domain.
pub fn norm_sup(map: &AnalyticMap, base: &BaseDomain) -> Result<f64> {
    base.validate()?;
    if let Some(v) = sup_override(map, base) {
        return Ok(v);
    }
    sampled_sup(map, base)
}

/// Grid maximum followed by a compass search around the best node.
pub fn sampled_sup(map: &AnalyticMap, base: &BaseDomain) -> Result<f64> {
    // parametrize the closure by (s, t) ∈ [0,1]²
    let to_point = |s: f64, t: f64| -> Complex {
        match *base {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                Complex::new(x0 + s * (x1 - x0), y0 + t * (y1 - y0))
            }
            BaseDomain::Disc { center, radius } => {
                center + Complex::from_polar(radius * s, 2.0 * std::f64::consts::PI * t)
            }
        }
    };
    let eval = |s: f64, t: f64| -> Result<f64> { Ok(map.deriv(to_point(s, t))?.norm()) };
    let n = SUP_GRID;
    let step = 1.0 / (n - 1) as f64;
    let rows: Vec<(f64, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<(f64, usize, usize)> {
            let mut best = (f64::NEG_INFINITY, i, 0);
            for j in 0..n {
                let v = eval(i as f64 * step, j as f64 * step)?;
                if v > best.0 {
                    best = (v, i, j);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let (mut best, bi, bj) = rows
        .into_iter()
        .fold((f64::NEG_INFINITY, 0, 0), |acc, r| if r.0 > acc.0 { r } else { acc });
    let (mut s, mut t) = (bi as f64 * step, bj as f64 * step);
    let mut h = step;
    for _ in 0..SUP_REFINE_STEPS {
        let mut moved = false;
        for (ds, dt) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let (ns, nt) = ((s + ds).clamp(0.0, 1.0), (t + dt).clamp(0.0, 1.0));
            let v = eval(ns, nt)?;
            if v > best {
                best = v;
                s = ns;
                t = nt;
                moved = true;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    if !best.is_finite() {
        return Err(Error::InfiniteNorm);
    }
    Ok(best)
}

/// `(∬_𝔻 |φ′ − 1|²)^{1/2}` over the unit disc.
pub fn norm_l2_dev(map: &AnalyticMap, quad: &QuadratureConfig) -> Result<f64> {
    let one = Complex::new(1.0, 0.0);
    let (integral, rel, nodes) = integrate_two_levels(&BaseDomain::unit_disc(), quad, |z| {
        Ok((map.deriv(z)? - one).norm_sqr())
    })?;
    // A vanishing integrand has no meaningful relative error.
    if integral.abs() < 1e-300 {
        return Ok(0.0);
    }
    Ok(finish(integral, rel, nodes, 2.0)?.value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityEntry {
    pub alpha: f64,
    pub finite: bool,
    pub value: Option<f64>,
    pub estimated_rel_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityProfile {
    pub entries: Vec<RegularityEntry>,
}

impl RegularityProfile {
    /// Conformal regular when at least one tested exponent converged.
    pub fn conformal_regular(&self) -> bool {
        self.entries.iter().any(|e| e.finite)
    }
}

/// Runs [`norm_alpha`] for each exponent; divergence is recorded, not raised.
pub fn regularity_profile(
    map: &AnalyticMap,
    base: &BaseDomain,
    alphas: &[f64],
    quad: &QuadratureConfig,
) -> Result<RegularityProfile> {
    if let Some(a) = alphas.iter().find(|a| !(**a > 2.0)) {
        return Err(domain(format!("regularity exponents must exceed 2, got {a}")));
    }
    let entries = alphas
        .iter()
        .map(|&alpha| match norm_alpha(map, base, alpha, quad) {
            Ok(r) => RegularityEntry {
                alpha,
                finite: true,
                value: Some(r.value),
                estimated_rel_error: Some(r.estimated_rel_error),
            },
            Err(_) => RegularityEntry {
                alpha,
                finite: false,
                value: None,
                estimated_rel_error: None,
            },
        })
        .collect();
    Ok(RegularityProfile { entries })
}

/// Conformal radius of the unit disc at `w`.
pub fn disc_conformal_radius(w: Complex) -> f64 {
    1.0 - w.norm_sqr()
}

/// `(∬_𝔻 (R_Ω(φ(w)) / R_𝔻(w))^α)^{1/α}` with `R_Ω(φ(w)) = |φ′(w)| R_𝔻(w)`.
pub fn radius_ratio_norm(map: &AnalyticMap, alpha: f64, quad: &QuadratureConfig) -> Result<f64> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(domain(format!("norm exponent must be finite and >= 1, got {alpha}")));
    }
    let (integral, rel, nodes) = integrate_two_levels(&BaseDomain::unit_disc(), quad, |w| {
        let r_disc = disc_conformal_radius(w);
        let r_image = map.deriv(w)?.norm() * r_disc;
        Ok((r_image / r_disc).powf(alpha))
    })?;
    Ok(finish(integral, rel, nodes, alpha)?.value)
}

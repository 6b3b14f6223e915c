//! Dirichlet-energy invariance under the map, checked on a smooth bump.

use crate::error::{domain, Result};
use crate::geometry::BaseDomain;
use crate::map::{AnalyticMap, Complex};
use crate::norms::{integrate_two_levels, QuadratureConfig};
use crate::quadrature::{composite, pairwise_sum};

const BOUNDARY_SAMPLES: usize = 8192;
const SHRINK: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyCheck {
    /// `∬_Ω |∇f|²` over the bump support.
    pub target: f64,
    /// `∬_{Ω′} |∇(f∘φ)|²`.
    pub base: f64,
    pub rel_diff: f64,
    pub center: Complex,
    pub radius: f64,
}

/// `|f′(s)|` for the unit bump `f(s) = exp(1 − 1/(1 − s²))`.
fn bump_slope(s: f64) -> f64 {
    let t = 1.0 - s * s;
    // below this f underflows anyway
    if t <= 1e-3 {
        return 0.0;
    }
    (1.0 - 1.0 / t).exp() * 2.0 * s / (t * t)
}

pub fn energy_isometry_check(map: &AnalyticMap, base: &BaseDomain, quad: &QuadratureConfig) -> Result<f64> {
    Ok(energy_isometry_report(map, base, quad)?.rel_diff)
}

pub fn energy_isometry_report(
    map: &AnalyticMap,
    base: &BaseDomain,
    quad: &QuadratureConfig,
) -> Result<EnergyCheck> {
    base.validate()?;
    quad.validate()?;
    let center = map.eval(base.center())?;
    let mut dist = f64::INFINITY;
    for k in 0..BOUNDARY_SAMPLES {
        let w = map.eval(base.boundary_point(k as f64 / BOUNDARY_SAMPLES as f64))?;
        dist = dist.min((w - center).norm());
    }
    if !(dist > 0.0 && dist.is_finite()) {
        return Err(domain("no disc fits around the image of the base centre"));
    }
    let radius = SHRINK * dist;

    // radial energy in the scaled variable; independent of the radius
    let nodes = composite(0.0, 1.0, quad.nodes_per_axis, 8 * quad.panels_per_axis);
    let terms: Vec<f64> = nodes
        .iter()
        .map(|&(s, w)| w * bump_slope(s).powi(2) * s)
        .collect();
    let target = 2.0 * std::f64::consts::PI * pairwise_sum(&terms);

    let (base_energy, _, _) = integrate_two_levels(base, quad, |z| {
        let (w, d) = map.eval_with_deriv(z)?;
        let s = (w - center).norm() / radius;
        if s >= 1.0 {
            return Ok(0.0);
        }
        let g = bump_slope(s) / radius;
        Ok(g * g * d.norm_sqr())
    })?;
    Ok(EnergyCheck {
        target,
        base: base_energy,
        rel_diff: (target - base_energy).abs() / target,
        center,
        radius,
    })
}

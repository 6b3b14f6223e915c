//! The two worked example families and their comparison tables.
//!
//! * `exp`: `Q = (0, d) × (0, π)` under `exp`, a half annulus with radii 1 and `e^d`.
//! * `sin`: `Q = (−π/2, π/2) × (−d, d)` under `sin`, an ellipse slit along the
//!   real axis from its foci to its ends.

use crate::bounds::{bound_makai, bound_rfk, bound_theorem_a, spec_area, BoundResult};
use crate::error::{domain, Result};
use crate::geometry::{exact_lambda1, BaseDomain, DomainSpec};
use crate::map::AnalyticMap;
use crate::norms::{norm_sup, QuadratureConfig};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    Exp,
    Sin,
}

impl FromStr for Example {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(Example::Exp),
            "sin" => Ok(Example::Sin),
            _ => Err(domain(format!("unknown example '{s}' (expected exp or sin)"))),
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Example::Exp => "exp",
            Example::Sin => "sin",
        })
    }
}

fn check_d(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("d must be positive, got {d}")))
    }
}

/// Half annulus `{1 < |w| < e^d, Im w > 0}`; inradius `(e^d − 1)/2`.
pub fn exp_half_annulus(d: f64) -> Result<DomainSpec> {
    check_d(d)?;
    Ok(DomainSpec::new(BaseDomain::rectangle(0.0, d, 0.0, PI)?, AnalyticMap::Exp)
        .with_inradius(d.exp_m1() / 2.0))
}

/// Slit ellipse with semi-axes `cosh d`, `sinh d`; inradius taken as `d`,
/// the tabulated convention (the inscribed disc at the origin has radius
/// `min(sinh d, 1)`, which exceeds `d` by `O(d³)`).
pub fn sin_slit_ellipse(d: f64) -> Result<DomainSpec> {
    check_d(d)?;
    Ok(DomainSpec::new(
        BaseDomain::rectangle(-FRAC_PI_2, FRAC_PI_2, -d, d)?,
        AnalyticMap::Sin,
    )
    .with_inradius(d))
}

pub fn example_spec(example: Example, d: f64) -> Result<DomainSpec> {
    match example {
        Example::Exp => exp_half_annulus(d),
        Example::Sin => sin_slit_ellipse(d),
    }
}

/// One column of a comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableColumn {
    pub d: f64,
    pub makai: BoundResult,
    pub rfk: BoundResult,
    pub estimate: BoundResult,
}

pub fn table_column(example: Example, d: f64, quad: &QuadratureConfig) -> Result<TableColumn> {
    let spec = example_spec(example, d)?;
    let rho = spec.inradius_override.expect("families declare their inradius");
    Ok(TableColumn {
        d,
        makai: bound_makai(rho, false)?,
        rfk: bound_rfk(spec_area(&spec, quad)?)?,
        estimate: bound_theorem_a(exact_lambda1(&spec.base), norm_sup(&spec.map, &spec.base)?)?,
    })
}

pub fn table(example: Example, ds: &[f64], quad: &QuadratureConfig) -> Result<Vec<TableColumn>> {
    ds.iter().map(|&d| table_column(example, d, quad)).collect()
}

//! Cross-checks of computed bounds against finite-difference eigenvalues.

use super::eigen::{fd_eigenvalues, EigenResult, DEFAULT_TOL};
use super::raster::{rasterize, DEFAULT_SAMPLES_PER_CELL};
use crate::bounds::{BoundMethod, BoundResult};
use crate::error::{domain, Result};
use crate::geometry::{exact_lambda1, DomainSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationOptions {
    /// Coarse pitch; the fine grid uses `h/2`.
    pub h: f64,
    pub samples_per_cell: usize,
    pub tol: f64,
    /// Eigenvalues to compute; raised to 2 when a gap bound is checked.
    pub k: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            h: 1.0 / 128.0,
            samples_per_cell: DEFAULT_SAMPLES_PER_CELL,
            tol: DEFAULT_TOL,
            k: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub method: BoundMethod,
    pub value: f64,
    pub valid: bool,
    /// The quantity the bound estimates from below, from the extrapolated spectrum.
    pub reference: f64,
    /// `value / reference`.
    pub tightness: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub coarse: EigenResult,
    pub fine: EigenResult,
    /// Richardson extrapolation `(4 λ_{h/2} − λ_h) / 3`, per eigenvalue.
    pub extrapolated: Vec<f64>,
    /// Largest relative change between the two grids.
    pub eps_grid: f64,
    pub checks: Vec<BoundCheck>,
}

impl ValidationReport {
    pub fn lambda1(&self) -> f64 {
        self.extrapolated[0]
    }

    /// True when every bound that claims validity passed.
    pub fn valid_bounds_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.valid).all(|c| c.pass)
    }
}

pub fn validate(spec: &DomainSpec, bounds: &[BoundResult], h: f64) -> Result<ValidationReport> {
    validate_with(
        spec,
        bounds,
        &ValidationOptions {
            h,
            ..ValidationOptions::default()
        },
    )
}

pub fn validate_with(
    spec: &DomainSpec,
    bounds: &[BoundResult],
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    if !(opts.h > 0.0) {
        return Err(domain("validation pitch must be positive"));
    }
    let gap = bounds
        .iter()
        .any(|b| matches!(b.method, BoundMethod::Gap | BoundMethod::GapConvex));
    let k = opts.k.max(if gap { 2 } else { 1 });
    let solve = |h: f64| -> Result<EigenResult> {
        let grid = rasterize(spec, h, opts.samples_per_cell)?;
        fd_eigenvalues(&grid, k, opts.tol)
    };
    let coarse = solve(opts.h)?;
    let fine = solve(0.5 * opts.h)?;
    let extrapolated: Vec<f64> = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    let eps_grid = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(c, f)| (c - f).abs() / f)
        .fold(0.0, f64::max);

    let l1 = extrapolated[0];
    let checks = bounds
        .iter()
        .map(|b| {
            let (reference, slack) = match b.method {
                BoundMethod::Gap | BoundMethod::GapConvex => {
                    let l2 = extrapolated[1];
                    (l2 - l1, eps_grid * (l1 + l2))
                }
                BoundMethod::Variation => (l1 - exact_lambda1(&spec.base), eps_grid * l1),
                _ => (l1, eps_grid * l1),
            };
            BoundCheck {
                method: b.method,
                value: b.value,
                valid: b.valid,
                reference,
                tightness: b.value / reference,
                pass: b.value <= reference + slack,
            }
        })
        .collect();
    Ok(ValidationReport {
        coarse,
        fine,
        extrapolated,
        eps_grid,
        checks,
    })
}

//! Lower bounds for `λ₁` and for the gap `λ₂ − λ₁`.
//!
//! Every estimate returns a [`BoundResult`] carrying the value, the
//! hypotheses it relied on and the intermediate quantities, so that reports
//! can show where a number came from. Estimates whose inequality holds but
//! whose right-hand side is not positive (variation, gap) are returned with
//! `valid = true` and an unsatisfied `nonvacuous` entry.

use crate::constants::{gamma_infinity, j01, j11, poincare_constant_upper, LAMBDA_STAR};
use crate::error::{domain, Error, Result};
use crate::geometry::{exact_lambda1, image_area, inradius, DomainSpec};
use crate::norms::{norm_alpha, norm_l2_dev, norm_sup, QuadratureConfig};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

/// Relative tolerance on `|Ω| = π` for the gap estimates.
pub const AREA_TOLERANCE: f64 = 1e-3;

/// Exponents tried for the α-regular estimate when none are given.
pub const DEFAULT_ALPHAS: [f64; 4] = [3.0, 4.0, 6.0, 10.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundMethod {
    Rfk,
    Makai,
    Hersch,
    TheoremA,
    AlphaRegular(f64),
    ConvexKovalev,
    Variation,
    Gap,
    GapConvex,
}

impl BoundMethod {
    /// Position in the catalogue; ties in [`best_bound`] go to the lower rank.
    pub fn rank(&self) -> u8 {
        match self {
            BoundMethod::Rfk => 0,
            BoundMethod::Makai => 1,
            BoundMethod::Hersch => 2,
            BoundMethod::TheoremA => 3,
            BoundMethod::AlphaRegular(_) => 4,
            BoundMethod::ConvexKovalev => 5,
            BoundMethod::Variation => 6,
            BoundMethod::Gap => 7,
            BoundMethod::GapConvex => 8,
        }
    }

    /// True for estimates of `λ₁` itself (as opposed to differences of eigenvalues).
    pub fn bounds_lambda1(&self) -> bool {
        !matches!(
            self,
            BoundMethod::Variation | BoundMethod::Gap | BoundMethod::GapConvex
        )
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMethod::Rfk => write!(f, "RFK"),
            BoundMethod::Makai => write!(f, "Makai"),
            BoundMethod::Hersch => write!(f, "Hersch"),
            BoundMethod::TheoremA => write!(f, "TheoremA"),
            BoundMethod::AlphaRegular(a) => write!(f, "AlphaRegular({a})"),
            BoundMethod::ConvexKovalev => write!(f, "ConvexKovalev"),
            BoundMethod::Variation => write!(f, "Variation"),
            BoundMethod::Gap => write!(f, "Gap"),
            BoundMethod::GapConvex => write!(f, "GapConvex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Precondition {
    pub name: String,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub method: BoundMethod,
    pub value: f64,
    pub valid: bool,
    pub preconditions: Vec<Precondition>,
    pub intermediates: BTreeMap<String, f64>,
}

impl BoundResult {
    fn new(method: BoundMethod, value: f64) -> Self {
        BoundResult {
            method,
            value,
            valid: true,
            preconditions: Vec::new(),
            intermediates: BTreeMap::new(),
        }
    }

    /// Records a theorem hypothesis; an unsatisfied one invalidates the bound.
    fn require(mut self, name: &str, satisfied: bool) -> Self {
        self.valid &= satisfied;
        self.preconditions.push(Precondition {
            name: name.to_string(),
            satisfied,
        });
        self
    }

    /// Flags a true-but-uninformative estimate without invalidating it.
    fn flag_vacuous(mut self) -> Self {
        let ok = self.value > 0.0;
        self.preconditions.push(Precondition {
            name: "nonvacuous (value > 0)".to_string(),
            satisfied: ok,
        });
        self
    }

    fn with(mut self, key: &str, v: f64) -> Self {
        self.intermediates.insert(key.to_string(), v);
        self
    }

    pub fn is_vacuous(&self) -> bool {
        self.value <= 0.0
    }

    /// `name=ok;name=FAIL` summary used by the CSV emitter.
    pub fn preconditions_summary(&self) -> String {
        self.preconditions
            .iter()
            .map(|p| format!("{}={}", p.name, if p.satisfied { "ok" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// `key=value` list of intermediates, 6 significant digits.
    pub fn notes(&self) -> String {
        self.intermediates
            .iter()
            .map(|(k, v)| format!("{k}={}", crate::report::sig6(*v)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Rayleigh–Faber–Krahn: `λ₁(Ω) ≥ j₀,₁² π / |Ω|`.
pub fn bound_rfk(image_area: f64) -> Result<BoundResult> {
    positive("image area", image_area)?;
    let j = j01();
    let r_star = (image_area / PI).sqrt();
    Ok(BoundResult::new(BoundMethod::Rfk, j * j * PI / image_area)
        .require("bounded planar domain of positive area", true)
        .with("area", image_area)
        .with("equal_area_radius", r_star))
}

/// Makai (`γ = 1/4`) or, for convex domains, Hersch (`γ = π²/4`): `λ₁ ≥ γ/ρ²`.
pub fn bound_makai(rho: f64, convex: bool) -> Result<BoundResult> {
    positive("inradius", rho)?;
    let (method, gamma) = if convex {
        (BoundMethod::Hersch, PI * PI / 4.0)
    } else {
        (BoundMethod::Makai, 0.25)
    };
    let mut b = BoundResult::new(method, gamma / (rho * rho))
        .require("simply connected image (conformal image of a disc or rectangle)", true);
    if convex {
        b = b.require("convex image (declared)", true);
    }
    Ok(b.with("gamma", gamma).with("inradius", rho))
}

/// Sup-norm estimate: `λ₁(Ω) ≥ λ₁(Ω′) / ‖φ′‖²_∞`.
pub fn bound_theorem_a(lambda1_base: f64, sup_norm: f64) -> Result<BoundResult> {
    if !sup_norm.is_finite() {
        return Err(Error::InfiniteNorm);
    }
    positive("base eigenvalue", lambda1_base)?;
    positive("sup-norm", sup_norm)?;
    Ok(
        BoundResult::new(BoundMethod::TheoremA, lambda1_base / (sup_norm * sup_norm))
            .require("conformal infinity-regular (sup |phi'| finite)", true)
            .with("lambda1_base", lambda1_base)
            .with("sup_norm", sup_norm),
    )
}

/// The exponent `r = 2α/(α−2)` of the base-domain Poincaré–Sobolev constant.
pub fn alpha_to_r(alpha: f64) -> f64 {
    2.0 * alpha / (alpha - 2.0)
}

/// α-regular estimate: `1/λ₁(Ω) ≤ A²_{r,2}(Ω′) ‖φ′‖²_α` with `r = 2α/(α−2)`.
pub fn bound_alpha_regular(alpha: f64, base_area: f64, alpha_norm: f64) -> Result<BoundResult> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(domain(format!("alpha-regular bound needs 2 < alpha < inf, got {alpha}")));
    }
    positive("base area", base_area)?;
    positive("alpha-norm", alpha_norm)?;
    let r = alpha_to_r(alpha);
    let c = poincare_constant_upper(r, base_area)?;
    let value = 1.0 / (c.value * c.value * alpha_norm * alpha_norm);
    Ok(BoundResult::new(BoundMethod::AlphaRegular(alpha), value)
        .require("conformal alpha-regular (alpha > 2, finite alpha-norm)", true)
        .require("minimization over p in (alpha/(alpha-1), 2)", true)
        .with("alpha", alpha)
        .with("r", r)
        .with("poincare_constant", c.value)
        .with("p_star", c.minimizer_p)
        .with("p_lo", c.interval.0)
        .with("p_hi", c.interval.1)
        .with("alpha_norm", alpha_norm))
}

/// Difference quotient `(log R_I − log R_C)/(R_I − R_C)`, `1/R_I` when the radii coincide.
pub fn kovalev_quotient(r_i: f64, r_c: f64) -> f64 {
    if (r_i - r_c).abs() < 1e-12 * r_i {
        1.0 / r_i
    } else {
        (r_i.ln() - r_c.ln()) / (r_i - r_c)
    }
}

/// Distortion bound on `sup |φ′|` for a convex image satisfying the radii condition.
pub fn kovalev_sup(r_o: f64, r_i: f64, r_c: f64) -> f64 {
    r_c * (2.0 * (r_o - r_c) * kovalev_quotient(r_i, r_c)).exp()
}

/// Convex estimate `λ₁ ≥ j₀,₁²/R_C² · exp(−4(R_O−R_C) D)`.
pub fn bound_convex_kovalev(r_o: f64, r_i: f64, r_c: f64) -> Result<BoundResult> {
    crate::geometry::ConvexRadii::new(r_o, r_i, r_c)?;
    let q = kovalev_quotient(r_i, r_c);
    let s = kovalev_sup(r_o, r_i, r_c);
    let j = j01();
    let value = j * j / (r_c * r_c) * (-4.0 * (r_o - r_c) * q).exp();
    Ok(BoundResult::new(BoundMethod::ConvexKovalev, value)
        .require("(R_O, R_I, R_C) condition: 0 < R_I <= R_O, 0 < R_C <= R_O", true)
        .require("unit-disc base, map fixes 0 (declared)", true)
        .with("R_O", r_o)
        .with("R_I", r_i)
        .with("R_C", r_c)
        .with("difference_quotient", q)
        .with("sup_bound", s))
}

/// Variation estimate `λ₁(Ω) − λ₁(Ω′) ≥ (1 − ‖φ′‖²_∞)/‖φ′‖²_∞ · λ₁(Ω′)`, for `Ω ⊂ Ω′`.
pub fn bound_variation(lambda1_base: f64, sup_norm: f64) -> Result<BoundResult> {
    if !sup_norm.is_finite() {
        return Err(Error::InfiniteNorm);
    }
    positive("base eigenvalue", lambda1_base)?;
    positive("sup-norm", sup_norm)?;
    let s2 = sup_norm * sup_norm;
    Ok(
        BoundResult::new(BoundMethod::Variation, (1.0 - s2) / s2 * lambda1_base)
            .require("image contained in base (declared)", true)
            .require("conformal infinity-regular (sup |phi'| finite)", true)
            .flag_vacuous()
            .with("lambda1_base", lambda1_base)
            .with("sup_norm", sup_norm),
    )
}

/// Inputs of the spectral-gap estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapInputs {
    pub sup_norm: f64,
    pub l2_dev: f64,
    pub rho: f64,
    /// Distortion bound replacing the sup-norm for convex images.
    pub kovalev_sup: Option<f64>,
    pub image_area: f64,
}

/// Gap estimate `λ₂ − λ₁ ≥ λ₂(𝔻) − λ₁(𝔻) − (λ*² + 1) λ₁(𝔻_ρ)² γ_∞ (S + 1) ‖φ′ − 1‖₂`.
pub fn bound_gap(inputs: GapInputs) -> Result<BoundResult> {
    let GapInputs {
        sup_norm,
        l2_dev,
        rho,
        kovalev_sup,
        image_area,
    } = inputs;
    let rel = (image_area - PI).abs() / PI;
    if !(rel <= AREA_TOLERANCE) {
        return Err(Error::AreaMismatch {
            area: image_area,
            rel,
        });
    }
    positive("inradius", rho)?;
    if !(l2_dev >= 0.0) || !l2_dev.is_finite() {
        return Err(domain(format!("L2 deviation must be finite and >= 0, got {l2_dev}")));
    }
    let (method, s) = match kovalev_sup {
        Some(k) => (BoundMethod::GapConvex, k),
        None => (BoundMethod::Gap, sup_norm),
    };
    if !s.is_finite() {
        return Err(Error::InfiniteNorm);
    }
    let j0 = j01();
    let j1 = j11();
    let disc_gap = j1 * j1 - j0 * j0;
    let lambda_rho = j0 * j0 / (rho * rho);
    let gamma = gamma_infinity().value;
    // zero deviation kills the correction even if the other factors are huge
    let correction = if l2_dev == 0.0 {
        0.0
    } else {
        (LAMBDA_STAR * LAMBDA_STAR + 1.0) * lambda_rho * lambda_rho * gamma * (s + 1.0) * l2_dev
    };
    let mut b = BoundResult::new(method, disc_gap - correction)
        .require("unit-disc base", true)
        .require("image area pi", true)
        .require("conformal infinity-regular (sup |phi'| finite)", true);
    if method == BoundMethod::GapConvex {
        b = b.require("(R_O, R_I, R_C) condition (declared)", true);
    }
    Ok(b.flag_vacuous()
        .with("disc_gap", disc_gap)
        .with("gamma_inf", gamma)
        .with("lambda1_inscribed_disc", lambda_rho)
        .with("inradius", rho)
        .with("l2_dev", l2_dev)
        .with("sup_used", s)
        .with("sup_norm", sup_norm)
        .with("area", image_area))
}

/// The valid `λ₁` estimate with the largest value.
pub fn best_bound(results: &[BoundResult]) -> Result<BoundResult> {
    results
        .iter()
        .filter(|b| b.valid && b.method.bounds_lambda1() && b.value > 0.0)
        .fold(None::<&BoundResult>, |best, b| match best {
            None => Some(b),
            Some(cur) if b.value > cur.value => Some(b),
            Some(cur) if b.value == cur.value && b.method.rank() < cur.method.rank() => Some(b),
            keep => keep,
        })
        .cloned()
        .ok_or(Error::NoValidBound {
            count: results.len(),
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogueOptions {
    pub quad: QuadratureConfig,
    pub alphas: Vec<f64>,
    /// Raster pitch for the inradius when the spec gives none.
    pub h: f64,
}

impl Default for CatalogueOptions {
    fn default() -> Self {
        CatalogueOptions {
            quad: QuadratureConfig::default(),
            alphas: DEFAULT_ALPHAS.to_vec(),
            h: 0.01,
        }
    }
}

/// Image area: the declared value or `∬|φ′|²`.
pub fn spec_area(spec: &DomainSpec, quad: &QuadratureConfig) -> Result<f64> {
    match spec.area_override {
        Some(a) => Ok(a),
        None => image_area(spec, quad),
    }
}

/// Every applicable `λ₁` estimate for a domain spec.
///
/// The α-regular estimate is evaluated for each exponent and only the best
/// one is kept.
pub fn catalogue(spec: &DomainSpec, opts: &CatalogueOptions) -> Result<Vec<BoundResult>> {
    spec.validate()?;
    let mut out = Vec::new();
    out.push(bound_rfk(spec_area(spec, &opts.quad)?)?);
    let rho = inradius(spec, opts.h)?;
    out.push(bound_makai(rho, false)?);
    if spec.convex_radii.is_some() {
        out.push(bound_makai(rho, true)?);
    }
    let lambda_base = exact_lambda1(&spec.base);
    let sup = norm_sup(&spec.map, &spec.base)?;
    out.push(bound_theorem_a(lambda_base, sup)?);

    let mut best_alpha: Option<BoundResult> = None;
    for &alpha in &opts.alphas {
        let Ok(norm) = norm_alpha(&spec.map, &spec.base, alpha, &opts.quad) else {
            continue;
        };
        let b = bound_alpha_regular(alpha, spec.base.area(), norm.value)?;
        if best_alpha.as_ref().is_none_or(|cur| b.value > cur.value) {
            best_alpha = Some(b);
        }
    }
    out.extend(best_alpha);

    if let Some(r) = spec.convex_radii {
        if spec.base.is_unit_disc() {
            out.push(bound_convex_kovalev(r.outer, r.inner, r.curvature)?);
        }
    }
    Ok(out)
}

/// Gap estimates for a unit-disc spec: always `Gap`, plus `GapConvex` when radii are declared.
pub fn gap_catalogue(spec: &DomainSpec, quad: &QuadratureConfig, h: f64) -> Result<Vec<BoundResult>> {
    spec.validate()?;
    if !spec.base.is_unit_disc() {
        return Err(domain("gap bound requires unit-disc base"));
    }
    let area = spec_area(spec, quad)?;
    let rho = inradius(spec, h)?;
    let sup = norm_sup(&spec.map, &spec.base)?;
    let l2 = norm_l2_dev(&spec.map, quad)?;
    let base = GapInputs {
        sup_norm: sup,
        l2_dev: l2,
        rho,
        kovalev_sup: None,
        image_area: area,
    };
    let mut out = vec![bound_gap(base)?];
    if let Some(r) = spec.convex_radii {
        out.push(bound_gap(GapInputs {
            kovalev_sup: Some(kovalev_sup(r.outer, r.inner, r.curvature)),
            ..base
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BaseDomain;
    use crate::map::AnalyticMap;
    use std::f64::consts::{E, LN_2};

    fn j2() -> f64 {
        j01() * j01()
    }

    #[test]
    fn rfk_examples() {
        let area = PI * (E * E - 1.0) / 2.0;
        let b = bound_rfk(area).unwrap();
        assert!((b.value - 2.0 * j2() / (E * E - 1.0)).abs() < 1e-13);
        assert_eq!(format!("{:.3}", b.value), "1.810");
        let b = bound_rfk(PI * 0.5f64.sinh() / 2.0).unwrap();
        assert_eq!(format!("{:.3}", b.value), "22.196");
        assert!((bound_rfk(PI).unwrap().value - j2()).abs() < 1e-14);
        assert!(bound_rfk(0.0).is_err());
        assert!(bound_rfk(-1.0).is_err());
    }

    #[test]
    fn makai_examples() {
        let b = bound_makai((E - 1.0) / 2.0, false).unwrap();
        assert_eq!(format!("{:.3}", b.value), "0.339");
        assert!((b.value - 1.0 / (E - 1.0).powi(2)).abs() < 1e-15);
        assert_eq!(bound_makai(0.125, false).unwrap().value, 16.0);
        let b = bound_makai(1.0 / 3.0, false).unwrap();
        assert!((b.value - 2.25).abs() < 1e-14);
        assert!(bound_makai(0.0, false).is_err());
    }

    #[test]
    fn hersch_is_pi_squared_times_makai() {
        for rho in [0.1, 0.77, 3.0] {
            let m = bound_makai(rho, false).unwrap();
            let h = bound_makai(rho, true).unwrap();
            assert_eq!(h.method, BoundMethod::Hersch);
            assert!((h.value - PI * PI * m.value).abs() <= 1e-15 * h.value);
        }
    }

    #[test]
    fn theorem_a_examples() {
        let d = 0.5 * LN_2;
        let lam = 1.0 + PI * PI / (d * d);
        let b = bound_theorem_a(lam, d.exp()).unwrap();
        assert_eq!(format!("{:.3}", b.value), "41.585");
        assert!((b.value - (PI * PI + d * d) / (d * d * 2.0)).abs() < 1e-12);
        let lam = 1.0 + PI * PI;
        let b = bound_theorem_a(lam, 0.5f64.cosh()).unwrap();
        assert_eq!(format!("{:.3}", b.value), "8.548");
        assert_eq!(bound_theorem_a(7.5, 1.0).unwrap().value, 7.5);
        assert_eq!(bound_theorem_a(7.5, f64::INFINITY).unwrap_err(), Error::InfiniteNorm);
    }

    #[test]
    fn theorem_a_decreasing_in_sup() {
        let v: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|s| bound_theorem_a(3.0, *s).unwrap().value)
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2]);
    }

    #[test]
    fn alpha_interval_identity() {
        for alpha in [3.0, 4.0, 10.0] {
            let r = alpha_to_r(alpha);
            let lo = 2.0 * r / (r + 2.0);
            assert!((lo - alpha / (alpha - 1.0)).abs() < 1e-15);
            let b = bound_alpha_regular(alpha, PI, 1.0).unwrap();
            assert!((b.intermediates["p_lo"] - alpha / (alpha - 1.0)).abs() < 1e-15);
        }
        assert!(bound_alpha_regular(2.0, PI, 1.0).is_err());
    }

    #[test]
    fn alpha_regular_disc_below_exact() {
        let q = QuadratureConfig::default();
        let n = norm_alpha(&AnalyticMap::Identity, &BaseDomain::unit_disc(), 4.0, &q).unwrap();
        let b = bound_alpha_regular(4.0, PI, n.value).unwrap();
        assert!(b.value > 0.0 && b.value <= j2());
    }

    #[test]
    fn kovalev_examples() {
        let b = bound_convex_kovalev(1.0, 1.0, 1.0).unwrap();
        assert!((b.value - j2()).abs() < 1e-14);
        assert!((b.intermediates["sup_bound"] - 1.0).abs() < 1e-15);
        let r = 1.7;
        let b = bound_convex_kovalev(r, r, r).unwrap();
        assert!((b.value - j2() / (r * r)).abs() < 1e-13);
        let b = bound_convex_kovalev(2.0, 1.0, 1.0).unwrap();
        assert!((b.intermediates["difference_quotient"] - 1.0).abs() < 1e-15);
        assert!((b.intermediates["sup_bound"] - E * E).abs() < 1e-13);
        assert!((b.value - j2() * (-4f64).exp()).abs() < 1e-14);
        assert!(bound_convex_kovalev(1.0, 2.0, 1.0).is_err());
        // distinct radii use the logarithmic quotient
        assert!((kovalev_quotient(2.0, 1.0) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn variation_equality_on_scalings() {
        for c in [0.5, 0.9] {
            let b = bound_variation(j2(), c).unwrap();
            let truth = j2() / (c * c) - j2();
            assert!((b.value - truth).abs() <= 1e-13 * truth);
            assert!(!b.is_vacuous());
        }
        let b = bound_variation(j2(), 1.0).unwrap();
        assert_eq!(b.value, 0.0);
        assert!(b.valid);
        assert!(b.preconditions.iter().any(|p| !p.satisfied));
    }

    #[test]
    fn gap_examples() {
        let inputs = GapInputs {
            sup_norm: 1.0,
            l2_dev: 0.0,
            rho: 1.0,
            kovalev_sup: None,
            image_area: PI,
        };
        let b = bound_gap(inputs).unwrap();
        assert_eq!(format!("{:.3}", b.value), "8.899");
        for s in [0.3, 5.0, 1e6] {
            let other = bound_gap(GapInputs {
                sup_norm: s,
                ..inputs
            })
            .unwrap();
            assert_eq!(other.value, b.value);
        }
        let err = bound_gap(GapInputs {
            image_area: PI * 1.01,
            ..inputs
        })
        .unwrap_err();
        assert!(matches!(err, Error::AreaMismatch { .. }));
        let convex = bound_gap(GapInputs {
            kovalev_sup: Some(2.0),
            l2_dev: 0.01,
            ..inputs
        })
        .unwrap();
        assert_eq!(convex.method, BoundMethod::GapConvex);
        assert!(convex.value < b.value);
        assert_eq!(convex.intermediates["sup_used"], 2.0);
    }

    #[test]
    fn best_bound_selection() {
        let d = LN_2;
        let rows = vec![
            bound_makai((d.exp() - 1.0) / 2.0, false).unwrap(),
            bound_rfk(PI * ((2.0 * d).exp() - 1.0) / 2.0).unwrap(),
            bound_theorem_a(1.0 + PI * PI / (d * d), d.exp()).unwrap(),
        ];
        let best = best_bound(&rows).unwrap();
        assert_eq!(best.method, BoundMethod::TheoremA);
        assert_eq!(format!("{:.3}", best.value), "5.386");

        let d = 1.0f64;
        let rows = vec![
            bound_makai((d.exp() - 1.0) / 2.0, false).unwrap(),
            bound_rfk(PI * ((2.0 * d).exp() - 1.0) / 2.0).unwrap(),
            bound_theorem_a(1.0 + PI * PI / (d * d), d.exp()).unwrap(),
        ];
        assert_eq!(best_bound(&rows).unwrap().method, BoundMethod::Rfk);

        let single = vec![bound_makai(0.3, false).unwrap()];
        assert_eq!(best_bound(&single).unwrap(), single[0]);
        assert!(matches!(best_bound(&[]), Err(Error::NoValidBound { .. })));
    }

    #[test]
    fn best_bound_skips_gap_types_and_breaks_ties_by_rank() {
        let gap = bound_gap(GapInputs {
            sup_norm: 1.0,
            l2_dev: 0.0,
            rho: 1.0,
            kovalev_sup: None,
            image_area: PI,
        })
        .unwrap();
        assert!(best_bound(&[gap.clone()]).is_err());
        let rfk = bound_rfk(PI).unwrap();
        let ta = bound_theorem_a(j2(), 1.0).unwrap();
        assert_eq!(rfk.value, ta.value);
        let best = best_bound(&[ta, gap, rfk]).unwrap();
        assert_eq!(best.method, BoundMethod::Rfk);
    }

    #[test]
    fn scaling_covariance() {
        let c = 2.0f64;
        let s = 1.0 / (c * c);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-14 * b.abs();
        assert!(close(bound_rfk(4.0 * 3.3).unwrap().value, s * bound_rfk(3.3).unwrap().value));
        assert!(close(
            bound_makai(c * 0.4, false).unwrap().value,
            s * bound_makai(0.4, false).unwrap().value
        ));
        assert!(close(
            bound_theorem_a(7.0, c * 1.3).unwrap().value,
            s * bound_theorem_a(7.0, 1.3).unwrap().value
        ));
        assert!(close(
            bound_convex_kovalev(c * 2.0, c * 1.2, c * 0.9).unwrap().value,
            s * bound_convex_kovalev(2.0, 1.2, 0.9).unwrap().value
        ));
    }

    #[test]
    fn catalogue_on_identity_disc() {
        let spec = DomainSpec::new(BaseDomain::unit_disc(), AnalyticMap::Identity).with_inradius(1.0);
        let rows = catalogue(&spec, &CatalogueOptions::default()).unwrap();
        let ta = rows.iter().find(|b| b.method == BoundMethod::TheoremA).unwrap();
        assert!((ta.value - j2()).abs() < 1e-13);
        assert!(rows
            .iter()
            .any(|b| matches!(b.method, BoundMethod::AlphaRegular(_))));
        let gaps = gap_catalogue(&spec, &QuadratureConfig::default(), 0.01).unwrap();
        assert_eq!(gaps.len(), 1);
        assert!((gaps[0].value - (j11() * j11() - j2())).abs() < 1e-12);
    }

    #[test]
    fn gap_catalogue_needs_unit_disc() {
        let spec = DomainSpec::new(BaseDomain::rectangle(0.0, 1.0, 0.0, 1.0).unwrap(), AnalyticMap::Identity);
        let err = gap_catalogue(&spec, &QuadratureConfig::default(), 0.01).unwrap_err();
        assert!(err.to_string().contains("gap bound requires unit-disc base"));
    }
}

//! Base domains, domain specs and their exact or rasterized geometric data.

use crate::constants::{j01, j11};
use crate::error::{domain, Result};
use crate::map::{AnalyticMap, Complex};
use crate::norms::{norm_alpha, QuadratureConfig};
use crate::oracle::raster;
use std::f64::consts::PI;

/// Canonical parameter domain of a conformal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseDomain {
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
    Disc { center: Complex, radius: f64 },
}

impl BaseDomain {
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let r = BaseDomain::Rectangle { x0, x1, y0, y1 };
        r.validate()?;
        Ok(r)
    }

    pub fn disc(center: Complex, radius: f64) -> Result<Self> {
        let d = BaseDomain::Disc { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn unit_disc() -> Self {
        BaseDomain::Disc {
            center: Complex::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite()) {
                    return Err(domain("rectangle corners must be finite"));
                }
                if !(x0 < x1 && y0 < y1) {
                    return Err(domain(format!(
                        "rectangle needs x0 < x1 and y0 < y1, got ({x0}, {x1}) x ({y0}, {y1})"
                    )));
                }
            }
            BaseDomain::Disc { center, radius } => {
                if !center.is_finite() || !(radius > 0.0) || !radius.is_finite() {
                    return Err(domain(format!("disc needs a finite radius > 0, got {radius}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_unit_disc(&self) -> bool {
        matches!(*self, BaseDomain::Disc { center, radius } if center.norm() == 0.0 && radius == 1.0)
    }

    pub fn contains(&self, z: Complex) -> bool {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                z.re > x0 && z.re < x1 && z.im > y0 && z.im < y1
            }
            BaseDomain::Disc { center, radius } => (z - center).norm() < radius,
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
            BaseDomain::Disc { radius, .. } => PI * radius * radius,
        }
    }

    /// Length of the boundary curve.
    pub fn perimeter(&self) -> f64 {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => 2.0 * ((x1 - x0) + (y1 - y0)),
            BaseDomain::Disc { radius, .. } => 2.0 * PI * radius,
        }
    }

    /// Point at arclength fraction `s ∈ [0, 1)` along the boundary.
    pub fn boundary_point(&self, s: f64) -> Complex {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                let (w, h) = (x1 - x0, y1 - y0);
                let mut t = s.rem_euclid(1.0) * 2.0 * (w + h);
                if t < w {
                    return Complex::new(x0 + t, y0);
                }
                t -= w;
                if t < h {
                    return Complex::new(x1, y0 + t);
                }
                t -= h;
                if t < w {
                    return Complex::new(x1 - t, y1);
                }
                t -= w;
                Complex::new(x0, y1 - t.min(h))
            }
            BaseDomain::Disc { center, radius } => {
                center + Complex::from_polar(radius, 2.0 * PI * s)
            }
        }
    }

    /// Unit tangent at `boundary_point(s)`, counterclockwise (domain on the left).
    pub fn boundary_tangent(&self, s: f64) -> Complex {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                let (w, h) = (x1 - x0, y1 - y0);
                let t = s.rem_euclid(1.0) * 2.0 * (w + h);
                if t < w {
                    Complex::new(1.0, 0.0)
                } else if t < w + h {
                    Complex::new(0.0, 1.0)
                } else if t < 2.0 * w + h {
                    Complex::new(-1.0, 0.0)
                } else {
                    Complex::new(0.0, -1.0)
                }
            }
            BaseDomain::Disc { .. } => Complex::new(0.0, 1.0) * Complex::from_polar(1.0, 2.0 * PI * s),
        }
    }

    /// Geometric center (used to seed interior-point searches).
    pub fn center(&self) -> Complex {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => {
                Complex::new(0.5 * (x0 + x1), 0.5 * (y0 + y1))
            }
            BaseDomain::Disc { center, .. } => center,
        }
    }

    /// Same shape with every length multiplied by `c` about the origin.
    pub fn scaled(&self, c: f64) -> Self {
        match *self {
            BaseDomain::Rectangle { x0, x1, y0, y1 } => BaseDomain::Rectangle {
                x0: c * x0,
                x1: c * x1,
                y0: c * y0,
                y1: c * y1,
            },
            BaseDomain::Disc { center, radius } => BaseDomain::Disc {
                center: center * c,
                radius: radius * c,
            },
        }
    }
}

/// Outer, inner and curvature radii of a convex image domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexRadii {
    pub outer: f64,
    pub inner: f64,
    pub curvature: f64,
}

impl ConvexRadii {
    pub fn new(outer: f64, inner: f64, curvature: f64) -> Result<Self> {
        let r = ConvexRadii {
            outer,
            inner,
            curvature,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let ConvexRadii {
            outer,
            inner,
            curvature,
        } = *self;
        if !(inner > 0.0 && curvature > 0.0 && outer.is_finite()) {
            return Err(domain("convexity radii must be positive and finite"));
        }
        if inner > outer || curvature > outer {
            return Err(domain(format!(
                "convexity radii need R_I <= R_O and R_C <= R_O, got R_O={outer}, R_I={inner}, R_C={curvature}"
            )));
        }
        Ok(())
    }
}

/// A base domain together with the conformal map onto the image domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub base: BaseDomain,
    pub map: AnalyticMap,
    pub inradius_override: Option<f64>,
    pub convex_radii: Option<ConvexRadii>,
    pub area_override: Option<f64>,
}

impl DomainSpec {
    pub fn new(base: BaseDomain, map: AnalyticMap) -> Self {
        DomainSpec {
            base,
            map,
            inradius_override: None,
            convex_radii: None,
            area_override: None,
        }
    }

    pub fn with_inradius(mut self, rho: f64) -> Self {
        self.inradius_override = Some(rho);
        self
    }

    pub fn with_convex_radii(mut self, radii: ConvexRadii) -> Self {
        self.convex_radii = Some(radii);
        self
    }

    pub fn with_area(mut self, area: f64) -> Self {
        self.area_override = Some(area);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        self.map.validate()?;
        if let Some(rho) = self.inradius_override {
            if !(rho > 0.0 && rho.is_finite()) {
                return Err(domain(format!("inradius must be positive, got {rho}")));
            }
        }
        if let Some(area) = self.area_override {
            if !(area > 0.0 && area.is_finite()) {
                return Err(domain(format!("area must be positive, got {area}")));
            }
        }
        if let Some(r) = &self.convex_radii {
            r.validate()?;
        }
        Ok(())
    }
}

pub fn area(base: &BaseDomain) -> f64 {
    base.area()
}

/// `∬_base |φ′|²`, the image area for an injective map.
pub fn image_area(spec: &DomainSpec, quad: &QuadratureConfig) -> Result<f64> {
    let report = norm_alpha(&spec.map, &spec.base, 2.0, quad)?;
    Ok(report.value * report.value)
}

/// First Dirichlet eigenvalue of a rectangle or disc in closed form.
pub fn exact_lambda1(base: &BaseDomain) -> f64 {
    match *base {
        BaseDomain::Rectangle { x0, x1, y0, y1 } => {
            let (a, b) = (x1 - x0, y1 - y0);
            PI * PI / (a * a) + PI * PI / (b * b)
        }
        BaseDomain::Disc { radius, .. } => {
            let j = j01();
            j * j / (radius * radius)
        }
    }
}

/// Second Dirichlet eigenvalue of the unit disc, `j₁,₁²`.
pub fn exact_lambda2_disc() -> f64 {
    let j = j11();
    j * j
}

/// Inradius of the image domain: the override when present, otherwise the
/// maximum of the raster distance transform at pitch `h`.
pub fn inradius(spec: &DomainSpec, h: f64) -> Result<f64> {
    if let Some(rho) = spec.inradius_override {
        return Ok(rho);
    }
    if !(h > 0.0) {
        return Err(domain(format!("raster pitch must be positive, got {h}")));
    }
    raster::raster_inradius(spec, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, LN_2};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn area_examples() {
        let r = BaseDomain::rectangle(0.0, LN_2, 0.0, PI).unwrap();
        assert!((area(&r) - PI * LN_2).abs() < 1e-15);
        assert!((area(&BaseDomain::unit_disc()) - PI).abs() < 1e-15);
        let d = 0.3;
        let r = BaseDomain::rectangle(-FRAC_PI_2, FRAC_PI_2, -d, d).unwrap();
        assert!((area(&r) - 2.0 * PI * d).abs() < 1e-15);
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(BaseDomain::rectangle(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(BaseDomain::rectangle(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(BaseDomain::disc(c(0.0, 0.0), 0.0).is_err());
        assert!(ConvexRadii::new(1.0, 2.0, 1.0).is_err());
        assert!(ConvexRadii::new(2.0, 1.0, 3.0).is_err());
        assert!(ConvexRadii::new(2.0, 0.0, 1.0).is_err());
        assert!(ConvexRadii::new(2.0, 1.0, 1.0).is_ok());
        let spec = DomainSpec::new(BaseDomain::unit_disc(), AnalyticMap::Identity).with_inradius(-1.0);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn lambda1_examples() {
        let sq = BaseDomain::rectangle(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!((exact_lambda1(&sq) - 2.0 * PI * PI).abs() < 1e-13);
        assert_eq!(format!("{:.4}", exact_lambda1(&sq)), "19.7392");
        let q = BaseDomain::rectangle(0.0, LN_2, 0.0, PI).unwrap();
        assert!((exact_lambda1(&q) - (1.0 + PI * PI / (LN_2 * LN_2))).abs() < 1e-13);
        assert_eq!(format!("{:.4}", exact_lambda1(&BaseDomain::unit_disc())), "5.7832");
    }

    #[test]
    fn lambda1_scaling() {
        for base in [
            BaseDomain::rectangle(0.2, 1.3, -0.5, 2.0).unwrap(),
            BaseDomain::disc(c(0.3, 0.1), 0.7).unwrap(),
        ] {
            for s in [0.5, 2.0, 3.7] {
                let lhs = exact_lambda1(&base.scaled(s));
                assert!((lhs - exact_lambda1(&base) / (s * s)).abs() <= 1e-13 * lhs);
            }
        }
    }

    #[test]
    fn lambda2_disc() {
        let l2 = exact_lambda2_disc();
        assert!((l2 - 3.831_705_970_207_512f64.powi(2)).abs() < 1e-11);
        assert!(l2 > exact_lambda1(&BaseDomain::unit_disc()));
        let gap = l2 - exact_lambda1(&BaseDomain::unit_disc());
        assert_eq!(format!("{gap:.3}"), "8.899");
    }

    #[test]
    fn image_area_closed_forms() {
        let quad = QuadratureConfig::default();
        let id = DomainSpec::new(BaseDomain::unit_disc(), AnalyticMap::Identity);
        assert!((image_area(&id, &quad).unwrap() - PI).abs() <= 1e-12 * PI);

        let d = 0.8;
        let exp = DomainSpec::new(BaseDomain::rectangle(0.0, d, 0.0, PI).unwrap(), AnalyticMap::Exp);
        let want = PI * ((2.0 * d).exp() - 1.0) / 2.0;
        assert!((image_area(&exp, &quad).unwrap() - want).abs() <= 1e-12 * want);

        let sin = DomainSpec::new(
            BaseDomain::rectangle(-FRAC_PI_2, FRAC_PI_2, -d, d).unwrap(),
            AnalyticMap::Sin,
        );
        let want = PI * d.sinh() * d.cosh();
        assert!((image_area(&sin, &quad).unwrap() - want).abs() <= 1e-12 * want);

        let rect = BaseDomain::rectangle(-1.0, 2.0, 0.5, 1.5).unwrap();
        let id = DomainSpec::new(rect, AnalyticMap::Identity);
        assert!((image_area(&id, &quad).unwrap() - rect.area()).abs() <= 1e-12 * rect.area());
    }

    #[test]
    fn inradius_override_path() {
        let d = 1.0f64;
        let spec = DomainSpec::new(BaseDomain::rectangle(0.0, d, 0.0, PI).unwrap(), AnalyticMap::Exp)
            .with_inradius((d.exp() - 1.0) / 2.0);
        let rho = inradius(&spec, 0.01).unwrap();
        assert!((rho - 0.859).abs() < 1e-3);
        let spec = DomainSpec::new(
            BaseDomain::rectangle(-FRAC_PI_2, FRAC_PI_2, -0.5, 0.5).unwrap(),
            AnalyticMap::Sin,
        )
        .with_inradius(0.5);
        assert_eq!(inradius(&spec, 0.01).unwrap(), 0.5);
    }

    #[test]
    fn inradius_raster_disc() {
        let spec = DomainSpec::new(BaseDomain::unit_disc(), AnalyticMap::Identity);
        let rho = inradius(&spec, 0.01).unwrap();
        assert!((rho - 1.0).abs() <= 0.02, "rho = {rho}");
    }
}

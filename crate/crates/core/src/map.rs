//! Holomorphic maps with exact derivatives.
//!
//! A map is a small expression tree over a closed family of elementary
//! builtins. Evaluation walks the tree once and carries the value and the
//! complex derivative together, so compositions obey the chain rule exactly
//! (up to round-off) and no numerical differentiation is ever involved.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;

pub type Complex = Complex64;

/// Below this modulus a Möbius denominator is treated as a pole.
pub const POLE_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticMap {
    Identity,
    /// `z ↦ a z + b`
    Affine { a: Complex, b: Complex },
    Exp,
    Sin,
    /// `z ↦ z^n`, `n ≥ 1`
    Power(u32),
    /// `z ↦ (a z + b) / (c z + d)` with `ad − bc ≠ 0`
    Mobius {
        a: Complex,
        b: Complex,
        c: Complex,
        d: Complex,
    },
    /// `outer ∘ inner`
    Compose(Box<AnalyticMap>, Box<AnalyticMap>),
}

impl AnalyticMap {
    pub fn affine(a: Complex, b: Complex) -> Self {
        AnalyticMap::Affine { a, b }
    }

    /// Real scaling `z ↦ c z`.
    pub fn scaling(c: f64) -> Self {
        AnalyticMap::Affine {
            a: Complex::new(c, 0.0),
            b: Complex::new(0.0, 0.0),
        }
    }

    pub fn power(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("power map needs an exponent n >= 1"));
        }
        Ok(AnalyticMap::Power(n))
    }

    pub fn mobius(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(domain("Möbius map needs ad - bc != 0"));
        }
        Ok(AnalyticMap::Mobius { a, b, c, d })
    }

    /// Checks the structural invariants of every node in the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            AnalyticMap::Power(0) => Err(domain("power map needs an exponent n >= 1")),
            AnalyticMap::Mobius { a, b, c, d } => Self::mobius(*a, *b, *c, *d).map(|_| ()),
            AnalyticMap::Affine { a, b } if !(a.is_finite() && b.is_finite()) => {
                Err(domain("affine coefficients must be finite"))
            }
            AnalyticMap::Compose(outer, inner) => {
                outer.validate()?;
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// Number of nodes along the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            AnalyticMap::Compose(outer, inner) => 1 + outer.depth().max(inner.depth()),
            _ => 1,
        }
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        self.eval_with_deriv(z).map(|(w, _)| w)
    }

    pub fn deriv(&self, z: Complex) -> Result<Complex> {
        self.eval_with_deriv(z).map(|(_, dw)| dw)
    }

    /// Returns `(φ(z), φ′(z))`.
    pub fn eval_with_deriv(&self, z: Complex) -> Result<(Complex, Complex)> {
        if !z.is_finite() {
            return Err(domain(format!("non-finite evaluation point {z}")));
        }
        let (w, dw) = self.walk(z)?;
        if !(w.is_finite() && dw.is_finite()) {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
        Ok((w, dw))
    }

    fn walk(&self, z: Complex) -> Result<(Complex, Complex)> {
        let one = Complex::new(1.0, 0.0);
        Ok(match self {
            AnalyticMap::Identity => (z, one),
            AnalyticMap::Affine { a, b } => (a * z + b, *a),
            AnalyticMap::Exp => {
                let e = z.exp();
                (e, e)
            }
            AnalyticMap::Sin => (z.sin(), z.cos()),
            AnalyticMap::Power(n) => match *n {
                0 => return Err(domain("power map needs an exponent n >= 1")),
                1 => (z, one),
                n => {
                    let zn1 = z.powu(n - 1);
                    (zn1 * z, zn1 * n as f64)
                }
            },
            AnalyticMap::Mobius { a, b, c, d } => {
                let den = c * z + d;
                if den.norm() < POLE_THRESHOLD {
                    return Err(Error::Pole { re: z.re, im: z.im });
                }
                let det = a * d - b * c;
                ((a * z + b) / den, det / (den * den))
            }
            AnalyticMap::Compose(outer, inner) => {
                let (w, dinner) = inner.walk(z)?;
                if !w.is_finite() {
                    return Err(Error::Pole { re: z.re, im: z.im });
                }
                let (v, douter) = outer.walk(w)?;
                (v, douter * dinner)
            }
        })
    }

    /// `|φ′(z)|`
    pub fn jacobian_sqrt(&self, z: Complex) -> Result<f64> {
        self.deriv(z).map(|d| d.norm())
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: AnalyticMap, inner: AnalyticMap) -> AnalyticMap {
    AnalyticMap::Compose(Box::new(outer), Box::new(inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2, LN_2, PI};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn halton(i: usize, base: usize) -> f64 {
        let (mut f, mut r, mut i) = (1.0, 0.0, i);
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }

    fn sample_rect(n: usize, x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Complex> {
        (1..=n)
            .map(|i| c(x0 + (x1 - x0) * halton(i, 2), y0 + (y1 - y0) * halton(i, 3)))
            .collect()
    }

    fn fd_deriv(m: &AnalyticMap, z: Complex) -> Complex {
        let step = 1e-5;
        (m.eval(z + step).unwrap() - m.eval(z - step).unwrap()) / (2.0 * step)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(AnalyticMap::Identity.eval(c(1.0, 2.0)).unwrap(), c(1.0, 2.0));
        let w = AnalyticMap::Exp.eval(c(LN_2, 0.0)).unwrap();
        assert!((w - c(2.0, 0.0)).norm() < 1e-15);
        let w = AnalyticMap::Sin.eval(c(FRAC_PI_2, 0.0)).unwrap();
        assert!((w - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn deriv_examples() {
        let d = AnalyticMap::Exp.deriv(c(1.0, 0.0)).unwrap();
        assert!((d.norm_sqr() - E * E).abs() < 1e-14);
        let d = AnalyticMap::Sin.deriv(c(0.0, 0.0)).unwrap();
        assert!((d.norm_sqr() - 1.0).abs() < 1e-15);
        let aff = AnalyticMap::affine(c(2.0, -1.0), c(3.0, 0.5));
        for z in sample_rect(5, -2.0, 2.0, -2.0, 2.0) {
            assert_eq!(aff.deriv(z).unwrap(), c(2.0, -1.0));
        }
    }

    #[test]
    fn modulus_formulas_for_exp_and_sin() {
        for z in sample_rect(50, -FRAC_PI_2, FRAC_PI_2, -1.0, 1.0) {
            let e = AnalyticMap::Exp.deriv(z).unwrap().norm_sqr();
            assert!((e - (2.0 * z.re).exp()).abs() <= 1e-13 * e);
            let s = AnalyticMap::Sin.deriv(z).unwrap().norm_sqr();
            let expect = ((2.0 * z.re).cos() + (2.0 * z.im).cosh()) / 2.0;
            assert!((s - expect).abs() <= 1e-13);
        }
    }

    #[test]
    fn compose_examples() {
        let m = compose(AnalyticMap::Identity, AnalyticMap::Exp);
        for z in sample_rect(10, 0.0, 1.0, 0.0, PI) {
            assert_eq!(m.eval(z).unwrap(), AnalyticMap::Exp.eval(z).unwrap());
            assert_eq!(m.deriv(z).unwrap(), AnalyticMap::Exp.deriv(z).unwrap());
        }
        let m = compose(
            AnalyticMap::scaling(2.0),
            AnalyticMap::affine(c(1.0, 0.0), c(1.0, 0.0)),
        );
        assert_eq!(m.eval(c(0.0, 0.0)).unwrap(), c(2.0, 0.0));
        let m = compose(AnalyticMap::Exp, AnalyticMap::scaling(2.0));
        assert!((m.deriv(c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn builtin_derivatives_match_central_differences() {
        let mob = AnalyticMap::mobius(c(1.0, 0.5), c(0.2, 0.0), c(0.3, -0.1), c(2.0, 0.0)).unwrap();
        let cases: Vec<(AnalyticMap, Vec<Complex>)> = vec![
            (AnalyticMap::Exp, sample_rect(100, 0.0, 1.0, 0.0, PI)),
            (AnalyticMap::Sin, sample_rect(100, -FRAC_PI_2, FRAC_PI_2, -0.5, 0.5)),
            (AnalyticMap::Power(3), sample_rect(100, -0.7, 0.7, -0.7, 0.7)),
            (mob, sample_rect(100, -0.7, 0.7, -0.7, 0.7)),
            (
                compose(AnalyticMap::Sin, AnalyticMap::scaling(0.5)),
                sample_rect(100, -1.0, 1.0, -1.0, 1.0),
            ),
        ];
        for (m, pts) in cases {
            for z in pts {
                let exact = m.deriv(z).unwrap();
                let fd = fd_deriv(&m, z);
                // Sin has zeros of φ′ at ±π/2, so compare against max(|φ′|, 1).
                let scale = exact.norm().max(1.0);
                assert!((exact - fd).norm() <= 1e-6 * scale, "{m:?} at {z}: {exact} vs {fd}");
            }
        }
    }

    #[test]
    fn chain_rule_modulus() {
        let f = AnalyticMap::Sin;
        let g = AnalyticMap::mobius(c(1.0, 0.0), c(0.1, 0.1), c(0.2, 0.0), c(1.0, 0.0)).unwrap();
        let fg = compose(f.clone(), g.clone());
        for z in sample_rect(40, -0.8, 0.8, -0.8, 0.8) {
            let lhs = fg.deriv(z).unwrap().norm();
            let rhs = f.deriv(g.eval(z).unwrap()).unwrap().norm() * g.deriv(z).unwrap().norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
    }

    #[test]
    fn mobius_pole_is_reported() {
        let m = AnalyticMap::mobius(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert!(matches!(m.eval(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(m.eval(c(0.5, 0.0)).is_ok());
    }

    #[test]
    fn overflow_is_a_pole_not_infinity() {
        assert!(matches!(AnalyticMap::Exp.eval(c(800.0, 0.0)), Err(Error::Pole { .. })));
        assert!(AnalyticMap::Exp.eval(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn degenerate_constructors_rejected() {
        assert!(AnalyticMap::mobius(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
        assert!(AnalyticMap::power(0).is_err());
        assert!(AnalyticMap::Power(0).validate().is_err());
        let nested = compose(AnalyticMap::Exp, compose(AnalyticMap::Sin, AnalyticMap::Identity));
        assert!(nested.validate().is_ok());
        assert_eq!(nested.depth(), 3);
    }
}

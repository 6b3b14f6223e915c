//! JSON domain-spec documents.
//!
//! ```json
//! {
//!   "base": {"type": "rectangle", "x0": 0, "x1": 1, "y0": 0, "y1": 3.141592653589793},
//!   "map": {"type": "compose", "maps": [{"type": "exp"}, {"type": "affine", "a": 1, "b": [0, 0.5]}]},
//!   "inradius": 0.859,
//!   "convex_radii": {"ro": 1, "ri": 1, "rc": 1},
//!   "area": 3.14
//! }
//! ```
//!
//! Complex parameters are either a number (real) or an `[re, im]` pair.
//! `compose` applies its maps right to left: `[f, g, h]` is `f ∘ g ∘ h`.

use crate::error::{Error, Result};
use crate::geometry::{BaseDomain, ConvexRadii, DomainSpec};
use crate::map::{AnalyticMap, Complex};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexDoc {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexDoc> for Complex {
    fn from(c: ComplexDoc) -> Self {
        match c {
            ComplexDoc::Real(re) => Complex::new(re, 0.0),
            ComplexDoc::Pair([re, im]) => Complex::new(re, im),
        }
    }
}

impl From<Complex> for ComplexDoc {
    fn from(c: Complex) -> Self {
        if c.im == 0.0 {
            ComplexDoc::Real(c.re)
        } else {
            ComplexDoc::Pair([c.re, c.im])
        }
    }
}

fn zero() -> ComplexDoc {
    ComplexDoc::Real(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BaseDoc {
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
    Disc {
        #[serde(default = "zero")]
        center: ComplexDoc,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapDoc {
    Identity,
    Affine {
        a: ComplexDoc,
        #[serde(default = "zero")]
        b: ComplexDoc,
    },
    Exp,
    Sin,
    Power { n: u32 },
    Mobius {
        a: ComplexDoc,
        b: ComplexDoc,
        c: ComplexDoc,
        d: ComplexDoc,
    },
    Compose { maps: Vec<MapDoc> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiiDoc {
    pub ro: f64,
    pub ri: f64,
    pub rc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub base: BaseDoc,
    pub map: MapDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inradius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convex_radii: Option<RadiiDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
}

impl MapDoc {
    pub fn to_map(&self) -> Result<AnalyticMap> {
        Ok(match self {
            MapDoc::Identity => AnalyticMap::Identity,
            MapDoc::Affine { a, b } => AnalyticMap::affine((*a).into(), (*b).into()),
            MapDoc::Exp => AnalyticMap::Exp,
            MapDoc::Sin => AnalyticMap::Sin,
            MapDoc::Power { n } => AnalyticMap::power(*n)?,
            MapDoc::Mobius { a, b, c, d } => {
                AnalyticMap::mobius((*a).into(), (*b).into(), (*c).into(), (*d).into())?
            }
            MapDoc::Compose { maps } => {
                let mut it = maps.iter().rev();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Spec("compose needs at least one map".into()))?
                    .to_map()?;
                it.try_fold(first, |inner, outer| {
                    Ok::<_, Error>(crate::map::compose(outer.to_map()?, inner))
                })?
            }
        })
    }

    pub fn from_map(map: &AnalyticMap) -> Self {
        match map {
            AnalyticMap::Identity => MapDoc::Identity,
            AnalyticMap::Affine { a, b } => MapDoc::Affine {
                a: (*a).into(),
                b: (*b).into(),
            },
            AnalyticMap::Exp => MapDoc::Exp,
            AnalyticMap::Sin => MapDoc::Sin,
            AnalyticMap::Power(n) => MapDoc::Power { n: *n },
            AnalyticMap::Mobius { a, b, c, d } => MapDoc::Mobius {
                a: (*a).into(),
                b: (*b).into(),
                c: (*c).into(),
                d: (*d).into(),
            },
            AnalyticMap::Compose(..) => {
                let mut maps = Vec::new();
                flatten(map, &mut maps);
                MapDoc::Compose { maps }
            }
        }
    }
}

fn flatten(map: &AnalyticMap, out: &mut Vec<MapDoc>) {
    match map {
        AnalyticMap::Compose(outer, inner) => {
            flatten(outer, out);
            flatten(inner, out);
        }
        leaf => out.push(MapDoc::from_map(leaf)),
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<DomainSpec> {
        let base = match self.base {
            BaseDoc::Rectangle { x0, x1, y0, y1 } => BaseDomain::rectangle(x0, x1, y0, y1)?,
            BaseDoc::Disc { center, radius } => BaseDomain::disc(center.into(), radius)?,
        };
        let spec = DomainSpec {
            base,
            map: self.map.to_map()?,
            inradius_override: self.inradius,
            convex_radii: self
                .convex_radii
                .map(|r| ConvexRadii::new(r.ro, r.ri, r.rc))
                .transpose()?,
            area_override: self.area,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_spec(spec: &DomainSpec) -> Self {
        SpecDoc {
            base: match spec.base {
                BaseDomain::Rectangle { x0, x1, y0, y1 } => BaseDoc::Rectangle { x0, x1, y0, y1 },
                BaseDomain::Disc { center, radius } => BaseDoc::Disc {
                    center: center.into(),
                    radius,
                },
            },
            map: MapDoc::from_map(&spec.map),
            inradius: spec.inradius_override,
            convex_radii: spec.convex_radii.map(|r| RadiiDoc {
                ro: r.outer,
                ri: r.inner,
                rc: r.curvature,
            }),
            area: spec.area_override,
        }
    }
}

pub fn parse_spec(json: &str) -> Result<DomainSpec> {
    let doc: SpecDoc = serde_json::from_str(json).map_err(|e| Error::Spec(e.to_string()))?;
    doc.to_spec()
}

pub fn read_spec(path: &Path) -> Result<DomainSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Spec(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

pub fn spec_to_json(spec: &DomainSpec) -> serde_json::Value {
    serde_json::to_value(SpecDoc::from_spec(spec)).expect("spec documents always serialize")
}

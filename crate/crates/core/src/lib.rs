//! Lower bounds for the first Dirichlet eigenvalue of the Laplacian on
//! planar domains `Ω = φ(Ω′)`, where `Ω′` is a rectangle or a disc and `φ`
//! is a conformal map given as an expression tree.
//!
//! ```
//! use dirichlet_bounds::{bounds, families};
//! let col = families::table_column(families::Example::Exp, 2f64.ln(), &Default::default()).unwrap();
//! assert!((col.estimate.value - 5.385).abs() < 5e-3);
//! let best = bounds::best_bound(&[col.makai, col.rfk, col.estimate]).unwrap();
//! assert_eq!(best.method, bounds::BoundMethod::TheoremA);
//! ```

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constants;
pub mod error;
pub mod families;
pub mod geometry;
pub mod map;
pub mod norms;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod spec_file;
pub mod special;

pub use bounds::{best_bound, catalogue, BoundMethod, BoundResult, CatalogueOptions};
pub use error::{Error, Result};
pub use geometry::{BaseDomain, ConvexRadii, DomainSpec};
pub use map::{AnalyticMap, Complex};
pub use norms::QuadratureConfig;

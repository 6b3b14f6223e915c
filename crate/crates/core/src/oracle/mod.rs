//! Independent numerical reference: finite-difference eigenvalues on a
//! raster of the image domain, and a Dirichlet-energy check of the map.

pub mod eigen;
pub mod energy;
pub mod raster;
pub mod validate;

pub use eigen::{fd_eigenvalues, EigenResult};
pub use energy::{energy_isometry_check, energy_isometry_report, EnergyCheck};
pub use raster::{rasterize, RasterGrid};
pub use validate::{validate, validate_with, BoundCheck, ValidationOptions, ValidationReport};

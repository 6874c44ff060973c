pub mod algebra;
pub mod chevalley;
pub mod eigenspace;
pub mod error;
pub mod gt_module;
pub mod roots;
pub mod verify;
pub mod verma;
pub mod realization;
pub mod weyl;

pub use algebra::{Rational, RatMatrix, MultiPoly, SeriesId, SeriesTable};
pub use error::{Error, Result};

pub mod error;
pub mod hermite;
pub mod ideal;
pub mod jet;
pub mod json;
pub mod linalg;
pub mod path;
pub mod poly;
pub mod quadrature;
pub mod resolution;
pub mod scalar;
pub mod simplex;
pub mod task;
pub mod verify;

pub use error::{Error, Result};

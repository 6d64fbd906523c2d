//! Exact engine for braided covector spaces, their inhomogeneous quantum group
//! actions and the Gaussian-weighted integration functional.

pub mod braided_space;
pub mod cache;
pub mod error;
pub mod integration;
pub mod linalg;
pub mod models;
pub mod operators;
pub mod report;
pub mod rmatrix;
pub mod scalars;
pub mod star_metric;
pub mod weight;

pub use error::{Error, Result};
pub use linalg::Mat;
pub use models::{build_model, Model, ModelSpec};
pub use rmatrix::RMatrix;
pub use scalars::QScalar;

pub mod classify;
pub mod cli;
pub mod config;
pub mod dataset;
pub mod dominance;
pub mod error;
pub mod lp;
pub mod models;

pub use config::ToleranceConfig;
pub use dataset::{Dataset, ReducedDataset};
pub use dominance::IoPoint;
pub use error::{DeaError, Result};

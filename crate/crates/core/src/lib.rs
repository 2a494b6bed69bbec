pub mod baxter;
pub mod cli;
pub mod error;
pub mod limits;
pub mod qcore;
pub mod noumi;
pub mod report;
pub mod symfunc;
pub mod whittaker;

pub use error::{Error, Result};

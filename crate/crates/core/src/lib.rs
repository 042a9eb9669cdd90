pub mod algebra;
pub mod cli;
pub mod derham;
pub mod error;
pub mod homotopy;
pub mod mapspace;
pub mod matrix;
pub mod par;
pub mod pi0;
pub mod poly;
pub mod simplicial;

pub use error::{Error, Result};

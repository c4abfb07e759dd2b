pub mod characters;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod hyperbolic;
pub mod lseries;
pub mod maassform;
pub mod quad;
pub mod quotient;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};

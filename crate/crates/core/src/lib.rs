//! Generalized Maxwell body rheologies and Love numbers of the homogeneous,
//! incompressible, self-gravitating sphere.

pub mod error;
pub mod mp;
pub mod specfun;

pub use error::{Error, Result};
pub mod exec;
pub mod love;
pub mod poly;
pub mod postwidder;
pub mod powerlaw;
pub mod rheology;
pub mod roots;

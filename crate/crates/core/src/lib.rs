pub mod abduction;
pub mod cancel;
pub mod error;
pub mod reasoner;
pub mod relevance;
pub mod service;
pub mod syntax;
pub mod tableau;

pub use cancel::CancelToken;
pub use error::{Error, Result};

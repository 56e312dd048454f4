//! Recovers requirement-to-code trace links from Java sources and plain-text
//! requirements. Class and requirement documents are compared with latent
//! semantic indexing; the thresholded similarities form a formal context
//! whose AOC-poset groups requirements with the classes they resemble.

pub mod docs;
pub mod error;
pub mod eval;
pub mod fca;
pub mod java;
pub mod lsi;
pub mod model;
pub mod pipeline;
pub mod text;
pub mod trace;

pub use error::{Error, Result};

//! Exact integer Dold-Kan and Dwyer-Kan correspondences.

pub mod doldkan;
pub mod dwyerkan;
pub mod error;
pub mod index_cat;
pub mod json;
pub mod linalg;
pub mod objects;

pub use error::{Error, Result};

//! Garside calculus for left-cancellative monoids and categories.
//!
//! The crate builds structures from presentations or germs, computes greedy
//! and Δ-normal forms, decides the word and conjugacy problems, and computes
//! lcms and gcds through subword reversing.

pub mod bounded;
pub mod catalog;
pub mod category;
pub mod conjugacy;
pub mod error;
pub mod garside;
pub mod germ;
pub mod reversing;
pub mod word;

pub use category::{CategoryContext, Limits};
pub use error::{Error, Result};
pub use word::{GenId, Generator, ObjectId, Presentation, Sign, SignedWord, Word};

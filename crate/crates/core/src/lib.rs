//! Face-only formulas for compositions of Eilenberg–Zilber operators, higher
//! diagonal approximations, and Steenrod operations on finite simplicial
//! complexes over `Z_p`.

pub mod chain;
pub mod contraction;
pub mod error;
pub mod ez;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod linalg;
pub mod simplex;
pub mod simplifier;
pub mod steenrod;
pub mod word;

pub use error::{Error, Result};
pub use field::{Coefficient, Prime};

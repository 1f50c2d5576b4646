//! Face-only formulas for compositions of Eilenberg–Zilber operators.
//!
//! An [`IntervalTerm`] stands for a sum over all partitions of `[0, m+1)` into
//! consecutive intervals; each tensor factor is a coordinate of the input
//! with every vertex outside its chosen intervals deleted. Composing such a
//! term with a twist and an `ESA_(n,ℓ)` operator yields again a single term
//! (or zero), which is how the higher diagonals are generated without ever
//! expanding degeneracy operators.

mod cache;
mod eval;
mod generate;
mod sign;
mod term;

pub use cache::FormulaCache;
pub use eval::{partition_count, Partitions};
pub use generate::{
    admissible_sequences, compose_sequence, degeneracy_reason, gamma_twists, generate_dnr,
    is_all_degenerate, seed_awn, simplify_step, twist, DegeneracyReason,
};
pub use sign::{SignExpr, MAX_SLOT};
pub use term::{Factor, IntervalFormula, IntervalTerm, Step};

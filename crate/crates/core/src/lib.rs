//! A calculus of partial orders built from ordinals, ω and ω*, a symbolic
//! uncountable regular cardinal κ (with κ^{<κ} = κ), dense leaves,
//! lexicographic sums, inversions and ω-limits.
//!
//! The crate decides scatteredness, density, well-foundedness, the finite
//! antichain condition and hierarchy membership for such terms by structural
//! recursion, and backs those answers with brute-force oracles on explicit
//! finite posets and on sampled finite restrictions.

pub mod attrs;
pub mod card;
pub mod catalog;
pub mod check;
pub mod condense;
pub mod config;
pub mod densegen;
pub mod error;
pub mod finposet;
pub mod ordinal;
pub mod parse;
pub mod report;
pub mod sampler;
pub mod term;

pub use attrs::{
    attrs, classify_kappa_ac, hierarchy_info, rho_surrogate, AttrReport, HierInfo, KappaAcClass,
};
pub use card::CardClass;
pub use error::{Error, Result};
pub use finposet::FinPoset;
pub use ordinal::CnfOrdinal;
pub use parse::parse;
pub use sampler::Address;
pub use term::OrderTerm;

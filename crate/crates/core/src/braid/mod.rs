//! Exact braid monodromy of a deconed line arrangement.
//!
//! After one line is sent to infinity the remaining lines are graphs
//! `y = a x + b`, so along any straight segment of the base every strand
//! moves affinely and each crossing of two projected strands is the root of a
//! linear equation over the field.

mod decone;
mod monodromy;
mod word;

pub use decone::{decone, decone_with, AffineArrangement, AffineLine, AffinePoint};
pub use monodromy::{braid_monodromy, braid_monodromy_with, BraidOptions, MonodromyData, MonodromyEvent};
pub use word::{BraidWord, FreeWord};

#![doc = include_str!("../../../book/src/introduction.md")]
#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod braid;
pub mod cover;
pub mod cyclo;
pub mod error;
pub mod formality;
pub mod milnorfiber;
pub mod pencil;
pub mod resonance;

pub use error::{Error, ErrorKind, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/scalars.md")]
    struct Scalars;
    #[doc = include_str!("../../../book/src/arrangements.md")]
    struct Arrangements;
    #[doc = include_str!("../../../book/src/resonance.md")]
    struct Resonance;
    #[doc = include_str!("../../../book/src/pencils.md")]
    struct Pencils;
    #[doc = include_str!("../../../book/src/cover.md")]
    struct Cover;
    #[doc = include_str!("../../../book/src/braid.md")]
    struct Braid;
    #[doc = include_str!("../../../book/src/milnor_fiber.md")]
    struct MilnorFiber;
    #[doc = include_str!("../../../book/src/formality.md")]
    struct Formality;
}

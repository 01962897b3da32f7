pub mod decomp;
pub mod doc;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod ginzburg;
pub mod pmod;
pub mod quiver;
pub mod stab;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/quivers.md")]
mod book_quivers {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebra.md")]
mod book_algebra {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/modules.md")]
mod book_modules {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/decomposition.md")]
mod book_decomposition {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/stability.md")]
mod book_stability {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

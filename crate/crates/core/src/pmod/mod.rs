//! Finite-dimensional modules with zero internal differential, their maps and the
//! constructions used by the decomposition: slices, quotients, closures and certificates.

mod certificate;
mod closure;
mod construct;
mod map;
mod module;

pub use certificate::{ArrowClosure, GeneratorCertificate, Verdict, Witness};
pub use closure::CLOSURE_INTERPRETATION;
pub use construct::Family;
pub use map::{hom0_space, ModuleMap};
pub use module::{ProperModule, Spaces};

//! Fourier analysis on finite inverse semigroups of partial injective maps.
//!
//! A semigroup is enumerated by [`families::build`] (or analyzed from an
//! explicit element list by [`structure::analyze`]), representations come
//! from [`fourier::InducedRepSet::builtin`], and [`fourier::fft`] /
//! [`fourier::ifft`] move between functions and spectra.

pub mod element;
pub mod error;
pub mod families;
pub mod fast;
pub mod fourier;
pub mod group;
pub mod harmonics;
pub mod io;
pub mod structure;

pub use element::{Pair, PartialMapElement};
pub use error::{Error, Result};
pub use families::{build, build_with_cap, FamilySpec, FamilyTag};
pub use fast::OpCounter;
pub use fourier::{fft, ifft, naive_ft, FourierCoefficients, InducedRepSet};
pub use group::GroupTable;
pub use harmonics::GroupRepSet;
pub use structure::{analyze, AnalyzeOptions, Basis, FunctionOnS, SemigroupStructure};

//! Numerical obstructions and computational certificates around Koszul
//! algebras and the Backelin-Roos property.
//!
//! The crate has three layers:
//!
//! * Hilbert-series numerics for Veronese and Segre algebras, with the
//!   coefficient scan of `1 - h(-z)/(1-z)^c` ([`hilbert`], [`obstruction`]).
//! * Monomial ideals: colon ideals, polarization, Froberg chordality, linear
//!   quotients, complete-intersection plus 2-linear certificates and the
//!   universally-Koszul recognizer ([`monomial`]).
//! * Exact commutative algebra: Groebner bases ([`gb`]) and truncated minimal
//!   graded free resolutions over quotient rings, with Koszul, Golod, Serre
//!   and linearity-defect checks ([`resolution`]).
//!
//! Every quantity that depends on a truncation carries the bound it was
//! computed under. Nothing is extrapolated past it.
//!
//! ```
//! use koszulkit::hilbert::veronese_numerics;
//! use koszulkit::obstruction::br_obstruction;
//!
//! let a = veronese_numerics(6, 7).unwrap();
//! assert_eq!(a.h_poly.eval_i64(-1), (-521).into());
//! let report = br_obstruction(&a, 130).unwrap();
//! assert_eq!(report.first_negative_index(), Some(121));
//! ```

pub mod arith;
pub mod error;
pub mod field;
pub mod gb;
pub mod hilbert;
pub mod input;
pub(crate) mod linalg;
pub mod monomial;
pub mod obstruction;
pub mod resolution;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use input::{parse_input, InputDescription};

/// Version string recorded in every report.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

// The guide's Rust snippets compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hilbert-obstruction.md")]
    mod hilbert_obstruction {}
    #[doc = include_str!("../../../book/src/monomial-certificates.md")]
    mod monomial_certificates {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/golod-serre.md")]
    mod golod_serre {}
    #[doc = include_str!("../../../book/src/linearity-defect.md")]
    mod linearity_defect {}
    #[doc = include_str!("../../../book/src/input-format.md")]
    mod input_format {}
    #[doc = include_str!("../../../book/src/truncation.md")]
    mod truncation {}
}

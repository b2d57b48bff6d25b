//! Rayleigh differences of matroids, with a sum-of-squares certificate for
//! rank three.
//!
//! A matroid is stored as its family of bases over a shared label universe.
//! [`rayleigh`] computes `ΔM{e,f} = M_e^f M_f^e − M_ef M^ef` as an exact
//! polynomial, [`certificate`] builds the explicit lower bound `P` for rank-3
//! matroids and checks `ΔM ≫ P` coefficientwise, and [`catalog`] enumerates
//! simple rank-3 matroids on up to eight points.
//!
//! ```
//! use rayleigh_kit::catalog::named;
//! use rayleigh_kit::rayleigh::{rayleigh_difference, PairContext};
//!
//! let k4 = named("K4").unwrap();
//! let delta = rayleigh_difference(&PairContext::by_label(&k4, "1", "2").unwrap());
//! assert_eq!(
//!     delta.to_text(k4.labels()),
//!     "+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6 +1 * y_5^2 y_6^2"
//! );
//! ```

pub mod catalog;
pub mod certificate;
mod error;
pub mod matroid;
pub mod poly;
pub mod rayleigh;
pub mod sampling;
pub mod tables;

pub use error::{Error, Result};
pub use matroid::Matroid;

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "rayleigh-kit/1";

// The guide under book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matroids.md")]
    mod matroids {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/rayleigh.md")]
    mod rayleigh {}
    #[doc = include_str!("../../../book/src/certificate.md")]
    mod certificate {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

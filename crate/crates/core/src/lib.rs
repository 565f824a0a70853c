//! Cotangent sums c_a(h/k), their period functions, Estermann zeta values
//! and the reciprocity identities that tie them together.
//!
//! Exact identities live in [`exact`] and are checked with zero tolerance.
//! Everything else is evaluated in double precision by [`specfn`], [`sums`],
//! [`recip`] and [`estermann`], each value carrying an absolute-error estimate.

pub mod error;
pub mod estermann;
pub mod exact;
pub mod recip;
pub mod report;
pub mod specfn;
pub mod sums;

pub use error::{Error, Result};
pub use exact::ExactScaled;
pub use specfn::{ComplexVal, PrecisionConfig};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/sums.md")]
    mod sums {}
    #[doc = include_str!("../../../book/src/reciprocity.md")]
    mod reciprocity {}
    #[doc = include_str!("../../../book/src/period.md")]
    mod period {}
    #[doc = include_str!("../../../book/src/estermann.md")]
    mod estermann {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

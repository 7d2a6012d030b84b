//! Exact initial sequences of fat point schemes on Hirzebruch surfaces.
//!
//! For points `Z` on `F_r` and `m >= 1`, `α(mZ)` is the least `d` such that
//! some section of `d L_r`, `L_r = (r + 1) F + E`, vanishes to order `m` at
//! every point. This crate computes these numbers with rational arithmetic,
//! attaches an independently checkable section to every answer, and
//! classifies the length of the initial run of equal values.
//!
//! * [`toric`]: classes, Cox monomials, points and affine charts.
//! * [`exactalg`]: exact ranks and certified kernel vectors.
//! * [`fatpoints`]: conditions matrices, `α`, sequences, bounds, plateaus.
//! * [`arrangements`]: exact plane line arrangements.
//! * [`configs`]: generators for named and random configurations.
//! * [`verify`]: the acceptance suite.
//!
//! ```
//! use fatpoints::configs::point_on_negative_curve;
//! use fatpoints::fatpoints::{initial_sequence, SearchOptions};
//! use fatpoints::toric::HirzebruchSurface;
//!
//! let f1 = HirzebruchSurface::new(1)?;
//! let rep = initial_sequence(f1, &point_on_negative_curve(1), 4, &SearchOptions::default())?;
//! assert_eq!(rep.alphas, vec![1, 1, 1, 2]);
//! # Ok::<(), fatpoints::Error>(())
//! ```

pub mod arrangements;
pub mod configs;
pub mod error;
pub mod exactalg;
pub mod fatpoints;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};

// The guide's code blocks run as doctests of these empty modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/charts.md")]
    mod charts {}
    #[doc = include_str!("../../../book/src/exact-algebra.md")]
    mod exact_algebra {}
    #[doc = include_str!("../../../book/src/fat-points.md")]
    mod fat_points {}
    #[doc = include_str!("../../../book/src/waldschmidt.md")]
    mod waldschmidt {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    mod configurations {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

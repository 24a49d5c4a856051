//! Toric Schubert varieties in Grassmannians: classification, explicit
//! fans, and exact Gorenstein/Fano verification.
//!
//! A Schubert variety `X_w` in `Gr(d, n)` is indexed by a Grassmannian
//! permutation `w`, or equivalently by the partition `λ_w` inside the
//! `d × (n-d)` rectangle. This crate decides, purely combinatorially and in
//! exact arithmetic, whether `X_w` is toric (hook-shaped `λ_w`), smooth
//! (rectangle `λ_w`), or Gorenstein (corners on one antidiagonal), builds
//! the fan of a toric `X_w` as integer lattice data — first in the full
//! flag variety, then pushed down to the Grassmannian by merging cones
//! along parabolic coset classes — and certifies the Fano property of the
//! Gorenstein members by solving the anticanonical Cartier systems over
//! the rationals and checking the strict support inequalities.
//!
//! No floating point is involved anywhere: ray generators are integer
//! vectors, Cartier data are exact rationals, and every verdict is an
//! exact comparison.
//!
//! ```
//! use schubert_fans::{classify, weyl::Permutation};
//!
//! // X_2413 in Gr(2,4) is toric, singular, Gorenstein
//! let w: Permutation = "2413".parse().unwrap();
//! let report = classify::classify_report(&w, 2).unwrap();
//! assert!(report.is_toric && !report.is_smooth && report.is_gorenstein);
//! ```

#![forbid(unsafe_code)]

pub mod classify;
pub mod cli;
pub mod fan;
pub mod lattice;
pub mod partition;
pub mod weyl;

pub use classify::ClassificationReport;
pub use fan::{CartierData, CartierOutcome, Fan};
pub use lattice::{Cone, LatticeVector, RationalVector};
pub use partition::Partition;
pub use weyl::{Permutation, ReducedWord};

//! Exact invariants of sapphire Sol 3-manifolds.
//!
//! A sapphire (torus semi-bundle) is the closed 3-manifold obtained by
//! gluing two orientable twisted I-bundles over the Klein bottle along
//! their torus boundaries via a matrix in GL(2,Z); it carries Sol geometry
//! exactly when all four matrix entries are nonzero. Everything this crate
//! computes about such a manifold is derived from that matrix by exact
//! integer arithmetic:
//!
//! * [`canonical_form`] and [`homeomorphic`] decide the homeomorphism type
//!   through the finite matrix orbit of the classification;
//! * [`h1_sapphire`] and [`h1_of_presentation`] compute first homology,
//!   once by closed formula and once by Smith normal form, so the two
//!   routes check each other;
//! * [`enumerate_z2_homs`], [`reidemeister_schreier`] and
//!   [`double_cover_matrix`] list the index-two covers, both as kernel
//!   presentations and as closed-form gluing matrices;
//! * [`classify_involutions`] and [`borsuk_ulam`] classify the free
//!   involutions and decide the Borsuk-Ulam property for maps into R^n.
//!
//! ```
//! use sapphire::{classify_involutions, InvolutionCount, SapphireMatrix};
//!
//! let m = SapphireMatrix::from_entries(5, 4, 6, 5).unwrap();
//! let report = classify_involutions(&m);
//! assert_eq!(report.count, InvolutionCount::ExactlyThree);
//! ```
//!
//! The `book/` directory of the repository walks through the theory behind
//! each module; its code snippets compile as doctests of this crate.

pub mod canon;
pub mod covers;
mod error;
pub mod intlinalg;
pub mod involutions;
pub mod presentations;
pub mod words;

pub use canon::{
    canonical_form, enumerate_canonical, h1_sapphire, homeomorphic, morimoto_orbit,
    orbit_equivalent, CanonicalSapphire,
};
pub use covers::{
    all_cover_reports, all_double_covers, double_cover_matrix, enumerate_z2_homs,
    hom_equivalence_classes, reidemeister_schreier, CaseLabel, ClassStatus, CoverDescriptor,
    CoverKind, CoverReport, HomClass, HomPartition, Z2Hom,
};
pub use error::Error;
pub use intlinalg::{
    factorize, is_prime, smith_normal_form, valuation, AbelianGroup, FactorMap, IntMatrix, Mat2Z,
};
pub use involutions::{
    borsuk_ulam, classify_involutions, reports_equivalent, solve_sapphire_down1,
    solve_sapphire_down3, BuOutcome, BuVerdict, InvolutionCount, InvolutionReport, Quotient,
};
pub use presentations::{
    h1_of_presentation, pi1_sapphire, pi1_torus_bundle, SapphireMatrix, TorusBundleMatrix,
};
pub use words::{Presentation, Word};

/// Every Rust snippet in the guide compiles and runs as a doctest, keeping
/// the book in sync with the crate.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    pub mod matrices {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/canonical-forms.md")]
    pub mod canonical_forms {}
    #[doc = include_str!("../../../book/src/covers.md")]
    pub mod covers {}
    #[doc = include_str!("../../../book/src/involutions.md")]
    pub mod involutions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

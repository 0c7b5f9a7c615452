//! Combinatorial descriptions of 2- and 3-dimensional braids.
//!
//! The crate provides exact braid-group algebra ([`braid`]), PL planar
//! charts with rational coordinates ([`chart`]), curtains — motion pictures
//! of charts describing branched covers of the 3-ball ([`curtain`]) — a
//! constructive algorithm building a curtain realizing any admissible braid
//! monodromy over a link complement ([`build`]), and combinatorial
//! invariants of the described covers ([`cover`]). Every constructed object
//! is machine-verified through the braid-group word problem.

pub mod braid;
pub mod build;
pub mod chart;
pub mod cover;
pub mod curtain;
pub mod geom;
pub mod json;
pub mod rat;
pub mod report;
pub mod svg;

pub use rat::Rat;
pub use report::ValidationReport;

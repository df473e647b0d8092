//! Equivariant bifurcation toolkit for `ΛΔu = ∇F(u, λ)` on geodesic balls of `Sⁿ`.
//!
//! The crate covers the Euler ring `U(SO(2))`, `SO(2)`-decompositions of
//! spherical harmonics, degrees of `-Id` on representation balls, Dirichlet
//! spectra of geodesic balls, bifurcation indices, and certificates for the
//! global Rabinowitz alternative.

pub mod analyzer;
pub mod cli;
pub mod degree;
pub mod error;
pub mod euler;
pub mod index;
pub mod repr;
pub mod spectrum;
pub mod system;

pub use analyzer::{Certificate, CertificateKind, Verdict};
pub use degree::{deg_id, deg_neg_id};
pub use error::{Error, Result};
pub use euler::{ConeClass, EulerElement};
pub use index::{index_closed_form, index_product, index_report, IndexReport, IndexRequest};
pub use repr::{so2_decompose, HarmonicSpace, SO2Rep};
pub use spectrum::{assemble_spectrum, EigenvalueRecord, Lambda, Spectrum, Tolerances};
pub use system::{Gamma, Sign, SystemConfig};

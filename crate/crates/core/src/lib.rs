//! Medial quasigroups of prime-power order through their affine forms.
//!
//! A medial quasigroup over an abelian group `(G, +)` has the shape
//! `x * y = φ(x) + ψ(y) + c` with commuting automorphisms `φ`, `ψ`. This
//! crate enumerates isomorphism-class representatives of such quasigroups
//! over the cyclic groups `Z_{p^k}` and the elementary abelian group `Z_p²`,
//! counts them in closed form, and checks the enumeration against an
//! independent brute-force isomorphism oracle working on raw Cayley tables.
//!
//! Module map:
//!
//! - [`fp`]: arithmetic in `F_p` and `Z_{p^k}`, quadratic irreducibility.
//! - [`group`]: the ambient groups, their elements and quotients by endomorphism images.
//! - [`gl2`]: `GL(2,p)`, its conjugacy class representatives and centralizers, units of `Z_{p^k}`.
//! - [`quasigroup`]: affine forms, Cayley tables, the Latin and medial checks.
//! - [`enumerate`]: the representative enumeration, case tallies and closed-form counts.
//! - [`interpolate`]: exact rational Lagrange interpolation of count sequences.
//! - [`oracle`]: brute-force isomorphism testing and classification.

pub mod enumerate;
mod error;
pub mod fp;
pub mod gl2;
pub mod group;
pub mod interpolate;
pub mod oracle;
pub mod quasigroup;
mod union_find;

pub use error::{Error, Result};

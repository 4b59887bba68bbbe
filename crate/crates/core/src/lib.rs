//! Exact difference algebra at desk scale.
//!
//! The crate is organized around a handful of computable structures:
//!
//! * [`fieldtower`] — exact arithmetic in towers of simple field extensions
//!   over `Q` or `F_p`, together with verified field morphisms, univariate
//!   factorization in a declared scope, and tensor-product decomposition.
//! * [`pseudofield`] — finite cyclic products of fields with a sigma action
//!   (sigma-pseudo fields), idempotents, trivial extensions and the
//!   desk-scale compatibility test.
//! * [`diffpoly`] — difference polynomial rings, the standard ranking,
//!   Ritt reduction with certificates, reinterpretation under powers of
//!   sigma and limit-degree computation.
//! * [`sigmaideal`] — ideals in polynomial sigma-rings: Buchberger bases,
//!   membership and elimination, sigma-stability certificates, `notin_sigma`
//!   scans, pseudo-prime assembly and the Chevalley lift searches.
//! * [`kernels`] — difference kernels, prolongation, realization towers,
//!   inversive closures and spectrum transport.
//! * [`galois`] — delta-sigma fields and rank-one Picard-Vessiot rings with
//!   a difference parameter, D-matrices, constant extraction and the
//!   minimal sigma-power isomorphism search.
//!
//! All arithmetic is exact; every operation with a declared scope reports a
//! typed error instead of guessing outside it.

pub mod diffpoly;
pub mod fieldtower;
pub mod galois;
pub mod kernels;
pub mod multipoly;
pub mod pseudofield;
pub mod sigmaideal;

pub use fieldtower::{FieldMorphism, FieldTower, SigmaField, TowerElem};
pub use pseudofield::{PseudoField, PseudoFieldElem};

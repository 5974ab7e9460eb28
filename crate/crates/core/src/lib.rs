//! Trivial extensions `T(A) = A ⋉ DA` of finite dimensional quiver algebras,
//! their quivers and relations, and certificates that their Hochschild
//! homology does not vanish in high degrees.
//!
//! The pipeline is: parse a presentation ([`quiver`]), build the algebra as
//! exact structure constants ([`algebra`]), extend it ([`trivial_ext`]), then
//! run the criteria ([`criteria`]). [`hochschild`] computes low degree
//! homology directly as an independent check.

pub mod algebra;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod quiver;
pub mod report;
pub mod trivial_ext;

pub use error::{Error, Result};

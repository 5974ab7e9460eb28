//! Finite dimensional algebras: construction from presentations and
//! structural queries.

mod build;
mod fd;
mod structure;

pub use build::{build_algebra, semisimple};
pub use fd::{AlgebraParts, ArrowRep, BuildRule, FDAlgebra, SparseVec};
pub use structure::{NakayamaWitness, SelfinjectivityCertificate, SelfinjectivityRefusal, Socles};

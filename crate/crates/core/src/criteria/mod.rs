//! Criteria certifying that the Hochschild homology of an algebra is
//! nonzero in infinitely many degrees.

mod cartan;
mod cycles;
mod verdict;

pub use cartan::{
    cartan_criterion, cartan_matrix, determinant_at_one, graded_cartan, trivial_extension_determinant_shape,
    CartanOutcome, DeterminantShape, GradedCartanData,
};
pub use cycles::{
    find_two_truncated_cycle, find_two_truncated_cycle_among, verify_certificate, zero_composition_graph,
    ProductRecord, TruncatedCycleCertificate,
};
pub use verdict::{
    hhdim_verdict, hhdim_verdict_for_algebra, Certificate, Conclusion, Hypotheses, Judged, TraceEntry, Verdict,
    VerdictOptions,
};

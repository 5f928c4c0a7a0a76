//! Deterministic checks: the multiscale crossing bound, the seed condition,
//! the far-seed tail series and the counting lemma for trifurcations.

mod bounds;
mod counting;
mod renorm;
mod scalar;

pub use bounds::{boundary_tail_bound, certifies, seed_condition};
pub use counting::{
    counting_lemma_check, enumerate_counting_instances, CountingInstance, CountingReport, EnumerationSummary,
};
pub use renorm::{renorm_recursion, renorm_recursion_exact, CertificateReport, RenormParams, Verdict, DEFAULT_DEPTH};
pub use scalar::{CertScalar, ExactFraction, EXP_SERIES_TERMS};

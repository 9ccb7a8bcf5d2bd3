//! Metric Lie algebras `(ℝZ ⊕ u) ⋉ n`, their Ricci operators and a search
//! for left-invariant metrics of negative Ricci curvature.

pub mod algebra;
pub mod build;
pub mod nilradical;
pub mod ricci;
pub mod search;

#[cfg(test)]
mod tests;

pub use algebra::{MetricLieAlgebra, Role, StructureFile, Triplet};
pub use build::{
    build_general, build_l, degenerate, degenerate_limit, heisenberg_showcase, lower_central_series, GeneralData,
    LAlgebra, JACOBI_TOL,
};
pub use nilradical::{verify_nilradical_hypotheses, BlockCheck, NilradicalReport};
pub use ricci::{ricci, ricci_oracle, ricci_orthonormal, InnerProductParams, MetricFamily, RicciReport, RootScalars};
pub use search::{find_negative_ricci, Certificate, SearchConfig, SearchOutcome};

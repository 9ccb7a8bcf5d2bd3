//! Explicit construction of irreducible modules: the Chevalley basis of the
//! complex algebra, the compact real form, representation matrices in a
//! unitary weight basis and the six-property check for a weight splitting
//! `V = V₁ ⊕ V₂`.

pub mod chevalley;
pub mod graded;
pub mod module;
pub mod rep;
pub mod six;


pub use chevalley::{coroot_op, root_recipe, root_vectors, ChevalleyData, Gen};
pub use graded::{BlockOp, WeightBasis};
pub use module::{ldl, ExactModule, Orthonormalizer, R};
pub use rep::{build_rep, build_rep_with, realify_matrix, RealRep, RepMatrices, REP_DIM_CAP};
pub use six::{check_six_conditions, ConditionResult, SixReport, SIX_TOL};

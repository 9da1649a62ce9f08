//! Constraint-driven enumeration of counits, comultiplications and odd extensions.

mod comult;
mod extensions;
pub mod poly;
pub mod solver;
pub(crate) mod tensor;

pub use comult::{
    admissible_counits, comultiplication_system, enumerate_comultiplications, generating_set, satisfies_generated_system,
    ComultSearch, CounitSearch, GeneratingSet,
};
pub use extensions::{classify_odd_extensions, connected_candidate, connected_decision, ConnectedOutcome, ExtensionClasses};
pub use poly::Poly;
pub use solver::{solve, solve_families, FamilyOutcome, GridSpec, SearchStatus, SolutionFamily, SolveOutcome, UnknownSystem};

/// Branch cap used when the caller gives none.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

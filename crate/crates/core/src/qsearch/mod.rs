//! Constraint systems for non-uniqueness factors, their solution, and
//! searches over pairing permutations and multipliers.

pub mod builtins;
pub mod perm;
pub mod search;
pub mod solve;
pub mod system;

pub use builtins::{
    assignment_from_q, builtin_q33, builtin_q_prop4, match_family_to, match_q33, prop4_multipliers,
    prop4_perms, prop4_values, q33_builtin_perms, q33_printed_assignment, q33_perms, Branch, Prop4Free,
};
pub use perm::{Perm, PermTriple};
pub use search::{classify_three_line_classical, enumerate, ClassicalReport, PairClassification, SearchReport};
pub use solve::{is_nontrivial, solve, solve_quantum, SolutionFamily, SolveOutcome};
pub use system::{
    build_system, verify_solution, ConstraintSystem, Equation, LineSet, MultiplierAssignment, Unknowns,
    VerifyReport,
};

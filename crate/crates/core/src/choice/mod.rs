//! Finite social-choice combinatorics.

pub mod axioms;
pub mod order;
pub mod profile;
pub mod scf;

pub use axioms::{
    check_axiom_equivalence, check_monotonic, check_strategy_proof, check_surjective, check_unanimous, dictator_of,
    AxiomChecker, AxiomReport, AxiomSummary, Check, ManipulationWitness, MonotonicityViolation, UnanimityViolation,
};
pub use order::{all_orders, factorial, Alternative, LinearOrder};
pub use profile::{profile_of_rank, rank_of_profile, Profile, ProfileSpace};
pub use scf::{RuleSpec, ScfKind, ScfTableEntry, ScfTableFile, SocialChoiceFunction};

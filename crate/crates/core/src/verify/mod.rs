//! Schemes, decoding verification, requirement checkers, bound formulas and
//! scheme builders.

pub mod bounds;
pub mod builders;
pub mod scheme;
pub mod witness;

pub use bounds::{check_consistency, eval_bounds, BoundTable, Consistency, Interval};
pub use builders::{build_chain_scheme, build_orthogonal_scheme, random_search, ChainPattern, SearchOutcome};
pub use scheme::{
    check_sparsity_requirement, check_width_requirement, verify_decoding, ReceiverReport, Scheme, SparsityCheck,
    VerifyReport, WidthCheck,
};
pub use witness::{grid_witness, GridWitness};

pub mod arith;
pub mod closed_forms;
pub mod cover;
pub mod error;
pub mod graph;
pub mod optimizer;
pub mod perm;
pub mod rearrangement;
pub mod signature;
pub mod theta;

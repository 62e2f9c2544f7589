//! Workbench for the two bipartite diameter-3 metric space classes
//! A³(∞,0,7,8) and A³(∞,0,7,10): membership, bipartite structure,
//! canonical forms and automorphisms, exact labeled and unlabeled counts,
//! first-order sentence proportions, seeded samplers and limit-structure
//! truncations.

pub mod cli;
pub mod ensembles;
pub mod enumeration;
pub mod exec;
pub mod logic;
pub mod space;

pub use exec::Strategy;
pub use space::{
    automorphism_count, bipartite_decompose, canonical_form, is_asymmetric, validate, BipartiteForm,
    CanonicalKey, ClassId, ClassSpec, CrossMatrix, Membership, MetricSpace, SpaceError, Triangle,
};

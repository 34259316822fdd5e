//! Inverse limits of semisimple finite-length categories.
//!
//! Everything is skeletal: an object of C_i is a multiset of simple labels
//! and a morphism is one rational matrix per label. An [`InverseSystem`]
//! describes the shortening functors by their action on simples, and a
//! [`LimitObject`] is stored as a single component past the stabilization
//! witness of its level; the other components are computed when asked for.

mod builtin;
mod classify;
mod limit;
mod object;
mod system;
mod table;

pub use builtin::{AdversarialSystem, ConstantSystem};
pub use classify::{
    check_conditions, is_simple, length, limit_simples, restricted_membership, ConditionReport,
    Counterexample, CounterexampleKind, LevelReport,
};
pub use limit::{
    align, cokernel, direct_sum, image_factorization, is_isomorphism, kernel, DirectSum,
    ImageFactorization, LimitMorphism, LimitObject,
};
pub use object::{apply_functor_morphism, apply_functor_object, SSMorphism, SSObject};
pub use system::{InverseSystem, LabelId, Level, SSCategory, ShorteningMap, SimpleLabel};
pub use table::{
    CategoryEntry, LevelEntry, MapEntry, MapPair, Presentation, TableSystem, WitnessEntry,
};

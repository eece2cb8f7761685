//! Exact computation of subgroup depth for finite permutation groups.
//!
//! Groups are enumerated in full, character tables are computed exactly over
//! cyclotomic fields, and depths are read off the zero patterns of powers of
//! induction-restriction matrices.

#![allow(clippy::needless_range_loop)]

pub mod builtin;
pub mod cartan;
pub mod chartab;
pub mod classes;
pub mod classfn;
pub mod cyclotomic;
pub mod depth;
pub mod double;
pub mod error;
pub mod group;
pub mod intmat;
pub mod moddepth;
pub mod modp;
pub mod perm;
mod serde_util;

pub use builtin::Builtin;
pub use cartan::{AlgebraMatrixData, Parity};
pub use chartab::{CharacterTable, CharacterTableDocument, ComputeTables, TableSource};
pub use classes::ConjugacyClassData;
pub use classfn::ClassFunction;
pub use cyclotomic::Cyclotomic;
pub use depth::{min_depth, DepthReport, InductionRestrictionMatrix};
pub use double::{DoubleDepth, DoubleDepthReport};
pub use error::{Error, Result};
pub use group::{
    diagonal_subgroup, direct_product, quotient, GroupFingerprint, PermutationGroup, QuotientMap,
    SubgroupEmbedding, DEFAULT_ORDER_CAP,
};
pub use intmat::IntMatrix;
pub use moddepth::ModuleDepthReport;
pub use perm::Permutation;

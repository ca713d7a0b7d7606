//! Derangements and relative derangements of type B.
//!
//! Signed permutations, exact counts of type-B derangements `D_n^B` and
//! relative derangements `Q_n^B`, brute-force enumeration of `B_n`, and the
//! explicit bijection from relative derangements on `[n]` to the disjoint
//! union of derangements on `[n]` and on `[n-1]`, which proves
//! `Q_n^B = D_n^B + D_{n-1}^B`.

pub mod bijections;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod signed;
pub mod verify;

pub use bijections::{
    derangement_to_rep_large, derangement_to_rep_small, from_representation,
    is_valid_representation, rel_to_skew, relative_to_tagged_derangement, rep_large_to_derangement,
    rep_small_to_derangement, representation_of, skew_from_perm, skew_to_rel,
    tagged_derangement_to_relative, Representation, SkewDerangement, Tag, TaggedDerangement,
};
pub use counting::{
    count_derangements_b, count_derangements_classical, count_relative_classical,
    count_relative_derangements_b, count_relative_via_identity, Count,
};
pub use enumeration::{
    brute_count, is_derangement_b, is_fixed_point_free, is_relative_derangement_b,
    iter_signed_permutations, EnumerationCursor, BRUTE_FORCE_LIMIT,
};
pub use error::{Error, Result};
pub use signed::{compare, Ground, SignedElement, SignedPermutation, SignedSet};
pub use verify::{verify, Identity, Method, VerificationReport};

//! Deciding, building and counting resolute tie-breaking refinements of
//! voting correspondences that respect weak anonymity, neutrality and
//! reversal symmetries.
//!
//! A committee of `h` voters ranks `n` alternatives; a social preference
//! correspondence maps each preference profile to a set of rankings, and a
//! k-winner correspondence maps it to a set of k-subsets. Classical rules
//! (Borda, Copeland, Minimax, Kemeny) are rarely resolute, so using them
//! in practice means fixing a tie-breaking rule: a resolute refinement.
//! This crate answers, exactly and by explicit enumeration, the questions:
//!
//! * does a given correspondence admit a resolute refinement that keeps a
//!   prescribed symmetry group (voter relabellings × alternative
//!   relabellings × ranking reversal)?
//! * how many such refinements are there?
//! * construct one, deterministically.
//!
//! The engine decomposes the profile space into orbits of the symmetry
//! group, reduces every question to per-orbit feasibility sets, and glues
//! per-orbit choices back into a full tie-breaking function. Everything is
//! exact: counts are big integers, group-theoretic criteria (type numbers,
//! automorphism groups of orders) are cross-checked against brute force in
//! the test suites.
//!
//! Start with the `examples/` directory: each example is a runnable tour
//! of one capability. A thin `resolute` binary exposes the same machinery
//! as `gate`, `orbits`, `check`, `count` and `build` subcommands.

pub mod cli;
pub mod error;
pub mod perm;
pub mod profile;
pub mod refine;
pub mod relation;
pub mod rules;

pub use error::{Error, HypothesisTag, NoRefinementReason, Result};
pub use perm::{Partition, Perm, PermGroup};
pub use profile::{GroupElement, OrbitClass, OrbitTable, Profile, ProfileAction, SymmetryGroup};
pub use refine::{
    ChoicePolicy, FunctionKind, GateMode, GateVerdict, RefinementCount, ResoluteFunction, Verdict,
};
pub use relation::{LinearOrder, Relation, RelationFlags, Reversal};
pub use rules::{KsccValue, RuleId, SpcValue};

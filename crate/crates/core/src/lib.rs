//! Exact arithmetic for plumbed 4-manifolds and the immersions of `S^3` into
//! `R^4` they induce.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, JSON and the command-line front end live in
//! the `immcalc` crate.
//!
//! Layout:
//!
//! * [`form`], [`snf`], [`congruence`]: symmetric integer bilinear forms,
//!   their invariants and a certificate-producing congruence search.
//! * [`expr`], [`plumbing`], [`boundary`]: building-block expressions for
//!   4-manifolds, their intersection forms and boundary descriptors.
//! * [`kirby`], [`script`], [`identity`]: linking-matrix level Kirby
//!   calculus, replayable move scripts and the stabilisation identities.
//! * [`dicyclic`]: the dicyclic groups bounding the `D`-type plumbings.
//! * [`smale`], [`pipeline`]: Smale invariants, bordism classes and the
//!   end-to-end computation for the `f_n` and `g_n` families.
//! * [`singularity`]: the branched-cover local model checker.

#![no_std]

extern crate alloc;

pub mod boundary;
pub mod congruence;
pub mod dicyclic;
pub mod expr;
pub mod form;
pub mod identity;
pub mod kirby;
pub mod pipeline;
pub mod plumbing;
pub mod script;
pub mod singularity;
pub mod smale;
pub mod snf;

mod imat;

pub use boundary::{BoundaryDescriptor, BoundaryError, Orientation};
pub use congruence::{congruent, Budget, CongruenceCertificate, Verdict};
pub use expr::{Atom, FourManifoldExpr, ParseError};
pub use form::{Invariants, Parity, SymmetricForm};
pub use kirby::{KirbyError, KirbyState};
pub use pipeline::{pipeline_f, pipeline_g, FamilyResult, SeifertLedger};
pub use plumbing::{Family, PlumbingGraph};
pub use smale::SmaleInvariant;

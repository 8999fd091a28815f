//! Faithful permutation representations of quotients `G/N` where `N` is a
//! normal subgroup with only nonabelian composition factors.
//!
//! The headline operation is [`quotient::embed_quotient`], which takes
//! `G <= Sym(n)` and a nonabelian minimal normal subgroup `N` and returns a
//! homomorphism `G -> Sym(m)` with kernel exactly `N`, `m < n`, and
//! `5m <= 2n` when `G` is transitive. Every result carries a certificate
//! that can be re-checked from scratch.

pub mod blocks;
pub mod catalog;
pub mod cert;
pub mod cli;
mod chain;
pub mod mindeg;
pub mod error;
pub mod group;
pub mod hom;
pub mod normal;
pub mod perm;
pub mod quotient;
pub mod selftest;
mod search;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{centralizer, make_group, normal_closure, normalizer, PermGroup};
pub use blocks::BlockSystem;
pub use hom::{coset_action, kernel_of, verify_faithful, GroupHom};
pub use mindeg::{min_faithful_rep, MinDegResult};
pub use normal::SocleDecomposition;
pub use cert::{emit_certificate, verify_certificate, Certificate, ProblemInput};
pub use quotient::{embed_quotient, embed_quotient_radical, QuotientRep, TraceStep};
pub use perm::Perm;
pub use wreath::{Wreath, WreathLabeling};

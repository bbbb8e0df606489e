//! weylmod: exact computations with Weyl modules in prime characteristic.
//!
//! The crate builds minimal admissible ℤ-forms of Weyl modules with their
//! contravariant forms, reduces them mod p to simple modules, evaluates the
//! Jantzen sum formula, derives stabilizer exponent vectors of B-stable
//! lines in ℙ(L(λ)) (parabolic subgroup schemes, possibly non-reduced), and
//! computes closed-form line-bundle cohomology on the unseparated incidence
//! variety in ℙⁿ×ℙⁿ. Every computation is exact; there is no floating point
//! anywhere.
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability, and the `weylmod` binary for a scriptable frontend.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod highestweight;
pub mod incidence;
pub mod jantzen;
pub mod linalg;
pub mod parabolic;
pub mod rootsys;

pub use error::{Error, Result};
pub use rootsys::{NatInf, RootSystem, RootSystemSpec, Weight};

//! Exact computational algebra for rational Cherednik algebras of finite
//! reflection groups in positive characteristic.
//!
//! The library constructs, over a finite field `F_q` with `q = p^r`:
//!
//! * the reflections of the groups `GL_n(F_q)`, `SL_n(F_q)`, the orthogonal
//!   groups `O_n^±(F_q)`, and symmetric groups in their reflection
//!   representation ([`groups`]);
//! * Dunkl operators acting on the polynomial representation, with the class
//!   parameters `c` carried either symbolically or specialized ([`dunkl`]);
//! * the graded blocks of the contravariant form on the Verma module for the
//!   trivial representation, together with exact generic and specialized
//!   rank/kernel computations ([`form`]);
//! * Hilbert series of the irreducible quotients `L_{t,c}(triv)`, Dickson
//!   invariants, and several structural checks ([`series`]).
//!
//! All arithmetic is exact.  Every computation is deterministic given the
//! random seed used for rank cross-checks; no floating point is involved
//! anywhere.

pub mod dunkl;
pub mod error;
pub mod form;
pub mod gf;
pub mod groups;
pub mod matrix;
pub mod poly;
pub mod series;

pub use error::{Error, Result};

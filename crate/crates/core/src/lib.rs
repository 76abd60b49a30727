//! Exact calculus for Cohen groups and small mod-2 Steenrod modules.
//!
//! - [`algebra`]: the noncommutative exterior algebra `A_n^{Z/q}`.
//! - [`word`], [`group`]: words in `K_n^{Z/q}`, the Magnus embedding, face
//!   maps, the equalizer `H_n`.
//! - [`collect`]: weight-by-weight commutator collection.
//! - [`steenrod`]: `Sq^i` on `u^j` and the divided-power product.
//! - [`module`], [`catalog`]: finite modules with `Sq^1_*`, `Sq^2_*`, smash
//!   products, isomorphism testing and the named complexes.

pub mod algebra;
pub mod catalog;
pub mod collect;
pub mod error;
pub mod group;
pub mod module;
pub mod steenrod;
pub mod word;

pub use algebra::{AlgebraContext, AlgebraElement, Monomial};
pub use collect::{collect, power_formula, BasicCommutator, Factor, Factorization};
pub use error::{AlgebraError, GroupError, ModuleError, ParseError};
pub use group::{alpha, element_order, equal, face_group, in_hn, magnus, verify_identity, GroupElement};
pub use module::{ModuleMap, SteenrodModule};
pub use word::GroupWord;

/// Default coefficient modulus.
pub const DEFAULT_MODULUS: u32 = 4;

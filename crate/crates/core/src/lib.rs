//! Exact character theory of Sym(n) and Alt(n), and products of conjugacy
//! classes in Alt(n).
//!
//! Class products are decided by the Frobenius character sum
//! `Σ_ψ ψ(a)ψ(b)conj(ψ(g))/ψ(1)`, evaluated exactly. The [`brute_force`]
//! module multiplies explicit permutations for `n ≤ 8` and serves as an
//! independent check on the character engine.

pub mod alt_group;
pub mod brute_force;
pub mod characters;
pub mod error;
pub mod partitions;
pub mod product_engine;

pub use alt_group::{AltClass, NormalSet, Split};
pub use characters::{AltChar, QuadValue};
pub use error::{Error, Result};
pub use partitions::Partition;
pub use product_engine::{ClassAlgebra, ClassProducts, FrobeniusResult};

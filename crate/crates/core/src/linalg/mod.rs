//! Exact linear algebra: integers (Smith form), rationals, and `Z/m`.

pub mod abelian;
pub mod integer;
pub mod modular;
pub mod rational;

pub use abelian::AbelianGroup;
pub use integer::{smith_normal_form, IntMatrix, SmithForm};
pub use modular::{kernel_mod, subquotient_mod};
pub use rational::{q, QMatrix, SparseMatrix, Q};

//! Exact kernels of pairs of linear maps.
//!
//! For matrices `A` (`p x q1`) and `B` (`p x q2`) over a ring `R`, the kernel of
//! the pair is `ker(A | B) = { u in R^q2 : A x + B u = 0 for some x in R^q1 }`.
//! Supported rings are prime fields `GF(p)`, modular rings `Z/m`, `GF(p)[z]` and
//! `(Z/m)[z]`. Square-free moduli split into prime factors through the
//! structural idempotents of [`crt`].
//!
//! ```
//! use kerpair::{kernel_pair, Matrix, RingSpec};
//!
//! let z30 = RingSpec::mod_ring(30).unwrap();
//! let a = Matrix::from_ints(&z30, 1, 1, &[15]).unwrap();
//! let b = Matrix::from_ints(&z30, 1, 1, &[10]).unwrap();
//! let res = kernel_pair(&a, &b).unwrap();
//! assert_eq!(res.ker_bar.count(), Some(10));
//! ```

pub mod arith;
pub mod behavior;
pub mod crt;
pub mod echelon;
pub mod error;
mod hermite;
pub mod kernel_pair;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod poly_matrix;
pub mod ring;
pub mod submodule;

pub use error::{Error, Result};
pub use kernel_pair::{
    kernel_pair, kernel_pair_oracle, kernel_pair_preimage, kernel_pair_projection, kernel_pair_quotient,
    Automorphism, ExactSequenceWitness, KernelPairResult, Method, QuotientMap,
};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
pub use ring::{ring_make, Element, RingKind, RingSpec};
pub use submodule::{submodule_equal, submodule_member, Presentation, Submodule};

//! Finite rings, finite module alphabets and linear codes over them.
//!
//! Everything here is exhaustive and table driven: rings and modules are
//! materialized as addition/multiplication (or action) tables over element
//! indices, and every structural question (radical, socle, automorphisms,
//! monomial equivalence of codes) is answered by complete enumeration
//! under explicit [`Guards`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod aut;
pub mod character;
pub mod code;
mod error;
pub mod field;
mod guard;
pub mod hom;
pub mod ideal;
pub mod lab;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod ring;
pub mod set;
pub mod socle;

pub use error::{Error, Result};
pub use guard::Guards;

#![doc = include_str!("../../../README.md")]

pub mod complex;
pub mod diagram;
pub mod equivariant;
pub mod error;
pub mod khovanov;
pub mod linalg;

pub use error::{ComplexError, DiagramError, LinalgError};

/// The user guide in `book/`, compiled here so its examples run as doc tests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/tangles.md")]
    pub mod tangles {}
    #[doc = include_str!("../../../book/src/khovanov.md")]
    pub mod khovanov {}
    #[doc = include_str!("../../../book/src/equivariant.md")]
    pub mod equivariant {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    pub mod conventions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

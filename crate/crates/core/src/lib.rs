pub mod catalog;
pub mod corpus;
pub mod draw;
pub mod encode;
pub mod experiments;
pub mod geometry;
pub mod hamconvex;
pub mod oracle;
pub mod predicates;
pub mod quad;
pub mod solve;
pub mod system;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rotation-systems.md")]
    mod rotation_systems {}
    #[doc = include_str!("../../../book/src/drawability.md")]
    mod drawability {}
    #[doc = include_str!("../../../book/src/convexity.md")]
    mod convexity {}
    #[doc = include_str!("../../../book/src/encoding.md")]
    mod encoding {}
    #[doc = include_str!("../../../book/src/hamiltonian.md")]
    mod hamiltonian {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
}

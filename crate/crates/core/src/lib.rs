//! Quivers with potentials and their Jacobian algebras.
//!
//! The crate covers the whole pipeline from a quiver with potential to the
//! generalized cluster variables attached to its τ-rigid modules:
//!
//! * [`quiver`], [`path`], [`element`], [`potential`], [`text`]: truncated
//!   path-algebra arithmetic, cyclic words and derivatives.
//! * [`families`] and [`cover`]: the 2-cyclic potentials `W_n^{[1,m]}`, their
//!   finiteness condition and the Z₃ covering construction.
//! * [`jacobian`]: a degree-filtered standard-basis engine that certifies
//!   finite dimension and reduces to normal form.
//! * [`mutation`]: premutation, trivial/reduced splitting and mutation.
//! * [`repmod`]: representations, presentations, g-vectors, τ and point counts.
//! * [`ccmap`]: Laurent polynomials and the Caldero-Chapoton map.

pub mod ccmap;
pub mod coeff;
pub mod cover;
pub mod error;
pub mod families;
pub mod jacobian;
pub mod element;
pub mod linalg;
pub mod mutation;
pub mod path;
pub mod potential;
pub mod quiver;
pub mod repmod;
pub mod text;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(paths_and_potentials, "paths-and-potentials.md");
    chapter!(jacobian, "jacobian.md");
    chapter!(mutation, "mutation.md");
    chapter!(covers, "covers.md");
    chapter!(modules, "modules.md");
    chapter!(cc_map, "cc-map.md");
    chapter!(cli, "cli.md");
}

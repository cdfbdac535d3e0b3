//! Petit algebras `S_f = K[t;σ]/K[t;σ]f` over finite fields: construction,
//! nuclei, automorphism groups, isomorphism tests and classification of the
//! nonassociative cyclic algebras, with brute-force oracles for each.

pub mod algebra;
pub mod aut;
pub mod error;
pub mod gf;
pub mod group;
pub mod iso;
pub mod knuth;
pub mod linalg;
pub mod petit;
pub mod skewpoly;
pub mod text;
pub mod verify;

pub use algebra::{Element, FiniteAlgebra, Nuclei};
pub use aut::{AutKind, AutMap};
pub use error::{Error, Result};
pub use gf::{Elem, FieldTower, TowerSpec};
pub use group::{Group, GroupId, GroupTag};
pub use linalg::Matrix;
pub use petit::{LeftPetitAlgebra, OppositeBridge, PetitAlgebra};
pub use skewpoly::{SkewPoly, SkewRing};

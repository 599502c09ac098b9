//! Exact algebra and combinatorics for the deformed instanton homology of
//! webs.
//!
//! The coefficient ring is `R = F2[T1^±1, T2^±1, T3^±1]` with its
//! distinguished element `P` ([`laurent`]). On top of it sit the dotted
//! foam evaluations ([`foam`]), the operator models for the unknot and the
//! theta web ([`operators`]), 1-set and Tait-coloring combinatorics of
//! trivalent multigraphs ([`webs`]), and rank/torsion analysis of
//! differential modules over `R` ([`homological`]).

pub mod corpus;
pub mod foam;
pub mod gf16;
pub mod homological;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod operators;
pub mod rank;
pub mod rational;
pub mod ring;
pub mod series;
pub mod snf;
pub mod univariate;
pub mod verify;
pub mod webs;

pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use rational::RationalFunction;
pub use series::Direction;

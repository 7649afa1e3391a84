//! Computational toolkit for the Baumslag-Solitar groups
//! `BS(p,q) = <a, t | t a^p t^-1 = a^q>`, `1 <= p <= q`.
//!
//! * [`normal_form`]: Britton normal forms (standard and balanced syllable
//!   alphabets) with exact incremental multiplication, and the canonical
//!   byte key used for hashing.
//! * [`solvable`] and [`affine`]: the `t^{-m} a^N t^n` form of `BS(1,q)` and
//!   the affine representation used to cross-check it.
//! * [`metrics`]: word-metric estimates with explicit constants and the
//!   short witness words behind the upper bounds.
//! * [`bfs`]: exact Cayley-graph balls, sphere sizes and Fekete bounds.
//! * [`automata`]: the normal-form automata, exact word counts and their
//!   spectral radii (growth-rate lower bounds).
//! * [`analysis`]: growth polynomials, real roots, rational growth series.

pub mod affine;
pub mod analysis;
pub mod automata;
pub mod bfs;
pub mod cli;
pub mod letter;
pub mod metrics;
pub mod normal_form;
pub mod params;
pub mod solvable;

pub use affine::{affine_image, AffineMap};
pub use letter::{Base, Letter, Sign, Word};
pub use normal_form::{normalize, AlphabetSpec, NormalForm, Syllable, Variant};
pub use params::{GroupParams, ParamsError};
pub use solvable::{solvable_normal_form, SolvableNormalForm};

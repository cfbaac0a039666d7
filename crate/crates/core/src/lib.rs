//! Exact arithmetic for maximal S-free sets, where `S = Q ∩ Z^n` for a
//! rational polyhedron `Q`: construction of maximal bodies, the cut
//! coefficients they induce on a simplex tableau row, and a brute-force
//! validity check of those cuts.

pub mod cutgen;
pub mod dd;
pub mod error;
pub mod gauge;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod polyhedron;
pub mod rational;
pub mod sfree;
pub mod svg;
pub mod verifier;

pub use cutgen::{default_initial_body, generate_cut, CutResult, TableauInstance};
pub use error::{Error, Result};
pub use gauge::{dominates, polar, rho, GaugeFunction, PolarBody};
pub use lattice::{enumerate_integer_points, LatticePoint, SDescription, SearchBox};
pub use linalg::{RatMat, RatVec};
pub use polyhedron::{HPolyhedron, Membership};
pub use rational::Rat;
pub use sfree::{
    is_maximal_s_free, is_s_free, tilt_to_maximal, tighten_lattice, HalfSpace, MaximalityReport,
    SFreeBody, Verdict,
};
pub use verifier::{verify_validity, ValidityReport};

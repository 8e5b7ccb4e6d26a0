//! Exact computation of the degree-zero homology
//! `H_0(Lie(V); Lie_{<=2}(V)^{⊗n})` through bead-arrangement modules, with
//! closed-form evaluators and independent brute-force oracles.
//!
//! Every multiplicity is computed with exact rational arithmetic. The main
//! entry points are [`homology::decompose_h0`] (brute-force cokernels),
//! [`closedform::general_isotypical`] (the constructive isotypical map) and
//! [`freelie::h0_multilinear`] (the free Lie algebra oracle).

pub mod beads;
pub mod characters;
pub mod cli;
pub mod closedform;
pub mod exactlinalg;
pub mod freelie;
pub mod homology;
pub mod irreps;
pub mod partitions;
pub mod perm;

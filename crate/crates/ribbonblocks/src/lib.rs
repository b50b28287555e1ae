//! Exact computer algebra for finite ribbon categories and the correlator
//! systems they support.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`]: exact arithmetic in cyclotomic fields ℚ(ζ_n), the single
//!   ground field all other modules compute over. No floating point anywhere;
//!   every downstream check is an exact matrix equality.
//! - [`linalg`]: dense exact matrices (multiplication, reduced echelon form,
//!   nullspaces, inverses) over those fields.
//! - [`ribbon`]: a finite ribbon category presented by explicit tensors, in
//!   one of two backends: `skeletal` (simple objects, fusion rules, F/R
//!   symbols, twists, pivots) or `hopf` (a ribbon Hopf algebra with explicit
//!   structure constants acting on named modules). Both expose the same
//!   interface: objects are tensor words of atoms, morphisms are exact
//!   matrices between canonical bases, and the structural morphisms
//!   (braiding, twist, dualities, pivot) are computed on demand.
//! - [`coend`]: the Hopf-algebra coend K = ∫^X X⊗X^∨ with its dinatural
//!   family, counit, normalized integral, Q/S/T transformations, antipode
//!   action and central charge.
//! - [`surface`]: combinatorial extended surfaces, fine markings (pants
//!   decompositions with distinguished legs), the elementary moves as graph
//!   rewrites, sewing, and the canonical relation instances.
//! - [`blocks`]: block spaces Hom(𝟙, F^{ε1}⊗…⊗F^{εn}⊗K^{⊗g}) attached to
//!   marked surfaces, the move isomorphisms as exact matrices, sewing maps,
//!   and relation verification at the linear level.
//! - [`frobenius`]: Frobenius algebra data on the bulk object, conversion
//!   between the generator triple (ω, ε, Φ) and (m, η, Δ, ε), axiom checks,
//!   modularity.
//! - [`correlators`]: the correlator family v^g_{p|q} via the closed
//!   formula, elementary correlators on small spheres, and the consistency
//!   verification (move invariance, sewing compatibility, non-degeneracy,
//!   S-invariance).
//!
//! The crate is `no_std` + `alloc`: it performs no I/O and holds no global
//! mutable state beyond a small lock-free cache of cyclotomic polynomials.
//! File formats and the command-line driver live in the companion crate.

#![no_std]
#![deny(unsafe_op_in_unsafe_fn)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod scalar;
pub mod linalg;
pub mod ribbon;
pub mod coend;
pub mod surface;
pub mod blocks;
pub mod frobenius;
pub mod correlators;

//! Exact-arithmetic decision procedures for weak and homotopy moment maps
//! on polynomial n-plectic structures.
//!
//! An n-plectic structure on `R^N` is a closed nondegenerate `(n+1)`-form
//! with polynomial coefficients; a Lie algebra acting by polynomial vector
//! fields that preserve the form raises the classical moment-map question
//! in two strengths.  A *weak* moment map assigns a primitive to the
//! contraction of the form along every cycle of the Lie-algebra homology
//! differential; a *homotopy* moment map does the same coherently across
//! all arities.  Weak maps always exist here; homotopy maps are obstructed
//! by a single top-arity cocycle, and this crate computes that obstruction
//! exactly, constructs maps when they exist, and produces certificates
//! when they do not.
//!
//! Everything is computed over arbitrary-precision rationals.  There is no
//! floating point anywhere: every verdict is a statement about exact
//! linear algebra over `Q`.
//!
//! # Where to start
//!
//! The `examples/` directory is the primary interface to the library, one
//! runnable program per capability:
//!
//! * `validate_scene` — load scene files and check brackets, closedness,
//!   nondegeneracy, and that the action really is an action
//!   (`cargo run --example validate_scene`)
//! * `analyze_obstructions` — Lie kernels, Chevalley–Eilenberg cohomology,
//!   the top-arity obstruction and the existence dichotomy
//!   (`cargo run --example analyze_obstructions`)
//! * `construct_moment_maps` — build weak and homotopy moment maps and
//!   re-verify them from scratch
//!   (`cargo run --example construct_moment_maps`)
//! * `obstruction_certificate` — what exactly fails when no homotopy
//!   moment map exists (`cargo run --example obstruction_certificate`)
//! * `cartan_class` — invariant pairings and the Cartan 3-cocycle at the
//!   level of the algebra alone (`cargo run --example cartan_class`)
//! * `strict_extension` — extend a weak map to a homotopy map by solving
//!   the staircase of correction equations, or exhibit the blocking
//!   component (`cargo run --example strict_extension`)
//! * `equivariantize` — repair a non-equivariant map by a coboundary
//!   correction, or certify that no correction exists
//!   (`cargo run --example equivariantize`)
//! * `hamiltonian_fields` — Hamiltonian vector fields and Poincaré
//!   primitives on their own (`cargo run --example hamiltonian_fields`)
//! * `lie_n_algebra` — the Lie n-algebra of observables and the morphism
//!   induced by a homotopy moment map (`cargo run --example lie_n_algebra`)
//!
//! The same capabilities are scriptable through the `momap` binary; see
//! the README for the scene file format and the exit-code contract.
//!
//! # Module map
//!
//! * [`linalg`] — dense exact linear algebra over `Q` (kernels, solving,
//!   quotient dimensions) and the `p/q` scalar format
//! * [`lie`] — Lie algebras by structure constants, the homology
//!   differential and its kernels, Chevalley–Eilenberg cohomology,
//!   invariant pairings, the Cartan cocycle
//! * [`poly`] — multivariate polynomials over `Q`
//! * [`forms`] — polynomial differential forms, multivector fields,
//!   contraction, Lie derivatives, the Euler-radial homotopy operator
//! * [`action`] — n-plectic structures, polynomial Lie algebra actions,
//!   validation, Hamiltonian vector fields
//! * [`complexes`] — the graded bicomplexes tying algebra and manifold
//!   together, the canonical cocycles, and the obstruction report
//! * [`moment`] — weak and homotopy moment maps: construction,
//!   verification, strict extension, equivariance
//! * [`linfty`] — the Lie n-algebra of observables
//! * [`scene`] — the JSON scene and moment-map file formats
//! * [`report`] — structured command reports
//! * [`commands`] — the operations behind the CLI verbs

pub mod action;
pub mod combi;
pub mod commands;
pub mod complexes;
pub mod forms;
pub mod lie;
pub mod linalg;
pub mod linfty;
pub mod moment;
pub mod poly;
pub mod report;
pub mod scene;

mod error;

#[cfg(test)]
mod testutil;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

//! Exact computation in semi-derived Ringel-Hall algebras of quivers with
//! loops over small finite fields, and machine verification that the defining
//! relations of quantum Borcherds-Bozec algebras and quantum generalized
//! Kac-Moody algebras map to zero under the corresponding Hall-algebra
//! homomorphisms.
//!
//! The pipeline, bottom up:
//!
//! 1. [`fq`]: dense linear algebra over `F_q` (`q` in `{2, 3, 5, 7}`).
//! 2. [`scalar`]: exact coefficient arithmetic — Laurent polynomials and
//!    rational functions in `v`, and the quadratic field `Q(sqrt q)` where
//!    `v` specialises to `sqrt q`.
//! 3. [`quiver`]: quivers with loops, Euler and symmetrised forms, symmetric
//!    Borcherds-Cartan matrices.
//! 4. [`rep`]: finite-dimensional `F_q`-representations, isomorphism
//!    classification, Hom/Ext/Aut counts, subobject scans and Hall numbers.
//! 5. [`complex`]: graded-by-`Z/2` complexes of representations, stalk and
//!    acyclic complexes, homology, subcomplex scans and extension
//!    (cocycle) scans.
//! 6. [`sdh`]: the semi-derived Hall algebra — normal-form basis indexed by
//!    pairs of representation classes and a torus weight, the reduction map
//!    from complex classes, and the twisted multiplication.
//! 7. [`quantum`]: presentations of the two quantum algebras, generator
//!    images under the Hall homomorphisms, and relation verification.
//! 8. [`config`], [`report`], [`driver`]: run configuration, structured
//!    reports, and the orchestration used by the command-line interface.
//!
//! All arithmetic is exact; enumerations are sized up front against explicit
//! budgets and refuse to run (with an error naming the offending size) rather
//! than degrade.

pub mod complex;
pub mod config;
pub mod driver;
pub mod error;
pub mod fq;
pub mod quantum;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod sdh;

pub use error::{Error, Result};

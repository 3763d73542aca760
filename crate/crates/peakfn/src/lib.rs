//! Exact computation of pattern-avoiding peak functions.
//!
//! `R_n(Π)` sums the peak functions `K_{Peak(π)}` over the permutations of
//! size `n` avoiding every pattern in `Π`. This crate computes `R_n(Π)` by
//! enumeration, expands it across the monomial, fundamental, peak, and
//! Schur Q bases with exact integer/rational arithmetic, and verifies the
//! closed forms it satisfies by brute force:
//!
//! - [`perm`]: permutations, descent/peak/valley statistics, pattern
//!   containment, and avoidance-class enumeration;
//! - [`tableau`]: Young and shifted diagrams, standard fillings, two-row
//!   counting formulas, and the S/S′ and a/b/c constructions;
//! - [`insertion`]: RSK and Sagan–Worley insertion, the map Φ, and its
//!   preimages;
//! - [`qsym`]: quasisymmetric expressions in the M/F/K bases, conversions,
//!   products, and polynomial specialization;
//! - [`schurq`]: Schur Q-functions and exact rational expansion into them;
//! - [`pattern`]: `R_n(Π)`, the closed-form table, the shuffle-product
//!   identity, and symmetry/positivity search;
//! - [`verify`]: the brute-force verification suites behind `peakfn verify`.

pub mod error;
pub mod insertion;
pub mod pattern;
pub mod perm;
pub mod qsym;
pub mod schurq;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use insertion::{phi, phi_preimage, rsk, sagan_worley, RskResult, SwResult};
pub use pattern::{closed_form, conjecture_check, find_nonsymmetric_witness, r_n, ClosedFormId};
pub use perm::{enumerate_av, peak_equivalent, IndexSet, PatternSet, Permutation, Symmetry};
pub use qsym::{Basis, Composition, QsymExpr};
pub use schurq::{expand_in_schurq, schur_q, ExpandOutcome, SchurQExpansion};
pub use tableau::{Partition, ShiftedTableau, StrictPartition, YoungTableau};

//! Multigraded free resolution data for monomial ideals.
//!
//! The crate computes Taylor and Scarf complexes, multigraded Betti numbers
//! (by strand homology and, independently, by minimalizing the Taylor
//! complex), the maximal shifts `t_a`, and evaluates the known inequalities
//! between maximal shifts of monomial ideals.

pub mod betti;
pub mod checks;
pub mod complex;
pub mod error;
mod faces;
pub mod field;
pub mod golden;
pub mod ideal;
pub mod linalg;
pub mod minimalize;
pub mod monomial;
pub mod random;
pub mod symbolic;

pub use betti::{
    graded_ranks, lcm_lattice, multigraded_betti, multigraded_betti_with_cap, projdim, shifts, BettiTable,
};
pub use checks::{
    check_consecutive, check_covering, check_general, check_multiple, check_range,
    check_subadditivity_profile, check_top, find_covering_pairs, Analysis, InequalityReport,
};
pub use complex::{
    is_minimal, restrict_complex, scarf_complex, shifts_of_complex, star_shift_bound,
    taylor_complex, verify_complex, FreeComplex, ShiftProfile,
};
pub use error::{Error, Result};
pub use faces::DEFAULT_GENERATOR_CAP;
pub use field::FieldSpec;
pub use ideal::{minimalize_generators, MonomialIdeal};
pub use minimalize::minimalize;
pub use monomial::{divides, format_monomial, join, parse_monomial, total_degree, Multidegree, RingContext};
pub use symbolic::{derive_symbolic_bounds, normalize_inequality, SymbolicBound};

//! Exact computations for the twisted group `(GL(N,ℂ), θ)`: restricted
//! roots and the norm map, twisted Weyl denominators, exponent orders,
//! Arthur parameters with their endoscopic factorizations, and reduction of
//! principal series data to Langlands position.

pub mod adjoint;
pub mod arthur;
pub mod campaign;
pub mod denominators;
pub mod error;
pub mod exact;
pub mod groups;
pub mod langlands;
pub mod linalg;
pub mod orders;
pub mod roots;
pub mod twisted;

pub use arthur::{
    e_psi, e_psi_raw, e_psi_total, endoscopic_catalog, factor_through, s_psi_is_central, validate, ArthurParameter,
    Block, EndoscopicDatum, Factorization, ParameterFile, UnitaryChar, Violation,
};
pub use denominators::{
    alternating_trace, check_den_lemma_1, check_den_lemma_2, check_wd_identity, denom_e_weyl, denom_n_theta,
    denom_operator, denom_product, is_contracting,
};
pub use error::{Error, Result};
pub use exact::{Cq, Q};
pub use groups::{ClassicalGroup, HKind};
pub use langlands::{
    candidate_exponents, induced_from_parameter, is_langlands_position, reduce_to_langlands, reduction_step,
    verify_theorem, DatumFile, InducedDatum, InducedEntry, Limits, ReductionTrace, StepKind, TheoremReport,
};
pub use orders::{compare, leq_e, leq_g, leq_h, leq_h_so_even, leq_product, leq_theta, ExpContext, Exponent, OrderKind};
pub use roots::{cone_membership, CoeffSet, Family, RootSystem, WeylElement};
pub use twisted::{
    classify_restricted_roots, correspondence_a, correspondence_h_to_g, correspondence_n, norm_on_characters,
    norm_torus, restriction_norm, transfer_factor_endo, transfer_factor_hg, RestrictedRoot, RootType, TorusPoint,
    TwistedDatum,
};

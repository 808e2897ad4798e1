//! Structural analysis of realizations: relation checks, irreducibility,
//! composition series, Leonard pairs and triples, intertwiners and the
//! closed-form predicates they are compared against.

mod composition;
mod criteria;
mod intertwiner;
mod irreducible;
mod leonard;
mod relations;
mod report;

pub use composition::{
    composition_series_aw, match_predicted_factors, predicted_factors, AnalysisError,
    CompositionFactor, CompositionSeries,
};
pub use criteria::{
    among_q_powers, criterion_daha, criterion_e, criterion_o, criterion_vd, daha_predicates,
    stepped_exponents, vd_predicates, Claim, Operator, Predicate,
};
pub use intertwiner::{find_intertwiner, intertwining_space};
pub use irreducible::{
    algebra_basis, algebra_dimension, burnside_irreducible, irreducibility, minimal_spin,
    proper_invariant_subspace, IrreducibilityVerdict,
};
pub use leonard::{leonard_check, leonard_pair_check, leonard_triple_check, LeonardVerdict};
pub use relations::{
    aw_central_character, aw_central_elements, verify_aw_centrality, verify_daha_relations,
};
pub use report::{Check, VerificationReport};

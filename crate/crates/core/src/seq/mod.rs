//! The dungeon sequences: exact streams, residue streams, growth estimates,
//! m-stable polynomial composition and the ordering checks.

mod checks;
mod growth;
mod modular;
mod stable;
mod stream;

pub use checks::{inequality_report, lbg_check, InequalityReport, InequalityRow, Violation};
pub use growth::{
    alpha_loglog_estimate, alpha_loglog_estimate_stepwise, gamma_loglog_estimate, growth_loglog,
    growth_ratio, tower_baseline_loglog_u, GrowthMode, GrowthPoint,
};
pub use modular::{
    pow_modulus, sequence_mod_stream, stabilization_of, stabilization_point, ModStream,
    Stabilization,
};
pub use stable::{
    compose_stable, composed_is_stable, digit_poly, is_m_stable, phi_composition, StablePoly,
    PHI_DEGREE_CAP,
};
pub use stream::{
    dungeon_chain, magnitude, sequence_stream, sequence_term, Grouping, SequenceId,
    SequenceStream, DEFAULT_DIGIT_BUDGET,
};

//! Representations of `GL_n(q)` over `K` on `I bar` and its subquotients.

pub mod checks;
pub mod rep;

pub use rep::{
    composition_series, eigenspace, eigenspaces, form_is_invariant, hom_dim, hom_space, invariant_forms,
    is_irreducible, line_count, lines_of, proper_eigen_spin, self_dual_check, socle, spin, spin_from,
    u_eigen_lines, CompSeries, ModRep, Provenance, RepCtx, SelfDual,
};
pub use checks::{
    casa_check, explore_socle, gow_conjecture, parabolic_character, section6_suite, CasaReport, GowReport,
    LevelVerdict, Section6Report, SocleReport,
};

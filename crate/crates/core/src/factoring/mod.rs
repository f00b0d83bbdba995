//! Token parsing of restricted blocks, ordering recovery, block tilings,
//! condensed forms, and probes of the small subshift.

mod cd;
mod condensed;
mod small;
mod tiling;

pub use cd::{decode_ordering, decompose_cd, restricted_mask, CDKind, CDToken, DecodedOrdering};
pub use condensed::{
    alternation_exclusion, condense_concat, condensed_form, exact_states, pure_union_first_failure,
    reachable_sets, Alt, AltState, AlternationVerdict, CondensedForm, PhaseOutcome, StateSet, ALT_CAP,
    DEFAULT_EXACT_LEVEL, DEFAULT_SPLIT_LEVELS,
};
pub use small::{
    intersection_probe, periodic_exclusion, run_context_report, small_subshift_orderings,
    Context, ContextReport, PeriodicEvidence, RunPattern, CONTEXT_RADIUS,
};
pub use tiling::{
    factor_block, factorization_ambiguities, unique_factorization_check, Ambiguity, TilingRule,
    DEFAULT_FACTOR_LEVEL_CAP, DEFAULT_TILING_RULE,
};

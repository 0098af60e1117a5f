pub mod decider;
pub mod enumerate;

pub use decider::{
    decide_gamma_m, decide_ppf, decide_with_value_set, prime_power_factors, reduce_value_group,
    CoefficientField, DecideConfig, RootDecision, RootQuery, SearchLog, ValueGroupReduction,
    Verdict,
};
pub use enumerate::{
    enumerate_well_ordered_dfaos, for_each_with_states, EnumConfig, EnumStats, TermFilter,
};

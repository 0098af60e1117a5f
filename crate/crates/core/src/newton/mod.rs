pub mod envelope;
pub mod oracle;
pub mod ore;
pub mod ramify;

pub use envelope::{
    envelope, envelope_of_lines, ramification_bound, Breakpoint, Envelope, Line, RamificationBound,
};
pub use oracle::{
    count_roots_oracle, in_value_group, residue_field, root_truncations, OracleConfig,
    RootTruncation,
};
pub use ore::{ore_additive_multiple, AdditivePolynomial};
pub use ramify::ramification_points;

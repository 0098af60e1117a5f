pub mod arith;
pub mod automatic;
pub mod checks;
pub mod exponent;
pub mod sample;
pub mod witness;

pub use automatic::{AutomaticSeries, SupportPrefix};
pub use checks::{check_well_formed, check_well_ordered, SaguaroReport};
pub use exponent::{expansion_of, expansion_value, Exponent};

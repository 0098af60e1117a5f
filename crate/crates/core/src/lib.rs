pub mod algebra;
pub mod automata;
pub mod decide;
pub mod error;
pub mod newton;
pub mod series;

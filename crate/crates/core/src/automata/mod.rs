pub mod dfao;
pub mod nfa;
pub mod text;

pub use dfao::{radix, Dfao, OutputAlphabet, Symbol, DEFAULT_STATE_CAP};
pub use nfa::{count_paths_mod, determinize, reverse, Nfa};

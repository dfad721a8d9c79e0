pub mod cli;
pub mod fibclass;
pub mod landscape;
pub mod minima;
pub mod numtheory;
pub mod polynomial;
pub mod predict;

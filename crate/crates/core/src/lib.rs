pub mod cli;
pub mod diophantine;
pub mod growth;
pub mod lattice;
pub mod parallel;
pub mod resolvent;
pub mod solver;
pub mod spectrum;
pub mod symbolic;

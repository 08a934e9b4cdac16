//! Workbench for SAT-based known-plaintext attacks on LFSR keystream
//! generators: CNF encoding of generator circuits, a CDCL solver, cube
//! partitionings with Monte-Carlo cost prediction, and decomposition-set
//! search by simulated annealing and tabu search.

pub mod a51;
pub mod cnf;
pub mod dimacs;
pub mod circuit;
pub mod oracle;
pub mod tseitin;

pub use cnf::{Assignment, Clause, Cnf, CnfError, Cube, Lit};

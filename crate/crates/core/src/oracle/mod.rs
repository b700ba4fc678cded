//! Slow, independent checks for the fast code paths.

pub mod bitmatrix;
pub mod expand;
pub mod secrecy;

pub use bitmatrix::{gf2_solve, gf2_solve_many, BitMatrix, Gf2Solution, Gf2Solve};
pub use expand::{mds_submatrix_check, oracle_decode, oracle_decode_one};
pub use secrecy::{secrecy_audit, SecrecyReport, Verdict};

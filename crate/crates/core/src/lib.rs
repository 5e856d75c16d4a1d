//! Byzantine-robust coded computation for Boolean functions and
//! multivariate polynomials.

pub mod boolfn;
pub mod cli;
pub mod codes;
pub mod field;
pub mod poly;
pub mod multipoly;
pub mod schemes;
pub mod simulator;
pub mod threshold;

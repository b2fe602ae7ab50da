//! Benchmark harness around the tabu-search truss optimizer: config
//! files, run reports, convergence traces and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod report;

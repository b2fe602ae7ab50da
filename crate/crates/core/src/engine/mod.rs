//! Tabu search engine: memory structures, control parameters and the
//! control loop.

pub mod config;
pub mod memory;
pub mod search;

pub use config::{reduce_step, ConfigError, SearchConfig};
pub use memory::{EliteList, TabuList};
pub use search::{
    run_search, AcceptKind, AcceptedPoint, Event, SearchError, SearchResult, TerminationReason,
    TraceRow,
};

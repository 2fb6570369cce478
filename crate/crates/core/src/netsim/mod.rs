//! Deterministic simulator of the network profiles travel over: content
//! addressed blocks, topic gossip, pinning clusters under churn, and mutable
//! name records.
//!
//! Everything is driven by a seeded RNG, so the same configuration and
//! workload always produce byte-identical reports.

mod block;
mod name;
mod report;
mod sim;
mod workload;

pub use block::{compute_cid, Access, Block, Cid, Token};
pub use name::NameRecord;
pub use report::{CidAvailability, MessageStats, Outcome, PinStats, PublicationReport, SimReport};
pub use sim::{run, SimConfig, Simulator, Topology, NAME_TOPIC};
pub use workload::{Event, NodeId, Step, Workload};

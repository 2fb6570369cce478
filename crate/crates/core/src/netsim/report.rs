use std::collections::BTreeMap;

use serde::Serialize;

use super::block::Cid;
use super::sim::SimConfig;
use super::workload::NodeId;
use crate::error::Result;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MessageStats {
    /// Push attempts, including those to offline neighbors.
    pub sent: u64,
    /// First-time receipts.
    pub delivered: u64,
    /// Receipts of a message the node had already seen.
    pub duplicates: u64,
    /// Pushes lost because the target was offline; retried later.
    pub dropped_offline: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublicationReport {
    pub topic: String,
    pub cid: Cid,
    pub publisher: NodeId,
    pub round: u64,
    /// Nodes other than the publisher subscribed to the topic at the end of the run.
    pub subscribers: usize,
    /// How many of those received the announcement.
    pub delivered: usize,
    pub last_delivery_round: Option<u64>,
}

impl PublicationReport {
    pub fn fully_delivered(&self) -> bool {
        self.delivered == self.subscribers
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinStats {
    pub cluster: String,
    pub replication: usize,
    pub rounds_observed: u64,
    /// Rounds in which every allocated replica was offline (before repair).
    pub unavailable_rounds: u64,
    pub unavailable_ratio: f64,
    /// Replica-rounds paid for: the sum over rounds of allocated replicas.
    pub storage_cost: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CidAvailability {
    pub first_round: u64,
    pub rounds_observed: u64,
    /// Rounds in which at least one online node held the block.
    pub rounds_available: u64,
    pub availability_ratio: f64,
    pub pins: Vec<PinStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub line: usize,
    pub round: u64,
    pub command: String,
    pub node: Option<NodeId>,
    pub target: String,
    /// `ok`, `offline`, `unavailable`, `access-denied` or `stale-sequence`.
    pub result: String,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub rounds_run: u64,
    pub messages: MessageStats,
    /// Rounds from publication to receipt -> number of receipts.
    pub delivery_rounds: BTreeMap<u64, u64>,
    pub publications: Vec<PublicationReport>,
    pub availability: BTreeMap<String, CidAvailability>,
    pub events: Vec<Outcome>,
}

impl SimReport {
    /// Pretty JSON with a stable key order.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

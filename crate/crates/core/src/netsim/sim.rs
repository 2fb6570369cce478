use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::block::{compute_cid, Access, Block, Cid, Token};
use super::name::NameRecord;
use super::report::{
    CidAvailability, MessageStats, Outcome, PinStats, PublicationReport, SimReport,
};
use super::workload::{Event, NodeId, Step, Workload};
use crate::error::{Error, Result};
use crate::ldp::Seed;

/// Name records travel on this topic; every node relays and stores them.
pub const NAME_TOPIC: &str = "/names";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Ring,
    /// Connected random graph where every node has at least `degree` neighbors.
    Random { degree: usize },
    Full,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Ring => f.write_str("ring"),
            Topology::Random { degree } => write!(f, "random:{degree}"),
            Topology::Full => f.write_str("full"),
        }
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(Topology::Ring),
            "full" => Ok(Topology::Full),
            _ => s
                .strip_prefix("random:")
                .and_then(|d| d.parse().ok())
                .map(|degree| Topology::Random { degree })
                .ok_or_else(|| {
                    Error::InvalidInput(format!("topology must be ring, full or random:<degree>, got {s:?}"))
                }),
        }
    }
}

impl Serialize for Topology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub nodes: usize,
    pub topology: Topology,
    pub gossip_fanout: usize,
    /// Per-round, per-node probability of being offline.
    pub churn_offline_prob: f64,
    /// Minimum number of rounds to simulate.
    pub rounds: u64,
    pub seed: Seed,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            nodes: 16,
            topology: Topology::Random { degree: 4 },
            gossip_fanout: 2,
            churn_offline_prob: 0.0,
            rounds: 0,
            seed: Seed(1),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Config("need at least one node".into()));
        }
        if self.gossip_fanout == 0 {
            return Err(Error::Config("gossip fanout must be at least 1".into()));
        }
        if let Topology::Random { degree: 0 } = self.topology {
            return Err(Error::Config("random topology degree must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.churn_offline_prob) {
            return Err(Error::Config("churn probability must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
struct Node {
    online: bool,
    /// Forced offline by the workload; churn cannot bring it back.
    held_offline: bool,
    pinned: BTreeSet<Cid>,
    cached: BTreeSet<Cid>,
    subscriptions: BTreeSet<String>,
    names: BTreeMap<String, NameRecord>,
    neighbors: Vec<NodeId>,
}

impl Node {
    fn holds(&self, cid: &Cid) -> bool {
        self.pinned.contains(cid) || self.cached.contains(cid)
    }
}

#[derive(Debug, Clone)]
enum Payload {
    Announce(Cid),
    Name(NameRecord),
}

#[derive(Debug, Clone)]
struct Message {
    topic: String,
    payload: Payload,
    origin: NodeId,
    round: u64,
    /// Round each node first received the message; the origin counts as round of publication.
    received: Vec<Option<u64>>,
    /// Neighbors each holder has not yet reached.
    pending: Vec<Vec<NodeId>>,
}

#[derive(Debug, Clone, Default)]
struct Cluster {
    members: Vec<NodeId>,
    pinset: BTreeMap<Cid, usize>,
    allocations: BTreeMap<Cid, BTreeSet<NodeId>>,
}

#[derive(Debug, Clone, Default)]
struct Tracking {
    first_round: u64,
    rounds_observed: u64,
    rounds_available: u64,
}

#[derive(Debug, Clone, Default)]
struct PinTracking {
    rounds_observed: u64,
    unavailable_rounds: u64,
    replica_rounds: u64,
}

/// Deterministic round-based simulator of the profile distribution network.
///
/// Each call to [`Simulator::tick`] advances one round:
/// 1. churn: every node not held offline is offline with probability `q`;
///    going offline evicts its cache, pinned blocks stay;
/// 2. availability is measured (before any repair);
/// 3. clusters re-replicate pinned blocks onto online members;
/// 4. one gossip step: each online holder pushes to up to `fanout` neighbors
///    it has not reached yet.
pub struct Simulator {
    config: SimConfig,
    round: u64,
    nodes: Vec<Node>,
    blocks: BTreeMap<Cid, Block>,
    clusters: BTreeMap<String, Cluster>,
    messages: Vec<Message>,
    rng: ChaCha8Rng,
    stats: MessageStats,
    delivery_rounds: BTreeMap<u64, u64>,
    tracking: BTreeMap<Cid, Tracking>,
    pin_tracking: BTreeMap<(String, Cid), PinTracking>,
    outcomes: Vec<Outcome>,
}

impl Simulator {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let mut nodes = vec![
            Node {
                online: true,
                ..Node::default()
            };
            config.nodes
        ];
        for (i, adj) in build_topology(&config).into_iter().enumerate() {
            nodes[i].neighbors = adj.into_iter().collect();
            nodes[i].subscriptions.insert(NAME_TOPIC.to_string());
        }
        Ok(Self {
            rng: config.seed.derive_str("dynamics").rng(),
            config,
            round: 0,
            nodes,
            blocks: BTreeMap::new(),
            clusters: BTreeMap::new(),
            messages: Vec::new(),
            stats: MessageStats::default(),
            delivery_rounds: BTreeMap::new(),
            tracking: BTreeMap::new(),
            pin_tracking: BTreeMap::new(),
            outcomes: Vec::new(),
        })
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.nodes[node].neighbors
    }

    pub fn is_online(&self, node: NodeId) -> bool {
        self.nodes[node].online
    }

    pub fn holds(&self, node: NodeId, cid: &Cid) -> bool {
        self.nodes[node].holds(cid)
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if node >= self.nodes.len() {
            return Err(Error::InvalidInput(format!(
                "node {node} out of range (network has {})",
                self.nodes.len()
            )));
        }
        Ok(())
    }

    fn ensure_online(&self, node: NodeId) -> Result<()> {
        self.check_node(node)?;
        if !self.nodes[node].online {
            return Err(Error::Offline(format!("n{node}")));
        }
        Ok(())
    }

    fn set_online(&mut self, node: NodeId, online: bool) {
        let n = &mut self.nodes[node];
        if n.online && !online {
            n.cached.clear();
        }
        n.online = online;
    }

    pub fn set_offline(&mut self, node: NodeId) -> Result<()> {
        self.check_node(node)?;
        self.nodes[node].held_offline = true;
        self.set_online(node, false);
        Ok(())
    }

    pub fn set_online_now(&mut self, node: NodeId) -> Result<()> {
        self.check_node(node)?;
        self.nodes[node].held_offline = false;
        self.set_online(node, true);
        Ok(())
    }

    pub fn subscribe(&mut self, node: NodeId, topic: &str) -> Result<()> {
        self.check_node(node)?;
        self.nodes[node].subscriptions.insert(topic.to_string());
        Ok(())
    }

    fn track(&mut self, cid: Cid) {
        let round = self.round;
        self.tracking.entry(cid).or_insert_with(|| Tracking {
            first_round: round,
            ..Tracking::default()
        });
    }

    fn mesh(&self, node: NodeId, topic: &str, except: Option<NodeId>) -> Vec<NodeId> {
        self.nodes[node]
            .neighbors
            .iter()
            .copied()
            .filter(|&n| Some(n) != except && self.nodes[n].subscriptions.contains(topic))
            .collect()
    }

    fn start_message(&mut self, origin: NodeId, topic: &str, payload: Payload) {
        let n = self.nodes.len();
        let mut received = vec![None; n];
        received[origin] = Some(self.round);
        let mut pending = vec![Vec::new(); n];
        pending[origin] = self.mesh(origin, topic, None);
        self.messages.push(Message {
            topic: topic.to_string(),
            payload,
            origin,
            round: self.round,
            received,
            pending,
        });
    }

    /// Stores `content` at `node`, pinned, and announces its CID on `topic`.
    pub fn publish(
        &mut self,
        node: NodeId,
        topic: &str,
        content: Vec<u8>,
        token: Option<Token>,
    ) -> Result<Cid> {
        self.ensure_online(node)?;
        let access = token.map_or(Access::Public, Access::Capability);
        let block = Block::new(content, access);
        let cid = block.cid();
        self.blocks.entry(cid).or_insert(block);
        self.nodes[node].pinned.insert(cid);
        self.nodes[node].cached.remove(&cid);
        self.track(cid);
        self.start_message(node, topic, Payload::Announce(cid));
        Ok(cid)
    }

    /// Retrieves a block through the provider index, caching it at `node`.
    pub fn fetch(&mut self, node: NodeId, cid: &Cid, token: Option<&Token>) -> Result<Vec<u8>> {
        self.ensure_online(node)?;
        let provided = self.nodes.iter().any(|n| n.online && n.holds(cid));
        let block = match self.blocks.get(cid) {
            Some(b) if provided => b,
            _ => return Err(Error::Unavailable(cid.to_string())),
        };
        let bytes = block.open(token)?.to_vec();
        if compute_cid(&bytes) != *cid {
            return Err(Error::Unavailable(format!("{cid} (content mismatch)")));
        }
        if !self.nodes[node].pinned.contains(cid) {
            self.nodes[node].cached.insert(*cid);
        }
        Ok(bytes)
    }

    pub fn define_cluster(&mut self, name: &str, members: Vec<NodeId>) -> Result<()> {
        for &m in &members {
            self.check_node(m)?;
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::Config(format!("cluster {name} has no members")));
        }
        self.clusters.insert(
            name.to_string(),
            Cluster {
                members,
                ..Cluster::default()
            },
        );
        Ok(())
    }

    /// Adds `cid` to the cluster's pinset with replication factor `r` and
    /// replicates immediately as far as online members allow.
    pub fn cluster_pin(&mut self, cluster: &str, cid: Cid, r: usize) -> Result<()> {
        let c = self
            .clusters
            .get_mut(cluster)
            .ok_or_else(|| Error::Config(format!("unknown cluster {cluster}")))?;
        if r == 0 || r > c.members.len() {
            return Err(Error::Config(format!(
                "replication factor {r} must be in [1, {}] for cluster {cluster}",
                c.members.len()
            )));
        }
        if !self.blocks.contains_key(&cid) {
            return Err(Error::Unavailable(cid.to_string()));
        }
        c.pinset.insert(cid, r);
        c.allocations.entry(cid).or_default();
        self.track(cid);
        self.pin_tracking
            .entry((cluster.to_string(), cid))
            .or_default();
        self.repair(cluster, cid);
        Ok(())
    }

    /// Nodes currently allocated to hold `cid` for `cluster`.
    pub fn replicas(&self, cluster: &str, cid: &Cid) -> Vec<NodeId> {
        self.clusters
            .get(cluster)
            .and_then(|c| c.allocations.get(cid))
            .map(|a| a.iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn online_replicas(&self, cluster: &str, cid: &Cid) -> usize {
        self.replicas(cluster, cid)
            .into_iter()
            .filter(|&n| self.nodes[n].online)
            .count()
    }

    fn repair(&mut self, cluster: &str, cid: Cid) {
        let c = &self.clusters[cluster];
        let r = c.pinset[&cid];
        let alloc = &c.allocations[&cid];
        let online_alloc = alloc.iter().filter(|&&n| self.nodes[n].online).count();
        if online_alloc >= r {
            return;
        }
        if !self.nodes.iter().any(|n| n.online && n.holds(&cid)) {
            return;
        }
        let spare: Vec<NodeId> = c
            .members
            .iter()
            .copied()
            .filter(|n| self.nodes[*n].online && !alloc.contains(n))
            .collect();
        let wanted = (r - online_alloc).min(spare.len());
        let mut picked: Vec<NodeId> = sample(&mut self.rng, spare.len(), wanted)
            .into_iter()
            .map(|i| spare[i])
            .collect();
        picked.sort_unstable();
        let mut stale: Vec<NodeId> = alloc
            .iter()
            .copied()
            .filter(|&n| !self.nodes[n].online)
            .collect();
        let mut alloc = alloc.clone();
        for node in picked {
            if alloc.len() >= r {
                if let Some(old) = stale.pop() {
                    alloc.remove(&old);
                    self.nodes[old].pinned.remove(&cid);
                }
            }
            alloc.insert(node);
            self.nodes[node].pinned.insert(cid);
            self.nodes[node].cached.remove(&cid);
        }
        self.clusters
            .get_mut(cluster)
            .unwrap()
            .allocations
            .insert(cid, alloc);
    }

    /// Publishes the owner's next record for `name`, pointing at `cid`.
    pub fn update_name(&mut self, owner: NodeId, name: &str, cid: Cid) -> Result<NameRecord> {
        self.check_node(owner)?;
        let next = match self.nodes[owner].names.get(name) {
            Some(current) => current.update(cid),
            None => NameRecord::new(name, cid),
        };
        self.publish_name_record(owner, next)
    }

    /// Publishes an explicit record; it must directly succeed the owner's copy.
    pub fn publish_name_record(&mut self, owner: NodeId, record: NameRecord) -> Result<NameRecord> {
        self.ensure_online(owner)?;
        let record = match self.nodes[owner].names.get(&record.name) {
            Some(current) => current.accept(record)?,
            None if record.sequence == 1 => record,
            None => {
                return Err(Error::StaleSequence {
                    name: record.name,
                    got: record.sequence,
                    expected: 1,
                })
            }
        };
        self.nodes[owner]
            .names
            .insert(record.name.clone(), record.clone());
        self.start_message(owner, NAME_TOPIC, Payload::Name(record.clone()));
        Ok(record)
    }

    /// The newest CID `node` has seen for `name`.
    pub fn resolve_name(&self, node: NodeId, name: &str) -> Result<Option<Cid>> {
        self.ensure_online(node)?;
        Ok(self.nodes[node].names.get(name).map(|r| r.current))
    }

    /// Whether `node` has received the announcement of `cid` on `topic`.
    pub fn has_announcement(&self, node: NodeId, topic: &str, cid: &Cid) -> bool {
        self.messages.iter().any(|m| {
            m.topic == topic
                && matches!(m.payload, Payload::Announce(c) if c == *cid)
                && m.received[node].is_some()
        })
    }

    pub fn tick(&mut self) {
        self.round += 1;
        let q = self.config.churn_offline_prob;
        if q > 0.0 {
            for i in 0..self.nodes.len() {
                let up = self.rng.random::<f64>() >= q;
                let held = self.nodes[i].held_offline;
                self.set_online(i, up && !held);
            }
        }
        self.measure();
        let pins: Vec<(String, Cid)> = self
            .clusters
            .iter()
            .flat_map(|(name, c)| c.pinset.keys().map(move |cid| (name.clone(), *cid)))
            .collect();
        for (cluster, cid) in pins {
            self.repair(&cluster, cid);
        }
        self.gossip();
    }

    fn measure(&mut self) {
        for (cid, t) in self.tracking.iter_mut() {
            t.rounds_observed += 1;
            if self.nodes.iter().any(|n| n.online && n.holds(cid)) {
                t.rounds_available += 1;
            }
        }
        for ((cluster, cid), t) in self.pin_tracking.iter_mut() {
            let alloc = &self.clusters[cluster].allocations[cid];
            t.rounds_observed += 1;
            t.replica_rounds += alloc.len() as u64;
            if !alloc.iter().any(|&n| self.nodes[n].online) {
                t.unavailable_rounds += 1;
            }
        }
    }

    fn gossip(&mut self) {
        let round = self.round;
        let fanout = self.config.gossip_fanout;
        for mi in 0..self.messages.len() {
            let mut arrivals: Vec<(NodeId, NodeId)> = Vec::new();
            for sender in 0..self.nodes.len() {
                let ready = matches!(self.messages[mi].received[sender], Some(r) if r < round);
                if !ready || !self.nodes[sender].online || self.messages[mi].pending[sender].is_empty() {
                    continue;
                }
                let pending = &self.messages[mi].pending[sender];
                let targets: Vec<NodeId> = if pending.len() <= fanout {
                    pending.clone()
                } else {
                    let mut idx: Vec<usize> = sample(&mut self.rng, pending.len(), fanout).into_vec();
                    idx.sort_unstable();
                    idx.into_iter().map(|i| pending[i]).collect()
                };
                for target in targets {
                    self.stats.sent += 1;
                    if !self.nodes[target].online {
                        self.stats.dropped_offline += 1;
                        continue;
                    }
                    let msg = &mut self.messages[mi];
                    msg.pending[sender].retain(|&n| n != target);
                    if msg.received[target].is_some() {
                        self.stats.duplicates += 1;
                    } else {
                        msg.received[target] = Some(round);
                        arrivals.push((target, sender));
                    }
                }
            }
            for (node, from) in arrivals {
                self.stats.delivered += 1;
                let (topic, published, payload) = {
                    let m = &self.messages[mi];
                    (m.topic.clone(), m.round, m.payload.clone())
                };
                *self.delivery_rounds.entry(round - published).or_insert(0) += 1;
                let next = self.mesh(node, &topic, Some(from));
                self.messages[mi].pending[node] = next;
                if let Payload::Name(record) = payload {
                    let names = &mut self.nodes[node].names;
                    let merged = match names.remove(&record.name) {
                        Some(old) => old.newest(record),
                        None => record,
                    };
                    names.insert(merged.name.clone(), merged);
                }
            }
        }
    }

    /// Applies one workload step. Network-level failures (offline nodes,
    /// unavailable blocks, denied access) are recorded as outcomes; malformed
    /// steps abort with a script error.
    pub fn apply(&mut self, step: &Step) -> Result<()> {
        let line = step.line;
        let script = |e: Error| Error::Script {
            line,
            reason: e.to_string(),
        };
        let round = self.round;
        let record = |sim: &mut Self, command: &str, node: Option<NodeId>, target: String, res: Result<Option<String>>| {
            let (result, detail) = match res {
                Ok(detail) => ("ok".to_string(), detail),
                Err(e) => (outcome_label(&e).to_string(), Some(e.to_string())),
            };
            sim.outcomes.push(Outcome {
                line,
                round,
                command: command.to_string(),
                node,
                target,
                result,
                detail,
            });
        };
        match &step.event {
            Event::Round(n) => {
                if *n < self.round {
                    return Err(script(Error::InvalidInput(format!(
                        "round {n} is before the current round {}",
                        self.round
                    ))));
                }
                while self.round < *n {
                    self.tick();
                }
            }
            Event::Subscribe { node, topic } => self.subscribe(*node, topic).map_err(script)?,
            Event::Publish {
                node,
                topic,
                content,
                token,
            } => {
                self.check_node(*node).map_err(script)?;
                let cid = compute_cid(content);
                let res = self
                    .publish(*node, topic, content.clone(), token.clone())
                    .map(|_| None);
                record(self, "publish", Some(*node), cid.to_string(), res);
            }
            Event::Fetch { node, cid, token } => {
                self.check_node(*node).map_err(script)?;
                let res = self
                    .fetch(*node, cid, token.as_ref())
                    .map(|b| Some(format!("{} bytes", b.len())));
                record(self, "fetch", Some(*node), cid.to_string(), res);
            }
            Event::Cluster { name, members } => {
                self.define_cluster(name, members.clone()).map_err(script)?
            }
            Event::Pin {
                cluster,
                cid,
                replicas,
            } => match self.cluster_pin(cluster, *cid, *replicas) {
                Err(e @ Error::Config(_)) => return Err(script(e)),
                res => record(self, "pin", None, cid.to_string(), res.map(|_| None)),
            },
            Event::Offline(node) => self.set_offline(*node).map_err(script)?,
            Event::Online(node) => self.set_online_now(*node).map_err(script)?,
            Event::NameUpdate { name, cid, owner } => {
                self.check_node(*owner).map_err(script)?;
                let res = self
                    .update_name(*owner, name, *cid)
                    .map(|r| Some(format!("sequence {}", r.sequence)));
                record(self, "name-update", Some(*owner), name.clone(), res);
            }
            Event::Resolve { node, name } => {
                self.check_node(*node).map_err(script)?;
                let res = self
                    .resolve_name(*node, name)
                    .map(|c| Some(c.map_or("unresolved".to_string(), |c| c.to_string())));
                record(self, "resolve", Some(*node), name.clone(), res);
            }
        }
        Ok(())
    }

    pub fn report(&self) -> SimReport {
        let mut availability = BTreeMap::new();
        for (cid, t) in &self.tracking {
            let pins = self
                .pin_tracking
                .iter()
                .filter(|((_, c), _)| c == cid)
                .map(|((cluster, _), p)| PinStats {
                    cluster: cluster.clone(),
                    replication: self.clusters[cluster].pinset[cid],
                    rounds_observed: p.rounds_observed,
                    unavailable_rounds: p.unavailable_rounds,
                    unavailable_ratio: ratio(p.unavailable_rounds, p.rounds_observed),
                    storage_cost: p.replica_rounds,
                })
                .collect();
            availability.insert(
                cid.to_string(),
                CidAvailability {
                    first_round: t.first_round,
                    rounds_observed: t.rounds_observed,
                    rounds_available: t.rounds_available,
                    availability_ratio: ratio(t.rounds_available, t.rounds_observed),
                    pins,
                },
            );
        }
        let publications = self
            .messages
            .iter()
            .filter_map(|m| {
                let Payload::Announce(cid) = m.payload else {
                    return None;
                };
                let subscribers: Vec<NodeId> = (0..self.nodes.len())
                    .filter(|&n| n != m.origin && self.nodes[n].subscriptions.contains(&m.topic))
                    .collect();
                let delivered: Vec<u64> = subscribers.iter().filter_map(|&n| m.received[n]).collect();
                Some(PublicationReport {
                    topic: m.topic.clone(),
                    cid,
                    publisher: m.origin,
                    round: m.round,
                    subscribers: subscribers.len(),
                    delivered: delivered.len(),
                    last_delivery_round: delivered.into_iter().max(),
                })
            })
            .collect();
        SimReport {
            config: self.config.clone(),
            rounds_run: self.round,
            messages: self.stats.clone(),
            delivery_rounds: self.delivery_rounds.clone(),
            publications,
            availability,
            events: self.outcomes.clone(),
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn outcome_label(e: &Error) -> &'static str {
    match e {
        Error::Offline(_) => "offline",
        Error::Unavailable(_) => "unavailable",
        Error::AccessDenied(_) => "access-denied",
        Error::StaleSequence { .. } => "stale-sequence",
        _ => "error",
    }
}

fn build_topology(config: &SimConfig) -> Vec<BTreeSet<NodeId>> {
    let n = config.nodes;
    let mut adj = vec![BTreeSet::new(); n];
    let link = |a: NodeId, b: NodeId, adj: &mut Vec<BTreeSet<NodeId>>| {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    };
    match config.topology {
        Topology::Ring => {
            for i in 0..n {
                link(i, (i + 1) % n, &mut adj);
            }
        }
        Topology::Full => {
            for i in 0..n {
                for j in i + 1..n {
                    link(i, j, &mut adj);
                }
            }
        }
        Topology::Random { degree } => {
            let mut rng = config.seed.derive_str("topology").rng();
            // random spanning tree keeps the graph connected
            for i in 1..n {
                let j = rng.random_range(0..i);
                link(i, j, &mut adj);
            }
            let target = degree.min(n.saturating_sub(1));
            for i in 0..n {
                while adj[i].len() < target {
                    let j = rng.random_range(0..n);
                    link(i, j, &mut adj);
                }
            }
        }
    }
    adj
}

/// Runs `workload` to completion, then idles until `config.rounds` is reached.
pub fn run(config: &SimConfig, workload: &Workload) -> Result<SimReport> {
    let mut sim = Simulator::new(config.clone())?;
    for step in &workload.steps {
        sim.apply(step)?;
    }
    while sim.round() < config.rounds {
        sim.tick();
    }
    Ok(sim.report())
}

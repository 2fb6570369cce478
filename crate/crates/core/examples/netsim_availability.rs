//! Pinned profile availability under churn: the fraction of rounds in which
//! every replica is offline, against the independent-failure law q^r.
//!
//! ```bash
//! cargo run --release -p privrec --example netsim_availability
//! ```

use privrec::netsim::{SimConfig, Simulator, Topology};
use privrec::Seed;

fn main() -> privrec::Result<()> {
    let q = 0.3;
    let rounds = 10_000;
    println!("{:>2} {:>10} {:>10} {:>12}", "r", "observed", "q^r", "storage");
    for r in 1..=4 {
        let mut sim = Simulator::new(SimConfig {
            nodes: 12,
            topology: Topology::Full,
            gossip_fanout: 2,
            churn_offline_prob: q,
            rounds: 0,
            seed: Seed(r as u64),
        })?;
        let cid = sim.publish(0, "profiles", b"pinned profile".to_vec(), None)?;
        sim.define_cluster("recruiters", (0..12).collect())?;
        sim.cluster_pin("recruiters", cid, r)?;
        for _ in 0..rounds {
            sim.tick();
        }
        let report = sim.report();
        let pin = &report.availability[&cid.to_string()].pins[0];
        println!(
            "{r:>2} {:>10.5} {:>10.5} {:>12}",
            pin.unavailable_ratio,
            q.powi(r as i32),
            pin.storage_cost
        );
    }
    Ok(())
}

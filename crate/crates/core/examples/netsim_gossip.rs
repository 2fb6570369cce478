//! Topic gossip on a random 64-node network: delivery round histogram,
//! message overhead, gated fetches and name record updates.
//!
//! ```bash
//! cargo run -p privrec --example netsim_gossip
//! ```

use privrec::netsim::{compute_cid, SimConfig, Simulator, Token, Topology};
use privrec::Seed;

fn main() -> privrec::Result<()> {
    let mut sim = Simulator::new(SimConfig {
        nodes: 64,
        topology: Topology::Random { degree: 4 },
        gossip_fanout: 2,
        churn_offline_prob: 0.0,
        rounds: 0,
        seed: Seed(3),
    })?;
    for node in 0..64 {
        sim.subscribe(node, "jobs/data-science")?;
    }
    let cid = sim.publish(0, "jobs/data-science", b"candidate profile bytes".to_vec(), Some(Token::new("recruiter-key")))?;
    for _ in 0..20 {
        sim.tick();
    }
    let report = sim.report();
    let p = &report.publications[0];
    println!("{} reached {}/{} subscribers by round {:?}", cid.short(), p.delivered, p.subscribers, p.last_delivery_round);
    println!("delivery rounds histogram: {:?}", report.delivery_rounds);
    println!("messages: {:?}", report.messages);

    println!("fetch without token: {:?}", sim.fetch(5, &cid, None).err());
    println!("fetch with token: {} bytes", sim.fetch(5, &cid, Some(&Token::new("recruiter-key")))?.len());

    sim.update_name(0, "alice", cid)?;
    let v2 = compute_cid(b"updated profile");
    sim.update_name(0, "alice", v2)?;
    for _ in 0..20 {
        sim.tick();
    }
    println!("node 63 resolves alice -> {:?}", sim.resolve_name(63, "alice")?.map(|c| c.short()));
    Ok(())
}

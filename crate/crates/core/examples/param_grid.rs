//! Bloom filter length and hash-count grid at ε = ln 3: mean precision@20 of
//! the perturbed model for every (m, k) pair.
//!
//! ```bash
//! cargo run --release -p privrec --example param_grid
//! ```

use privrec::corpus::{generate_synthetic, SynthConfig};
use privrec::eval::{summarize, Evaluator, ExperimentConfig, Model};

fn main() -> privrec::Result<()> {
    let corpus = generate_synthetic(&SynthConfig::default())?;
    let mut evaluator = Evaluator::new(&corpus)?;
    let ks = [1u32, 2, 4, 8];

    print!("{:>6}", "m \\ k");
    for k in ks {
        print!("{k:>9}");
    }
    println!();
    for m in [512usize, 1024, 2048, 4096] {
        print!("{m:>6}");
        for k in ks {
            let rows = evaluator.run(&ExperimentConfig {
                model: Model::BfDp,
                m,
                k,
                epsilons: vec![3f64.ln()],
                ..ExperimentConfig::default()
            })?;
            print!("{:>9.4}", summarize(&rows)[0].mean_precision);
        }
        println!();
    }
    Ok(())
}

//! Privacy-utility sweep on a synthetic corpus: mean precision@20 and average
//! precision of the plain Bloom filter model and the perturbed model across ε.
//!
//! ```bash
//! cargo run --release -p privrec --example eval_sweep
//! ```

use privrec::corpus::{generate_synthetic, SynthConfig};
use privrec::eval::{summarize, Evaluator, ExperimentConfig, Model};

fn main() -> privrec::Result<()> {
    let corpus = generate_synthetic(&SynthConfig::default())?;
    let stats = corpus.stats();
    println!(
        "corpus: {} jobs, {} candidates, {} open, {:.1} keywords/job",
        stats.jobs, stats.candidates, stats.open_jobs, stats.mean_keywords_per_job
    );

    let mut evaluator = Evaluator::new(&corpus)?;
    let base = ExperimentConfig::default();
    let mut rows = evaluator.run(&ExperimentConfig {
        model: Model::Bf,
        ..base.clone()
    })?;
    rows.extend(evaluator.run(&ExperimentConfig {
        model: Model::BfDp,
        epsilons: vec![2f64.ln(), 3f64.ln(), 2.0, 4.0, 7.0, 10.0],
        ..base
    })?);

    println!("{:<6} {:>8} {:>10} {:>8} {:>10}", "model", "epsilon", "prec@20", "sd", "AP");
    for s in summarize(&rows) {
        let eps = s.epsilon.map_or("-".to_string(), |e| format!("{e:.3}"));
        println!(
            "{:<6} {:>8} {:>10.4} {:>8.4} {:>10.4}",
            s.model.name(),
            eps,
            s.mean_precision,
            s.std_precision,
            s.mean_ap
        );
    }
    Ok(())
}

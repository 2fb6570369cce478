//! Local job recommendation: a candidate ranks open jobs against their own,
//! unperturbed profile, with an optional similarity threshold.
//!
//! ```bash
//! cargo run --release -p privrec --example recommend_jobs
//! ```

use privrec::corpus::{generate_synthetic, SynthConfig};
use privrec::{rank_jobs_for_candidate, BloomProfile, KeywordSet, Role};

fn main() -> privrec::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        jobs: 300,
        open_jobs: 100,
        candidates: 8,
        ..SynthConfig::default()
    })?;
    let (cand, applied) = corpus.applications.iter().next().expect("candidates exist");
    let keywords: KeywordSet = applied.iter().flat_map(|j| corpus.jobs[j].iter()).collect();
    let me = BloomProfile::from_keywords(&keywords, 4096, 1, Role::Candidate)?;

    let jobs: Vec<(String, BloomProfile)> = corpus
        .open_jobs
        .iter()
        .map(|id| Ok((id.clone(), BloomProfile::from_keywords(&corpus.jobs[id], 4096, 1, Role::Job)?)))
        .collect::<privrec::Result<_>>()?;

    println!("top 5 open jobs for {cand} (applied to {} jobs):", applied.len());
    for e in &rank_jobs_for_candidate(&me, &jobs, 5, None)?.entries {
        println!("  {} {:.4}", e.id, e.score.value);
    }
    let strict = rank_jobs_for_candidate(&me, &jobs, 20, Some(0.25))?;
    println!("{} of the top 20 exceed similarity 0.25", strict.len());
    Ok(())
}

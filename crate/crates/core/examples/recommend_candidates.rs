//! Recruiter-side ranking: candidates publish perturbed applied-job profiles
//! and the recruiter ranks them for an open job by mean private cosine.
//!
//! ```bash
//! cargo run --release -p privrec --example recommend_candidates
//! ```

use privrec::corpus::{generate_synthetic, SynthConfig};
use privrec::eval::perturb_histories;
use privrec::{rank_candidates_for_job, CorrectionVariant, PrivacyParams, Seed};

fn main() -> privrec::Result<()> {
    let corpus = generate_synthetic(&SynthConfig {
        jobs: 400,
        open_jobs: 50,
        candidates: 32,
        ..SynthConfig::default()
    })?;
    let profiles = corpus.job_profiles(4096, 1)?;
    let histories = corpus.candidate_histories(&profiles)?;
    let job_id = &corpus.open_jobs[0];
    let job = &profiles[job_id];

    let exact = rank_candidates_for_job(job, &histories, None, CorrectionVariant::JobOnes, 10, None)?;
    let params = PrivacyParams::new(3f64.ln(), 1)?;
    let published = perturb_histories(&histories, &params, Seed(5))?;
    let private = rank_candidates_for_job(
        job,
        &published,
        Some(&params),
        CorrectionVariant::JobOnes,
        10,
        None,
    )?;

    println!("{:<4} {:<16} {:<16}", "rank", "unperturbed", "perturbed (ln 3)");
    for (i, (a, b)) in exact.entries.iter().zip(&private.entries).enumerate() {
        println!(
            "{:<4} {} {:.3}     {} {:.3}",
            i + 1,
            a.id,
            a.score.value,
            b.id,
            b.score.value
        );
    }
    let overlap = private.ids().filter(|id| exact.ids().any(|x| x == *id)).count();
    println!("top-10 overlap: {overlap}/10 for {job_id}");
    Ok(())
}

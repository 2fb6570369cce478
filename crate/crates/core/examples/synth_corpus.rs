//! Generates a synthetic corpus with topic structure, saves it as a profile
//! directory and loads it back.
//!
//! ```bash
//! cargo run --release -p privrec --example synth_corpus
//! ```

use privrec::corpus::{generate_synthetic, load_corpus, load_profile, save_corpus, SynthConfig};

fn main() -> privrec::Result<()> {
    let config = SynthConfig {
        jobs: 500,
        open_jobs: 100,
        candidates: 16,
        ..SynthConfig::default()
    };
    let corpus = generate_synthetic(&config)?;
    let s = corpus.stats();
    println!(
        "{} jobs ({} open), {} candidates, keywords/job {}..{} (mean {:.1}), {:.1} applications each",
        s.jobs,
        s.open_jobs,
        s.candidates,
        s.min_keywords_per_job,
        s.max_keywords_per_job,
        s.mean_keywords_per_job,
        s.mean_applications
    );

    let dir = std::env::temp_dir().join("privrec-synth-example");
    let index = save_corpus(&corpus, &dir, 4096, 1)?;
    let loaded = load_corpus(&dir)?;
    assert_eq!(loaded.corpus(), corpus);
    let first = &index.jobs[0];
    let profile = load_profile(&dir, &loaded, &first.id)?;
    println!(
        "saved to {}; {} -> {} with {} bits set",
        dir.display(),
        first.id,
        first.file,
        profile.ones()
    );
    Ok(())
}

//! Keyword sets as Bloom filter profiles: hashing, membership, similarity,
//! and the canonical byte layout.
//!
//! ```bash
//! cargo run -p privrec --example bloom_profiles
//! ```

use privrec::{cosine, hash_positions, BloomProfile, KeywordSet, Role};

fn main() -> privrec::Result<()> {
    let job: KeywordSet = ["python", "statistics", "sql", "pandas"].iter().collect();
    let candidate: KeywordSet = ["python", "statistics", "excel"].iter().collect();

    for kw in job.iter() {
        println!("{kw:<12} -> positions {:?}", hash_positions(kw, 4096, 2)?);
    }

    let job_bf = BloomProfile::from_keywords(&job, 4096, 2, Role::Job)?;
    let cand_bf = BloomProfile::from_keywords(&candidate, 4096, 2, Role::Candidate)?;
    println!("job ones = {}, candidate ones = {}", job_bf.ones(), cand_bf.ones());
    println!("job contains 'sql'? {}", job_bf.contains("sql")?);
    println!("job contains 'java'? {} (false positives are possible)", job_bf.contains("java")?);
    println!("cosine(job, candidate) = {:.4}", cosine(&job_bf, &cand_bf)?.value);

    let bytes = job_bf.to_bytes();
    println!("serialized: {} bytes, header {:02x?}", bytes.len(), &bytes[..21]);
    assert_eq!(BloomProfile::from_bytes(&bytes)?, job_bf);
    Ok(())
}

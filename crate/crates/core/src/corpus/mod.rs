//! Job keyword corpora: TF-IDF extraction, tabular import, a synthetic
//! generator with topic structure, and on-disk persistence.

mod stopwords;
mod store;
mod synth;
mod tabular;
mod tfidf;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bloom::{BloomProfile, KeywordSet, Role};
use crate::error::{Error, Result};
use crate::recommend::CandidateHistory;

pub use stopwords::{is_stopword, STOPWORDS};
pub use store::{load_corpus, load_profile, load_profiles, save_corpus, CorpusIndex, IndexCandidate, IndexJob};
pub use synth::{generate_synthetic, SynthConfig};
pub use tabular::{import_tabular, Imported};
pub use tfidf::{extract_keywords, tokenize, Extraction, JobDocument};

/// Minimum application count for a candidate to take part in evaluation.
pub const MIN_APPLICATIONS: usize = 5;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub jobs: BTreeMap<String, KeywordSet>,
    /// candidate id -> applied job ids
    pub applications: BTreeMap<String, Vec<String>>,
    /// Jobs nobody has applied to; the recruiter-side test set.
    pub open_jobs: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorpusStats {
    pub jobs: usize,
    pub candidates: usize,
    pub open_jobs: usize,
    pub mean_keywords_per_job: f64,
    pub min_keywords_per_job: usize,
    pub max_keywords_per_job: usize,
    pub mean_applications: f64,
}

impl Corpus {
    /// Checks referential integrity and that open jobs were never applied to.
    pub fn validate(&self) -> Result<()> {
        let mut applied = BTreeSet::new();
        for (cand, jobs) in &self.applications {
            if jobs.is_empty() {
                return Err(Error::InvalidInput(format!("candidate {cand} has no applications")));
            }
            for j in jobs {
                if !self.jobs.contains_key(j) {
                    return Err(Error::InvalidInput(format!(
                        "candidate {cand} applied to unknown job {j}"
                    )));
                }
                applied.insert(j.as_str());
            }
        }
        for j in &self.open_jobs {
            if !self.jobs.contains_key(j) {
                return Err(Error::InvalidInput(format!("open job {j} is not in the job table")));
            }
            if applied.contains(j.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "open job {j} appears in an application history"
                )));
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> CorpusStats {
        let sizes: Vec<usize> = self.jobs.values().map(KeywordSet::len).collect();
        let mean = |total: usize, n: usize| if n == 0 { 0.0 } else { total as f64 / n as f64 };
        CorpusStats {
            jobs: self.jobs.len(),
            candidates: self.applications.len(),
            open_jobs: self.open_jobs.len(),
            mean_keywords_per_job: mean(sizes.iter().sum(), sizes.len()),
            min_keywords_per_job: sizes.iter().copied().min().unwrap_or(0),
            max_keywords_per_job: sizes.iter().copied().max().unwrap_or(0),
            mean_applications: mean(
                self.applications.values().map(Vec::len).sum(),
                self.applications.len(),
            ),
        }
    }

    /// Bloom profiles for every job.
    pub fn job_profiles(&self, m: usize, k: u32) -> Result<BTreeMap<String, BloomProfile>> {
        self.jobs
            .iter()
            .map(|(id, kw)| Ok((id.clone(), BloomProfile::from_keywords(kw, m, k, Role::Job)?)))
            .collect()
    }

    /// Unperturbed candidate histories built from `job_profiles`, in id order.
    pub fn candidate_histories(
        &self,
        job_profiles: &BTreeMap<String, BloomProfile>,
    ) -> Result<Vec<CandidateHistory>> {
        self.applications
            .iter()
            .map(|(cand, jobs)| {
                let applied = jobs
                    .iter()
                    .map(|j| {
                        job_profiles.get(j).cloned().ok_or_else(|| {
                            Error::InvalidInput(format!("no profile for applied job {j}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                CandidateHistory::new(cand.clone(), applied)
            })
            .collect()
    }
}

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Corpus, MIN_APPLICATIONS};
use crate::bloom::KeywordSet;
use crate::error::{Error, Result};
use crate::ldp::Seed;

/// Parameters of the topic-model corpus generator.
///
/// Every job belongs to one latent topic and draws a `topic_share` fraction of
/// its keywords from that topic's vocabulary, the rest from a shared pool.
/// Candidates have a home topic; each application goes to a job of the home
/// topic, or with probability `cross_topic_prob` to a job of a random topic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub topics: usize,
    pub vocab_per_topic: usize,
    pub shared_vocab: usize,
    pub jobs: usize,
    pub candidates: usize,
    pub open_jobs: usize,
    /// Inclusive range.
    pub keywords_per_job: (usize, usize),
    /// Inclusive range; the minimum must be at least 5.
    pub applications_per_candidate: (usize, usize),
    pub topic_share: f64,
    pub cross_topic_prob: f64,
    pub seed: Seed,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            topics: 8,
            vocab_per_topic: 400,
            shared_vocab: 3000,
            jobs: 2000,
            candidates: 64,
            open_jobs: 500,
            keywords_per_job: (100, 250),
            applications_per_candidate: (5, 10),
            topic_share: 0.5,
            cross_topic_prob: 0.3,
            seed: Seed(7),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.topics == 0 || self.vocab_per_topic == 0 {
            return fail("topics and vocab_per_topic must be positive".into());
        }
        if self.jobs == 0 || self.candidates == 0 || self.open_jobs == 0 {
            return fail("jobs, candidates and open_jobs must be positive".into());
        }
        let (kmin, kmax) = self.keywords_per_job;
        if kmin < 2 || kmin > kmax {
            return fail(format!("keywords_per_job must satisfy 2 <= min <= max, got {kmin}..={kmax}"));
        }
        let (amin, amax) = self.applications_per_candidate;
        if amin < MIN_APPLICATIONS || amin > amax {
            return fail(format!(
                "applications_per_candidate must satisfy {MIN_APPLICATIONS} <= min <= max, got {amin}..={amax}"
            ));
        }
        if !(0.0..=1.0).contains(&self.topic_share) || !(0.0..=1.0).contains(&self.cross_topic_prob)
        {
            return fail("topic_share and cross_topic_prob must lie in [0, 1]".into());
        }
        if kmax > self.vocab_per_topic + self.shared_vocab {
            return fail(format!(
                "vocabulary of {} words per job cannot supply {kmax} keywords",
                self.vocab_per_topic + self.shared_vocab
            ));
        }
        let (n_topic, _) = self.split(kmax);
        if n_topic > self.vocab_per_topic {
            return fail(format!(
                "{n_topic} topic keywords needed but topics only have {} words",
                self.vocab_per_topic
            ));
        }
        let smallest_topic = self.jobs / self.topics;
        if smallest_topic < amax {
            return fail(format!(
                "topics hold as few as {smallest_topic} jobs, fewer than {amax} applications"
            ));
        }
        Ok(())
    }

    /// (topic keywords, shared keywords) for a job with `total` keywords.
    fn split(&self, total: usize) -> (usize, usize) {
        let want_topic = (total as f64 * self.topic_share).round() as usize;
        let shared = (total - want_topic.min(total)).min(self.shared_vocab);
        (total - shared, shared)
    }
}

fn topic_word(topic: usize, i: usize) -> String {
    format!("t{topic}w{i}")
}

fn shared_word(i: usize) -> String {
    format!("s{i}")
}

/// Deterministic synthetic corpus; see [`SynthConfig`].
pub fn generate_synthetic(config: &SynthConfig) -> Result<Corpus> {
    config.validate()?;
    let mut rng = config.seed.derive_str("synth").rng();
    let mut corpus = Corpus::default();

    let draw_job = |topic: usize, rng: &mut rand_chacha::ChaCha8Rng| -> KeywordSet {
        let total = rng.random_range(config.keywords_per_job.0..=config.keywords_per_job.1);
        let (n_topic, n_shared) = config.split(total);
        let mut kw = KeywordSet::new();
        for i in sample(rng, config.vocab_per_topic, n_topic) {
            kw.insert(&topic_word(topic, i));
        }
        for i in sample(rng, config.shared_vocab, n_shared) {
            kw.insert(&shared_word(i));
        }
        kw
    };

    let mut by_topic: Vec<Vec<String>> = vec![Vec::new(); config.topics];
    for j in 0..config.jobs {
        let topic = j % config.topics;
        let id = format!("job{j:05}");
        corpus.jobs.insert(id.clone(), draw_job(topic, &mut rng));
        by_topic[topic].push(id);
    }
    for o in 0..config.open_jobs {
        let id = format!("open{o:05}");
        corpus.jobs.insert(id.clone(), draw_job(o % config.topics, &mut rng));
        corpus.open_jobs.push(id);
    }

    let mut applications = BTreeMap::new();
    for c in 0..config.candidates {
        let home = c % config.topics;
        let count = rng.random_range(
            config.applications_per_candidate.0..=config.applications_per_candidate.1,
        );
        let mut applied: Vec<String> = Vec::with_capacity(count);
        while applied.len() < count {
            let topic = if rng.random::<f64>() < config.cross_topic_prob {
                rng.random_range(0..config.topics)
            } else {
                home
            };
            let pool = &by_topic[topic];
            let job = &pool[rng.random_range(0..pool.len())];
            if !applied.contains(job) {
                applied.push(job.clone());
            }
        }
        applications.insert(format!("cand{c:03}"), applied);
    }
    corpus.applications = applications;
    corpus.validate()?;
    Ok(corpus)
}

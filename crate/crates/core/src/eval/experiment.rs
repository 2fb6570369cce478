use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{average_precision, precision_at_n};
use crate::bloom::{BloomProfile, KeywordSet, Role};
use crate::corpus::{Corpus, MIN_APPLICATIONS};
use crate::error::{Error, Result};
use crate::ldp::{perturb, PrivacyParams, Seed};
use crate::recommend::{rank_candidates_for_job, CandidateHistory};
use crate::similarity::CorrectionVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Exact one-hot keyword vectors; the ground truth.
    Binary,
    Bf,
    BfDp,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Binary => "binary",
            Model::Bf => "bf",
            Model::BfDp => "bf-dp",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: Model,
    pub m: usize,
    pub k: u32,
    pub epsilons: Vec<f64>,
    pub n: usize,
    pub jobs_sample: usize,
    pub runs: usize,
    pub seed: Seed,
    pub correction: CorrectionVariant,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            model: Model::BfDp,
            m: 4096,
            k: 1,
            epsilons: vec![3f64.ln()],
            n: 20,
            jobs_sample: 50,
            runs: 10,
            seed: Seed(1),
            correction: CorrectionVariant::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.jobs_sample == 0 || self.runs == 0 {
            return Err(Error::Config("n, jobs_sample and runs must be positive".into()));
        }
        if self.model == Model::BfDp {
            if self.epsilons.is_empty() {
                return Err(Error::Config("bf-dp needs at least one epsilon".into()));
            }
            for &e in &self.epsilons {
                PrivacyParams::new(e, self.k.max(1))?;
            }
        }
        if self.model != Model::Binary {
            BloomProfile::new(self.m, self.k, Role::Job)?;
        }
        Ok(())
    }
}

/// One evaluated cell: a job under one model configuration in one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub model: Model,
    pub m: Option<usize>,
    pub k: Option<u32>,
    pub epsilon: Option<f64>,
    pub job_id: String,
    pub run: usize,
    pub precision_at_n: f64,
    pub average_precision: f64,
}

impl ResultRow {
    fn sort_key(&self) -> (Model, usize, u32, u64, &str, usize) {
        (
            self.model,
            self.m.unwrap_or(0),
            self.k.unwrap_or(0),
            self.epsilon.map_or(0, f64::to_bits),
            &self.job_id,
            self.run,
        )
    }
}

/// Exact keyword vectors over the corpus vocabulary, one bit per keyword.
#[derive(Debug, Clone)]
pub struct BinaryVectorModel {
    vocabulary: Vec<String>,
    vectors: BTreeMap<String, BloomProfile>,
}

impl BinaryVectorModel {
    pub fn new(jobs: &BTreeMap<String, KeywordSet>) -> Result<Self> {
        let mut vocab: Vec<String> = jobs.values().flat_map(|kw| kw.iter().map(String::from)).collect();
        vocab.sort_unstable();
        vocab.dedup();
        let index: HashMap<&str, usize> = vocab.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        let width = vocab.len().max(2);
        let vectors = jobs
            .iter()
            .map(|(id, kw)| {
                let mut bits = vec![false; width];
                for w in kw.iter() {
                    bits[index[w]] = true;
                }
                Ok((id.clone(), BloomProfile::from_bits(&bits, 1, Role::Job)?))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            vocabulary: vocab,
            vectors,
        })
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn vector(&self, id: &str) -> Option<&BloomProfile> {
        self.vectors.get(id)
    }

    pub fn vectors(&self) -> &BTreeMap<String, BloomProfile> {
        &self.vectors
    }
}

/// Runs experiments against one corpus, caching binary ground truth across configs.
pub struct Evaluator<'c> {
    corpus: &'c Corpus,
    binary: BinaryVectorModel,
    binary_histories: Vec<CandidateHistory>,
    /// (job id, n) -> relevant candidate ids
    ground_truth: HashMap<(String, usize), HashSet<String>>,
}

impl<'c> Evaluator<'c> {
    pub fn new(corpus: &'c Corpus) -> Result<Self> {
        corpus.validate()?;
        if corpus.applications.is_empty() {
            return Err(Error::Config("corpus has no candidates".into()));
        }
        if let Some((c, a)) = corpus.applications.iter().find(|(_, a)| a.len() < MIN_APPLICATIONS) {
            return Err(Error::Config(format!(
                "candidate {c} has {} applications; evaluation needs {MIN_APPLICATIONS}",
                a.len()
            )));
        }
        let binary = BinaryVectorModel::new(&corpus.jobs)?;
        let binary_histories = corpus.candidate_histories(binary.vectors())?;
        Ok(Self {
            corpus,
            binary,
            binary_histories,
            ground_truth: HashMap::new(),
        })
    }

    pub fn binary_model(&self) -> &BinaryVectorModel {
        &self.binary
    }

    /// Open jobs evaluated in `run`; identical for every model under the same seed.
    pub fn sampled_jobs(&self, config: &ExperimentConfig, run: usize) -> Result<Vec<String>> {
        let open = &self.corpus.open_jobs;
        if config.jobs_sample > open.len() {
            return Err(Error::Config(format!(
                "cannot sample {} jobs from {} open jobs",
                config.jobs_sample,
                open.len()
            )));
        }
        let mut rng = config.seed.derive_str("job-sample").derive(run as u64).rng();
        let mut picked: Vec<String> = sample(&mut rng, open.len(), config.jobs_sample)
            .into_iter()
            .map(|i| open[i].clone())
            .collect();
        picked.sort();
        Ok(picked)
    }

    fn relevant_sets(&mut self, jobs: &[String], n: usize) -> Result<()> {
        let missing: Vec<&String> = jobs
            .iter()
            .filter(|j| !self.ground_truth.contains_key(&((*j).clone(), n)))
            .collect();
        let computed = missing
            .par_iter()
            .map(|job| {
                let vector = &self.binary.vectors[job.as_str()];
                let ranked = rank_candidates_for_job(
                    vector,
                    &self.binary_histories,
                    None,
                    CorrectionVariant::default(),
                    n,
                    None,
                )?;
                Ok(((*job).clone(), ranked.ids().map(String::from).collect()))
            })
            .collect::<Result<Vec<(String, HashSet<String>)>>>()?;
        for (job, set) in computed {
            self.ground_truth.insert((job, n), set);
        }
        Ok(())
    }

    /// Relevant candidates for `job`: the binary model's top `n`.
    pub fn relevant(&mut self, job: &str, n: usize) -> Result<&HashSet<String>> {
        self.relevant_sets(&[job.to_string()], n)?;
        Ok(&self.ground_truth[&(job.to_string(), n)])
    }

    /// Every row for `config`, sorted by (model, m, k, epsilon, job, run).
    pub fn run(&mut self, config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
        config.validate()?;
        let mut cells = Vec::new();
        for run in 0..config.runs {
            for job in self.sampled_jobs(config, run)? {
                cells.push((job, run));
            }
        }
        let mut all_jobs: Vec<String> = cells.iter().map(|(j, _)| j.clone()).collect();
        all_jobs.sort();
        all_jobs.dedup();
        self.relevant_sets(&all_jobs, config.n)?;

        let mut rows = match config.model {
            Model::Binary => {
                self.score_cells(config, &cells, self.binary.vectors(), &self.binary_histories)?
            }
            Model::Bf => {
                let profiles = self.corpus.job_profiles(config.m, config.k)?;
                let histories = self.corpus.candidate_histories(&profiles)?;
                self.score_cells(config, &cells, &profiles, &histories)?
            }
            Model::BfDp => {
                let profiles = self.corpus.job_profiles(config.m, config.k)?;
                let histories = self.corpus.candidate_histories(&profiles)?;
                let mut rows = Vec::new();
                for &eps in &config.epsilons {
                    rows.extend(self.score_dp_cells(config, &cells, eps, &profiles, &histories)?);
                }
                rows
            }
        };
        rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(rows)
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &self,
        config: &ExperimentConfig,
        job: &str,
        run: usize,
        epsilon: Option<f64>,
        job_profile: &BloomProfile,
        histories: &[CandidateHistory],
        params: Option<&PrivacyParams>,
    ) -> Result<ResultRow> {
        let ranked = rank_candidates_for_job(
            job_profile,
            histories,
            params,
            config.correction,
            config.n,
            None,
        )?;
        let relevant = &self.ground_truth[&(job.to_string(), config.n)];
        let bloom = config.model != Model::Binary;
        Ok(ResultRow {
            model: config.model,
            m: bloom.then_some(config.m),
            k: bloom.then_some(config.k),
            epsilon,
            job_id: job.to_string(),
            run,
            precision_at_n: precision_at_n(&ranked, relevant, config.n)?,
            average_precision: average_precision(&ranked, relevant, config.n)?,
        })
    }

    fn score_cells(
        &self,
        config: &ExperimentConfig,
        cells: &[(String, usize)],
        profiles: &BTreeMap<String, BloomProfile>,
        histories: &[CandidateHistory],
    ) -> Result<Vec<ResultRow>> {
        cells
            .par_iter()
            .map(|(job, run)| self.row(config, job, *run, None, &profiles[job], histories, None))
            .collect()
    }

    fn score_dp_cells(
        &self,
        config: &ExperimentConfig,
        cells: &[(String, usize)],
        epsilon: f64,
        profiles: &BTreeMap<String, BloomProfile>,
        histories: &[CandidateHistory],
    ) -> Result<Vec<ResultRow>> {
        let params = PrivacyParams::new(epsilon, config.k)?;
        cells
            .par_iter()
            .map(|(job, run)| {
                let seed = row_seed(config, epsilon, job, *run);
                let noisy = perturb_histories(histories, &params, seed)?;
                self.row(config, job, *run, Some(epsilon), &profiles[job], &noisy, Some(&params))
            })
            .collect()
    }
}

/// Seed for one result cell: a hash of (master seed, model, m, k, epsilon, job, run).
pub fn row_seed(config: &ExperimentConfig, epsilon: f64, job: &str, run: usize) -> Seed {
    config
        .seed
        .derive_str(config.model.name())
        .derive(config.m as u64)
        .derive(u64::from(config.k))
        .derive(epsilon.to_bits())
        .derive_str(job)
        .derive(run as u64)
}

/// Perturbs every applied profile, each with its own seed derived from
/// `(seed, candidate id, position)`.
pub fn perturb_histories(
    histories: &[CandidateHistory],
    params: &PrivacyParams,
    seed: Seed,
) -> Result<Vec<CandidateHistory>> {
    histories
        .iter()
        .map(|h| {
            let cand_seed = seed.derive_str(h.id());
            let applied = h
                .applied()
                .iter()
                .enumerate()
                .map(|(i, p)| perturb(p, params, cand_seed.derive(i as u64)))
                .collect::<Result<Vec<_>>>()?;
            CandidateHistory::new(h.id(), applied)
        })
        .collect()
}

/// Convenience wrapper: a fresh [`Evaluator`] for a single config.
pub fn run_experiment(corpus: &Corpus, config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    Evaluator::new(corpus)?.run(config)
}

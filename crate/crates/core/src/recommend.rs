//! Reciprocal ranking: jobs for a candidate, candidates for a job.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::bloom::BloomProfile;
use crate::error::{Error, Result};
use crate::ldp::PrivacyParams;
use crate::similarity::{cosine, private_cosine, CorrectionVariant, SimilarityScore};

/// A candidate and the profiles of the jobs they applied to.
#[derive(Debug, Clone)]
pub struct CandidateHistory {
    id: String,
    applied: Vec<BloomProfile>,
}

impl CandidateHistory {
    pub fn new(id: impl Into<String>, applied: Vec<BloomProfile>) -> Result<Self> {
        let id = id.into();
        let Some(first) = applied.first() else {
            return Err(Error::InvalidInput(format!("candidate {id} has no applied jobs")));
        };
        let shape = (first.m(), first.k(), first.is_perturbed());
        if let Some(odd) = applied
            .iter()
            .find(|p| (p.m(), p.k(), p.is_perturbed()) != shape)
        {
            return Err(Error::InvalidInput(format!(
                "candidate {id}: applied profiles disagree on (m, k, perturbed): {shape:?} vs {:?}",
                (odd.m(), odd.k(), odd.is_perturbed())
            )));
        }
        Ok(Self { id, applied })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn applied(&self) -> &[BloomProfile] {
        &self.applied
    }

    pub fn is_perturbed(&self) -> bool {
        self.applied[0].is_perturbed()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedEntry {
    pub id: String,
    pub score: SimilarityScore,
}

/// Scores in non-increasing order, ties broken by ascending id, at most `n` entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedList {
    pub entries: Vec<RankedEntry>,
    pub n: usize,
}

impl RankedList {
    /// Sorts, filters by `threshold` (strictly greater), and truncates to `n`.
    pub fn from_scores(mut entries: Vec<RankedEntry>, n: usize, threshold: Option<f64>) -> Self {
        if let Some(t) = threshold {
            entries.retain(|e| e.score.value > t);
        }
        entries.sort_by(rank_order);
        entries.truncate(n);
        Self { entries, n }
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.id.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn rank_order(a: &RankedEntry, b: &RankedEntry) -> Ordering {
    b.score
        .value
        .total_cmp(&a.score.value)
        .then_with(|| a.id.cmp(&b.id))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(())
}

/// Local job recommendation on the candidate's own (unperturbed) profile.
pub fn rank_jobs_for_candidate(
    candidate: &BloomProfile,
    jobs: &[(String, BloomProfile)],
    n: usize,
    threshold: Option<f64>,
) -> Result<RankedList> {
    check_n(n)?;
    if candidate.is_perturbed() || jobs.iter().any(|(_, j)| j.is_perturbed()) {
        return Err(Error::State("job recommendation runs on unperturbed profiles".into()));
    }
    let entries = jobs
        .iter()
        .map(|(id, job)| {
            let score = match cosine(candidate, job) {
                Ok(s) => s,
                Err(Error::UndefinedSimilarity(_)) => SimilarityScore::zero(),
                Err(e) => return Err(e),
            };
            Ok(RankedEntry {
                id: id.clone(),
                score,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankedList::from_scores(entries, n, threshold))
}

/// Mean similarity of `job` to each profile in a history. The mean is taken
/// over raw estimates, then clamped.
pub fn candidate_score(
    job: &BloomProfile,
    history: &CandidateHistory,
    params: Option<&PrivacyParams>,
    variant: CorrectionVariant,
) -> Result<SimilarityScore> {
    let mut total = 0.0;
    for applied in history.applied() {
        let s = match params {
            Some(params) => private_cosine(job, applied, params, variant),
            None => cosine(job, applied),
        };
        total += match s {
            Ok(s) => s.raw,
            Err(Error::UndefinedSimilarity(_)) => 0.0,
            Err(e) => return Err(e),
        };
    }
    Ok(SimilarityScore::from_raw(total / history.applied().len() as f64))
}

/// Ranks candidates by mean similarity of their applied jobs to `job`.
///
/// `params` must be given exactly when the histories are perturbed.
pub fn rank_candidates_for_job(
    job: &BloomProfile,
    candidates: &[CandidateHistory],
    params: Option<&PrivacyParams>,
    variant: CorrectionVariant,
    n: usize,
    threshold: Option<f64>,
) -> Result<RankedList> {
    check_n(n)?;
    if job.is_perturbed() {
        return Err(Error::State("job profile must not be perturbed".into()));
    }
    let perturbed = params.is_some();
    if let Some(c) = candidates.iter().find(|c| c.is_perturbed() != perturbed) {
        return Err(Error::State(format!(
            "candidate {} is {}perturbed but privacy params are {}",
            c.id(),
            if c.is_perturbed() { "" } else { "not " },
            if perturbed { "given" } else { "absent" },
        )));
    }
    let entries = candidates
        .par_iter()
        .map(|c| {
            Ok(RankedEntry {
                id: c.id().to_string(),
                score: candidate_score(job, c, params, variant)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankedList::from_scores(entries, n, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloom::Role;
    use crate::ldp::{perturb, Seed};

    fn profile(bits: &[u8], role: Role) -> BloomProfile {
        let b: Vec<bool> = bits.iter().map(|&x| x == 1).collect();
        BloomProfile::from_bits(&b, 1, role).unwrap()
    }

    #[test]
    fn single_identical_job() {
        let c = profile(&[1, 0, 1, 0], Role::Candidate);
        let jobs = vec![("j1".to_string(), profile(&[1, 0, 1, 0], Role::Job))];
        let r = rank_jobs_for_candidate(&c, &jobs, 5, None).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].id, "j1");
        assert_eq!(r.entries[0].score.value, 1.0);
        assert!(rank_jobs_for_candidate(&c, &jobs, 5, Some(1.1)).unwrap().is_empty());
        assert!(rank_jobs_for_candidate(&c, &[], 5, None).unwrap().is_empty());
    }

    #[test]
    fn ties_break_by_id_and_zero_filters_score_zero() {
        let c = profile(&[1, 1, 0, 0], Role::Candidate);
        let jobs = vec![
            ("b".to_string(), profile(&[1, 0, 0, 0], Role::Job)),
            ("a".to_string(), profile(&[0, 1, 0, 0], Role::Job)),
            ("z".to_string(), profile(&[0, 0, 0, 0], Role::Job)),
        ];
        let r = rank_jobs_for_candidate(&c, &jobs, 3, None).unwrap();
        assert_eq!(r.ids().collect::<Vec<_>>(), vec!["a", "b", "z"]);
        assert_eq!(r.entries[2].score.value, 0.0);
    }

    #[test]
    fn candidates_identical_before_disjoint() {
        let job = profile(&[1, 1, 0, 0], Role::Job);
        let a = CandidateHistory::new("A", vec![job.clone(), job.clone()]).unwrap();
        let b = CandidateHistory::new("B", vec![profile(&[0, 0, 1, 1], Role::Job)]).unwrap();
        let r = rank_candidates_for_job(&job, &[b, a], None, CorrectionVariant::JobOnes, 5, None)
            .unwrap();
        assert_eq!(r.ids().collect::<Vec<_>>(), vec!["A", "B"]);
        assert_eq!(r.entries[0].score.value, 1.0);
        assert_eq!(r.entries[1].score.value, 0.0);
    }

    #[test]
    fn one_candidate_always_listed() {
        let job = profile(&[1, 1, 0, 0], Role::Job);
        let b = CandidateHistory::new("B", vec![profile(&[0, 0, 1, 1], Role::Job)]).unwrap();
        let r = rank_candidates_for_job(&job, &[b], None, CorrectionVariant::JobOnes, 1, None)
            .unwrap();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn mixed_perturbation_rejected() {
        let job = profile(&[1, 1, 0, 0], Role::Job);
        let params = PrivacyParams::new(1.0, 1).unwrap();
        let noisy = perturb(&job, &params, Seed(1)).unwrap();
        assert!(CandidateHistory::new("x", vec![job.clone(), noisy.clone()]).is_err());
        let plain = CandidateHistory::new("p", vec![job.clone()]).unwrap();
        let dp = CandidateHistory::new("d", vec![noisy]).unwrap();
        let v = CorrectionVariant::JobOnes;
        assert!(matches!(
            rank_candidates_for_job(&job, &[plain.clone(), dp.clone()], Some(&params), v, 2, None),
            Err(Error::State(_))
        ));
        assert!(rank_candidates_for_job(&job, std::slice::from_ref(&dp), None, v, 2, None).is_err());
        assert!(rank_candidates_for_job(&job, &[dp], Some(&params), v, 2, None).is_ok());
        assert!(CandidateHistory::new("e", vec![]).is_err());
    }
}

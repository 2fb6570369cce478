//! Cosine similarity between Bloom filters, exact and from a perturbed candidate.
//!
//! With only the perturbed candidate filter `B_c'` available, the overlap with
//! the job filter `B_j` is de-biased as
//!
//! ```text
//! SP_hat = (SP_tilde - p * correction_ones) / (1 - 2p)
//! ```
//!
//! Since `E[SP_tilde] = (1 - 2p) * SP + p * ones(B_j)`, correcting with the
//! job's ones count is unbiased. The variant that corrects with `ones(B_c')`
//! is kept for comparison; its bias is measured in the test suite.

use serde::{Deserialize, Serialize};

use crate::bloom::BloomProfile;
use crate::error::{Error, Result};
use crate::ldp::PrivacyParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityScore {
    /// Clamped to `[0, 1]`; used for ranking.
    pub value: f64,
    /// Unclamped estimate; may leave `[0, 1]` under noise.
    pub raw: f64,
}

impl SimilarityScore {
    pub fn from_raw(raw: f64) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            raw,
        }
    }

    pub fn zero() -> Self {
        Self::from_raw(0.0)
    }
}

/// Which ones count the overlap correction subtracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectionVariant {
    /// `ones(B_c')`, as literally written in the BLIP-style formula.
    PerturbedCandidateOnes,
    /// `ones(B_j)`; unbiased under one-sided perturbation.
    #[default]
    JobOnes,
}

impl std::str::FromStr for CorrectionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "job-ones" | "job" => Ok(Self::JobOnes),
            "perturbed-candidate-ones" | "candidate" => Ok(Self::PerturbedCandidateOnes),
            _ => Err(Error::InvalidInput(format!("unknown correction variant {s:?}"))),
        }
    }
}

fn same_m(a: &BloomProfile, b: &BloomProfile) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::Dimension {
            left: a.m(),
            right: b.m(),
        });
    }
    Ok(())
}

/// Number of positions set in both filters.
pub fn scalar_product(a: &BloomProfile, b: &BloomProfile) -> Result<usize> {
    same_m(a, b)?;
    Ok(a.words()
        .iter()
        .zip(b.words())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum())
}

pub fn cosine(a: &BloomProfile, b: &BloomProfile) -> Result<SimilarityScore> {
    let sp = scalar_product(a, b)?;
    let (na, nb) = (a.ones(), b.ones());
    if na == 0 || nb == 0 {
        return Err(Error::UndefinedSimilarity("all-zero filter".into()));
    }
    Ok(SimilarityScore::from_raw(
        sp as f64 / (na as f64 * nb as f64).sqrt(),
    ))
}

pub fn corrected_scalar_product(sp_tilde: usize, correction_ones: usize, p: f64) -> Result<f64> {
    check_p(p)?;
    Ok((sp_tilde as f64 - p * correction_ones as f64) / (1.0 - 2.0 * p))
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidInput(format!("flip probability must be in [0, 0.5), got {p}")));
    }
    Ok(())
}

/// Inverts the randomized-response expectation `E[ones'] = (1-2p) * ones + p * m`,
/// clamped to `[1, m]`.
pub fn estimate_true_ones(perturbed_ones: usize, p: f64, m: usize) -> Result<f64> {
    check_p(p)?;
    if perturbed_ones > m {
        return Err(Error::InvalidInput(format!(
            "{perturbed_ones} ones cannot fit in {m} bits"
        )));
    }
    let est = (perturbed_ones as f64 - p * m as f64) / (1.0 - 2.0 * p);
    Ok(est.clamp(1.0, m as f64))
}

/// Cosine between an unperturbed job filter and a perturbed candidate filter.
pub fn private_cosine(
    job: &BloomProfile,
    candidate_perturbed: &BloomProfile,
    params: &PrivacyParams,
    variant: CorrectionVariant,
) -> Result<SimilarityScore> {
    if job.is_perturbed() {
        return Err(Error::State("job profile must not be perturbed".into()));
    }
    if !candidate_perturbed.is_perturbed() {
        return Err(Error::State("candidate profile is not perturbed".into()));
    }
    let p = params.flip_probability();
    let sp_tilde = scalar_product(job, candidate_perturbed)?;
    let job_ones = job.ones();
    if job_ones == 0 {
        return Err(Error::UndefinedSimilarity("all-zero job filter".into()));
    }
    let correction = match variant {
        CorrectionVariant::JobOnes => job_ones,
        CorrectionVariant::PerturbedCandidateOnes => candidate_perturbed.ones(),
    };
    let sp_hat = corrected_scalar_product(sp_tilde, correction, p)?;
    let cand_ones = estimate_true_ones(candidate_perturbed.ones(), p, candidate_perturbed.m())?;
    Ok(SimilarityScore::from_raw(
        sp_hat / (job_ones as f64 * cand_ones).sqrt(),
    ))
}

//! Privacy-preserving reciprocal job recommendation.
//!
//! Job and candidate profiles are keyword sets encoded as Bloom filters.
//! Candidates perturb their filters locally with randomized response before
//! publishing them; recruiters rank candidates with a de-biased cosine
//! similarity. The crate also contains the evaluation harness and a
//! deterministic simulator of the content-addressed network profiles are
//! exchanged over.

pub mod bloom;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod ldp;
pub mod netsim;
pub mod recommend;
pub mod similarity;

pub use bloom::{hash_positions, BloomProfile, KeywordSet, Role};
pub use error::{Error, Result};
pub use ldp::{flip_probability, perturb, PrivacyParams, Seed};
pub use recommend::{rank_candidates_for_job, rank_jobs_for_candidate, CandidateHistory, RankedList};
pub use similarity::{
    corrected_scalar_product, cosine, estimate_true_ones, private_cosine, scalar_product,
    CorrectionVariant, SimilarityScore,
};

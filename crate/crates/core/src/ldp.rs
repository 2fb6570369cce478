//! Randomized-response perturbation of Bloom filter profiles.
//!
//! Each bit is flipped independently with probability `p = 1 / (1 + e^(ε/k))`,
//! which gives `P[out=1 | in=1] / P[out=1 | in=0] = e^(ε/k)` per bit. A
//! keyword touches `k` bits, so a one-keyword change is bounded by `e^ε`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloom::{fmix64, fnv1a64, BloomProfile, SEED_H1};
use crate::error::{Error, Result};

/// Master seed for every stochastic step. Sub-seeds are derived by mixing in labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn derive(self, label: u64) -> Seed {
        // splitmix64 step over the combined state
        let mut z = self.0 ^ fmix64(label.wrapping_add(0x9e37_79b9_7f4a_7c15));
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        Seed(fmix64(z))
    }

    pub fn derive_str(self, label: &str) -> Seed {
        self.derive(fnv1a64(label.as_bytes(), SEED_H1))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// `1 / (1 + e^(ε/k))`.
pub fn flip_probability(epsilon: f64, k: u32) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    Ok(1.0 / (1.0 + (epsilon / f64::from(k)).exp()))
}

/// Parses a privacy loss, accepting `ln2` / `ln3` aliases.
pub fn parse_epsilon(s: &str) -> Result<f64> {
    let v = match s.trim() {
        "ln2" => std::f64::consts::LN_2,
        "ln3" => 3f64.ln(),
        other => other
            .parse::<f64>()
            .map_err(|_| Error::InvalidInput(format!("not an epsilon: {other:?}")))?,
    };
    flip_probability(v, 1)?;
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyParams {
    epsilon: f64,
    k: u32,
    p: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, k: u32) -> Result<Self> {
        let p = flip_probability(epsilon, k)?;
        Ok(Self { epsilon, k, p })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn flip_probability(&self) -> f64 {
        self.p
    }
}

/// Flip threshold on a uniform u64: a bit flips iff its draw is below this.
fn flip_threshold(p: f64) -> u64 {
    // p <= 0.5, so the product stays below 2^63 and the cast cannot saturate.
    (p * 2f64.powi(64)) as u64
}

/// Randomized response over every bit of `profile`.
///
/// Bit `i` is decided by the `i`-th 64-bit draw of a ChaCha8 stream seeded
/// with `seed`, so the output is a pure function of `(seed, input bits)`.
/// Callers perturbing several profiles derive one seed per profile, e.g.
/// `seed.derive_str(profile_id)`.
pub fn perturb(profile: &BloomProfile, params: &PrivacyParams, seed: Seed) -> Result<BloomProfile> {
    if profile.is_perturbed() {
        return Err(Error::State(
            "profile is already perturbed; repeated perturbation leaks through averaging".into(),
        ));
    }
    if params.k != profile.k() {
        return Err(Error::InvalidInput(format!(
            "privacy params use k={} but profile has k={}",
            params.k,
            profile.k()
        )));
    }
    let threshold = flip_threshold(params.p);
    let m = profile.m();
    let mut rng = seed.rng();
    let words = profile
        .words()
        .iter()
        .enumerate()
        .map(|(w, &word)| {
            let live = (m - w * 64).min(64);
            let mut mask = 0u64;
            for bit in 0..live {
                if rng.next_u64() < threshold {
                    mask |= 1 << bit;
                }
            }
            word ^ mask
        })
        .collect();
    Ok(BloomProfile::from_raw_words(
        words,
        m,
        profile.k(),
        profile.role(),
        Some(params.epsilon),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloom::Role;

    #[test]
    fn closed_form_flip_probabilities() {
        let ln3 = 3f64.ln();
        assert_eq!(flip_probability(ln3, 1).unwrap(), 0.25);
        assert!((flip_probability(ln3, 2).unwrap() - 1.0 / (1.0 + 3f64.sqrt())).abs() < 1e-12);
        assert!((flip_probability(10.0, 1).unwrap() - 4.5397868702434395e-5).abs() < 1e-15);
    }

    #[test]
    fn flip_probability_rejects_non_positive_epsilon() {
        assert!(flip_probability(0.0, 1).is_err());
        assert!(flip_probability(-1.0, 1).is_err());
        assert!(flip_probability(f64::NAN, 1).is_err());
        assert!(flip_probability(1.0, 0).is_err());
    }

    #[test]
    fn epsilon_aliases() {
        assert_eq!(parse_epsilon("ln3").unwrap(), 3f64.ln());
        assert_eq!(parse_epsilon("ln2").unwrap(), 2f64.ln());
        assert_eq!(parse_epsilon("4").unwrap(), 4.0);
        assert!(parse_epsilon("0").is_err());
        assert!(parse_epsilon("abc").is_err());
    }

    fn sample_profile() -> BloomProfile {
        let bits: Vec<bool> = (0..4096).map(|i| i % 41 == 0).collect();
        BloomProfile::from_bits(&bits, 1, Role::Candidate).unwrap()
    }

    #[test]
    fn large_epsilon_is_identity_on_bits() {
        let p = sample_profile();
        let out = perturb(&p, &PrivacyParams::new(50.0, 1).unwrap(), Seed(3)).unwrap();
        assert!(out.is_perturbed());
        assert_eq!(out.epsilon(), Some(50.0));
        assert!(out.bits().eq(p.bits()));
    }

    #[test]
    fn deterministic_under_seed() {
        let p = sample_profile();
        let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
        let a = perturb(&p, &params, Seed(9)).unwrap();
        let b = perturb(&p, &params, Seed(9)).unwrap();
        let c = perturb(&p, &params, Seed(10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(!p.is_perturbed());
    }

    #[test]
    fn one_shot_rule_and_k_check() {
        let p = sample_profile();
        let params = PrivacyParams::new(1.0, 1).unwrap();
        let once = perturb(&p, &params, Seed(1)).unwrap();
        assert!(matches!(perturb(&once, &params, Seed(2)), Err(Error::State(_))));
        assert!(once.contains("x").is_err());
        let mut frozen = once.clone();
        assert!(frozen.insert("x").is_err());
        let wrong_k = PrivacyParams::new(1.0, 2).unwrap();
        assert!(perturb(&p, &wrong_k, Seed(1)).is_err());
    }

    #[test]
    fn unused_tail_bits_stay_zero() {
        let p = BloomProfile::from_bits(&[false; 70], 1, Role::Job).unwrap();
        let out = perturb(&p, &PrivacyParams::new(0.01, 1).unwrap(), Seed(5)).unwrap();
        let bytes = out.to_bytes();
        assert_eq!(BloomProfile::from_bytes(&bytes).unwrap(), out);
    }

    #[test]
    fn seed_derivation_separates_labels() {
        let s = Seed(42);
        assert_ne!(s.derive(1), s.derive(2));
        assert_ne!(s.derive_str("a"), s.derive_str("b"));
        assert_eq!(s.derive_str("a"), Seed(42).derive_str("a"));
    }
}

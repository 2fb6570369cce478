//! Monte Carlo checks of the probabilistic components against closed-form
//! expectations.

use privrec::{
    cosine, estimate_true_ones, perturb, private_cosine, BloomProfile, CorrectionVariant,
    KeywordSet, PrivacyParams, Role, Seed,
};

fn keywords(range: std::ops::Range<usize>) -> KeywordSet {
    range.map(|i| format!("term{i}")).collect()
}

fn profile_with_ones(m: usize, ones: usize) -> BloomProfile {
    let bits: Vec<bool> = (0..m).map(|i| i < ones).collect();
    BloomProfile::from_bits(&bits, 1, Role::Candidate).unwrap()
}

#[test]
fn false_positive_rate_matches_fill_ratio() {
    for (m, k, n) in [(1024usize, 3u32, 150usize), (4096, 1, 500), (512, 2, 60)] {
        let bf = BloomProfile::from_keywords(&keywords(0..n), m, k, Role::Job).unwrap();
        let expected = (bf.ones() as f64 / m as f64).powi(k as i32);
        let probes = 10_000;
        let hits = (0..probes)
            .filter(|i| bf.contains(&format!("probe{i}")).unwrap())
            .count();
        let rate = hits as f64 / probes as f64;
        let sigma = (expected * (1.0 - expected) / probes as f64).sqrt();
        assert!(
            (rate - expected).abs() <= 3.0 * sigma,
            "m={m} k={k}: rate {rate} expected {expected} sigma {sigma}"
        );
    }
}

#[test]
fn expected_perturbed_ones() {
    let profile = profile_with_ones(4096, 100);
    let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
    let trials = 10_000;
    let total: usize = (0..trials)
        .map(|t| perturb(&profile, &params, Seed(t)).unwrap().ones())
        .sum();
    let mean = total as f64 / trials as f64;
    assert!((mean - 1074.0).abs() <= 10.74, "mean ones {mean}");
}

#[test]
fn true_ones_estimate_is_accurate_on_average() {
    let profile = profile_with_ones(4096, 100);
    let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
    let trials = 10_000;
    let total: f64 = (0..trials)
        .map(|t| {
            let noisy = perturb(&profile, &params, Seed(1_000_000 + t)).unwrap();
            estimate_true_ones(noisy.ones(), params.flip_probability(), 4096).unwrap()
        })
        .sum();
    let mean = total / trials as f64;
    assert!((mean - 100.0).abs() <= 2.0, "mean estimate {mean}");
}

fn mean_private_cosine(job: &KeywordSet, cand: &KeywordSet, eps: f64, trials: u64) -> f64 {
    let job = BloomProfile::from_keywords(job, 4096, 1, Role::Job).unwrap();
    let cand = BloomProfile::from_keywords(cand, 4096, 1, Role::Candidate).unwrap();
    let params = PrivacyParams::new(eps, 1).unwrap();
    (0..trials)
        .map(|t| {
            let noisy = perturb(&cand, &params, Seed(t).derive_str("pc")).unwrap();
            private_cosine(&job, &noisy, &params, CorrectionVariant::JobOnes).unwrap().raw
        })
        .sum::<f64>()
        / trials as f64
}

#[test]
fn private_cosine_identical_and_disjoint() {
    let set = keywords(0..300);
    let same = mean_private_cosine(&set, &set, 3f64.ln(), 1000);
    assert!((same - 1.0).abs() <= 0.05, "identical: {same}");
    let disjoint = mean_private_cosine(&keywords(0..300), &keywords(1000..1300), 3f64.ln(), 1000);
    assert!(disjoint.abs() <= 0.05, "disjoint: {disjoint}");
}

#[test]
fn private_cosine_error_shrinks_with_epsilon() {
    let job_kw = keywords(0..200);
    let cand_kw = keywords(120..320);
    let job = BloomProfile::from_keywords(&job_kw, 4096, 1, Role::Job).unwrap();
    let cand = BloomProfile::from_keywords(&cand_kw, 4096, 1, Role::Candidate).unwrap();
    let truth = cosine(&job, &cand).unwrap().raw;
    let mut previous = f64::INFINITY;
    for eps in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let params = PrivacyParams::new(eps, 1).unwrap();
        let mse = (0..300)
            .map(|t| {
                let noisy = perturb(&cand, &params, Seed(t).derive_str("trend")).unwrap();
                let est = private_cosine(&job, &noisy, &params, CorrectionVariant::JobOnes).unwrap();
                (est.raw - truth).powi(2)
            })
            .sum::<f64>()
            / 300.0;
        assert!(mse < previous, "eps {eps}: mse {mse} not below {previous}");
        previous = mse;
    }
    assert!(previous < 1e-3);
}

#[test]
fn flips_at_distinct_positions_are_independent() {
    let m = 64;
    let profile = profile_with_ones(m, 32);
    let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
    // 2x2 table of (flip at position a, flip at position b) for several pairs
    for (a, b) in [(0usize, 1usize), (10, 40), (31, 32), (62, 63)] {
        let mut table = [[0f64; 2]; 2];
        let trials = 20_000;
        for t in 0..trials {
            let noisy = perturb(&profile, &params, Seed(t).derive_str("chi")).unwrap();
            let fa = (noisy.get(a) != profile.get(a)) as usize;
            let fb = (noisy.get(b) != profile.get(b)) as usize;
            table[fa][fb] += 1.0;
        }
        let n = trials as f64;
        let rows = [table[0][0] + table[0][1], table[1][0] + table[1][1]];
        let cols = [table[0][0] + table[1][0], table[0][1] + table[1][1]];
        let chi2: f64 = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| {
                let e = rows[i] * cols[j] / n;
                (table[i][j] - e).powi(2) / e
            })
            .sum();
        // 3-sigma two-sided tail for one degree of freedom: 3^2 = 9
        assert!(chi2 < 9.0, "positions ({a}, {b}): chi2 = {chi2}");
    }
}

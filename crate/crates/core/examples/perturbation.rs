//! Randomized response on a candidate profile: the flip probability for a
//! privacy loss, the one-shot rule, and the empirical flip rate.
//!
//! ```bash
//! cargo run -p privrec --example perturbation
//! ```

use privrec::{flip_probability, perturb, BloomProfile, KeywordSet, PrivacyParams, Role, Seed};

fn main() -> privrec::Result<()> {
    for (label, eps) in [("ln 2", 2f64.ln()), ("ln 3", 3f64.ln()), ("4", 4.0), ("10", 10.0)] {
        println!("eps = {label:<5} k = 1: p = {:.6}", flip_probability(eps, 1)?);
    }

    let keywords: KeywordSet = (0..150).map(|i| format!("skill{i}")).collect();
    let profile = BloomProfile::from_keywords(&keywords, 4096, 1, Role::Candidate)?;
    let params = PrivacyParams::new(3f64.ln(), 1)?;
    let noisy = perturb(&profile, &params, Seed(42))?;

    let flipped = profile.bits().zip(noisy.bits()).filter(|(a, b)| a != b).count();
    println!(
        "ones {} -> {}, flipped {flipped} of {} bits ({:.4}, expected {:.4})",
        profile.ones(),
        noisy.ones(),
        profile.m(),
        flipped as f64 / profile.m() as f64,
        params.flip_probability()
    );
    println!("header records epsilon = {:?}", noisy.epsilon());

    match perturb(&noisy, &params, Seed(43)) {
        Err(e) => println!("second perturbation refused: {e}"),
        Ok(_) => unreachable!("a profile is perturbed at most once"),
    }
    Ok(())
}

//! De-biased similarity between a public job profile and a perturbed
//! candidate profile, averaged over many independent perturbations.
//!
//! ```bash
//! cargo run --release -p privrec --example private_similarity
//! ```

use privrec::{
    corrected_scalar_product, cosine, perturb, private_cosine, scalar_product, BloomProfile,
    CorrectionVariant, KeywordSet, PrivacyParams, Role, Seed,
};

fn main() -> privrec::Result<()> {
    let job: KeywordSet = (0..200).map(|i| format!("kw{i}")).collect();
    let cand: KeywordSet = (100..300).map(|i| format!("kw{i}")).collect();
    let job_bf = BloomProfile::from_keywords(&job, 4096, 1, Role::Job)?;
    let cand_bf = BloomProfile::from_keywords(&cand, 4096, 1, Role::Candidate)?;
    let true_sp = scalar_product(&job_bf, &cand_bf)?;
    let true_cos = cosine(&job_bf, &cand_bf)?.value;
    println!("true scalar product {true_sp}, true cosine {true_cos:.4}");

    let params = PrivacyParams::new(3f64.ln(), 1)?;
    let p = params.flip_probability();
    let trials = 2000;
    for variant in [CorrectionVariant::JobOnes, CorrectionVariant::PerturbedCandidateOnes] {
        let (mut sp_sum, mut cos_sum) = (0.0, 0.0);
        for t in 0..trials {
            let noisy = perturb(&cand_bf, &params, Seed(t))?;
            let sp_tilde = scalar_product(&job_bf, &noisy)?;
            let ones = match variant {
                CorrectionVariant::JobOnes => job_bf.ones(),
                CorrectionVariant::PerturbedCandidateOnes => noisy.ones(),
            };
            sp_sum += corrected_scalar_product(sp_tilde, ones, p)?;
            cos_sum += private_cosine(&job_bf, &noisy, &params, variant)?.raw;
        }
        println!(
            "{variant:?}: mean corrected SP {:.2}, mean private cosine {:.4}",
            sp_sum / trials as f64,
            cos_sum / trials as f64
        );
    }
    Ok(())
}

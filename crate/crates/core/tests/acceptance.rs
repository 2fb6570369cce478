//! End-to-end acceptance checks. Each criterion prints one line:
//! `PASS`, `FAIL` or `SKIP`, the criterion number, and the measured values.
//! The process exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use privrec::corpus::{generate_synthetic, import_tabular, SynthConfig};
use privrec::eval::{average_precision, precision_at_n, summarize, Evaluator, ExperimentConfig, Model};
use privrec::netsim::{self, Event, SimConfig, Simulator, Token, Topology, Workload};
use privrec::recommend::RankedEntry;
use privrec::{
    corrected_scalar_product, flip_probability, perturb, rank_candidates_for_job, scalar_product,
    BloomProfile, CandidateHistory, CorrectionVariant, Error, KeywordSet, PrivacyParams,
    RankedList, Role, Seed, SimilarityScore,
};

enum Verdict {
    Pass,
    Fail,
    Skip,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail,
    }
}

fn flip_formula() -> Outcome {
    let p1 = flip_probability(3f64.ln(), 1).unwrap();
    let p2 = flip_probability(3f64.ln(), 2).unwrap();
    let want2 = 1.0 / (1.0 + 3f64.sqrt());
    check(
        p1 == 0.25 && (p2 - want2).abs() < 1e-12,
        format!("p(ln3,1)={p1:e} p(ln3,2)={p2:.15} want {want2:.15}"),
    )
}

fn dp_ratio() -> Outcome {
    let m = 1000;
    let reps = 1000; // 10^6 single-bit trials per input value
    let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
    let ones = BloomProfile::from_bits(&vec![true; m], 1, Role::Candidate).unwrap();
    let zeros = BloomProfile::from_bits(&vec![false; m], 1, Role::Candidate).unwrap();
    let (mut from_one, mut from_zero) = (0usize, 0usize);
    for r in 0..reps {
        from_one += perturb(&ones, &params, Seed(r).derive_str("one")).unwrap().ones();
        from_zero += perturb(&zeros, &params, Seed(r).derive_str("zero")).unwrap().ones();
    }
    let trials = (m * reps as usize) as f64;
    let ratio = (from_one as f64 / trials) / (from_zero as f64 / trials);
    check(
        (2.85..=3.15).contains(&ratio),
        format!("P[1|1]/P[1|0] = {ratio:.4} over 10^6 trials each (target 3)"),
    )
}

fn unbiasedness() -> Outcome {
    let m = 4096;
    // |job| = 200, |candidate| = 160, overlap 60
    let job_bits: Vec<bool> = (0..m).map(|i| i < 200).collect();
    let cand_bits: Vec<bool> = (0..m).map(|i| (140..300).contains(&i)).collect();
    let job = BloomProfile::from_bits(&job_bits, 1, Role::Job).unwrap();
    let cand = BloomProfile::from_bits(&cand_bits, 1, Role::Candidate).unwrap();
    assert_eq!(scalar_product(&job, &cand).unwrap(), 60);
    let params = PrivacyParams::new(3f64.ln(), 1).unwrap();
    let p = params.flip_probability();
    let trials = 100_000u64;
    let (mut job_ones, mut cand_ones) = (0.0, 0.0);
    for t in 0..trials {
        let noisy = perturb(&cand, &params, Seed(9).derive(t)).unwrap();
        let sp = scalar_product(&job, &noisy).unwrap();
        job_ones += corrected_scalar_product(sp, job.ones(), p).unwrap();
        cand_ones += corrected_scalar_product(sp, noisy.ones(), p).unwrap();
    }
    let (a, b) = (job_ones / trials as f64, cand_ones / trials as f64);
    check(
        (a - 60.0).abs() <= 0.6,
        format!("JobOnes mean {a:.3} (target 60); PerturbedCandidateOnes mean {b:.3}, bias {:+.3}", b - 60.0),
    )
}

fn metric_fidelity() -> Outcome {
    let entries = ["a", "b", "c", "d", "e"]
        .iter()
        .enumerate()
        .map(|(i, id)| RankedEntry {
            id: id.to_string(),
            score: SimilarityScore::from_raw(1.0 - i as f64 * 0.1),
        })
        .collect();
    let list = RankedList::from_scores(entries, 5, None);
    let relevant: HashSet<String> = ["a", "d", "e"].iter().map(|s| s.to_string()).collect();
    let ap = average_precision(&list, &relevant, 5).unwrap();
    let p5 = precision_at_n(&list, &relevant, 5).unwrap();
    check(ap == 0.7 && p5 == 0.6, format!("AP = {ap}, P@5 = {p5}"))
}

/// Brute-force ranking on plain bit vectors, independent of the library's scoring.
fn oracle_scores(job: &[bool], histories: &[(String, Vec<Vec<bool>>)]) -> Vec<(String, f64)> {
    let cos = |a: &[bool], b: &[bool]| {
        let dot = a.iter().zip(b).filter(|(x, y)| **x && **y).count() as f64;
        let na = a.iter().filter(|x| **x).count() as f64;
        let nb = b.iter().filter(|x| **x).count() as f64;
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            dot / (na.sqrt() * nb.sqrt())
        }
    };
    let mut out: Vec<(String, f64)> = histories
        .iter()
        .map(|(id, applied)| {
            let s: f64 = applied.iter().map(|a| cos(job, a)).sum::<f64>() / applied.len() as f64;
            (id.clone(), s.clamp(0.0, 1.0))
        })
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let vocab: Vec<String> = (0..24).map(|i| format!("w{i}")).collect();
    let random_set = |rng: &mut ChaCha8Rng| -> KeywordSet {
        let n = rng.random_range(1..=6);
        (0..n).map(|_| vocab[rng.random_range(0..vocab.len())].as_str()).collect()
    };
    let instances = 200;
    let mut mismatches = 0;
    for _ in 0..instances {
        let k = rng.random_range(1..=2);
        let job = BloomProfile::from_keywords(&random_set(&mut rng), 16, k, Role::Job).unwrap();
        let mut histories = Vec::new();
        let mut raw = Vec::new();
        for c in 0..5 {
            let id = format!("c{c}");
            let applied: Vec<BloomProfile> = (0..rng.random_range(1..=3))
                .map(|_| BloomProfile::from_keywords(&random_set(&mut rng), 16, k, Role::Job).unwrap())
                .collect();
            raw.push((id.clone(), applied.iter().map(|p| p.bits().collect()).collect()));
            histories.push(CandidateHistory::new(id, applied).unwrap());
        }
        let got = rank_candidates_for_job(&job, &histories, None, CorrectionVariant::JobOnes, 5, None).unwrap();
        let want = oracle_scores(&job.bits().collect::<Vec<_>>(), &raw);
        let score_of = |id: &str| want.iter().find(|(w, _)| w == id).unwrap().1;
        let same = got.len() == want.len()
            && got.entries.iter().zip(&want).all(|(g, (wid, ws))| {
                (g.score.value - ws).abs() < 1e-12
                    && (g.id == *wid || (score_of(&g.id) - ws).abs() < 1e-12)
            });
        if !same {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("{instances} random m=16 instances, {mismatches} mismatches"))
}

fn epsilon_trend(evaluator: &mut Evaluator<'_>) -> Outcome {
    let base = ExperimentConfig::default();
    let bf = summarize(&evaluator.run(&ExperimentConfig { model: Model::Bf, ..base.clone() }).unwrap())[0].clone();
    let eps = vec![2f64.ln(), 3f64.ln(), 2.0, 4.0, 7.0, 10.0];
    let rows = evaluator
        .run(&ExperimentConfig { model: Model::BfDp, epsilons: eps, ..base })
        .unwrap();
    let s = summarize(&rows);
    let monotone = s.windows(2).all(|w| {
        w[1].mean_precision >= w[0].mean_precision - w[0].se_precision().max(w[1].se_precision())
    });
    let close = s
        .iter()
        .filter(|r| r.epsilon.unwrap() >= 7.0)
        .all(|r| (r.mean_precision - bf.mean_precision).abs() <= 0.05);
    let series: Vec<String> = s
        .iter()
        .map(|r| format!("{:.2}:{:.3}", r.epsilon.unwrap(), r.mean_precision))
        .collect();
    check(
        monotone && close,
        format!("bf {:.3}; bf-dp {}", bf.mean_precision, series.join(" ")),
    )
}

fn parameter_trend(evaluator: &mut Evaluator<'_>) -> Outcome {
    let ks = [1u32, 2, 4, 8];
    let mut grid = Vec::new();
    for m in [512usize, 4096] {
        let row: Vec<f64> = ks
            .iter()
            .map(|&k| {
                let rows = evaluator
                    .run(&ExperimentConfig { m, k, ..ExperimentConfig::default() })
                    .unwrap();
                summarize(&rows)[0].mean_precision
            })
            .collect();
        grid.push(row);
    }
    let larger_m = (0..ks.len()).all(|i| grid[1][i] > grid[0][i]);
    let k1_best = grid[1].iter().all(|&v| v <= grid[1][0]);
    let fmt = |r: &[f64]| r.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(" ");
    check(
        larger_m && k1_best,
        format!("k=1,2,4,8: m=512 [{}] m=4096 [{}]", fmt(&grid[0]), fmt(&grid[1])),
    )
}

fn dataset_check() -> Outcome {
    let Some(dir) = std::env::var_os("PRIVREC_CAREERBUILDER_DIR").map(PathBuf::from) else {
        return Outcome {
            verdict: Verdict::Skip,
            detail: "set PRIVREC_CAREERBUILDER_DIR to a directory with jobs.tsv and apps.tsv (informative only)".into(),
        };
    };
    let imported = match import_tabular(&dir.join("jobs.tsv"), &dir.join("apps.tsv")) {
        Ok(i) => i,
        Err(e) => return check(false, format!("import failed: {e}")),
    };
    let mut evaluator = Evaluator::new(&imported.corpus).unwrap();
    let rows = evaluator
        .run(&ExperimentConfig { epsilons: vec![4.0], ..ExperimentConfig::default() })
        .unwrap();
    let s = &summarize(&rows)[0];
    let ok = (0.60..=0.90).contains(&s.mean_precision) && (0.85..=1.0).contains(&s.mean_ap);
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!("(informative) prec@20 {:.3}, AP {:.3}", s.mean_precision, s.mean_ap),
    }
}

fn availability_law() -> Outcome {
    let q: f64 = 0.3;
    let rounds = 10_000;
    let mut sim = Simulator::new(SimConfig {
        nodes: 10,
        topology: Topology::Full,
        gossip_fanout: 2,
        churn_offline_prob: q,
        rounds: 0,
        seed: Seed(2024),
    })
    .unwrap();
    let cid = sim.publish(0, "profiles", b"pinned".to_vec(), None).unwrap();
    sim.define_cluster("c", (0..10).collect()).unwrap();
    sim.cluster_pin("c", cid, 3).unwrap();
    for _ in 0..rounds {
        sim.tick();
    }
    let pin = sim.report().availability[&cid.to_string()].pins[0].clone();
    let expect = q.powi(3);
    let sigma = (expect * (1.0 - expect) / rounds as f64).sqrt();
    check(
        (pin.unavailable_ratio - expect).abs() <= 3.0 * sigma,
        format!("unavailable {:.5} vs q^3 = {expect:.5} (3 sigma = {:.5})", pin.unavailable_ratio, 3.0 * sigma),
    )
}

fn delivery() -> Outcome {
    let config = SimConfig {
        nodes: 64,
        topology: Topology::Random { degree: 3 },
        gossip_fanout: 2,
        churn_offline_prob: 0.0,
        rounds: 64,
        seed: Seed(77),
    };
    let mut w = Workload::new();
    for node in 1..64 {
        w.push(Event::Subscribe { node, topic: "jobs".into() });
    }
    w.push(Event::Publish { node: 0, topic: "jobs".into(), content: b"open profile".to_vec(), token: None });
    let report = netsim::run(&config, &w).unwrap();
    let p = &report.publications[0];
    let all = p.fully_delivered() && p.subscribers == 63;
    let replay = netsim::run(&config, &w).unwrap() == report
        && netsim::run(&config, &w).unwrap().to_json().unwrap() == report.to_json().unwrap();

    let mut sim = Simulator::new(SimConfig { rounds: 0, ..config }).unwrap();
    let open = sim.publish(5, "jobs", b"sole copy".to_vec(), None).unwrap();
    let gated = sim.publish(6, "jobs", b"gated".to_vec(), Some(Token::new("key"))).unwrap();
    sim.set_offline(5).unwrap();
    let unavailable = matches!(sim.fetch(9, &open, None), Err(Error::Unavailable(_)));
    let denied = matches!(sim.fetch(9, &gated, None), Err(Error::AccessDenied(_)));
    check(
        all && replay && unavailable && denied,
        format!(
            "delivered {}/{} by round {:?}; unavailable={unavailable} denied={denied} replay={replay}",
            p.delivered, p.subscribers, p.last_delivery_round
        ),
    )
}

fn main() {
    let corpus = generate_synthetic(&SynthConfig::default()).expect("synthetic corpus");
    let mut evaluator = Evaluator::new(&corpus).expect("evaluator");

    let mut failed = 0;
    let mut report = |n: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let tag = match o.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
            Verdict::Skip => "SKIP",
        };
        println!(
            "{tag} criterion {n:>2} {name}: {} [{:.1}s]",
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "flip probability formula", &mut flip_formula);
    report(2, "bit-level DP ratio", &mut dp_ratio);
    report(3, "estimator unbiasedness", &mut unbiasedness);
    report(4, "metric fidelity", &mut metric_fidelity);
    report(5, "oracle equivalence", &mut oracle_equivalence);
    report(6, "epsilon-utility trend", &mut || epsilon_trend(&mut evaluator));
    report(7, "parameter trend", &mut || parameter_trend(&mut evaluator));
    report(8, "dataset check", &mut dataset_check);
    report(9, "netsim availability law", &mut availability_law);
    report(10, "netsim delivery", &mut delivery);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

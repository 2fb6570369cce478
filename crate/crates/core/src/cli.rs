//! The `privrec` command line.
//!
//! Every subcommand logs its fully resolved configuration (defaults included)
//! to stderr as one JSON line. A TOML file given with `--config` supplies
//! values for flags; flags on the command line take precedence:
//!
//! ```toml
//! threads = 4
//!
//! [eval.sweep]
//! runs = 5
//! epsilons = ["ln3", 2, 4]
//!
//! [corpus.synth]
//! jobs = 500
//! ```
//!
//! Exit status: 0 on success, 1 on a domain error, 2 on a usage error.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bloom::{BloomProfile, KeywordSet, Role};
use crate::corpus::{
    generate_synthetic, import_tabular, load_corpus, load_profiles, save_corpus, Corpus, SynthConfig,
};
use crate::error::{Error, Result};
use crate::eval::{
    perturb_histories, summarize, write_results_csv, write_summary_csv, Evaluator, ExperimentConfig,
    Model,
};
use crate::ldp::{parse_epsilon, perturb, PrivacyParams, Seed};
use crate::netsim::{self, SimConfig, Topology, Workload};
use crate::recommend::{rank_candidates_for_job, rank_jobs_for_candidate, RankedList};
use crate::similarity::CorrectionVariant;

/// ε used for the degenerate near-noiseless control row of `eval sweep`.
pub const CONTROL_EPSILON: f64 = 50.0;

#[derive(Debug, Parser, Serialize)]
#[command(name = "privrec", version, about = "Privacy-preserving reciprocal job recommendation")]
pub struct Cli {
    /// Worker threads for parallel scoring (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with flag values; command-line flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Create or import job corpora.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Build and perturb single profiles.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Rank jobs for a candidate or candidates for a job.
    #[command(subcommand)]
    Recommend(RecommendCmd),
    /// Utility experiments against exact keyword vectors.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Network simulation.
    #[command(subcommand)]
    Netsim(NetsimCmd),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum CorpusCmd {
    /// Generate a synthetic corpus with topic structure.
    Synth(SynthArgs),
    /// Import TSV job and application tables.
    Import(ImportArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ProfileCmd {
    /// Encode keywords as a Bloom filter profile.
    Build(BuildArgs),
    /// Apply randomized response to a profile (once).
    Perturb(PerturbArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum RecommendCmd {
    /// Top-N jobs for a candidate profile.
    Jobs(JobsArgs),
    /// Top-N candidates for a job.
    Candidates(CandidatesArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum EvalCmd {
    /// Precision of the perturbed model across privacy levels.
    Sweep(SweepArgs),
    /// Precision of the perturbed model across filter lengths and hash counts.
    Params(ParamsArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum NetsimCmd {
    /// Run a workload script and write the report.
    Run(NetsimArgs),
}

/// Comma-separated list parsed as one value so that a later occurrence
/// replaces, rather than extends, an earlier one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct List<T>(pub Vec<T>);

fn parse_list<T: FromStr>(s: &str) -> std::result::Result<List<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(List)
}

fn parse_eps(s: &str) -> std::result::Result<f64, String> {
    parse_epsilon(s).map_err(|e| e.to_string())
}

fn parse_eps_list(s: &str) -> std::result::Result<List<f64>, String> {
    s.split(',')
        .map(|x| parse_eps(x.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(List)
}

fn parse_usize_list(s: &str) -> std::result::Result<List<usize>, String> {
    parse_list(s)
}

fn parse_u32_list(s: &str) -> std::result::Result<List<u32>, String> {
    parse_list(s)
}

fn parse_correction(s: &str) -> std::result::Result<CorrectionVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_topology(s: &str) -> std::result::Result<Topology, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleArg {
    Job,
    Candidate,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Role {
        match r {
            RoleArg::Job => Role::Job,
            RoleArg::Candidate => Role::Candidate,
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 2000)]
    pub jobs: usize,
    #[arg(long, default_value_t = 64)]
    pub candidates: usize,
    #[arg(long, default_value_t = 500)]
    pub open_jobs: usize,
    #[arg(long, default_value_t = 8)]
    pub topics: usize,
    #[arg(long, default_value_t = 400)]
    pub vocab_per_topic: usize,
    #[arg(long, default_value_t = 3000)]
    pub shared_vocab: usize,
    #[arg(long, default_value_t = 100)]
    pub min_keywords: usize,
    #[arg(long, default_value_t = 250)]
    pub max_keywords: usize,
    #[arg(long, default_value_t = 5)]
    pub min_applications: usize,
    #[arg(long, default_value_t = 10)]
    pub max_applications: usize,
    /// Fraction of a job's keywords drawn from its topic vocabulary.
    #[arg(long, default_value_t = 0.5)]
    pub topic_share: f64,
    /// Probability that an application goes to a job outside the candidate's topic.
    #[arg(long, default_value_t = 0.3)]
    pub cross_topic_prob: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 4096)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Output directory.
    #[arg(short, long)]
    pub output: PathBuf,
}

impl SynthArgs {
    pub fn synth_config(&self) -> SynthConfig {
        SynthConfig {
            topics: self.topics,
            vocab_per_topic: self.vocab_per_topic,
            shared_vocab: self.shared_vocab,
            jobs: self.jobs,
            candidates: self.candidates,
            open_jobs: self.open_jobs,
            keywords_per_job: (self.min_keywords, self.max_keywords),
            applications_per_candidate: (self.min_applications, self.max_applications),
            topic_share: self.topic_share,
            cross_topic_prob: self.cross_topic_prob,
            seed: Seed(self.seed),
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct ImportArgs {
    /// Jobs TSV: job_id, title, description, requirements.
    #[arg(long)]
    pub jobs: PathBuf,
    /// Applications TSV: candidate_id, job_id.
    #[arg(long)]
    pub applications: PathBuf,
    #[arg(long, default_value_t = 4096)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct BuildArgs {
    /// Comma-separated keywords.
    #[arg(long, conflicts_with_all = ["keywords_file", "corpus"])]
    pub keywords: Option<String>,
    /// File of keywords separated by whitespace or commas.
    #[arg(long, conflicts_with = "corpus")]
    pub keywords_file: Option<PathBuf>,
    /// Take keywords from a saved corpus (with --job or --candidate).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Job id in --corpus.
    #[arg(long, requires = "corpus", conflicts_with = "candidate")]
    pub job: Option<String>,
    /// Candidate id in --corpus; uses the union of the applied jobs' keywords.
    #[arg(long, requires = "corpus")]
    pub candidate: Option<String>,
    #[arg(long, value_enum, default_value = "candidate")]
    pub role: RoleArg,
    #[arg(long, default_value_t = 4096)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct PerturbArgs {
    /// Privacy loss; `ln2` and `ln3` are accepted.
    #[arg(long, value_parser = parse_eps)]
    pub epsilon: f64,
    /// Expected hash count; must match the profile header when given.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct JobsArgs {
    /// The candidate's own, unperturbed profile.
    #[arg(long)]
    pub profile: PathBuf,
    /// Saved corpus holding the job profiles.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Rank every job, not only the open ones.
    #[arg(long)]
    pub all_jobs: bool,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Keep only scores strictly above this value.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Output TSV (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct CandidatesArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Job id in the corpus.
    #[arg(long)]
    pub job: String,
    /// Perturb every candidate's applied profiles with this privacy loss first.
    #[arg(long, value_parser = parse_eps)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// `job-ones` or `perturbed-candidate-ones`.
    #[arg(long, value_parser = parse_correction, default_value = "job-ones")]
    pub correction: CorrectionVariant,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalCommon {
    /// Saved corpus; the default synthetic corpus is generated when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 50)]
    pub jobs_sample: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_parser = parse_correction, default_value = "job-ones")]
    pub correction: CorrectionVariant,
    /// Per-row results CSV.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Summary CSV (default: printed to stdout).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_eps_list, default_value = "ln2,ln3,2,4,7,10")]
    pub epsilons: List<f64>,
    #[arg(long, default_value_t = 4096)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Skip the unperturbed reference rows and the ε=50 control.
    #[arg(long)]
    pub no_control: bool,
    #[command(flatten)]
    pub common: EvalCommon,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct ParamsArgs {
    #[arg(long, value_parser = parse_usize_list, default_value = "512,1024,2048,4096")]
    pub ms: List<usize>,
    #[arg(long, value_parser = parse_u32_list, default_value = "1,2,4,8")]
    pub ks: List<u32>,
    #[arg(long, value_parser = parse_eps, default_value = "ln3")]
    pub epsilon: f64,
    #[command(flatten)]
    pub common: EvalCommon,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
pub struct NetsimArgs {
    /// Workload script; an empty workload when absent.
    #[arg(long)]
    pub script: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
    /// `ring`, `full` or `random:<degree>`.
    #[arg(long, value_parser = parse_topology, default_value = "random:4")]
    pub topology: Topology,
    #[arg(long, default_value_t = 2)]
    pub fanout: usize,
    /// Per-round probability that a node is offline.
    #[arg(long, default_value_t = 0.0)]
    pub churn: f64,
    /// Keep simulating until this round after the script ends.
    #[arg(long, default_value_t = 0)]
    pub rounds: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Report JSON (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Err(msg) = apply_config_file(&mut args) {
        eprintln!("error: {msg}");
        return 2;
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Inserts the `--config` file's values as flags right after the subcommand
/// path, so that flags given explicitly (which come later) win.
fn apply_config_file(args: &mut Vec<OsString>) -> std::result::Result<(), String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(());
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))?;

    let groups = ["corpus", "profile", "recommend", "eval", "netsim"];
    let Some(g) = args
        .iter()
        .position(|a| groups.contains(&a.to_string_lossy().as_ref()))
    else {
        return Ok(());
    };
    let group = args[g].to_string_lossy().into_owned();
    let leaf = args.get(g + 1).map(|a| a.to_string_lossy().into_owned());

    let mut flags = Vec::new();
    for (key, value) in &table {
        match value {
            toml::Value::Table(sub) if *key == group => {
                for (k2, v2) in sub {
                    match v2 {
                        toml::Value::Table(leaf_table) if Some(k2) == leaf.as_ref() => {
                            for (k3, v3) in leaf_table {
                                push_flag(&mut flags, k3, v3, &path)?;
                            }
                        }
                        toml::Value::Table(_) => {}
                        v => push_flag(&mut flags, k2, v, &path)?,
                    }
                }
            }
            toml::Value::Table(_) => {}
            v if key == "threads" => push_flag(&mut flags, key, v, &path)?,
            _ => {
                return Err(format!(
                    "{}: top-level key {key:?} is not allowed; put it under a [group.command] table",
                    path.display()
                ))
            }
        }
    }
    let at = (g + 2).min(args.len());
    args.splice(at..at, flags);
    Ok(())
}

fn push_flag(
    flags: &mut Vec<OsString>,
    key: &str,
    value: &toml::Value,
    path: &Path,
) -> std::result::Result<(), String> {
    let flag = format!("--{}", key.replace('_', "-"));
    let scalar = |v: &toml::Value| -> std::result::Result<String, String> {
        match v {
            toml::Value::String(s) => Ok(s.clone()),
            toml::Value::Integer(i) => Ok(i.to_string()),
            toml::Value::Float(f) => Ok(f.to_string()),
            other => Err(format!("{}: unsupported value for {key}: {other}", path.display())),
        }
    };
    match value {
        toml::Value::Boolean(true) => flags.push(flag.into()),
        toml::Value::Boolean(false) => {}
        toml::Value::Array(items) => {
            let joined = items.iter().map(scalar).collect::<std::result::Result<Vec<_>, _>>()?;
            flags.push(flag.into());
            flags.push(joined.join(",").into());
        }
        v => {
            flags.push(flag.into());
            flags.push(scalar(v)?.into());
        }
    }
    Ok(())
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    eprintln!("privrec: resolved config {}", serde_json::to_string(cli)?);
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::Config("--threads must be positive".into()));
        }
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match &cli.command {
        Command::Corpus(CorpusCmd::Synth(a)) => corpus_synth(a),
        Command::Corpus(CorpusCmd::Import(a)) => corpus_import(a),
        Command::Profile(ProfileCmd::Build(a)) => profile_build(a),
        Command::Profile(ProfileCmd::Perturb(a)) => profile_perturb(a),
        Command::Recommend(RecommendCmd::Jobs(a)) => recommend_jobs(a),
        Command::Recommend(RecommendCmd::Candidates(a)) => recommend_candidates(a),
        Command::Eval(EvalCmd::Sweep(a)) => eval_sweep(a),
        Command::Eval(EvalCmd::Params(a)) => eval_params(a),
        Command::Netsim(NetsimCmd::Run(a)) => netsim_run(a),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|e| Error::io(path, e))
}

fn read_profile(path: &Path) -> Result<BloomProfile> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    BloomProfile::from_bytes(&bytes)
}

fn corpus_synth(a: &SynthArgs) -> Result<()> {
    let corpus = generate_synthetic(&a.synth_config())?;
    let index = save_corpus(&corpus, &a.output, a.m, a.k)?;
    eprintln!(
        "privrec: wrote {} jobs, {} candidates, {} open jobs to {}",
        index.jobs.len(),
        index.candidates.len(),
        index.open_jobs.len(),
        a.output.display()
    );
    Ok(())
}

fn corpus_import(a: &ImportArgs) -> Result<()> {
    let imported = import_tabular(&a.jobs, &a.applications)?;
    for w in &imported.warnings {
        eprintln!("warning: {w}");
    }
    let index = save_corpus(&imported.corpus, &a.output, a.m, a.k)?;
    eprintln!(
        "privrec: imported {} jobs, {} candidates, {} open jobs",
        index.jobs.len(),
        index.candidates.len(),
        index.open_jobs.len()
    );
    Ok(())
}

fn profile_build(a: &BuildArgs) -> Result<()> {
    let keywords: KeywordSet = if let Some(list) = &a.keywords {
        list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    } else if let Some(path) = &a.keywords_file {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect()
    } else if let Some(dir) = &a.corpus {
        let corpus = load_corpus(dir)?.corpus();
        match (&a.job, &a.candidate) {
            (Some(job), None) => corpus
                .jobs
                .get(job)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("unknown job {job}")))?,
            (None, Some(cand)) => {
                let applied = corpus
                    .applications
                    .get(cand)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown candidate {cand}")))?;
                applied
                    .iter()
                    .flat_map(|j| corpus.jobs[j].iter())
                    .collect()
            }
            _ => {
                return Err(Error::InvalidInput(
                    "--corpus needs exactly one of --job or --candidate".into(),
                ))
            }
        }
    } else {
        return Err(Error::InvalidInput(
            "give --keywords, --keywords-file or --corpus".into(),
        ));
    };
    let profile = BloomProfile::from_keywords(&keywords, a.m, a.k, a.role.into())?;
    write_file(&a.output, &profile.to_bytes())?;
    eprintln!(
        "privrec: {} keywords -> {} of {} bits set",
        keywords.len(),
        profile.ones(),
        profile.m()
    );
    Ok(())
}

fn profile_perturb(a: &PerturbArgs) -> Result<()> {
    let profile = read_profile(&a.input)?;
    if let Some(k) = a.k {
        if k != profile.k() {
            return Err(Error::InvalidInput(format!(
                "--k {k} does not match the profile's k = {}",
                profile.k()
            )));
        }
    }
    let params = PrivacyParams::new(a.epsilon, profile.k())?;
    let noisy = perturb(&profile, &params, Seed(a.seed))?;
    write_file(&a.output, &noisy.to_bytes())?;
    eprintln!(
        "privrec: flip probability {:.6}, ones {} -> {}",
        params.flip_probability(),
        profile.ones(),
        noisy.ones()
    );
    Ok(())
}

fn write_ranking(list: &RankedList, output: Option<&Path>) -> Result<()> {
    let mut text = String::from("rank\tid\tscore\n");
    for (i, e) in list.entries.iter().enumerate() {
        text.push_str(&format!("{}\t{}\t{:.6}\n", i + 1, e.id, e.score.value));
    }
    match output {
        Some(path) => write_file(path, text.as_bytes()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}

fn recommend_jobs(a: &JobsArgs) -> Result<()> {
    let candidate = read_profile(&a.profile)?;
    let index = load_corpus(&a.corpus)?;
    let profiles = load_profiles(&a.corpus, &index)?;
    let open: HashSet<&str> = index.open_jobs.iter().map(String::as_str).collect();
    let jobs: Vec<(String, BloomProfile)> = profiles
        .into_iter()
        .filter(|(id, _)| a.all_jobs || open.contains(id.as_str()))
        .collect();
    let list = rank_jobs_for_candidate(&candidate, &jobs, a.n, a.threshold)?;
    write_ranking(&list, a.output.as_deref())
}

fn recommend_candidates(a: &CandidatesArgs) -> Result<()> {
    let index = load_corpus(&a.corpus)?;
    let profiles = load_profiles(&a.corpus, &index)?;
    let corpus = index.corpus();
    let job = profiles
        .get(&a.job)
        .ok_or_else(|| Error::InvalidInput(format!("unknown job {}", a.job)))?;
    let histories = corpus.candidate_histories(&profiles)?;
    let list = match a.epsilon {
        Some(eps) => {
            let params = PrivacyParams::new(eps, index.k)?;
            let noisy = perturb_histories(&histories, &params, Seed(a.seed))?;
            rank_candidates_for_job(job, &noisy, Some(&params), a.correction, a.n, a.threshold)?
        }
        None => rank_candidates_for_job(job, &histories, None, a.correction, a.n, a.threshold)?,
    };
    write_ranking(&list, a.output.as_deref())
}

fn eval_corpus(common: &EvalCommon) -> Result<Corpus> {
    let corpus = match &common.corpus {
        Some(dir) => load_corpus(dir)?.corpus(),
        None => generate_synthetic(&SynthConfig::default())?,
    };
    let s = corpus.stats();
    eprintln!(
        "privrec: corpus {} jobs, {} candidates, {} open jobs, {:.1} keywords/job",
        s.jobs, s.candidates, s.open_jobs, s.mean_keywords_per_job
    );
    Ok(corpus)
}

fn base_config(common: &EvalCommon, model: Model, m: usize, k: u32, epsilons: Vec<f64>) -> ExperimentConfig {
    ExperimentConfig {
        model,
        m,
        k,
        epsilons,
        n: common.n,
        jobs_sample: common.jobs_sample,
        runs: common.runs,
        seed: Seed(common.seed),
        correction: common.correction,
    }
}

fn write_eval_outputs(common: &EvalCommon, rows: &[crate::eval::ResultRow]) -> Result<()> {
    write_results_csv(create(&common.output)?, rows)?;
    let summary = summarize(rows);
    match &common.summary {
        Some(path) => write_summary_csv(create(path)?, &summary),
        None => write_summary_csv(io::stdout().lock(), &summary),
    }
}

fn eval_sweep(a: &SweepArgs) -> Result<()> {
    let corpus = eval_corpus(&a.common)?;
    let mut evaluator = Evaluator::new(&corpus)?;
    let mut epsilons = a.epsilons.0.clone();
    let mut rows = Vec::new();
    if !a.no_control {
        rows.extend(evaluator.run(&base_config(&a.common, Model::Bf, a.m, a.k, vec![]))?);
        if !epsilons.contains(&CONTROL_EPSILON) {
            epsilons.push(CONTROL_EPSILON);
        }
    }
    rows.extend(evaluator.run(&base_config(&a.common, Model::BfDp, a.m, a.k, epsilons))?);
    write_eval_outputs(&a.common, &rows)
}

fn eval_params(a: &ParamsArgs) -> Result<()> {
    let corpus = eval_corpus(&a.common)?;
    let mut evaluator = Evaluator::new(&corpus)?;
    let mut rows = Vec::new();
    for &m in &a.ms.0 {
        for &k in &a.ks.0 {
            rows.extend(evaluator.run(&base_config(&a.common, Model::BfDp, m, k, vec![a.epsilon]))?);
        }
    }
    write_eval_outputs(&a.common, &rows)
}

fn netsim_run(a: &NetsimArgs) -> Result<()> {
    let workload = match &a.script {
        Some(path) => Workload::from_file(path)?,
        None => Workload::new(),
    };
    let config = SimConfig {
        nodes: a.nodes,
        topology: a.topology,
        gossip_fanout: a.fanout,
        churn_offline_prob: a.churn,
        rounds: a.rounds,
        seed: Seed(a.seed),
    };
    let json = netsim::run(&config, &workload)?.to_json()?;
    match &a.output {
        Some(path) => write_file(path, json.as_bytes()),
        None => io::stdout()
            .write_all(json.as_bytes())
            .map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}

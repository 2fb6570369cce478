use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::path::Path;

use super::{extract_keywords, Corpus, JobDocument, MIN_APPLICATIONS};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Imported {
    pub corpus: Corpus,
    pub warnings: Vec<String>,
}

// Accepted header spellings, compared case-insensitively. The second spelling
// of each matches the public job-recommendation dump.
const JOB_ID: &[&str] = &["job_id", "jobid"];
const TITLE: &[&str] = &["title"];
const DESCRIPTION: &[&str] = &["description"];
const REQUIREMENTS: &[&str] = &["requirements"];
const CANDIDATE_ID: &[&str] = &["candidate_id", "userid"];

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .quoting(false)
        .flexible(true)
        .from_reader(file))
}

fn column(headers: &csv::StringRecord, names: &[&str], path: &Path) -> Result<usize> {
    headers
        .iter()
        .position(|h| names.iter().any(|n| h.trim().eq_ignore_ascii_case(n)))
        .ok_or_else(|| Error::Format {
            path: path.to_path_buf(),
            reason: format!("missing column {:?}", names[0]),
        })
}

fn field(record: &csv::StringRecord, idx: usize) -> &str {
    record.get(idx).unwrap_or("").trim()
}

/// Loads a corpus from two tab-separated files.
///
/// Jobs: `job_id, title, description, requirements`. Applications:
/// `candidate_id, job_id`. Applications to jobs missing from the job table are
/// dropped, repeated applications count once, and candidates left with fewer
/// than five distinct jobs are dropped. Each drop is reported as a warning.
pub fn import_tabular(jobs_path: &Path, applications_path: &Path) -> Result<Imported> {
    let mut warnings = Vec::new();

    let mut rdr = reader(jobs_path)?;
    let headers = rdr.headers()?.clone();
    let cols = [
        column(&headers, JOB_ID, jobs_path)?,
        column(&headers, TITLE, jobs_path)?,
        column(&headers, DESCRIPTION, jobs_path)?,
        column(&headers, REQUIREMENTS, jobs_path)?,
    ];
    let mut docs = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let id = field(&record, cols[0]);
        let line = line + 2;
        if id.is_empty() {
            return Err(Error::Format {
                path: jobs_path.to_path_buf(),
                reason: format!("line {line}: empty job id"),
            });
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::Format {
                path: jobs_path.to_path_buf(),
                reason: format!("line {line}: duplicate job id {id}"),
            });
        }
        let doc = JobDocument::new(
            id,
            field(&record, cols[1]),
            field(&record, cols[2]),
            field(&record, cols[3]),
        );
        if doc.title.is_empty() && doc.description.is_empty() && doc.requirements.is_empty() {
            return Err(Error::Format {
                path: jobs_path.to_path_buf(),
                reason: format!("line {line}: job {id} has no text"),
            });
        }
        docs.push(doc);
    }
    let extraction = extract_keywords(&docs)?;
    warnings.extend(extraction.warnings);

    let mut rdr = reader(applications_path)?;
    let headers = rdr.headers()?.clone();
    let cand_col = column(&headers, CANDIDATE_ID, applications_path)?;
    let job_col = column(&headers, JOB_ID, applications_path)?;
    let mut raw: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut ever_applied = BTreeSet::new();
    let mut dangling = 0usize;
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let (cand, job) = (field(&record, cand_col), field(&record, job_col));
        if cand.is_empty() || job.is_empty() {
            return Err(Error::Format {
                path: applications_path.to_path_buf(),
                reason: format!("line {}: empty candidate or job id", line + 2),
            });
        }
        ever_applied.insert(job.to_string());
        if !seen.contains(job) {
            dangling += 1;
            continue;
        }
        let list = raw.entry(cand.to_string()).or_default();
        if !list.iter().any(|j| j == job) {
            list.push(job.to_string());
        }
    }
    if dangling > 0 {
        warnings.push(format!("{dangling} applications reference jobs outside the job table"));
    }

    let mut applications = BTreeMap::new();
    for (cand, jobs) in raw {
        if jobs.len() < MIN_APPLICATIONS {
            warnings.push(format!(
                "candidate {cand} dropped: {} distinct applied jobs, need {MIN_APPLICATIONS}",
                jobs.len()
            ));
        } else {
            applications.insert(cand, jobs);
        }
    }
    let open_jobs = seen
        .into_iter()
        .filter(|id| !ever_applied.contains(id))
        .collect();
    let corpus = Corpus {
        jobs: extraction.keywords,
        applications,
        open_jobs,
    };
    corpus.validate()?;
    Ok(Imported { corpus, warnings })
}

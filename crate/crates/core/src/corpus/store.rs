//! Corpus directory layout:
//!
//! ```text
//! <dir>/index.json              ids, roles, keyword lists, profile file names
//! <dir>/profiles/NNNNNN.profile canonical job profiles at the index's (m, k)
//! ```
//!
//! Profile file names are positional so arbitrary ids never reach the filesystem.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Corpus;
use crate::bloom::{BloomProfile, KeywordSet, Role};
use crate::error::{Error, Result};

pub const INDEX_FILE: &str = "index.json";
pub const INDEX_FORMAT: &str = "privrec-corpus";
const PROFILE_DIR: &str = "profiles";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub format: String,
    pub version: u32,
    pub m: usize,
    pub k: u32,
    pub jobs: Vec<IndexJob>,
    pub candidates: Vec<IndexCandidate>,
    pub open_jobs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexJob {
    pub id: String,
    pub role: Role,
    pub file: String,
    pub keywords: KeywordSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexCandidate {
    pub id: String,
    pub role: Role,
    pub applied: Vec<String>,
}

impl CorpusIndex {
    pub fn corpus(&self) -> Corpus {
        Corpus {
            jobs: self
                .jobs
                .iter()
                .map(|j| (j.id.clone(), j.keywords.clone()))
                .collect(),
            applications: self
                .candidates
                .iter()
                .map(|c| (c.id.clone(), c.applied.clone()))
                .collect(),
            open_jobs: self.open_jobs.clone(),
        }
    }

    pub fn job(&self, id: &str) -> Option<&IndexJob> {
        self.jobs.iter().find(|j| j.id == id)
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes `corpus` to `dir`, building job profiles with `(m, k)`.
pub fn save_corpus(corpus: &Corpus, dir: &Path, m: usize, k: u32) -> Result<CorpusIndex> {
    corpus.validate()?;
    let profiles = dir.join(PROFILE_DIR);
    fs::create_dir_all(&profiles).map_err(|e| Error::io(&profiles, e))?;
    let mut jobs = Vec::with_capacity(corpus.jobs.len());
    for (i, (id, keywords)) in corpus.jobs.iter().enumerate() {
        let file = format!("{PROFILE_DIR}/{i:06}.profile");
        let profile = BloomProfile::from_keywords(keywords, m, k, Role::Job)?;
        write(&dir.join(&file), &profile.to_bytes())?;
        jobs.push(IndexJob {
            id: id.clone(),
            role: Role::Job,
            file,
            keywords: keywords.clone(),
        });
    }
    let index = CorpusIndex {
        format: INDEX_FORMAT.into(),
        version: 1,
        m,
        k,
        jobs,
        candidates: corpus
            .applications
            .iter()
            .map(|(id, applied)| IndexCandidate {
                id: id.clone(),
                role: Role::Candidate,
                applied: applied.clone(),
            })
            .collect(),
        open_jobs: corpus.open_jobs.clone(),
    };
    let mut text = serde_json::to_string_pretty(&index)?;
    text.push('\n');
    write(&dir.join(INDEX_FILE), text.as_bytes())?;
    Ok(index)
}

pub fn load_corpus(dir: &Path) -> Result<CorpusIndex> {
    let path = dir.join(INDEX_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let index: CorpusIndex = serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.clone(),
        reason: e.to_string(),
    })?;
    if index.format != INDEX_FORMAT || index.version != 1 {
        return Err(Error::Format {
            path,
            reason: format!("unsupported index {} v{}", index.format, index.version),
        });
    }
    index.corpus().validate()?;
    Ok(index)
}

/// Reads the stored profile of job `id`.
pub fn load_profile(dir: &Path, index: &CorpusIndex, id: &str) -> Result<BloomProfile> {
    let job = index
        .job(id)
        .ok_or_else(|| Error::InvalidInput(format!("no job {id} in corpus")))?;
    let path = dir.join(&job.file);
    let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
    BloomProfile::from_bytes(&bytes)
}

/// All stored job profiles keyed by id.
pub fn load_profiles(dir: &Path, index: &CorpusIndex) -> Result<BTreeMap<String, BloomProfile>> {
    index
        .jobs
        .iter()
        .map(|j| Ok((j.id.clone(), load_profile(dir, index, &j.id)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Corpus::default();
        c.jobs.insert("a/../b".into(), ["python", "sql"].into_iter().collect());
        c.jobs.insert("open".into(), ["go"].into_iter().collect());
        c.applications.insert("cand".into(), vec!["a/../b".into()]);
        c.open_jobs.push("open".into());
        let saved = save_corpus(&c, dir.path(), 64, 2).unwrap();
        let loaded = load_corpus(dir.path()).unwrap();
        assert_eq!(saved, loaded);
        assert_eq!(loaded.corpus(), c);
        let p = load_profile(dir.path(), &loaded, "a/../b").unwrap();
        assert!(p.contains("python").unwrap());
        assert_eq!((p.m(), p.k()), (64, 2));
        assert_eq!(load_profiles(dir.path(), &loaded).unwrap().len(), 2);
    }

    #[test]
    fn rejects_foreign_index() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(INDEX_FILE), "{\"format\": 3}").unwrap();
        assert!(matches!(load_corpus(dir.path()), Err(Error::Format { .. })));
    }
}

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::stopwords::is_stopword;
use crate::bloom::KeywordSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobDocument {
    pub job_id: String,
    pub title: String,
    pub description: String,
    pub requirements: String,
}

impl JobDocument {
    pub fn new(
        job_id: impl Into<String>,
        title: impl Into<String>,
        description: impl Into<String>,
        requirements: impl Into<String>,
    ) -> Self {
        Self {
            job_id: job_id.into(),
            title: title.into(),
            description: description.into(),
            requirements: requirements.into(),
        }
    }

    fn text_fields(&self) -> [&str; 3] {
        [&self.title, &self.description, &self.requirements]
    }
}

/// Lowercase alphanumeric runs of at least two characters, minus stopwords.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .map(str::to_lowercase)
        .filter(|t| !is_stopword(t))
}

#[derive(Debug, Clone, Default)]
pub struct Extraction {
    pub keywords: BTreeMap<String, KeywordSet>,
    /// Per-token TF-IDF scores of the retained keywords.
    pub scores: BTreeMap<String, BTreeMap<String, f64>>,
    pub warnings: Vec<String>,
}

/// TF-IDF keyword extraction: `tf(t, d) * ln(N / df(t))` with raw counts and
/// no smoothing. Every token with a positive score is kept.
pub fn extract_keywords(documents: &[JobDocument]) -> Result<Extraction> {
    if documents.is_empty() {
        return Err(Error::InvalidInput("no documents to extract keywords from".into()));
    }
    let term_counts: Vec<HashMap<String, usize>> = documents
        .par_iter()
        .map(|doc| {
            let mut tf = HashMap::new();
            for field in doc.text_fields() {
                for tok in tokenize(field) {
                    *tf.entry(tok).or_insert(0) += 1;
                }
            }
            tf
        })
        .collect();

    let mut df: HashMap<&str, usize> = HashMap::new();
    for tf in &term_counts {
        for term in tf.keys() {
            *df.entry(term.as_str()).or_insert(0) += 1;
        }
    }
    let n = documents.len() as f64;

    let mut out = Extraction::default();
    for (doc, tf) in documents.iter().zip(&term_counts) {
        if out.keywords.contains_key(&doc.job_id) {
            return Err(Error::InvalidInput(format!("duplicate job id {:?}", doc.job_id)));
        }
        let scores: BTreeMap<String, f64> = tf
            .iter()
            .map(|(term, &count)| (term.clone(), count as f64 * (n / df[term.as_str()] as f64).ln()))
            .filter(|(_, s)| *s > 0.0)
            .collect();
        if tf.is_empty() {
            out.warnings.push(format!("job {}: no tokens after filtering", doc.job_id));
        } else if scores.is_empty() {
            out.warnings.push(format!("job {}: no token has a positive TF-IDF score", doc.job_id));
        }
        out.keywords
            .insert(doc.job_id.clone(), scores.keys().collect());
        out.scores.insert(doc.job_id.clone(), scores);
    }
    Ok(out)
}

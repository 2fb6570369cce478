//! Keyword extraction by TF-IDF from job postings, and import of TSV job and
//! application tables into a corpus.
//!
//! ```bash
//! cargo run -p privrec --example tfidf_keywords
//! ```

use std::fs;

use privrec::corpus::{extract_keywords, import_tabular, JobDocument};

fn main() -> privrec::Result<()> {
    let docs = vec![
        JobDocument::new("j1", "Data Analyst", "Analyze sales data with Python and SQL.", "SQL, Python, statistics"),
        JobDocument::new("j2", "Backend Engineer", "Build services in Java and Go.", "Java, Kubernetes"),
        JobDocument::new("j3", "Data Engineer", "Pipelines in Python and Spark.", "Spark, Python, SQL"),
    ];
    let extraction = extract_keywords(&docs)?;
    for (id, scores) in &extraction.scores {
        let mut top: Vec<_> = scores.iter().collect();
        top.sort_by(|a, b| b.1.total_cmp(a.1).then(a.0.cmp(b.0)));
        let shown: Vec<String> = top.iter().take(4).map(|(w, s)| format!("{w}={s:.2}")).collect();
        println!("{id}: {}", shown.join(" "));
    }

    let dir = std::env::temp_dir().join("privrec-tfidf-example");
    fs::create_dir_all(&dir).map_err(|e| privrec::Error::io(&dir, e))?;
    let jobs = dir.join("jobs.tsv");
    let apps = dir.join("apps.tsv");
    let mut jobs_tsv = String::from("JobID\tTitle\tDescription\tRequirements\n");
    for i in 0..8 {
        jobs_tsv.push_str(&format!("{i}\tRole {i}\tWork on project{i} with python\tskill{i} sql\n"));
    }
    let mut apps_tsv = String::from("UserID\tJobID\n");
    for j in 0..5 {
        apps_tsv.push_str(&format!("u1\t{j}\n"));
    }
    apps_tsv.push_str("u2\t0\nu2\t99\n");
    fs::write(&jobs, jobs_tsv).map_err(|e| privrec::Error::io(&jobs, e))?;
    fs::write(&apps, apps_tsv).map_err(|e| privrec::Error::io(&apps, e))?;

    let imported = import_tabular(&jobs, &apps)?;
    for w in &imported.warnings {
        println!("warning: {w}");
    }
    let s = imported.corpus.stats();
    println!("imported {} jobs, {} candidates, {} open jobs", s.jobs, s.candidates, s.open_jobs);
    Ok(())
}

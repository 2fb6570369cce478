//! Line-oriented workload scripts.
//!
//! ```text
//! # comment
//! round <N>                              advance the simulation to round N
//! subscribe <node> <topic>
//! publish <node> <topic> <file> [token]  pin file at node, announce its CID
//! fetch <node> <cid|@file> [token]
//! cluster <name> <node> <node> ...       declare a pinning cluster
//! pin <cluster> <cid|@file> <r>
//! offline <node>
//! online <node>
//! name-update <name> <cid|@file> [node]  owner node defaults to 0
//! resolve <node> <name>
//! ```
//!
//! Nodes are written as `3` or `n3`. `@file` stands for the CID of that file's
//! bytes; file paths are relative to the script's directory.

use std::fs;
use std::path::{Path, PathBuf};

use super::block::{compute_cid, Cid, Token};
use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub enum Event {
    Round(u64),
    Subscribe {
        node: NodeId,
        topic: String,
    },
    Publish {
        node: NodeId,
        topic: String,
        content: Vec<u8>,
        token: Option<Token>,
    },
    Fetch {
        node: NodeId,
        cid: Cid,
        token: Option<Token>,
    },
    Cluster {
        name: String,
        members: Vec<NodeId>,
    },
    Pin {
        cluster: String,
        cid: Cid,
        replicas: usize,
    },
    Offline(NodeId),
    Online(NodeId),
    NameUpdate {
        name: String,
        cid: Cid,
        owner: NodeId,
    },
    Resolve {
        node: NodeId,
        name: String,
    },
}

#[derive(Debug, Clone)]
pub struct Step {
    /// 1-based script line, 0 for programmatic steps.
    pub line: usize,
    pub event: Event,
}

#[derive(Debug, Clone, Default)]
pub struct Workload {
    pub steps: Vec<Step>,
}

impl Workload {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: Event) -> &mut Self {
        self.steps.push(Step { line: 0, event });
        self
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, &base)
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            let event = Parser {
                line,
                words: &words,
                base_dir,
            }
            .event()?;
            steps.push(Step { line, event });
        }
        Ok(Self { steps })
    }
}

struct Parser<'a> {
    line: usize,
    words: &'a [&'a str],
    base_dir: &'a Path,
}

impl Parser<'_> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Script {
            line: self.line,
            reason: reason.into(),
        })
    }

    fn arity(&self, min: usize, max: usize, usage: &str) -> Result<()> {
        let n = self.words.len() - 1;
        if n < min || n > max {
            return self.err(format!("usage: {usage}"));
        }
        Ok(())
    }

    fn node(&self, s: &str) -> Result<NodeId> {
        s.strip_prefix('n')
            .unwrap_or(s)
            .parse()
            .or_else(|_| self.err(format!("bad node {s:?}")))
    }

    fn number<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T> {
        s.parse().or_else(|_| self.err(format!("bad {what} {s:?}")))
    }

    fn path(&self, s: &str) -> PathBuf {
        self.base_dir.join(s)
    }

    fn read(&self, s: &str) -> Result<Vec<u8>> {
        let path = self.path(s);
        fs::read(&path).or_else(|e| self.err(format!("{}: {e}", path.display())))
    }

    fn cid(&self, s: &str) -> Result<Cid> {
        match s.strip_prefix('@') {
            Some(file) => Ok(compute_cid(&self.read(file)?)),
            None => s.parse().or_else(|_| self.err(format!("bad cid {s:?}"))),
        }
    }

    fn token(&self, idx: usize) -> Option<Token> {
        self.words.get(idx).map(|t| Token::new(*t))
    }

    fn event(&self) -> Result<Event> {
        let w = self.words;
        Ok(match w[0] {
            "round" => {
                self.arity(1, 1, "round <N>")?;
                Event::Round(self.number(w[1], "round")?)
            }
            "subscribe" => {
                self.arity(2, 2, "subscribe <node> <topic>")?;
                Event::Subscribe {
                    node: self.node(w[1])?,
                    topic: w[2].to_string(),
                }
            }
            "publish" => {
                self.arity(3, 4, "publish <node> <topic> <file> [token]")?;
                Event::Publish {
                    node: self.node(w[1])?,
                    topic: w[2].to_string(),
                    content: self.read(w[3])?,
                    token: self.token(4),
                }
            }
            "fetch" => {
                self.arity(2, 3, "fetch <node> <cid> [token]")?;
                Event::Fetch {
                    node: self.node(w[1])?,
                    cid: self.cid(w[2])?,
                    token: self.token(3),
                }
            }
            "cluster" => {
                self.arity(2, usize::MAX, "cluster <name> <node>...")?;
                Event::Cluster {
                    name: w[1].to_string(),
                    members: w[2..].iter().map(|s| self.node(s)).collect::<Result<_>>()?,
                }
            }
            "pin" => {
                self.arity(3, 3, "pin <cluster> <cid> <r>")?;
                Event::Pin {
                    cluster: w[1].to_string(),
                    cid: self.cid(w[2])?,
                    replicas: self.number(w[3], "replication factor")?,
                }
            }
            "offline" => {
                self.arity(1, 1, "offline <node>")?;
                Event::Offline(self.node(w[1])?)
            }
            "online" => {
                self.arity(1, 1, "online <node>")?;
                Event::Online(self.node(w[1])?)
            }
            "name-update" => {
                self.arity(2, 3, "name-update <name> <cid> [node]")?;
                Event::NameUpdate {
                    name: w[1].to_string(),
                    cid: self.cid(w[2])?,
                    owner: w.get(3).map_or(Ok(0), |s| self.node(s))?,
                }
            }
            "resolve" => {
                self.arity(2, 2, "resolve <node> <name>")?;
                Event::Resolve {
                    node: self.node(w[1])?,
                    name: w[2].to_string(),
                }
            }
            other => return self.err(format!("unknown command {other:?}")),
        })
    }
}

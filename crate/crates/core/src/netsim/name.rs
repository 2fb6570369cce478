use serde::Serialize;

use super::block::Cid;
use crate::error::{Error, Result};

/// Mutable pointer from a stable name (the hash of an owner key) to a CID.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameRecord {
    pub name: String,
    pub current: Cid,
    pub sequence: u64,
}

impl NameRecord {
    pub fn new(name: impl Into<String>, cid: Cid) -> Self {
        Self {
            name: name.into(),
            current: cid,
            sequence: 1,
        }
    }

    /// The owner's next record, pointing at `cid`.
    pub fn update(&self, cid: Cid) -> NameRecord {
        NameRecord {
            name: self.name.clone(),
            current: cid,
            sequence: self.sequence + 1,
        }
    }

    /// Accepts `next` only as the direct successor of `self`.
    pub fn accept(&self, next: NameRecord) -> Result<NameRecord> {
        if next.name != self.name {
            return Err(Error::InvalidInput(format!(
                "record for {} cannot replace {}",
                next.name, self.name
            )));
        }
        if next.sequence != self.sequence + 1 {
            return Err(Error::StaleSequence {
                name: self.name.clone(),
                got: next.sequence,
                expected: self.sequence + 1,
            });
        }
        Ok(next)
    }

    /// Keeps whichever record has the higher sequence; used by resolvers that
    /// may have missed intermediate updates.
    pub fn newest(self, other: NameRecord) -> NameRecord {
        if other.sequence > self.sequence {
            other
        } else {
            self
        }
    }
}

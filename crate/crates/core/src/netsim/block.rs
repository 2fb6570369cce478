use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Content identifier: the SHA-256 digest of a block's bytes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cid([u8; 32]);

impl Cid {
    pub fn digest(&self) -> &[u8; 32] {
        &self.0
    }

    /// Shortened hex form for logs.
    pub fn short(&self) -> String {
        hex::encode(&self.0[..6])
    }
}

pub fn compute_cid(bytes: &[u8]) -> Cid {
    Cid(Sha256::digest(bytes).into())
}

impl fmt::Display for Cid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(self.0))
    }
}

impl fmt::Debug for Cid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cid({})", self.short())
    }
}

impl FromStr for Cid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = [0u8; 32];
        hex::decode_to_slice(s, &mut out)
            .map_err(|e| Error::InvalidInput(format!("bad cid {s:?}: {e}")))?;
        Ok(Cid(out))
    }
}

impl Serialize for Cid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Opaque capability standing in for a decryption key shared out of band.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Token(String);

impl Token {
    pub fn new(secret: impl Into<String>) -> Self {
        Token(secret.into())
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Token(..)")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Access {
    Public,
    Capability(Token),
}

/// A content-addressed block. Gated blocks release their bytes only to the
/// holder of the matching token.
#[derive(Debug, Clone)]
pub struct Block {
    cid: Cid,
    bytes: Vec<u8>,
    access: Access,
}

impl Block {
    pub fn new(bytes: Vec<u8>, access: Access) -> Self {
        Self {
            cid: compute_cid(&bytes),
            bytes,
            access,
        }
    }

    pub fn cid(&self) -> Cid {
        self.cid
    }

    pub fn is_gated(&self) -> bool {
        matches!(self.access, Access::Capability(_))
    }

    pub fn open(&self, token: Option<&Token>) -> Result<&[u8]> {
        if let Access::Capability(required) = &self.access {
            if token != Some(required) {
                return Err(Error::AccessDenied(self.cid.to_string()));
            }
        }
        Ok(&self.bytes)
    }
}

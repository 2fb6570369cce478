//! Bloom filter profiles.
//!
//! Every job and candidate is represented by a fixed-length bit array of `m`
//! bits filled by `k` hash functions. All parties must hash identically for
//! similarities to mean anything, so the position function is fixed:
//!
//! ```text
//! h1 = fmix64(fnv1a64(keyword, 0xcbf29ce484222325))
//! h2 = fmix64(fnv1a64(keyword, 0x84222325cbf29ce4)) | 1
//! pos_i = (h1 + i * h2) mod m        (wrapping u64 arithmetic), i in 0..k
//! ```
//!
//! `fmix64` is the MurmurHash3 64-bit finalizer. FNV-1a alone leaves its low
//! bits poorly mixed, and a power-of-two `m` only looks at the low bits.
//! With `h2` odd and `m` a power of two, the `k` positions are pairwise
//! distinct as long as `k <= m`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_M: usize = 4096;
pub const DEFAULT_K: u32 = 1;

pub const SEED_H1: u64 = 0xcbf2_9ce4_8422_2325;
pub const SEED_H2: u64 = 0x8422_2325_cbf2_9ce4;

const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub const MAGIC: &[u8; 4] = b"LDPM";
pub const FORMAT_VERSION: u8 = 1;
/// Bytes before the packed bit array.
pub const HEADER_LEN: usize = 4 + 1 + 1 + 1 + 2 + 4 + 8;

pub(crate) fn fnv1a64(bytes: &[u8], basis: u64) -> u64 {
    bytes.iter().fold(basis, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

pub(crate) fn fmix64(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^= h >> 33;
    h
}

/// Bit positions of `keyword` in a filter of `m` bits with `k` hash functions.
pub fn hash_positions(keyword: &str, m: usize, k: u32) -> Result<Vec<usize>> {
    if keyword.is_empty() {
        return Err(Error::InvalidInput("empty keyword".into()));
    }
    check_dims(m, k)?;
    let bytes = keyword.as_bytes();
    let h1 = fmix64(fnv1a64(bytes, SEED_H1));
    let h2 = fmix64(fnv1a64(bytes, SEED_H2)) | 1;
    let m = m as u64;
    Ok((0..u64::from(k))
        .map(|i| (h1.wrapping_add(i.wrapping_mul(h2)) % m) as usize)
        .collect())
}

fn check_dims(m: usize, k: u32) -> Result<()> {
    if m < 2 || m > u32::MAX as usize {
        return Err(Error::InvalidInput(format!("m must be in [2, 2^32), got {m}")));
    }
    if k == 0 || k > u32::from(u16::MAX) {
        return Err(Error::InvalidInput(format!("k must be in [1, 65535], got {k}")));
    }
    Ok(())
}

/// Which side of the market a profile describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Job,
    Candidate,
}

impl Role {
    fn to_byte(self) -> u8 {
        match self {
            Role::Job => 0,
            Role::Candidate => 1,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Job => "job",
            Role::Candidate => "candidate",
        })
    }
}

/// A normalized keyword set: lowercase, trimmed, non-empty, deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KeywordSet(BTreeSet<String>);

impl KeywordSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a keyword after normalization. Returns false if it normalized to nothing
    /// or was already present.
    pub fn insert(&mut self, keyword: &str) -> bool {
        let token = keyword.trim().to_lowercase();
        if token.is_empty() {
            return false;
        }
        self.0.insert(token)
    }

    pub fn contains(&self, keyword: &str) -> bool {
        self.0.contains(keyword)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl<S: AsRef<str>> FromIterator<S> for KeywordSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut set = KeywordSet::new();
        for kw in iter {
            set.insert(kw.as_ref());
        }
        set
    }
}

/// A Bloom filter profile of `m` bits and `k` hash functions.
///
/// Once perturbed, a profile is frozen: its bits are randomized-response
/// noise and membership queries or further insertions are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct BloomProfile {
    words: Vec<u64>,
    m: usize,
    k: u32,
    role: Role,
    epsilon: Option<f64>,
}

impl BloomProfile {
    pub fn new(m: usize, k: u32, role: Role) -> Result<Self> {
        check_dims(m, k)?;
        Ok(Self {
            words: vec![0; m.div_ceil(64)],
            m,
            k,
            role,
            epsilon: None,
        })
    }

    pub fn from_keywords(keywords: &KeywordSet, m: usize, k: u32, role: Role) -> Result<Self> {
        let mut profile = Self::new(m, k, role)?;
        for kw in keywords.iter() {
            profile.insert(kw)?;
        }
        Ok(profile)
    }

    /// Builds an unperturbed profile from explicit bit values; `bits.len()` becomes `m`.
    pub fn from_bits(bits: &[bool], k: u32, role: Role) -> Result<Self> {
        let mut profile = Self::new(bits.len(), k, role)?;
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            profile.set(i);
        }
        Ok(profile)
    }

    pub(crate) fn from_raw_words(
        words: Vec<u64>,
        m: usize,
        k: u32,
        role: Role,
        epsilon: Option<f64>,
    ) -> Self {
        debug_assert_eq!(words.len(), m.div_ceil(64));
        Self {
            words,
            m,
            k,
            role,
            epsilon,
        }
    }

    pub fn insert(&mut self, keyword: &str) -> Result<()> {
        self.ensure_unperturbed("insert into")?;
        for pos in hash_positions(keyword, self.m, self.k)? {
            self.set(pos);
        }
        Ok(())
    }

    /// Membership test; false positives are possible, false negatives are not.
    pub fn contains(&self, keyword: &str) -> Result<bool> {
        self.ensure_unperturbed("query membership of")?;
        Ok(hash_positions(keyword, self.m, self.k)?
            .into_iter()
            .all(|pos| self.get(pos)))
    }

    fn ensure_unperturbed(&self, action: &str) -> Result<()> {
        if self.is_perturbed() {
            return Err(Error::State(format!("cannot {action} a perturbed profile")));
        }
        Ok(())
    }

    fn set(&mut self, pos: usize) {
        self.words[pos / 64] |= 1 << (pos % 64);
    }

    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.m, "bit {pos} out of range for m={}", self.m);
        self.words[pos / 64] >> (pos % 64) & 1 == 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_perturbed(&self) -> bool {
        self.epsilon.is_some()
    }

    /// The privacy loss this profile was perturbed with, if any.
    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.m).map(|i| self.get(i))
    }

    /// Packed words, LSB-first; bits at index `>= m` are always zero.
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.m.div_ceil(8));
        out.extend_from_slice(MAGIC);
        out.push(FORMAT_VERSION);
        out.push(self.role.to_byte());
        out.push(u8::from(self.is_perturbed()));
        out.extend_from_slice(&(self.k as u16).to_le_bytes());
        out.extend_from_slice(&(self.m as u32).to_le_bytes());
        out.extend_from_slice(&self.epsilon.unwrap_or(0.0).to_le_bytes());
        let body = self.m.div_ceil(8);
        out.extend(self.words.iter().flat_map(|w| w.to_le_bytes()).take(body));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let err = |offset: usize, reason: &str| Error::Parse {
            offset,
            reason: reason.to_string(),
        };
        if bytes.len() < HEADER_LEN {
            return Err(err(bytes.len(), "truncated header"));
        }
        if &bytes[0..4] != MAGIC {
            return Err(err(0, "bad magic"));
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(err(4, "unsupported version"));
        }
        let role = match bytes[5] {
            0 => Role::Job,
            1 => Role::Candidate,
            _ => return Err(err(5, "unknown role")),
        };
        let perturbed = match bytes[6] {
            0 => false,
            1 => true,
            _ => return Err(err(6, "perturbed flag must be 0 or 1")),
        };
        let k = u32::from(u16::from_le_bytes([bytes[7], bytes[8]]));
        let m = u32::from_le_bytes(bytes[9..13].try_into().unwrap()) as usize;
        if k == 0 {
            return Err(err(7, "k must be positive"));
        }
        if m < 2 {
            return Err(err(9, "m must be at least 2"));
        }
        let eps = f64::from_le_bytes(bytes[13..21].try_into().unwrap());
        let epsilon = if perturbed {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(err(13, "perturbed profile needs a positive finite epsilon"));
            }
            Some(eps)
        } else {
            if eps.to_bits() != 0 {
                return Err(err(13, "epsilon must be zero for unperturbed profiles"));
            }
            None
        };
        let body = &bytes[HEADER_LEN..];
        let expected = m.div_ceil(8);
        if body.len() != expected {
            return Err(err(
                HEADER_LEN + body.len().min(expected),
                &format!("expected {expected} bit-array bytes, found {}", body.len()),
            ));
        }
        if !m.is_multiple_of(8) {
            let unused = body[expected - 1] >> (m % 8);
            if unused != 0 {
                return Err(err(bytes.len() - 1, "unused high bits must be zero"));
            }
        }
        let mut words = vec![0u64; m.div_ceil(64)];
        for (i, &b) in body.iter().enumerate() {
            words[i / 8] |= u64::from(b) << (8 * (i % 8));
        }
        Ok(Self::from_raw_words(words, m, k, role, epsilon))
    }
}

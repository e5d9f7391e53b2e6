//! Append-only memo table for canonical pairs, with a line-oriented file
//! format. The key and the polynomial are separated by one tab.
//!
//! ```text
//! klmu-cache v1
//! 1032 3120<TAB>1 + q
//! ```
//!
//! Files merge by concatenation: repeated header lines and repeated records
//! are accepted as long as duplicate keys carry identical polynomials.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use thiserror::Error;

use crate::perm::Permutation;
use crate::qpoly::QPoly;
use crate::scalar::Coefficient;

use super::canon::{canonicalize_unchecked, Canonical, PairKey};

pub const CACHE_HEADER: &str = "klmu-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported cache header {found:?} (expected {CACHE_HEADER:?})")]
    Version { found: String },
    #[error("cache line {line}: {reason}")]
    Format { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

/// Shared memo map from canonical pairs to their polynomials.
///
/// Readers never block each other; concurrent inserts of the same key are
/// harmless because every value is determined by its key.
pub struct KlCache<C> {
    map: RwLock<HashMap<PairKey, QPoly<C>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<C: Coefficient> Default for KlCache<C> {
    fn default() -> Self {
        KlCache {
            map: RwLock::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }
}

/// Upper bound `(l(w) - l(x) - 1) / 2` on the degree for a canonical key.
fn degree_bound(key: &PairKey) -> usize {
    let (x, w) = key.split();
    (w.length() - x.length() - 1) / 2
}

fn check_value<C: Coefficient>(key: &PairKey, poly: &QPoly<C>) -> Result<(), String> {
    if !poly.coeff(0).is_one() {
        return Err(format!("constant term of P[{key}] = {poly} is not 1"));
    }
    let bound = degree_bound(key);
    if poly.degree().is_some_and(|d| d > bound) {
        return Err(format!("P[{key}] = {poly} exceeds the degree bound {bound}"));
    }
    Ok(())
}

impl<C: Coefficient> KlCache<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &PairKey) -> Option<QPoly<C>> {
        let found = self.map.read().unwrap().get(key).cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Panics if the value violates the constant-term or degree invariant, or
    /// disagrees with an earlier insert for the same key.
    pub fn insert(&self, key: PairKey, poly: QPoly<C>) {
        if let Err(reason) = check_value(&key, &poly) {
            panic!("refusing to cache an invalid polynomial: {reason}");
        }
        let mut map = self.map.write().unwrap();
        if let Some(existing) = map.get(&key) {
            assert_eq!(existing, &poly, "conflicting values for P[{key}]");
            return;
        }
        map.insert(key, poly);
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn reset_stats(&self) {
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    /// All entries sorted by key.
    pub fn entries(&self) -> Vec<(PairKey, QPoly<C>)> {
        let mut out: Vec<_> = self
            .map
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Moves every entry of `other` into `self`.
    pub fn merge(&self, other: KlCache<C>) -> Result<(), CacheError> {
        let incoming = other.map.into_inner().unwrap();
        let mut map = self.map.write().unwrap();
        for (key, poly) in incoming {
            if let Some(existing) = map.get(&key) {
                if existing != &poly {
                    return Err(CacheError::Format {
                        line: 0,
                        reason: format!("conflicting values for {key}: {existing} vs {poly}"),
                    });
                }
            } else {
                map.insert(key, poly);
            }
        }
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<(), CacheError> {
        writeln!(out, "{CACHE_HEADER}")?;
        for (key, poly) in self.entries() {
            writeln!(out, "{key}\t{poly}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CacheError> {
        let path = path.as_ref();
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let file = fs::File::create(&tmp)?;
        self.write_to(BufWriter::new(file))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses cache text. Any malformed or non-canonical record aborts the
    /// whole load.
    pub fn parse(text: &str) -> Result<Self, CacheError> {
        let mut map: HashMap<PairKey, QPoly<C>> = HashMap::new();
        let mut saw_header = false;
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let fail = |reason: String| CacheError::Format { line, reason };
            if raw.trim().is_empty() {
                continue;
            }
            if raw.starts_with("klmu-cache") {
                if raw.trim_end() != CACHE_HEADER {
                    return Err(CacheError::Version {
                        found: raw.to_string(),
                    });
                }
                saw_header = true;
                continue;
            }
            if !saw_header {
                return Err(CacheError::Version {
                    found: raw.to_string(),
                });
            }
            let (key_text, poly_text) = raw
                .split_once('\t')
                .ok_or_else(|| fail("missing tab separator".into()))?;
            let (x_text, w_text) = key_text
                .split_once(' ')
                .ok_or_else(|| fail(format!("malformed key {key_text:?}")))?;
            let x = Permutation::parse(x_text).map_err(|e| fail(e.to_string()))?;
            let w = Permutation::parse(w_text).map_err(|e| fail(e.to_string()))?;
            if x.degree() != w.degree() {
                return Err(fail(format!("key {key_text:?} mixes degrees")));
            }
            let key = PairKey::new(&x, &w);
            match canonicalize_unchecked(&x, &w) {
                Canonical::Pair(c) if c.key == key => {}
                _ => return Err(fail(format!("key {key_text:?} is not canonical"))),
            }
            let poly: QPoly<C> = poly_text.parse().map_err(|e| fail(format!("{e}")))?;
            check_value(&key, &poly).map_err(fail)?;
            if let Some(existing) = map.get(&key) {
                if existing != &poly {
                    return Err(fail(format!("conflicting duplicate for {key_text:?}")));
                }
                continue;
            }
            map.insert(key, poly);
        }
        if !saw_header {
            return Err(CacheError::Version {
                found: String::new(),
            });
        }
        Ok(KlCache {
            map: RwLock::new(map),
            ..Default::default()
        })
    }
}

//! Sequence identification against the On-line Encyclopedia of Integer
//! Sequences: an online client with a polite rate limit, and an offline
//! fixture store for reproducible runs.

use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SequenceQuery {
    pub terms: Vec<BigInt>,
    pub max_results: usize,
}

impl SequenceQuery {
    pub fn new(terms: Vec<BigInt>) -> Self {
        SequenceQuery {
            terms,
            max_results: 5,
        }
    }

    /// Comma-separated search string, the convention of the public
    /// endpoint.
    pub fn search_string(&self) -> String {
        self.terms
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SequenceMatch {
    /// Accession identifier, letter plus six digits (e.g. A000108).
    pub accession: String,
    pub name: String,
    /// Longest prefix of the query appearing consecutively in the entry.
    pub matched_prefix_length: usize,
}

#[derive(Debug, Clone)]
pub enum LookupMode {
    Online,
    Fixtures(PathBuf),
}

/// Hash key of a query inside a fixture store.
pub fn fixture_key(query: &SequenceQuery) -> String {
    let mut hasher = Sha256::new();
    hasher.update(query.search_string().as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct OeisClient {
    mode: LookupMode,
    min_interval: Duration,
    last_request: Mutex<Option<Instant>>,
}

impl OeisClient {
    pub fn fixtures(dir: impl Into<PathBuf>) -> Self {
        OeisClient {
            mode: LookupMode::Fixtures(dir.into()),
            min_interval: Duration::from_secs(1),
            last_request: Mutex::new(None),
        }
    }

    pub fn online() -> Self {
        OeisClient {
            mode: LookupMode::Online,
            min_interval: Duration::from_secs(1),
            last_request: Mutex::new(None),
        }
    }

    /// Matches ordered by relevance (longest matched prefix first). In
    /// fixtures mode an absent fixture resolves to no matches.
    pub fn lookup(&self, query: &SequenceQuery) -> Result<Vec<SequenceMatch>> {
        if query.terms.is_empty() {
            return Err(Error::Config("query terms must be nonempty".into()));
        }
        let raw = match &self.mode {
            LookupMode::Fixtures(dir) => {
                let path = dir.join(format!("{}.json", fixture_key(query)));
                if !path.exists() {
                    return Ok(Vec::new());
                }
                std::fs::read_to_string(path)?
            }
            LookupMode::Online => self.fetch(query)?,
        };
        let mut matches = parse_response(&raw, query)?;
        matches.sort_by(|a, b| {
            b.matched_prefix_length
                .cmp(&a.matched_prefix_length)
                .then_with(|| a.accession.cmp(&b.accession))
        });
        matches.truncate(query.max_results);
        Ok(matches)
    }

    fn fetch(&self, query: &SequenceQuery) -> Result<String> {
        // global rate limit: at most one request per second per client
        {
            let mut last = self.last_request.lock().unwrap();
            if let Some(t) = *last {
                let elapsed = t.elapsed();
                if elapsed < self.min_interval {
                    std::thread::sleep(self.min_interval - elapsed);
                }
            }
            *last = Some(Instant::now());
        }
        let url = format!(
            "https://oeis.org/search?q={}&fmt=json",
            query.search_string()
        );
        let response = reqwest::blocking::Client::builder()
            .user_agent("treeinv/0.1")
            .build()
            .and_then(|c| c.get(&url).send())
            .map_err(|e| Error::Network(e.to_string()))?;
        response.text().map_err(|e| Error::Network(e.to_string()))
    }
}

// Tolerant parse of the structured search response: accepts either a bare
// list of entries or an object with a "results" list; unknown fields are
// ignored.
fn parse_response(raw: &str, query: &SequenceQuery) -> Result<Vec<SequenceMatch>> {
    let value: serde_json::Value =
        serde_json::from_str(raw).map_err(|e| Error::MalformedResponse {
            reason: e.to_string(),
            raw: raw.to_string(),
        })?;
    let entries = match &value {
        serde_json::Value::Array(list) => list.clone(),
        serde_json::Value::Object(map) => match map.get("results") {
            Some(serde_json::Value::Array(list)) => list.clone(),
            Some(serde_json::Value::Null) | None => Vec::new(),
            Some(other) => {
                return Err(Error::MalformedResponse {
                    reason: format!("'results' is not a list: {other}"),
                    raw: raw.to_string(),
                })
            }
        },
        other => {
            return Err(Error::MalformedResponse {
                reason: format!("unexpected top-level value: {other}"),
                raw: raw.to_string(),
            })
        }
    };
    let query_terms: Vec<String> = query.terms.iter().map(|t| t.to_string()).collect();
    let mut out = Vec::new();
    for entry in entries {
        let number = entry
            .get("number")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::MalformedResponse {
                reason: "entry lacks a numeric 'number'".into(),
                raw: raw.to_string(),
            })?;
        let name = entry
            .get("name")
            .and_then(|v| v.as_str())
            .unwrap_or("")
            .to_string();
        let data: Vec<String> = entry
            .get("data")
            .and_then(|v| v.as_str())
            .map(|s| s.split(',').map(|t| t.trim().to_string()).collect())
            .unwrap_or_default();
        out.push(SequenceMatch {
            accession: format!("A{number:06}"),
            name,
            matched_prefix_length: matched_prefix(&query_terms, &data),
        });
    }
    Ok(out)
}

fn matched_prefix(query: &[String], data: &[String]) -> usize {
    let mut best = 0;
    for start in 0..data.len() {
        let run = query
            .iter()
            .zip(&data[start..])
            .take_while(|(q, d)| q == d)
            .count();
        best = best.max(run);
    }
    best
}

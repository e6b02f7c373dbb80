//! Pattern-set config files: a TOML document with `arity`, `indices`,
//! `mode` ("X" or "Z") and a `patterns` list, each pattern either
//! `{assoc, v1, v2}` (binary) or `{pos, parent, child}` (general arity).

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::trees::{Alphabet, Assoc, Pattern};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFormat {
    arity: usize,
    indices: Vec<String>,
    mode: String,
    #[serde(default)]
    patterns: Vec<PatternEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
enum PatternEntry {
    Binary {
        assoc: String,
        v1: String,
        v2: String,
    },
    Kary {
        pos: usize,
        parent: String,
        child: String,
    },
}

/// Load a pattern set; the returned set is always the X side (listed
/// patterns directly for mode "X", their complement for mode "Z").
pub fn load_pattern_set(path: &Path) -> Result<PatternSet> {
    let text = std::fs::read_to_string(path)?;
    parse_pattern_set(&text)
}

pub fn parse_pattern_set(text: &str) -> Result<PatternSet> {
    let file: FileFormat =
        toml::from_str(text).map_err(|e| Error::Config(format!("malformed config: {e}")))?;
    let alphabet = Alphabet::new(file.indices)?;
    let mut members = Vec::with_capacity(file.patterns.len());
    for (idx, entry) in file.patterns.iter().enumerate() {
        let lookup = |tok: &str| {
            alphabet.index_of(tok).ok_or_else(|| {
                Error::Config(format!("pattern {}: unknown token '{tok}'", idx + 1))
            })
        };
        let pattern = match entry {
            PatternEntry::Binary { assoc, v1, v2 } => {
                if file.arity != 2 {
                    return Err(Error::Config(format!(
                        "pattern {}: assoc form requires arity 2",
                        idx + 1
                    )));
                }
                let assoc = match assoc.as_str() {
                    "L" => Assoc::L,
                    "R" => Assoc::R,
                    other => {
                        return Err(Error::Config(format!(
                            "pattern {}: assoc must be \"L\" or \"R\", got '{other}'",
                            idx + 1
                        )))
                    }
                };
                Pattern::binary(assoc, lookup(v1)?, lookup(v2)?)
            }
            PatternEntry::Kary { pos, parent, child } => Pattern {
                pos: *pos,
                parent: lookup(parent)?,
                child: lookup(child)?,
            },
        };
        members.push(pattern);
    }
    let listed = PatternSet::new(alphabet, file.arity, members)?;
    match file.mode.as_str() {
        "X" => Ok(listed),
        "Z" => Ok(listed.complement()),
        other => Err(Error::Config(format!(
            "mode must be \"X\" or \"Z\", got '{other}'"
        ))),
    }
}

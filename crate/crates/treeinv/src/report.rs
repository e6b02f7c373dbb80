//! Structured run reports shared by all CLI commands. The JSON layout is
//! schema-stable across runs; only the timing field varies.

use std::io::Write;

use serde::Serialize;

use crate::oeis::SequenceMatch;

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub sequences: Vec<NamedSequence>,
    pub series: Vec<NamedSeries>,
    pub verdicts: Vec<Verdict>,
    pub oeis_matches: Vec<NamedMatches>,
    pub interpretations: Vec<InterpretationHit>,
    pub koszul: Vec<WeightReport>,
    pub timing_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct NamedSequence {
    pub name: String,
    pub terms: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct NamedSeries {
    pub name: String,
    pub display: String,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct NamedMatches {
    pub sequence: String,
    pub matches: Vec<SequenceMatch>,
}

#[derive(Debug, Serialize)]
pub struct InterpretationHit {
    pub alphabet_size: usize,
    pub x_patterns: Vec<String>,
    pub z_patterns: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct WeightReport {
    pub weight: usize,
    pub dimensions: Vec<usize>,
    pub d_squared_zero: bool,
    pub homology_ranks: Vec<usize>,
    pub euler_characteristic: String,
    /// Block count per kappa (cube dimension).
    pub block_census: Vec<(usize, usize)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn print_human(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# {}", self.command)?;
        for s in &self.sequences {
            writeln!(out, "{}: {}", s.name, s.terms.join(", "))?;
        }
        for s in &self.series {
            writeln!(out, "{} = {}", s.name, s.display)?;
        }
        for w in &self.koszul {
            writeln!(
                out,
                "weight {}: dims {:?}, d^2=0: {}, homology {:?}, chi {}, blocks by kappa {:?}",
                w.weight,
                w.dimensions,
                w.d_squared_zero,
                w.homology_ranks,
                w.euler_characteristic,
                w.block_census
            )?;
        }
        for m in &self.oeis_matches {
            if m.matches.is_empty() {
                writeln!(out, "[{}]: no match", m.sequence)?;
            }
            for hit in &m.matches {
                writeln!(
                    out,
                    "[{}]: {} {} (prefix {})",
                    m.sequence, hit.accession, hit.name, hit.matched_prefix_length
                )?;
            }
        }
        for hit in &self.interpretations {
            writeln!(
                out,
                "interpretation over {} labels: X = {{{}}}, Z = {{{}}}",
                hit.alphabet_size,
                hit.x_patterns.join(", "),
                hit.z_patterns.join(", ")
            )?;
        }
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                writeln!(out, "{tag} {}", v.name)?;
            } else {
                writeln!(out, "{tag} {}: {}", v.name, v.detail)?;
            }
        }
        writeln!(out, "elapsed: {} ms", self.timing_ms)?;
        Ok(())
    }
}

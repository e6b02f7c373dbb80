use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treeinv::error::{Error, Result};
use treeinv::interpret::search_interpretation;
use treeinv::koszul;
use treeinv::oeis::{OeisClient, SequenceQuery};
use treeinv::patterns::PatternSet;
use treeinv::registry;
use treeinv::report::{
    InterpretationHit, NamedMatches, NamedSequence, NamedSeries, RunReport, Verdict,
    WeightReport,
};
use treeinv::series::{lacunary_series, verify_inversion, LacunaryVariant};
use treeinv::trees::{Alphabet, Label, Pattern};

#[derive(Parser)]
#[command(
    name = "treeinv",
    about = "Pattern-avoiding planar trees and inversion of their counting series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum OeisMode {
    Fixtures,
    Online,
}

#[derive(Args)]
struct SetSelector {
    /// Registry example key (see `treeinv examples`)
    #[arg(long)]
    example: Option<String>,
    /// Pattern-set config file
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SetSelector {
    fn load(&self) -> Result<(String, PatternSet)> {
        match (&self.example, &self.config) {
            (Some(key), None) => Ok((format!("example {key}"), registry::get(key)?.x_set())),
            (None, Some(path)) => Ok((
                path.display().to_string(),
                treeinv::config::load_pattern_set(path)?,
            )),
            _ => Err(Error::Config(
                "select exactly one of --example or --config".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the avoidance classes of X and of its complement Z
    Count {
        #[command(flatten)]
        selector: SetSelector,
        /// Largest degree to count
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Largest degree allowed for brute-force counting (k-ary sets)
        #[arg(long, default_value_t = treeinv::patterns::DEFAULT_BRUTE_BOUND)]
        max_brute: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check the inversion theorem on counted coefficients
    Verify {
        #[command(flatten)]
        selector: SetSelector,
        /// Draw a random pattern set instead of a named one
        #[arg(long)]
        random: bool,
        /// Alphabet size for --random
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        /// Arity for --random
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation order
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Build the chain complex per weight and report its homology
    Koszul {
        #[command(flatten)]
        selector: SetSelector,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Look computed sequences up in the OEIS
    Identify {
        #[command(flatten)]
        selector: SetSelector,
        /// Comma-separated terms to look up directly
        #[arg(long, conflicts_with_all = ["example", "config"])]
        sequence: Option<String>,
        /// Largest degree to count when identifying an example
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, value_enum, default_value_t = OeisMode::Fixtures)]
        oeis_mode: OeisMode,
        /// Fixture directory for offline lookups
        #[arg(long)]
        fixtures_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Search for pattern sets interpreting an integer sequence
    Search {
        /// Comma-separated counts a_0, a_1, ...
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 2)]
        max_alphabet: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// List the registry example keys
    Examples,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &RunReport, format: Format) -> bool {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Human => report.print_human(&mut out).expect("stdout"),
        Format::Structured => writeln!(out, "{}", report.to_json()).expect("stdout"),
    }
    report.all_pass()
}

fn run(cli: Cli) -> Result<bool> {
    let start = Instant::now();
    match cli.command {
        Command::Count {
            selector,
            max,
            max_brute,
            format,
        } => {
            let (name, x) = selector.load()?;
            if x.arity() != 2 && max > max_brute {
                return Err(Error::SizeLimit {
                    what: "brute-force degree",
                    value: max,
                    bound: max_brute,
                });
            }
            let mut report = RunReport::new(format!("count {name} --max {max}"));
            push_sequences(&mut report, &x, max);
            report.timing_ms = start.elapsed().as_millis();
            Ok(emit(&report, format))
        }
        Command::Verify {
            selector,
            random,
            alphabet,
            arity,
            seed,
            order,
            format,
        } => {
            let (name, x) = if random {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (
                    format!("random m={alphabet} k={arity} seed={seed}"),
                    random_pattern_set(alphabet, arity, &mut rng)?,
                )
            } else {
                selector.load()?
            };
            let mut report = RunReport::new(format!("verify {name} --order {order}"));
            let outcome = verify_inversion(&x, order)?;
            report.series.push(named_series("f(X,t)", &outcome.f_x));
            report.series.push(named_series("g(Z,t)", &outcome.g_z));
            report
                .series
                .push(named_series("g(Z,f(X,t))", &outcome.composite));
            report.verdicts.push(Verdict {
                name: "inversion theorem".into(),
                pass: outcome.holds,
                detail: if outcome.holds {
                    String::new()
                } else {
                    format!("residual {}", outcome.residual)
                },
            });
            report.timing_ms = start.elapsed().as_millis();
            Ok(emit(&report, format))
        }
        Command::Koszul {
            selector,
            max_weight,
            format,
        } => {
            let (name, x) = selector.load()?;
            let mut report = RunReport::new(format!("koszul {name} --max-weight {max_weight}"));
            let composite = verify_inversion(&x, max_weight + 1)?.composite;
            for w in 0..=max_weight {
                let complex = koszul::build_complex_with_bound(&x, w, max_weight.max(6))?;
                let d2 = complex.check_d_squared();
                let ranks = complex.homology_ranks();
                let chi = complex.euler_characteristic();
                let blocks = complex.extremal_decomposition()?;
                let mut census: Vec<(usize, usize)> = Vec::new();
                for b in &blocks {
                    match census.iter_mut().find(|(k, _)| *k == b.kappa) {
                        Some(entry) => entry.1 += 1,
                        None => census.push((b.kappa, 1)),
                    }
                }
                census.sort();
                let acyclic = if w == 0 {
                    ranks == vec![1]
                } else {
                    ranks.iter().all(|&r| r == 0)
                };
                // coefficient of t^{w+1} in the composite is (-1)^w chi
                let expected_chi = {
                    let c = composite.coeff(w + 1);
                    if w % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                };
                report.verdicts.push(Verdict {
                    name: format!("weight {w}: d^2 = 0"),
                    pass: d2,
                    detail: String::new(),
                });
                report.verdicts.push(Verdict {
                    name: format!("weight {w}: acyclic"),
                    pass: acyclic,
                    detail: format!("{ranks:?}"),
                });
                report.verdicts.push(Verdict {
                    name: format!("weight {w}: Euler characteristic matches series"),
                    pass: chi == expected_chi,
                    detail: format!("chi = {chi}, series coefficient gives {expected_chi}"),
                });
                report.koszul.push(WeightReport {
                    weight: w,
                    dimensions: complex.dimensions(),
                    d_squared_zero: d2,
                    homology_ranks: ranks,
                    euler_characteristic: chi.to_string(),
                    block_census: census,
                });
            }
            report.timing_ms = start.elapsed().as_millis();
            Ok(emit(&report, format))
        }
        Command::Identify {
            selector,
            sequence,
            max,
            oeis_mode,
            fixtures_dir,
            format,
        } => {
            let client = match oeis_mode {
                OeisMode::Online => OeisClient::online(),
                OeisMode::Fixtures => {
                    let dir = fixtures_dir
                        .or_else(|| std::env::var_os("TREEINV_OEIS_FIXTURES").map(Into::into))
                        .unwrap_or_else(|| {
                            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/oeis")
                        });
                    OeisClient::fixtures(dir)
                }
            };
            let mut report = RunReport::new("identify".to_string());
            let mut queries: Vec<(String, Vec<BigInt>)> = Vec::new();
            if let Some(seq) = sequence {
                queries.push(("input".into(), parse_terms_signed(&seq)?));
            } else {
                let (name, x) = selector.load()?;
                report.command = format!("identify {name}");
                let z = x.complement();
                queries.push((
                    "X".into(),
                    x.coefficient_sequence(max)
                        .into_iter()
                        .map(BigInt::from)
                        .collect(),
                ));
                queries.push((
                    "Z".into(),
                    z.coefficient_sequence(max)
                        .into_iter()
                        .map(BigInt::from)
                        .collect(),
                ));
            }
            for (label, terms) in queries {
                let query = SequenceQuery::new(terms.clone());
                let matches = client.lookup(&query)?;
                report.sequences.push(NamedSequence {
                    name: label.clone(),
                    terms: terms.iter().map(|t| t.to_string()).collect(),
                });
                report.oeis_matches.push(NamedMatches {
                    sequence: label,
                    matches,
                });
            }
            report.timing_ms = start.elapsed().as_millis();
            Ok(emit(&report, format))
        }
        Command::Search {
            sequence,
            max_alphabet,
            format,
        } => {
            let counts = parse_terms_unsigned(&sequence)?;
            let mut report =
                RunReport::new(format!("search {sequence} --max-alphabet {max_alphabet}"));
            let hits = search_interpretation(&counts, max_alphabet)?;
            for hit in &hits {
                let x = &hit.x;
                let z = x.complement();
                let display =
                    |s: &PatternSet| -> Vec<String> {
                        s.members().map(|p| p.display(s.alphabet())).collect()
                    };
                report.interpretations.push(InterpretationHit {
                    alphabet_size: x.alphabet().size(),
                    x_patterns: display(x),
                    z_patterns: display(&z),
                });
            }
            report.timing_ms = start.elapsed().as_millis();
            Ok(emit(&report, format))
        }
        Command::Examples => {
            for entry in registry::all() {
                println!("{:4} (k={}) {}", entry.key, entry.arity, entry.description);
            }
            Ok(true)
        }
    }
}

fn push_sequences(report: &mut RunReport, x: &PatternSet, max: usize) {
    let z = x.complement();
    let order = (x.arity() - 1) * max + 1;
    for (label, set) in [("X", x), ("Z", &z)] {
        let seq = set.coefficient_sequence(max);
        report.sequences.push(NamedSequence {
            name: format!("#{label}_n"),
            terms: seq.iter().map(|t| t.to_string()).collect(),
        });
        let variant = if label == "X" {
            LacunaryVariant::F
        } else {
            LacunaryVariant::G
        };
        let series = lacunary_series(&seq, x.arity(), variant, order);
        report
            .series
            .push(named_series(&format!("series of {label}"), &series));
    }
}

fn named_series(name: &str, series: &treeinv::series::IntSeries) -> NamedSeries {
    NamedSeries {
        name: name.into(),
        display: series.to_string(),
        coefficients: series.coeffs().iter().map(|c| c.to_string()).collect(),
    }
}

fn random_pattern_set(m: usize, arity: usize, rng: &mut ChaCha8Rng) -> Result<PatternSet> {
    use rand::Rng;
    let alphabet = Alphabet::numeric(m);
    let mut members = Vec::new();
    for pos in 1..=arity {
        for parent in 0..m {
            for child in 0..m {
                if rng.gen_bool(0.5) {
                    members.push(Pattern {
                        pos,
                        parent: Label(parent),
                        child: Label(child),
                    });
                }
            }
        }
    }
    PatternSet::new(alphabet, arity, members)
}

fn parse_terms_signed(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Config(format!("bad term '{t}': {e}")))
        })
        .collect()
}

fn parse_terms_unsigned(text: &str) -> Result<Vec<BigUint>> {
    let signed = parse_terms_signed(text)?;
    signed
        .into_iter()
        .map(|t| {
            if t < BigInt::zero() {
                Err(Error::Config(format!("count terms must be nonnegative: {t}")))
            } else {
                Ok(t.magnitude().clone())
            }
        })
        .collect()
}

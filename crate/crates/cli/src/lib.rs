//! The `arrcalc` command line.

pub mod report;

use std::fs;

use anyhow::{bail, Context};
use arrcalc_core::criteria::mca_check;
use arrcalc_core::oracles::prime_witnesses;
use arrcalc_core::*;
use clap::{Parser, Subcommand, ValueEnum};

use report::*;

#[derive(Debug, Parser)]
#[command(
    name = "arrcalc",
    version,
    about = "Exact invariants of central hyperplane arrangements"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial from the intersection lattice.
    Charpoly {
        /// Arrangement file, or corpus:NAME.
        file: String,
        /// Divide by (t - 1).
        #[arg(long)]
        reduced: bool,
        /// Recompute by point counting over finite fields.
        #[arg(long)]
        verify: bool,
    },
    /// Number of chambers of the real complement.
    Chambers {
        file: String,
        /// Recompute by deletion-restriction.
        #[arg(long)]
        verify: bool,
    },
    /// Ziegler restriction to a hyperplane.
    Ziegler {
        file: String,
        #[arg(long)]
        h0: usize,
    },
    /// Exponents of the (multi)arrangement by basis search.
    Exponents {
        file: String,
        /// Highest derivation degree to search; defaults to |m|.
        #[arg(long, env = "ARRCALC_DEGREE_BOUND")]
        bound: Option<u64>,
    },
    /// Freeness by one or all criteria.
    Freeness {
        file: String,
        #[arg(long, default_value_t = 0)]
        h0: usize,
        #[arg(long, env = "ARRCALC_DEGREE_BOUND")]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Coefficients b_i of the deconing against σ_i of the Ziegler restriction.
    Compare {
        file: String,
        #[arg(long)]
        h0: usize,
        #[arg(long, env = "ARRCALC_DEGREE_BOUND")]
        bound: Option<u64>,
        /// Treat both the arrangement and its restriction as tame.
        #[arg(long)]
        assert_tame: bool,
    },
    /// Built-in example arrangements.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    List,
    Get { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Yoshinaga,
    AbeYoshinaga,
    Saito,
    All,
}

/// Reads a file path or `corpus:NAME`.
pub fn load(input: &str) -> anyhow::Result<ArrangementFile> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return match corpus_entry(name) {
            Some(e) => Ok(e.file),
            None => bail!("no corpus entry named {name:?}; try `arrcalc corpus list`"),
        };
    }
    let text = fs::read_to_string(input).with_context(|| format!("cannot read {input}"))?;
    parse_arrangement_file(&text).with_context(|| format!("{input}: invalid arrangement file"))
}

fn arrangement(input: &str) -> anyhow::Result<CentralArrangement> {
    load(input)?
        .arrangement()
        .with_context(|| format!("{input}: invalid arrangement"))
}

fn simple_arrangement(input: &str) -> anyhow::Result<CentralArrangement> {
    let file = load(input)?;
    if file.mult.as_ref().is_some_and(|m| m.iter().any(|&k| k != 1)) {
        bail!("{input}: this criterion needs a simple arrangement");
    }
    file.arrangement()
        .with_context(|| format!("{input}: invalid arrangement"))
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    Ok(match &cli.command {
        Command::Charpoly { file, reduced, verify } => {
            let a = arrangement(file)?;
            let chi = char_poly(&a);
            let shown = if *reduced { reduced_char_poly(&a)? } else { chi.clone() };
            let verification = if *verify {
                let primes = guarded_primes(&a, a.dim() + 2);
                let witnesses = prime_witnesses(&a, &primes)?;
                let oracle = finite_field_char_poly(&a, &primes)?;
                let matches = oracle == chi;
                let oracle = if *reduced && matches { shown.clone() } else { oracle };
                Some(CharpolyCheck {
                    primes: witnesses,
                    oracle,
                    matches,
                })
            } else {
                None
            };
            Report::Charpoly(CharpolyReport {
                input: file.clone(),
                dim: a.dim(),
                hyperplanes: a.len(),
                reduced: *reduced,
                polynomial: shown.to_string(),
                coefficients: shown,
                verification,
            })
        }
        Command::Chambers { file, verify } => {
            let a = arrangement(file)?;
            let chambers = chamber_count(&a);
            let verification = verify.then(|| {
                let region_recursion = region_count_recursion(&a);
                ChambersCheck {
                    region_recursion,
                    matches: region_recursion == chambers,
                }
            });
            Report::Chambers(ChambersReport {
                input: file.clone(),
                chambers,
                verification,
            })
        }
        Command::Ziegler { file, h0 } => {
            let a = arrangement(file)?;
            let (z, fibers) = ziegler_with_fibers(&a, *h0)?;
            Report::Ziegler(ZieglerReport {
                input: file.clone(),
                h0: *h0,
                restriction: ArrangementFile::from_multiarrangement(&z).to_value(),
                fibers,
                total: z.total(),
                display: z.to_string(),
            })
        }
        Command::Exponents { file, bound } => {
            let m = load(file)?
                .multiarrangement()
                .with_context(|| format!("{file}: invalid arrangement"))?;
            // rank two is always decided at |m|
            let bound = match bound {
                Some(b) if m.rank() > 2 => *b,
                _ => m.total(),
            };
            Report::Exponents(ExponentsReport {
                input: file.clone(),
                multiplicities: m.mult().to_vec(),
                total: m.total(),
                rank: m.rank(),
                bound,
                verdict: find_free_basis(&m, bound),
            })
        }
        Command::Freeness {
            file,
            h0,
            bound,
            method,
        } => freeness(file, *h0, *bound, *method)?,
        Command::Compare {
            file,
            h0,
            bound,
            assert_tame,
        } => {
            let a = simple_arrangement(file)?;
            let comparison = compare_coefficients(&a, *h0, *bound, *assert_tame)?;
            Report::Compare(CompareReport {
                input: file.clone(),
                strict_indices: comparison.strict_indices(),
                mca: mca_check(&a, *h0, *bound)?,
                comparison,
            })
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => Report::CorpusList(CorpusListReport {
                entries: corpus()
                    .into_iter()
                    .map(|e| CorpusSummary {
                        dim: e.file.dim,
                        hyperplanes: e.file.hyperplanes.len(),
                        multi: e.is_multi(),
                        name: e.name,
                        description: e.description,
                    })
                    .collect(),
            }),
            CorpusAction::Get { name } => {
                let Some(e) = corpus_entry(name) else {
                    bail!("no corpus entry named {name:?}; try `arrcalc corpus list`");
                };
                Report::CorpusGet(CorpusGetReport {
                    name: e.name.clone(),
                    file: serde_json::from_str(e.source())?,
                })
            }
        },
    })
}

fn freeness(file: &str, h0: usize, bound: Option<u64>, method: MethodArg) -> anyhow::Result<Report> {
    let f = load(file)?;
    let m = f
        .multiarrangement()
        .with_context(|| format!("{file}: invalid arrangement"))?;
    let simple = m.mult().iter().all(|&k| k == 1);
    let a = m.base().clone();
    if h0 >= a.len() {
        bail!("--h0 {h0} is out of range for {} hyperplanes", a.len());
    }
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    let wanted = |x: MethodArg| method == x || method == MethodArg::All;

    if wanted(MethodArg::Yoshinaga) {
        if simple && a.dim() == 3 && a.rank() == 3 {
            results.push(MethodVerdict {
                method: FreenessMethod::Yoshinaga,
                verdict: yoshinaga_3d(&a, h0)?,
            });
        } else if method == MethodArg::All {
            skipped.push(FreenessMethod::Yoshinaga);
        } else {
            bail!("the yoshinaga method needs a simple essential arrangement in dimension 3");
        }
    }
    if wanted(MethodArg::AbeYoshinaga) {
        if simple && a.dim() >= 2 {
            results.push(MethodVerdict {
                method: FreenessMethod::AbeYoshinaga,
                verdict: abe_yoshinaga_free_check(&a, h0, bound)?,
            });
        } else if method == MethodArg::All {
            skipped.push(FreenessMethod::AbeYoshinaga);
        } else {
            bail!("the abe-yoshinaga method needs a simple arrangement in dimension at least 2");
        }
    }
    if wanted(MethodArg::Saito) {
        results.push(MethodVerdict {
            method: FreenessMethod::Saito,
            verdict: find_free_basis(&m, bound.unwrap_or(m.total())),
        });
    }
    let verdicts: Vec<FreenessVerdict> = results.iter().map(|r| r.verdict.clone()).collect();
    // prefer the verdict that carries a basis
    let mut merged = merge_verdicts(&verdicts);
    if let Some(r) = results
        .iter()
        .find(|r| matches!(r.verdict, FreenessVerdict::Free { basis: Some(_), .. }))
    {
        if merged.consistent && merged.verdict.is_free() {
            merged.verdict = r.verdict.clone();
        }
    }
    Ok(Report::Freeness(FreenessReport {
        input: file.to_string(),
        h0,
        bound,
        results,
        skipped,
        merged,
    }))
}

/// Exit code for a failed run.
pub fn error_exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::TheoremViolation { .. } | Error::InconsistentCounts) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

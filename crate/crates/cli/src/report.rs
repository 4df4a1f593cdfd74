//! Command reports. Each serializes to one JSON object tagged by `command`
//! and renders as a plain-text table.

use std::fmt;

use arrcalc_core::{ComparisonReport, FreenessMethod, FreenessVerdict, IntPolynomial, MergedVerdict, PrimeWitness};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Charpoly(CharpolyReport),
    Chambers(ChambersReport),
    Ziegler(ZieglerReport),
    Exponents(ExponentsReport),
    Freeness(FreenessReport),
    Compare(CompareReport),
    CorpusList(CorpusListReport),
    CorpusGet(CorpusGetReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyReport {
    pub input: String,
    pub dim: usize,
    pub hyperplanes: usize,
    /// `χ_0 = χ / (t - 1)` instead of `χ`.
    pub reduced: bool,
    /// Lowest degree first.
    pub coefficients: IntPolynomial,
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<CharpolyCheck>,
}

/// Point counts over guarded primes, interpolated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyCheck {
    pub primes: Vec<PrimeWitness>,
    pub oracle: IntPolynomial,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChambersReport {
    pub input: String,
    pub chambers: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<ChambersCheck>,
}

/// Deletion-restriction region count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChambersCheck {
    pub region_recursion: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZieglerReport {
    pub input: String,
    pub h0: usize,
    /// Arrangement file of the restriction, in the coordinates left after
    /// eliminating the pivot variable of `H0`.
    pub restriction: Value,
    /// Input hyperplanes (other than `H0`) restricting to each hyperplane.
    pub fibers: Vec<Vec<usize>>,
    pub total: u64,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentsReport {
    pub input: String,
    pub multiplicities: Vec<u32>,
    pub total: u64,
    pub rank: usize,
    /// Highest degree searched.
    pub bound: u64,
    pub verdict: FreenessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodVerdict {
    pub method: FreenessMethod,
    pub verdict: FreenessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub input: String,
    pub h0: usize,
    pub bound: Option<u64>,
    pub results: Vec<MethodVerdict>,
    /// Methods requested through `all` that do not apply to the input.
    pub skipped: Vec<FreenessMethod>,
    pub merged: MergedVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub input: String,
    pub comparison: ComparisonReport,
    pub strict_indices: Vec<usize>,
    pub mca: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub name: String,
    pub description: String,
    pub dim: usize,
    pub hyperplanes: usize,
    pub multi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusListReport {
    pub entries: Vec<CorpusSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusGetReport {
    pub name: String,
    /// The corpus file, a valid arrangement file.
    pub file: Value,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self {
            Report::Charpoly(r) if r.verification.as_ref().is_some_and(|v| !v.matches) => EXIT_MISMATCH,
            Report::Chambers(r) if r.verification.as_ref().is_some_and(|v| !v.matches) => EXIT_MISMATCH,
            Report::Exponents(r) if !r.verdict.is_definitive() => EXIT_UNKNOWN,
            Report::Freeness(r) if !r.merged.consistent => EXIT_MISMATCH,
            Report::Freeness(r) if !r.merged.verdict.is_definitive() => EXIT_UNKNOWN,
            Report::Compare(r) if !r.comparison.sigma_exact() => EXIT_UNKNOWN,
            _ => EXIT_OK,
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn write_verdict(f: &mut fmt::Formatter<'_>, v: &FreenessVerdict) -> fmt::Result {
    writeln!(f, "{v}")?;
    if let FreenessVerdict::Free {
        basis: Some(basis),
        exponents,
    } = v
    {
        for (theta, d) in basis.iter().zip(exponents.as_slice()) {
            writeln!(f, "  [{d}] {theta}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Charpoly(r) => {
                let name = if r.reduced { "χ0(t)" } else { "χ(t)" };
                writeln!(f, "{}: {} hyperplanes in dimension {}", r.input, r.hyperplanes, r.dim)?;
                writeln!(f, "{name} = {}", r.polynomial)?;
                if let Some(v) = &r.verification {
                    let primes: Vec<u64> = v.primes.iter().filter(|w| w.accepted).map(|w| w.prime).collect();
                    let status = if v.matches { "agrees" } else { "MISMATCH" };
                    writeln!(f, "point counts over primes {}: {} ({status})", list(&primes), v.oracle)?;
                }
            }
            Report::Chambers(r) => {
                writeln!(f, "{}: {} chambers", r.input, r.chambers)?;
                if let Some(v) = &r.verification {
                    let status = if v.matches { "agrees" } else { "MISMATCH" };
                    writeln!(f, "deletion-restriction count: {} ({status})", v.region_recursion)?;
                }
            }
            Report::Ziegler(r) => {
                writeln!(
                    f,
                    "{}: Ziegler restriction to hyperplane {}, |m| = {}",
                    r.input, r.h0, r.total
                )?;
                writeln!(f, "{}", r.display)?;
                for (i, fiber) in r.fibers.iter().enumerate() {
                    writeln!(f, "  {i} <- hyperplanes {}", list(fiber))?;
                }
            }
            Report::Exponents(r) => {
                writeln!(
                    f,
                    "{}: multiplicities {}, |m| = {}, rank {}, degrees searched up to {}",
                    r.input,
                    list(&r.multiplicities),
                    r.total,
                    r.rank,
                    r.bound
                )?;
                write_verdict(f, &r.verdict)?;
            }
            Report::Freeness(r) => {
                writeln!(f, "{}: h0 = {}", r.input, r.h0)?;
                for m in &r.results {
                    write!(f, "  {:<14} ", m.method.to_string())?;
                    writeln!(f, "{}", m.verdict)?;
                }
                for m in &r.skipped {
                    writeln!(f, "  {:<14} not applicable", m.to_string())?;
                }
                if !r.merged.consistent {
                    writeln!(f, "MISMATCH: methods disagree")?;
                }
                write!(f, "verdict: ")?;
                write_verdict(f, &r.merged.verdict)?;
            }
            Report::Compare(r) => {
                let c = &r.comparison;
                writeln!(
                    f,
                    "{}: {} hyperplanes in dimension {}, h0 = {}",
                    r.input, c.hyperplane_count, c.dim, c.h0
                )?;
                writeln!(f, "restriction multiplicities {}", list(&c.restriction_multiplicities))?;
                writeln!(f, "{:>3} {:>8} {:>8}  {:<20} b_i >= σ_i", "i", "b_i", "σ_i", "σ method")?;
                for (i, (b, s)) in c.table.b.iter().zip(&c.table.sigma).enumerate() {
                    let holds = match c.inequality_holds.get(i).copied().flatten() {
                        Some(true) if s.value.is_some_and(|s| *b > s) => "strict",
                        Some(true) => "equal",
                        Some(false) => "fails",
                        None => "?",
                    };
                    writeln!(
                        f,
                        "{i:>3} {b:>8} {:>8}  {:<20} {holds}",
                        s.to_string(),
                        s.method.to_string()
                    )?;
                }
                writeln!(f, "arrangement: {}", c.tame_arrangement)?;
                writeln!(f, "restriction: {}", c.tame_restriction)?;
                let bound = c
                    .chamber_bound
                    .restriction_bound
                    .map_or("?".to_string(), |b| b.to_string());
                writeln!(f, "deconed chambers {} >= {bound}", c.chamber_bound.deconed_chambers)?;
                match r.mca {
                    Some(true) => writeln!(f, "minimal chamber arrangement")?,
                    Some(false) => writeln!(f, "not a minimal chamber arrangement")?,
                    None => {}
                }
                if !r.strict_indices.is_empty() {
                    writeln!(f, "strict at i = {}", list(&r.strict_indices))?;
                }
            }
            Report::CorpusList(r) => {
                for e in &r.entries {
                    let kind = if e.multi { "multi" } else { "simple" };
                    writeln!(
                        f,
                        "{:<16} dim {} {:>3} hyperplanes {:<6}  {}",
                        e.name, e.dim, e.hyperplanes, kind, e.description
                    )?;
                }
            }
            Report::CorpusGet(r) => {
                let text = serde_json::to_string_pretty(&r.file).map_err(|_| fmt::Error)?;
                writeln!(f, "{text}")?;
            }
        }
        Ok(())
    }
}

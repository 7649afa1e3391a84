//! Command-line front end (`bs`).
//!
//! Words are written with the letters `a`, `A` (= a⁻¹), `t`, `T` (= t⁻¹),
//! separated by whitespace or run together (`"t a a a T"` or `"taaaT"`).
//! Exit codes: 0 success, 1 failed check, 2 usage or parse error,
//! 3 resource limit.

use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    dominant_singularity, edjvet_johnson_series, growth_polynomial, largest_real_root,
    series_coefficients,
};
use crate::automata::{build_automaton, growth_lower_bound};
use crate::bfs::{ball_with, word_length_with, BallOptions, BallTable, BfsError, SphereRow};
use crate::letter::Word;
use crate::metrics::{
    base_q_witness, base_q_witness_bound, estimate, horocyclic_witness, horocyclic_witness_bound,
};
use crate::normal_form::{normalize, Variant};
use crate::params::GroupParams;
use crate::solvable::SolvableNormalForm;

/// Schema tag carried by every JSON document.
pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::CheckFailed(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bs",
    version,
    about = "Normal forms, word lengths and growth rates of Baumslag-Solitar groups BS(p,q)",
    after_help = "Words use a, A (= a^-1), t, T (= t^-1), e.g. \"t a a a T\"."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Britton normal forms of a word (and t^-m a^N t^n when p = 1).
    Normalize {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Word over a, A, t, T.
        word: String,
    },
    /// Sphere and ball sizes by breadth-first search, with Fekete bounds.
    Sphere {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        bfs: BfsArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact word length of a word by breadth-first search.
    Length {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 12)]
        max_radius: u32,
        /// Also print a shortest spelling.
        #[arg(long)]
        geodesic: bool,
        #[command(flatten)]
        bfs: BfsArgs,
        word: String,
    },
    /// Word-metric estimate and its lower/upper bounds for a word.
    Bounds {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        word: String,
    },
    /// Growth-rate lower bound from a normal-form automaton.
    RateLower {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Variant::Balanced)]
        variant: Variant,
        #[arg(long, default_value_t = 6)]
        digits: u32,
        /// Print the automaton as `state letter state` lines.
        #[arg(long)]
        edges: bool,
    },
    /// Growth polynomial and its largest real root.
    RatePoly {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
    /// Fekete upper bound sphere(n)^(1/n).
    RateUpper {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        digits: u32,
        #[command(flatten)]
        bfs: BfsArgs,
    },
    /// Closed-form growth series of BS(p,p), p = 2 or 3.
    Series {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Compare the coefficients with breadth-first sphere sizes.
        #[arg(long)]
        check_bfs: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Growth-rate bounds over a grid of (p,q).
    Tables {
        #[arg(long, default_value_t = 20)]
        max_q: u32,
        /// Only the (p,q) pairs printed in the published tables.
        #[arg(long)]
        paper_grid: bool,
        /// Round columns as in the published tables instead of 6 decimals.
        #[arg(long)]
        paper_precision: bool,
        /// Add a Fekete upper bound from a ball of this radius.
        #[arg(long)]
        fekete_radius: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
}

impl GroupArgs {
    fn params(self) -> Result<GroupParams, CliError> {
        GroupParams::new(self.p, self.q).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args, Debug, Clone)]
pub struct BfsArgs {
    /// Memory cap in bytes (suffixes K, M, G accepted).
    #[arg(long, value_parser = parse_bytes)]
    pub memory_limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

impl BfsArgs {
    fn options(&self) -> BallOptions {
        BallOptions {
            memory_limit: self.memory_limit,
            threads: self.threads.max(1),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl ValueEnum for Variant {
    fn value_variants<'a>() -> &'a [Self] {
        &Variant::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Variant::Standard => "standard",
            Variant::Balanced => "balanced",
        }))
    }
}

pub fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 1 << 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    digits
        .parse::<u64>()
        .ok()
        .and_then(|v| v.checked_mul(mult))
        .ok_or_else(|| format!("invalid byte count {s:?}"))
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    Word::from_str(s).map_err(|e| CliError::Usage(e.to_string()))
}

/// `x` rounded half-to-even at `decimals` places, computed on the exact
/// binary value.
pub fn round_half_even(x: f64, decimals: u32) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let exact = BigRational::from_float(x).expect("finite");
    let scale = BigInt::from(10).pow(decimals);
    let scaled = exact.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(1.into(), 2.into());
    let mut units = floor.to_integer();
    if frac > half || (frac == half && units.bit(0)) {
        units += 1;
    }
    let negative = x < 0.0 && !units.is_zero();
    let int_part = &units / &scale;
    let frac_part = &units % &scale;
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if decimals > 0 {
        s.push('.');
        s.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = decimals as usize
        ));
    }
    s
}

/// Paper-style rounding for growth bounds: `decimals` places, widened by
/// two places at a time while rounding would reach an integer the value is
/// strictly below; values that are integers to 1e-9 print bare.
fn paper_round(x: f64, decimals: u32) -> String {
    if (x - x.round()).abs() < 1e-9 {
        return format!("{}", x.round() as i64);
    }
    let mut d = decimals;
    loop {
        let s = round_half_even(x, d);
        let v: f64 = s.parse().unwrap();
        if v.fract() != 0.0 || d >= decimals + 8 {
            return s;
        }
        d += 2;
    }
}

fn rounded(x: f64, decimals: u32) -> f64 {
    round_half_even(x, decimals).parse().unwrap()
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Normalize {
            group,
            format,
            word,
        } => cmd_normalize(group, format, &word, out),
        Command::Sphere {
            group,
            radius,
            bfs,
            format,
        } => cmd_sphere(group, radius, &bfs, format, out),
        Command::Length {
            group,
            max_radius,
            geodesic,
            bfs,
            word,
        } => cmd_length(group, max_radius, geodesic, &bfs, &word, out),
        Command::Bounds {
            group,
            format,
            word,
        } => cmd_bounds(group, format, &word, out),
        Command::RateLower {
            group,
            variant,
            digits,
            edges,
        } => cmd_rate_lower(group, variant, digits, edges, out),
        Command::RatePoly { group, digits } => cmd_rate_poly(group, digits, out),
        Command::RateUpper {
            group,
            n,
            digits,
            bfs,
        } => cmd_rate_upper(group, n, digits, &bfs, out),
        Command::Series {
            p,
            n,
            check_bfs,
            format,
        } => cmd_series(p, n, check_bfs, format, out),
        Command::Tables {
            max_q,
            paper_grid,
            paper_precision,
            fekete_radius,
            format,
        } => {
            let options = TableOptions {
                max_q,
                paper_grid,
                paper_precision,
                fekete_radius,
            };
            cmd_tables(&options, format, out)
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct NormalizeReport {
    pub schema: String,
    pub command: String,
    pub p: u32,
    pub q: u32,
    pub word: String,
    pub standard: String,
    pub balanced: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable: Option<String>,
}

fn cmd_normalize(
    group: GroupArgs,
    format: Format,
    word: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    let word = parse_word(word)?;
    let standard = normalize(&word, params, Variant::Standard);
    let balanced = normalize(&word, params, Variant::Balanced);
    let solvable = params.is_solvable().then(|| {
        SolvableNormalForm::from_normal_form(&standard)
            .expect("p = 1")
            .to_string()
    });
    match format {
        Format::Json => {
            let report = NormalizeReport {
                schema: SCHEMA_VERSION.into(),
                command: "normalize".into(),
                p: params.p(),
                q: params.q(),
                word: word.to_code_string(),
                standard: standard.to_string(),
                balanced: balanced.to_string(),
                solvable,
            };
            write_json(out, &report)?;
        }
        _ => {
            if standard.is_identity() {
                writeln!(out, "identity")?;
            }
            writeln!(out, "standard: {standard}")?;
            writeln!(out, "balanced: {balanced}")?;
            if let Some(s) = solvable {
                writeln!(out, "solvable: {s}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct SphereReport {
    pub schema: String,
    pub command: String,
    pub p: u32,
    pub q: u32,
    pub requested_radius: u32,
    pub completed_radius: u32,
    pub rows: Vec<SphereReportRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SphereReportRow {
    pub radius: u32,
    pub sphere: u64,
    pub ball: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fekete: Option<f64>,
}

impl From<SphereRow> for SphereReportRow {
    fn from(r: SphereRow) -> Self {
        SphereReportRow {
            radius: r.radius,
            sphere: r.sphere,
            ball: r.ball,
            fekete: r.fekete.map(|f| rounded(f, 6)),
        }
    }
}

/// Runs the ball computation, turning a memory-limit hit into the partial
/// table plus a resource error message.
fn ball_or_partial(
    params: GroupParams,
    radius: u32,
    opts: &BallOptions,
) -> (BallTable, Option<CliError>) {
    match ball_with(params, radius, opts) {
        Ok(t) => (t, None),
        Err(BfsError::MemoryLimit {
            limit,
            completed_radius,
            partial,
        }) => (
            *partial,
            Some(CliError::Resource(format!(
                "memory limit of {limit} bytes reached; completed radius {completed_radius} of {radius}"
            ))),
        ),
        Err(e) => (BallTable::new(params), Some(CliError::Usage(e.to_string()))),
    }
}

fn cmd_sphere(
    group: GroupArgs,
    radius: u32,
    bfs: &BfsArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    let (table, err) = ball_or_partial(params, radius, &bfs.options());
    let rows: Vec<SphereReportRow> = table.rows().into_iter().map(Into::into).collect();
    match format {
        Format::Json => write_json(
            out,
            &SphereReport {
                schema: SCHEMA_VERSION.into(),
                command: "sphere".into(),
                p: params.p(),
                q: params.q(),
                requested_radius: radius,
                completed_radius: table.radius(),
                rows,
            },
        )?,
        _ => {
            writeln!(out, "radius,sphere,ball,fekete")?;
            for r in &rows {
                let fekete = r.fekete.map(|f| round_half_even(f, 6)).unwrap_or_default();
                writeln!(out, "{},{},{},{}", r.radius, r.sphere, r.ball, fekete)?;
            }
        }
    }
    err.map_or(Ok(()), Err)
}

fn cmd_length(
    group: GroupArgs,
    max_radius: u32,
    geodesic: bool,
    bfs: &BfsArgs,
    word: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    let word = parse_word(word)?;
    if !geodesic {
        return match word_length_with(params, &word, max_radius, &bfs.options()) {
            Ok(Some(len)) => Ok(writeln!(out, "{len}")?),
            Ok(None) => Ok(writeln!(out, "> {max_radius}")?),
            Err(e) => Err(CliError::Resource(e.to_string())),
        };
    }
    let (table, err) = ball_or_partial(params, max_radius, &bfs.options());
    let nf = normalize(&word, params, Variant::Standard);
    match table.length_of(&nf) {
        Some(len) => {
            writeln!(out, "{len}")?;
            let g = table.geodesic(&nf).expect("stored element");
            writeln!(out, "geodesic: {}", g.to_spaced_string())?;
            Ok(())
        }
        None => match err {
            Some(e) => Err(e),
            None => Ok(writeln!(out, "> {max_radius}")?),
        },
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct BoundsReport {
    pub schema: String,
    pub command: String,
    pub p: u32,
    pub q: u32,
    pub word: String,
    pub normal_form: String,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub c1: f64,
    pub d1: f64,
    pub c2: f64,
    pub d2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_bound: Option<f64>,
}

fn cmd_bounds(
    group: GroupArgs,
    format: Format,
    word: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    let word = parse_word(word)?;
    let nf = normalize(&word, params, Variant::Standard);
    let b = estimate(&nf).map_err(|e| CliError::Usage(e.to_string()))?;
    // short spelling behind the upper bound, where one is constructed
    let witness = if params.is_solvable() {
        let s = SolvableNormalForm::from_normal_form(&nf).expect("p = 1");
        base_q_witness(&s, params.q())
            .ok()
            .map(|w| (w, base_q_witness_bound(&s, params.q()) as f64))
    } else if nf.syllables().is_empty() && params.p() < params.q() {
        horocyclic_witness(nf.tail(), params)
            .ok()
            .map(|w| (w, horocyclic_witness_bound(nf.tail(), params)))
    } else {
        None
    };
    let report = BoundsReport {
        schema: SCHEMA_VERSION.into(),
        command: "bounds".into(),
        p: params.p(),
        q: params.q(),
        word: word.to_code_string(),
        normal_form: nf.to_string(),
        estimate: rounded(b.f, 6),
        lower: rounded(b.lower, 6),
        upper: rounded(b.upper, 6),
        c1: rounded(b.constants.c1, 6),
        d1: rounded(b.constants.d1, 6),
        c2: rounded(b.constants.c2, 6),
        d2: rounded(b.constants.d2, 6),
        witness: witness.as_ref().map(|(w, _)| w.to_spaced_string()),
        witness_bound: witness.as_ref().map(|(_, bound)| rounded(*bound, 6)),
    };
    match format {
        Format::Json => write_json(out, &report)?,
        _ => {
            writeln!(out, "normal form: {}", report.normal_form)?;
            writeln!(out, "estimate: {}", round_half_even(b.f, 6))?;
            writeln!(
                out,
                "bounds: {} <= length <= {}",
                round_half_even(b.lower, 6),
                round_half_even(b.upper, 6)
            )?;
            writeln!(
                out,
                "constants: c1={} d1={} c2={} d2={}",
                round_half_even(b.constants.c1, 6),
                round_half_even(b.constants.d1, 6),
                round_half_even(b.constants.c2, 6),
                round_half_even(b.constants.d2, 6)
            )?;
            if let Some((w, bound)) = witness {
                writeln!(
                    out,
                    "witness ({} letters, bound {}): {}",
                    w.len(),
                    round_half_even(bound, 6),
                    w.to_spaced_string()
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_rate_lower(
    group: GroupArgs,
    variant: Variant,
    digits: u32,
    edges: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    writeln!(
        out,
        "{}",
        round_half_even(growth_lower_bound(params, variant), digits)
    )?;
    if edges {
        out.write_all(build_automaton(params, variant).edge_list().as_bytes())?;
    }
    Ok(())
}

fn cmd_rate_poly(group: GroupArgs, digits: u32, out: &mut dyn Write) -> Result<(), CliError> {
    let params = group.params()?;
    let poly = growth_polynomial(params).map_err(|e| CliError::Usage(e.to_string()))?;
    let root = largest_real_root(&poly).map_err(|e| CliError::CheckFailed(e.to_string()))?;
    writeln!(out, "polynomial: {poly}")?;
    writeln!(out, "largest root: {}", round_half_even(root, digits))?;
    Ok(())
}

fn cmd_rate_upper(
    group: GroupArgs,
    n: u32,
    digits: u32,
    bfs: &BfsArgs,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = group.params()?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (table, err) = ball_or_partial(params, n, &bfs.options());
    if let Some(e) = err {
        return Err(e);
    }
    let bound = table
        .fekete_bound(n)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "sphere({n}) = {}", table.sphere_sizes()[n as usize])?;
    writeln!(out, "upper bound: {}", round_half_even(bound, digits))?;
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct SeriesReport {
    pub schema: String,
    pub command: String,
    pub p: u32,
    pub numerator: String,
    pub denominator: String,
    pub coefficients: Vec<String>,
    pub singularity: f64,
    pub rate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bfs_match: Option<bool>,
}

fn cmd_series(
    p: u32,
    n: usize,
    check_bfs: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rs = edjvet_johnson_series(p).map_err(|e| CliError::Usage(e.to_string()))?;
    let coeffs = series_coefficients(&rs, n).map_err(|e| CliError::CheckFailed(e.to_string()))?;
    let sing = dominant_singularity(&rs).map_err(|e| CliError::CheckFailed(e.to_string()))?;
    let mismatch = if check_bfs {
        let params = GroupParams::new(p, p).map_err(|e| CliError::Usage(e.to_string()))?;
        let radius = u32::try_from(n).map_err(|_| CliError::Usage("--n too large".into()))?;
        let (table, err) = ball_or_partial(params, radius, &BallOptions::default());
        if let Some(e) = err {
            return Err(e);
        }
        let spheres = table.sphere_sizes();
        Some(
            coeffs
                .iter()
                .zip(&spheres)
                .position(|(c, &s)| c.to_u64() != Some(s)),
        )
    } else {
        None
    };
    match format {
        Format::Json => write_json(
            out,
            &SeriesReport {
                schema: SCHEMA_VERSION.into(),
                command: "series".into(),
                p,
                numerator: rs.numerator.to_string().replace('x', "z"),
                denominator: rs.denominator.to_string().replace('x', "z"),
                coefficients: coeffs.iter().map(ToString::to_string).collect(),
                singularity: rounded(sing.radius, 6),
                rate: rounded(sing.rate, 6),
                bfs_match: mismatch.map(|m| m.is_none()),
            },
        )?,
        _ => {
            writeln!(
                out,
                "numerator: {}",
                rs.numerator.to_string().replace('x', "z")
            )?;
            writeln!(
                out,
                "denominator: {}",
                rs.denominator.to_string().replace('x', "z")
            )?;
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
            writeln!(
                out,
                "dominant singularity: {}",
                round_half_even(sing.radius, 6)
            )?;
            writeln!(out, "growth rate: {}", round_half_even(sing.rate, 6))?;
            match mismatch {
                Some(None) => writeln!(
                    out,
                    "bfs check: {} coefficients match sphere sizes",
                    coeffs.len()
                )?,
                Some(Some(k)) => writeln!(out, "bfs check: mismatch at n = {k}")?,
                None => {}
            }
        }
    }
    match mismatch {
        Some(Some(k)) => Err(CliError::CheckFailed(format!(
            "series coefficient {k} differs from the sphere size"
        ))),
        _ => Ok(()),
    }
}

/// One `(p,q)` line of `bs tables`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct ReportRow {
    pub p: u32,
    pub q: u32,
    pub standard_bound: f64,
    pub balanced_bound: f64,
    pub poly_root: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fekete_upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_rate: Option<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TablesReport {
    pub schema: String,
    pub command: String,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub max_q: u32,
    pub paper_grid: bool,
    pub paper_precision: bool,
    pub fekete_radius: Option<u32>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            max_q: 20,
            paper_grid: false,
            paper_precision: false,
            fekete_radius: None,
        }
    }
}

/// The 21 `(p,q)` entries of the published tables.
pub const PAPER_GRID: [(u32, u32); 21] = [
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 10),
    (2, 20),
    (3, 3),
    (3, 4),
    (3, 5),
    (3, 10),
    (3, 20),
    (4, 4),
    (4, 5),
    (4, 10),
    (4, 20),
    (5, 5),
    (5, 10),
    (5, 20),
    (10, 10),
    (10, 20),
    (20, 20),
];

/// Unrounded rows over the requested grid, ordered by `(p, q)`.
pub fn table_rows(options: &TableOptions) -> Result<Vec<ReportRow>, CliError> {
    let pairs: Vec<(u32, u32)> = if options.paper_grid {
        PAPER_GRID
            .iter()
            .copied()
            .filter(|&(_, q)| q <= options.max_q)
            .collect()
    } else {
        (2..=options.max_q)
            .flat_map(|p| (p..=options.max_q).map(move |q| (p, q)))
            .collect()
    };
    pairs
        .into_iter()
        .map(|(p, q)| {
            let params = GroupParams::new(p, q).map_err(|e| CliError::Usage(e.to_string()))?;
            let poly = growth_polynomial(params).map_err(|e| CliError::Usage(e.to_string()))?;
            let fekete_upper = match options.fekete_radius {
                Some(n) => {
                    let (table, err) = ball_or_partial(params, n, &BallOptions::default());
                    if let Some(e) = err {
                        return Err(e);
                    }
                    table.fekete_bound(n).ok()
                }
                None => None,
            };
            let exact_rate = match (p == q, edjvet_johnson_series(p)) {
                (true, Ok(rs)) => dominant_singularity(&rs).ok().map(|s| s.rate),
                _ => None,
            };
            Ok(ReportRow {
                p,
                q,
                standard_bound: growth_lower_bound(params, Variant::Standard),
                balanced_bound: growth_lower_bound(params, Variant::Balanced),
                poly_root: largest_real_root(&poly)
                    .map_err(|e| CliError::CheckFailed(e.to_string()))?,
                fekete_upper,
                exact_rate,
            })
        })
        .collect()
}

/// Column texts for a row: `[standard, balanced, polyRoot, fekete, exact]`.
fn row_cells(r: &ReportRow, paper: bool) -> [String; 5] {
    let f = |x: f64, paper_digits: u32| {
        if paper {
            paper_round(x, paper_digits)
        } else {
            round_half_even(x, 6)
        }
    };
    [
        f(r.standard_bound, 5),
        f(r.balanced_bound, 4),
        f(r.poly_root, 4),
        r.fekete_upper.map(|x| f(x, 3)).unwrap_or_default(),
        r.exact_rate.map(|x| f(x, 4)).unwrap_or_default(),
    ]
}

fn cmd_tables(options: &TableOptions, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = table_rows(options)?;
    match format {
        Format::Json => {
            let rows = rows
                .iter()
                .map(|r| {
                    let c = row_cells(r, options.paper_precision);
                    let num = |s: &String| s.parse::<f64>().ok();
                    ReportRow {
                        p: r.p,
                        q: r.q,
                        standard_bound: num(&c[0]).unwrap(),
                        balanced_bound: num(&c[1]).unwrap(),
                        poly_root: num(&c[2]).unwrap(),
                        fekete_upper: num(&c[3]),
                        exact_rate: num(&c[4]),
                    }
                })
                .collect();
            write_json(
                out,
                &TablesReport {
                    schema: SCHEMA_VERSION.into(),
                    command: "tables".into(),
                    rows,
                },
            )?;
        }
        _ => {
            writeln!(
                out,
                "p,q,standardBound,balancedBound,polyRoot,feketeUpper,exactRate"
            )?;
            for r in &rows {
                let c = row_cells(r, options.paper_precision);
                writeln!(out, "{},{},{}", r.p, r.q, c.join(","))?;
            }
        }
    }
    Ok(())
}

/// Compact JSON followed by a newline.
pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

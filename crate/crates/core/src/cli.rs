//! Command-line front end.
//!
//! Results go to the output stream as JSON lines `{"n":..,"count":".."}`
//! (counts are decimal strings) or as CSV. Diagnostics go to the error
//! stream. Exit codes: 0 success, 1 failed computation or verification,
//! 2 usage error, 3 oracle guard rejection.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::general::{self, two_sided_search_with};
use crate::linear::{self, LinearPath};
use crate::oracle::{self, Guard};
use crate::quadratic::{self, QuadraticPath};
use crate::walk;
use crate::{
    CountTable, Error, GeneralInstance, GeneralPath, LinearInstance, QuadraticInstance,
    TermFunction, WalkSpec,
};

pub const GUARD_ENV: &str = "DCOUNT_GUARD_LIMIT";

/// Position-annotated failure from [`parse_terms`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            offset: self.pos,
            expected,
            found: match self.peek() {
                Some(c) => format!("'{c}'"),
                None => "end of input".into(),
            },
        }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    /// Positive integer literal.
    fn positive(&mut self, expected: &'static str) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        let fail = |found: String| ParseError {
            offset: start,
            expected: vec![expected],
            found,
        };
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error(vec![expected]));
        }
        match digits.parse::<u64>() {
            Ok(0) => Err(fail("0".into())),
            Ok(v) => Ok(v),
            Err(_) => Err(fail(format!("'{digits}' (too large)"))),
        }
    }

    fn term(&mut self) -> Result<TermFunction, ParseError> {
        self.skip_ws();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.positive("positive coefficient")?;
                self.skip_ws();
                self.expect('*', "'*'")?;
                self.skip_ws();
                c
            }
            Some('k') => 1,
            _ => return Err(self.error(vec!["integer", "'k'"])),
        };
        self.expect('k', "'k'")?;
        self.skip_ws();
        let mut exponent = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.positive("exponent >= 1")?;
            exponent = u32::try_from(e).map_err(|_| ParseError {
                offset: start,
                expected: vec!["exponent >= 1"],
                found: format!("'{e}' (too large)"),
            })?;
            self.skip_ws();
        }
        Ok(TermFunction::power(coeff, exponent).expect("coefficient and exponent are positive"))
    }
}

/// Parses a comma-separated list of `[INT "*"] "k" ["^" INT]` terms.
pub fn parse_terms(input: &str) -> Result<Vec<TermFunction>, ParseError> {
    let mut p = TermParser { src: input, pos: 0 };
    let mut terms = vec![p.term()?];
    loop {
        match p.peek() {
            None => return Ok(terms),
            Some(',') => {
                p.pos += 1;
                terms.push(p.term()?);
            }
            Some(_) => return Err(p.error(vec!["','", "'^'", "end of input"])),
        }
    }
}

/// `1,2,3`, `1..8` (inclusive) or a mix such as `1..3,5`.
pub fn parse_coeff_list(input: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in input.split(',') {
        let item = item.trim();
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("'{s}' is not a non-negative integer"))
        };
        if let Some((lo, hi)) = item.split_once("..") {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range '{item}'"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(item)?);
        }
    }
    Ok(out)
}

fn parse_rational(input: &str) -> Result<BigRational, String> {
    let int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("'{input}' is not a rational of the form p/q"))
    };
    match input.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err("denominator must be non-zero".into());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(input)?)),
    }
}

/// Parsed `--coeffs` value.
#[derive(Clone, Debug)]
struct Coeffs(Vec<u64>);

/// Parsed term-list value.
#[derive(Clone, Debug)]
struct Terms(Vec<TermFunction>);

fn parse_coeffs_arg(input: &str) -> Result<Coeffs, String> {
    parse_coeff_list(input).map(Coeffs)
}

fn parse_terms_arg(input: &str) -> Result<Terms, String> {
    parse_terms(input).map(Terms).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "dcount", version, about = "Count solutions of additive Diophantine equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// a1*k1 + ... + ar*kr = n over non-negative k
    Linear(LinearArgs),
    /// a1*k1^2 + ... + ar*kr^2 = n over signed k
    Quadratic(QuadraticArgs),
    /// g1(k1) + ... + gr(kr) = n over non-negative k
    General(GeneralArgs),
    /// Partition numbers p(0..=N)
    Partitions(PartitionArgs),
    /// Scaled displacement weights of the Poisson lattice walk
    Walk(WalkArgs),
    /// Values n = right(m) <= bound reachable as left1(k1) + ... + leftr(kr)
    Search(SearchArgs),
    /// Brute-force enumeration
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run every counting path (and the oracle when within its guard) and
    /// fail on any disagreement
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct LinearArgs {
    /// Coefficients, e.g. `1,2,3` or `1..8`
    #[arg(long, value_parser = parse_coeffs_arg)]
    coeffs: Coeffs,
    #[arg(long)]
    max_n: usize,
    /// re1 | rho
    #[arg(long, default_value = "re1")]
    path: LinearPath,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct QuadraticArgs {
    #[arg(long, value_parser = parse_coeffs_arg)]
    coeffs: Coeffs,
    #[arg(long)]
    max_n: usize,
    /// re2 | theta
    #[arg(long, default_value = "re2")]
    path: QuadraticPath,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GeneralArgs {
    /// Terms, e.g. `k^3,k^3` or `2*k,3*k^2`
    #[arg(long, alias = "left", value_parser = parse_terms_arg)]
    terms: Terms,
    #[arg(long)]
    max_n: usize,
    /// c5 | re3 | bell
    #[arg(long, default_value = "c5")]
    path: GeneralPath,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PartitionPath {
    Re1,
    Rho,
    Pentagonal,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = PartitionPath::Re1)]
    path: PartitionPath,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WalkPath {
    Recursion,
    Convolution,
}

#[derive(Args, Debug)]
struct WalkArgs {
    /// Poisson mean per step, `p/q`
    #[arg(long, value_parser = parse_rational)]
    alpha: BigRational,
    /// Displacement per step; defaults to 1 for every step
    #[arg(long, value_parser = parse_coeffs_arg)]
    coeffs: Option<Coeffs>,
    /// Number of steps; must match the coefficient count when both are given
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = WalkPath::Recursion)]
    path: WalkPath,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_parser = parse_terms_arg)]
    left: Terms,
    /// A single term, e.g. `k^2`
    #[arg(long, value_parser = parse_terms_arg)]
    right: Terms,
    #[arg(long)]
    bound: u64,
    /// c5 | re3 | bell
    #[arg(long, default_value = "c5")]
    path: GeneralPath,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Linear,
    Quadratic,
    General,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    kind: OracleKind,
    #[arg(long, value_parser = parse_coeffs_arg)]
    coeffs: Option<Coeffs>,
    #[arg(long, value_parser = parse_terms_arg)]
    terms: Option<Terms>,
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    Compute(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Guard(m) | Failure::Compute(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            Error::InvalidInstance(_) | Error::NonIncreasingTable { .. } | Error::NotCoprime { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(format!("write failed: {e}"))
    }
}

#[derive(Serialize)]
struct CountRow<'a> {
    n: u64,
    count: &'a str,
}

#[derive(Serialize)]
struct WeightRow<'a> {
    n: u64,
    weight: &'a str,
}

fn emit_counts<'a>(
    out: &mut dyn Write,
    format: Format,
    rows: impl IntoIterator<Item = (u64, &'a BigInt)>,
) -> Result<(), Failure> {
    if format == Format::Csv {
        writeln!(out, "n,count")?;
    }
    for (n, c) in rows {
        let count = c.to_string();
        match format {
            Format::Json => {
                let line = serde_json::to_string(&CountRow { n, count: &count })
                    .map_err(|e| Failure::Compute(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
            Format::Csv => writeln!(out, "{n},{count}")?,
        }
    }
    Ok(())
}

fn emit_table(out: &mut dyn Write, format: Format, table: &CountTable) -> Result<(), Failure> {
    emit_counts(out, format, table.iter().map(|(n, c)| (n as u64, c)))
}

fn emit_weights(out: &mut dyn Write, format: Format, weights: &[BigRational]) -> Result<(), Failure> {
    if format == Format::Csv {
        writeln!(out, "n,weight")?;
    }
    for (n, w) in weights.iter().enumerate() {
        let weight = w.to_string();
        match format {
            Format::Json => {
                let line = serde_json::to_string(&WeightRow { n: n as u64, weight: &weight })
                    .map_err(|e| Failure::Compute(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
            Format::Csv => writeln!(out, "{n},{weight}")?,
        }
    }
    Ok(())
}

/// Compares named tables; the first is the reference.
fn check_agreement(err: &mut dyn Write, tables: &[(&str, CountTable)]) -> Result<(), Failure> {
    let (ref_name, reference) = &tables[0];
    for (name, t) in &tables[1..] {
        if let Some(n) = (0..reference.len()).find(|&n| t.get(n) != reference.get(n)) {
            return Err(Failure::Compute(format!(
                "verification failed: {ref_name} and {name} differ at n = {n} ({} vs {})",
                reference[n],
                t.get(n).map_or_else(|| "missing".to_string(), BigInt::to_string)
            )));
        }
    }
    let names: Vec<&str> = tables.iter().map(|(n, _)| *n).collect();
    writeln!(err, "verified: {} agree", names.join(", "))?;
    Ok(())
}

/// Oracle table, or `None` (with a note) when it would exceed the guard.
fn oracle_or_skip<F>(
    err: &mut dyn Write,
    n_max: usize,
    count: F,
) -> Result<Option<CountTable>, Failure>
where
    F: FnMut(u64) -> crate::Result<BigInt>,
{
    match oracle::brute_table(n_max, count) {
        Ok(t) => Ok(Some(t)),
        Err(e @ Error::GuardExceeded { .. }) => {
            writeln!(err, "note: oracle skipped ({e})")?;
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn guard_from(env_value: Option<&str>) -> Result<Guard, Failure> {
    match env_value {
        None => Ok(Guard::default()),
        Some(v) => v
            .trim()
            .parse::<u128>()
            .map(Guard::new)
            .map_err(|_| Failure::Usage(format!("{GUARD_ENV} must be a non-negative integer, got '{v}'"))),
    }
}

fn run_linear(args: LinearArgs, guard: &Guard, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let inst = LinearInstance::new(args.coeffs.0, args.max_n)?;
    let table = linear::count_linear(&inst, args.path)?;
    if args.common.verify {
        let mut tables = vec![
            ("re1", linear::count_linear_re1(&inst)?),
            ("rho", linear::count_linear_rho(&inst)?),
        ];
        if let Some(t) = oracle_or_skip(err, args.max_n, |n| oracle::brute_linear(&inst, n, guard))? {
            tables.push(("oracle", t));
        }
        check_agreement(err, &tables)?;
    }
    emit_table(out, args.common.format, &table)
}

fn run_quadratic(args: QuadraticArgs, guard: &Guard, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let inst = QuadraticInstance::new(args.coeffs.0, args.max_n)?;
    let table = quadratic::count_quadratic(&inst, args.path)?;
    if args.common.verify {
        let mut tables = vec![
            ("re2", quadratic::count_quadratic_re2(&inst)?),
            ("theta", quadratic::count_quadratic_theta(&inst)?),
        ];
        if let Some(t) = oracle_or_skip(err, args.max_n, |n| oracle::brute_quadratic(&inst, n, guard))? {
            tables.push(("oracle", t));
        }
        check_agreement(err, &tables)?;
    }
    emit_table(out, args.common.format, &table)
}

fn verify_general(inst: &GeneralInstance, guard: &Guard, err: &mut dyn Write) -> Result<(), Failure> {
    let mut tables = vec![
        ("c5", general::count_general_c5(inst)?),
        ("re3", general::count_general_re3(inst)?),
        ("bell", general::count_general_bell_table(inst)?),
    ];
    if let Some(t) = oracle_or_skip(err, inst.target_max(), |n| oracle::brute_general(inst, n, guard))? {
        tables.push(("oracle", t));
    }
    check_agreement(err, &tables)
}

fn run_general(args: GeneralArgs, guard: &Guard, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let inst = GeneralInstance::new(args.terms.0, args.max_n)?;
    let table = general::count_general(&inst, args.path)?;
    if args.common.verify {
        verify_general(&inst, guard, err)?;
    }
    emit_table(out, args.common.format, &table)
}

fn run_partitions(args: PartitionArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let n_max = args.max_n;
    let inst = LinearInstance::new((1..=n_max.max(1) as u64).collect(), n_max)?;
    let compute = |path: PartitionPath| -> Result<CountTable, Failure> {
        Ok(match path {
            PartitionPath::Re1 => linear::count_linear_re1(&inst)?,
            PartitionPath::Rho => linear::count_linear_rho(&inst)?,
            PartitionPath::Pentagonal => oracle::partition_pentagonal(n_max),
        })
    };
    let table = compute(args.path)?;
    if args.common.verify {
        check_agreement(
            err,
            &[
                ("re1", compute(PartitionPath::Re1)?),
                ("rho", compute(PartitionPath::Rho)?),
                ("pentagonal", compute(PartitionPath::Pentagonal)?),
            ],
        )?;
    }
    emit_table(out, args.common.format, &table)
}

fn run_walk(args: WalkArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let coeffs = match (args.coeffs.map(|c| c.0), args.steps) {
        (Some(c), Some(r)) if c.len() != r => {
            return Err(Failure::Usage(format!(
                "--steps {r} does not match the {} displacements given in --coeffs",
                c.len()
            )))
        }
        (Some(c), _) => c,
        (None, Some(r)) => vec![1; r],
        (None, None) => return Err(Failure::Usage("walk needs --coeffs or --steps".into())),
    };
    let spec = WalkSpec::new(args.alpha, coeffs)?;
    let dist = match args.path {
        WalkPath::Recursion => walk::walk_distribution(&spec, args.max_n),
        WalkPath::Convolution => walk::walk_convolution_oracle(&spec, args.max_n),
    };
    if args.common.verify {
        let other = match args.path {
            WalkPath::Recursion => walk::walk_convolution_oracle(&spec, args.max_n),
            WalkPath::Convolution => walk::walk_distribution(&spec, args.max_n),
        };
        if other != dist {
            return Err(Failure::Compute("verification failed: recursion and convolution differ".into()));
        }
        writeln!(err, "verified: recursion, convolution agree")?;
    }
    writeln!(err, "note: probability = weight * exp(-{})", dist.scale_exponent())?;
    emit_weights(out, args.common.format, dist.weights())
}

fn run_search(args: SearchArgs, guard: &Guard, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let right = match args.right.0.as_slice() {
        [single] => single.clone(),
        _ => return Err(Failure::Usage("--right takes exactly one term".into())),
    };
    if args.bound == 0 {
        return Err(Failure::Usage("--bound must be at least 1".into()));
    }
    let search = || two_sided_search_with(&args.left.0, &right, args.bound, args.path);
    let hits = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Failure::Compute(e.to_string()))?
            .install(search)?,
        None => search()?,
    };
    if args.common.verify {
        let inst = GeneralInstance::new(args.left.0.clone(), args.bound as usize)?;
        verify_general(&inst, guard, err)?;
    }
    emit_counts(out, args.common.format, hits.iter().map(|(n, c)| (*n, c)))
}

fn run_oracle(args: OracleArgs, guard: &Guard, out: &mut dyn Write) -> Result<(), Failure> {
    let need_coeffs = || {
        args.coeffs
            .clone()
            .map(|c| c.0)
            .ok_or_else(|| Failure::Usage("--coeffs is required for this oracle".into()))
    };
    let table = match args.kind {
        OracleKind::Linear => {
            let inst = LinearInstance::new(need_coeffs()?, args.max_n)?;
            oracle::brute_table(args.max_n, |n| oracle::brute_linear(&inst, n, guard))?
        }
        OracleKind::Quadratic => {
            let inst = QuadraticInstance::new(need_coeffs()?, args.max_n)?;
            oracle::brute_table(args.max_n, |n| oracle::brute_quadratic(&inst, n, guard))?
        }
        OracleKind::General => {
            let terms = args
                .terms
                .clone()
                .map(|t| t.0)
                .ok_or_else(|| Failure::Usage("--terms is required for the general oracle".into()))?;
            let inst = GeneralInstance::new(terms, args.max_n)?;
            oracle::brute_table(args.max_n, |n| oracle::brute_general(&inst, n, guard))?
        }
    };
    emit_table(out, args.format, &table)
}

fn dispatch(cli: Cli, guard_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let guard = guard_from(guard_env)?;
    match cli.command {
        Command::Linear(a) => run_linear(a, &guard, out, err),
        Command::Quadratic(a) => run_quadratic(a, &guard, out, err),
        Command::General(a) => run_general(a, &guard, out, err),
        Command::Partitions(a) => run_partitions(a, out, err),
        Command::Walk(a) => run_walk(a, out, err),
        Command::Search(a) => run_search(a, &guard, out, err),
        Command::Oracle(a) => run_oracle(a, &guard, out),
    }
}

/// Runs the CLI with an explicit guard override instead of reading the
/// environment.
pub fn run_with<I, T>(args: I, guard_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, guard_env, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

/// Entry point used by the binary; reads the guard limit from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let guard_env = std::env::var(GUARD_ENV).ok();
    run_with(args, guard_env.as_deref(), out, err)
}

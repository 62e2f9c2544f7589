//! The `mhg` command line: argument parsing, subcommands, exit codes and
//! the run manifest.
//!
//! Exit codes: 0 when every requested comparison agrees, 3 when a published
//! formula disagrees with an exact count (or an amalgamation check fails),
//! 2 on usage errors, 1 on internal errors.

pub mod cache;
pub mod report;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::ensembles::{
    amalgamation_check, build_truncation, estimate_asymmetric_fraction, exact_asymmetric_fraction, sample,
    AmalgamationMode, AsymmetryReport, SampleError, SamplerConfig, SamplerModel, TruncationSpec,
};
use crate::enumeration::{
    distinct_keys, enumerate_labeled_oracle, enumerate_labeled_structured, enumerate_unlabeled, exact_count,
    paper_count, CountReport, EnumError, Labeling, ORACLE_FORCED_MAX_N, ORACLE_MAX_N,
};
use crate::exec::Strategy;
use crate::logic::{
    check_divergence_witness, convergence_table, eval_sentence, find_extension_failure, LogicError,
    ProportionMethod, SentenceId,
};
use crate::space::{automorphism_count, bipartite_decompose, validate, ClassId, MetricSpace};
use cache::{Cache, CACHE_ENV, DEFAULT_CACHE_DIR};
use report::{num, Cell, Format, Report, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

/// Summary key for the first `n` reaching the convergence threshold.
const THRESHOLD_KEY: &str = "first_n_reaching_0.99";

/// Digits shown in `value_decimal` columns.
const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Parser)]
#[command(name = "mhg", version, about = "Bipartite diameter-3 metric space workbench")]
pub struct Cli {
    /// Class: a1 = A3(inf,0,7,8), a2 = A3(inf,0,7,10).
    #[arg(long, global = true)]
    pub class: Option<ClassId>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = CACHE_ENV, default_value = DEFAULT_CACHE_DIR)]
    pub cache_dir: PathBuf,
    /// Lift the size guards on brute-force computations.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Published, exact and brute-force counts.
    Count(CountArgs),
    /// List the members or isometry classes on n points.
    Enumerate(EnumerateArgs),
    /// Exact proportions of a sentence over a range of n.
    Proportions(ProportionsArgs),
    /// Seeded draws or the asymmetric fraction.
    Sample(SampleArgs),
    /// Finite truncations of the limit structures.
    Limits(LimitsArgs),
    /// Amalgamation spot-check over small bases.
    Amalgamation(AmalgamationArgs),
    /// Audit of every published count over a range of n.
    Report(ReportArgs),
}

/// `N` or an inclusive range `A..B` (also `A..=B`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub from: usize,
    pub to: usize,
}

impl NRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.from..=self.to
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.from == self.to {
            write!(f, "{}", self.from)
        } else {
            write!(f, "{}..{}", self.from, self.to)
        }
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected N or A..B, got '{s}'");
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let from: usize = from.trim().parse().map_err(|_| bad())?;
        let to: usize = to.trim().parse().map_err(|_| bad())?;
        if from > to {
            return Err(format!("empty range '{s}'"));
        }
        Ok(NRange { from, to })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    Formula,
    Exact,
    Oracle,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: NRange,
    #[arg(long, default_value = "labeled")]
    pub mode: Labeling,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodName::Formula, MethodName::Exact])]
    pub method: Vec<MethodName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Direct construction from the bipartite structure.
    Structured,
    /// Brute-force sweep over all distance matrices.
    Oracle,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "unlabeled")]
    pub mode: Labeling,
    #[arg(long, value_enum, default_value_t = Source::Structured)]
    pub source: Source,
    /// Also write the spaces in the text format to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Auto,
    Analytic,
    Direct,
}

impl From<MethodChoice> for ProportionMethod {
    fn from(m: MethodChoice) -> Self {
        match m {
            MethodChoice::Auto => ProportionMethod::Auto,
            MethodChoice::Analytic => ProportionMethod::Analytic,
            MethodChoice::Direct => ProportionMethod::Direct,
        }
    }
}

#[derive(Debug, Args)]
pub struct ProportionsArgs {
    /// Sentence id, e.g. a1.pairs?p=2 or ext?q=1&p=1&r=1.
    #[arg(long)]
    pub sentence: SentenceId,
    #[arg(long, default_value = "unlabeled")]
    pub ensemble: Labeling,
    #[arg(long)]
    pub n: NRange,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Uniform,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsymmetryChoice {
    Mc,
    Exact,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModelName::Uniform)]
    pub model: ModelName,
    /// Small part size for the fixed-partition model.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of draws; draw `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Report the asymmetric fraction instead of individual draws.
    #[arg(long, value_enum)]
    pub asymmetry: Option<AsymmetryChoice>,
    /// Monte Carlo sample size.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitName {
    G378,
    Gas,
    G3710,
}

/// What `limits` evaluates on a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// The divergence witness sentence.
    Witness,
    /// Class membership.
    Validate,
    Sentence(SentenceId),
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Witness => f.write_str("witness"),
            Check::Validate => f.write_str("validate"),
            Check::Sentence(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witness" => Ok(Check::Witness),
            "validate" => Ok(Check::Validate),
            other => other.parse().map(Check::Sentence).map_err(|e: crate::logic::SentenceParseError| e.to_string()),
        }
    }
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    #[arg(long, value_enum)]
    pub limit: LimitName,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub u: Option<usize>,
    /// Comma list of witness, validate or sentence ids.
    #[arg(long, value_delimiter = ',', default_value = "validate")]
    pub check: Vec<Check>,
    /// Also write the truncation in the text format to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AmalgamationArgs {
    #[arg(long, default_value_t = 3)]
    pub base_max: usize,
    /// Random trials instead of the exhaustive sweep; needs --seed.
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, default_value = "1..8")]
    pub n: NRange,
    /// Include the brute-force oracle where its guard allows.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::OracleGuard { .. } => CliError::Usage(e.to_string()),
            EnumError::Capacity { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::Enumeration(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Internal(format!("{}: {e}", path.display()))
}

/// A rendered report with its exit code and manifest fields.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    pub class: Option<String>,
    pub n_range: Option<String>,
    pub seeds: Vec<String>,
    pub cache_hits: usize,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome { report, exit: EXIT_OK, class: None, n_range: None, seeds: Vec::new(), cache_hits: 0 }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Cache,
    cache_hits: usize,
    strategy: Strategy,
}

impl Ctx<'_> {
    fn class(&self) -> Result<ClassId, CliError> {
        self.cli.class.ok_or_else(|| CliError::Usage("--class is required for this command".into()))
    }

    fn seed(&self, what: &str) -> Result<u64, CliError> {
        self.cli.seed.ok_or_else(|| CliError::Usage(format!("{what} is randomized and requires --seed")))
    }

    /// Labeled oracle list through the cache. The guard applies before the
    /// cache so results never depend on what an earlier forced run stored.
    fn oracle(&mut self, n: usize, class: ClassId) -> Result<Vec<MetricSpace>, CliError> {
        let max = if self.cli.force { ORACLE_FORCED_MAX_N } else { ORACLE_MAX_N };
        if n > max {
            return Err(EnumError::OracleGuard { n, max }.into());
        }
        let force = self.cli.force;
        let key = format!("oracle-{class}-n{n}");
        let (spaces, hit) = self.cache.get_or_compute(&key, || enumerate_labeled_oracle(n, class, force))?;
        self.cache_hits += usize::from(hit);
        Ok(spaces)
    }

    fn oracle_count(&mut self, n: usize, class: ClassId, mode: Labeling) -> Result<BigUint, CliError> {
        let spaces = self.oracle(n, class)?;
        Ok(match mode {
            Labeling::Labeled => spaces.len().into(),
            Labeling::Unlabeled => distinct_keys(&spaces, self.strategy).into(),
        })
    }

    fn count_row(
        &mut self,
        n: usize,
        class: ClassId,
        mode: Labeling,
        methods: &[MethodName],
    ) -> Result<CountReport, CliError> {
        let paper = methods.contains(&MethodName::Formula).then(|| paper_count(n, class, mode));
        let exact =
            if methods.contains(&MethodName::Exact) { Some(exact_count(n, class, mode)?) } else { None };
        let oracle =
            if methods.contains(&MethodName::Oracle) { Some(self.oracle_count(n, class, mode)?) } else { None };
        Ok(CountReport::from_parts(n, class, mode, paper, exact, oracle))
    }
}

const COUNT_COLUMNS: &[&str] = &["n", "class", "mode", "paper", "exact", "oracle", "agrees_paper", "agrees_oracle"];

fn count_cells(r: &CountReport) -> Vec<Cell> {
    vec![
        num(r.n),
        r.class.as_str().into(),
        r.mode.as_str().into(),
        r.paper.as_ref().map(|x| num(x)).unwrap_or(Cell::Null),
        r.exact.as_ref().map(|x| num(x)).unwrap_or(Cell::Null),
        r.oracle.as_ref().map(|x| num(x)).unwrap_or(Cell::Null),
        r.agrees_paper.into(),
        r.agrees_oracle.into(),
    ]
}

/// Exit code for a batch of count rows: an exact/oracle mismatch is a
/// defect, a formula mismatch is the audited outcome.
fn count_exit(rows: &[CountReport]) -> Result<i32, CliError> {
    if let Some(r) = rows.iter().find(|r| r.has_oracle_mismatch()) {
        return Err(CliError::Internal(format!(
            "exact counter disagrees with the oracle at n = {} ({} {})",
            r.n, r.class, r.mode
        )));
    }
    Ok(if rows.iter().any(CountReport::has_paper_discrepancy) { EXIT_DISCREPANCY } else { EXIT_OK })
}

fn upper_digits(s: &MetricSpace) -> String {
    s.upper().map(|d| char::from(b'0' + d)).collect()
}

fn cross_text(s: &MetricSpace, class: ClassId) -> (Cell, Cell, Cell) {
    match bipartite_decompose(s, class) {
        Ok(form) => {
            let cross = &form.cross;
            let text = (0..cross.rows())
                .map(|r| cross.row(r).iter().map(|&d| char::from(b'0' + d)).collect::<String>())
                .collect::<Vec<_>>()
                .join("/");
            let j = (class == ClassId::A1).then(|| num(form.threes()));
            (num(form.small.len()), j.unwrap_or(Cell::Null), text.into())
        }
        Err(_) => (Cell::Null, Cell::Null, Cell::Null),
    }
}

fn write_spaces(path: &std::path::Path, spaces: &[MetricSpace]) -> Result<(), CliError> {
    let body: String = spaces.iter().map(|s| format!("{s}\n")).collect();
    fs::write(path, body).map_err(|e| io_error(path, e))
}

fn cmd_count(ctx: &mut Ctx, a: &CountArgs) -> Result<Outcome, CliError> {
    let class = ctx.class()?;
    let mut report = Report::new("count", COUNT_COLUMNS);
    let mut rows = Vec::new();
    for n in a.n.iter() {
        let r = ctx.count_row(n, class, a.mode, &a.method)?;
        report.push(count_cells(&r));
        rows.push(r);
    }
    let exit = count_exit(&rows)?;
    report.summarize("discrepancies", num(rows.iter().filter(|r| r.has_paper_discrepancy()).count()));
    let mut out = Outcome::new(report);
    out.exit = exit;
    out.class = Some(class.to_string());
    out.n_range = Some(a.n.to_string());
    Ok(out)
}

fn cmd_enumerate(ctx: &mut Ctx, a: &EnumerateArgs) -> Result<Outcome, CliError> {
    let class = ctx.class()?;
    let spaces: Vec<MetricSpace> = match (a.source, a.mode) {
        (Source::Structured, Labeling::Labeled) => enumerate_labeled_structured(a.n, class).collect(),
        (Source::Structured, Labeling::Unlabeled) => {
            enumerate_unlabeled(a.n, class)?.into_iter().map(|d| d.representative).collect()
        }
        (Source::Oracle, Labeling::Labeled) => ctx.oracle(a.n, class)?,
        (Source::Oracle, Labeling::Unlabeled) => {
            let keys: std::collections::BTreeSet<_> =
                ctx.oracle(a.n, class)?.iter().map(crate::space::canonical_form).collect();
            keys.into_iter().map(|k| k.to_space()).collect()
        }
    };
    let mut report = Report::new("enumerate", &["index", "n", "class", "k", "j", "cross", "aut_order", "upper"]);
    for (i, s) in spaces.iter().enumerate() {
        let (k, j, cross) = cross_text(s, class);
        report.push(vec![
            num(i),
            num(a.n),
            class.as_str().into(),
            k,
            j,
            cross,
            num(automorphism_count(s)),
            upper_digits(s).into(),
        ]);
    }
    report.summarize("count", num(spaces.len()));
    if let Some(path) = &a.out {
        write_spaces(path, &spaces)?;
    }
    let mut out = Outcome::new(report);
    out.class = Some(class.to_string());
    out.n_range = Some(a.n.to_string());
    Ok(out)
}

fn cmd_proportions(ctx: &mut Ctx, a: &ProportionsArgs) -> Result<Outcome, CliError> {
    let class = ctx.class()?;
    let table =
        convergence_table(class, a.sentence, a.n.from, a.n.to, a.ensemble, a.method.into(), ctx.strategy)?;
    let mut report = Report::new(
        "proportions",
        &["n", "class", "sentence", "ensemble", "numerator", "denominator", "value_decimal"],
    );
    for r in &table.rows {
        report.push(vec![
            num(r.n),
            r.class.as_str().into(),
            r.sentence.to_string().into(),
            r.ensemble.as_str().into(),
            num(&r.numerator),
            num(&r.denominator),
            r.decimal(DECIMAL_DIGITS).into(),
        ]);
    }
    report.summarize(THRESHOLD_KEY, table.first_n_reaching.map(num));
    let mut out = Outcome::new(report);
    out.class = Some(class.to_string());
    out.n_range = Some(a.n.to_string());
    Ok(out)
}

fn asymmetry_cells(r: &AsymmetryReport, mode: &str) -> Vec<Cell> {
    use num_traits::ToPrimitive;
    vec![
        num(r.n),
        r.class.as_str().into(),
        mode.into(),
        num(&r.hits),
        num(&r.samples),
        num(&r.estimate),
        r.estimate.to_f64().map(|x| format!("{x:.6}")).into(),
    ]
}

fn cmd_sample(ctx: &mut Ctx, a: &SampleArgs) -> Result<Outcome, CliError> {
    let class = ctx.class()?;
    let mut out = match a.asymmetry {
        Some(choice) => {
            let mut report = Report::new(
                "sample",
                &["n", "class", "mode", "hits", "samples", "estimate", "estimate_decimal"],
            );
            let mut seeds = Vec::new();
            let (r, mode) = match choice {
                AsymmetryChoice::Mc => {
                    if a.samples == 0 {
                        return Err(CliError::Usage("--samples must be at least 1".into()));
                    }
                    let seed = ctx.seed("Monte Carlo sampling")?;
                    seeds.push(seed.to_string());
                    (estimate_asymmetric_fraction(a.n, class, a.samples, seed, ctx.strategy), "monte_carlo")
                }
                AsymmetryChoice::Exact => (exact_asymmetric_fraction(a.n, class, ctx.cli.force, ctx.strategy)?, "exact"),
            };
            report.push(asymmetry_cells(&r, mode));
            let mut out = Outcome::new(report);
            out.seeds = seeds;
            out
        }
        None => {
            let seed = ctx.seed("sampling")?;
            let model = match (a.model, a.k) {
                (ModelName::Uniform, None) => SamplerModel::UniformLabeled,
                (ModelName::Uniform, Some(_)) => {
                    return Err(CliError::Usage("--k only applies to --model fixed".into()))
                }
                (ModelName::Fixed, Some(k)) => SamplerModel::FixedPartition { k },
                (ModelName::Fixed, None) => return Err(CliError::Usage("--model fixed requires --k".into())),
            };
            let mut report = Report::new(
                "sample",
                &["index", "seed", "n", "class", "k", "j", "cross", "aut_order", "asymmetric", "upper"],
            );
            let mut spaces = Vec::new();
            for i in 0..a.count {
                let draw_seed = seed.wrapping_add(i as u64);
                let s = sample(&SamplerConfig { n: a.n, class, model, seed: draw_seed })?;
                let (k, j, cross) = cross_text(&s, class);
                let aut = automorphism_count(&s);
                let asym = num_traits::One::is_one(&aut);
                report.push(vec![
                    num(i),
                    num(draw_seed),
                    num(a.n),
                    class.as_str().into(),
                    k,
                    j,
                    cross,
                    num(aut),
                    asym.into(),
                    upper_digits(&s).into(),
                ]);
                spaces.push(s);
            }
            if let Some(path) = &a.out {
                write_spaces(path, &spaces)?;
            }
            let mut out = Outcome::new(report);
            out.seeds = vec![seed.to_string()];
            out
        }
    };
    out.class = Some(class.to_string());
    out.n_range = Some(a.n.to_string());
    Ok(out)
}

fn cmd_limits(ctx: &mut Ctx, a: &LimitsArgs) -> Result<Outcome, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--limit {:?} requires --{flag}", a.limit).to_lowercase()))
    };
    let mut seeds = Vec::new();
    let spec = match a.limit {
        LimitName::G378 => TruncationSpec::Gamma378 { m: need(a.m, "m")? },
        LimitName::Gas => TruncationSpec::GammaAs { t: need(a.t, "t")?, u: need(a.u, "u")? },
        LimitName::G3710 => {
            let seed = ctx.seed("g3710")?;
            seeds.push(seed.to_string());
            TruncationSpec::Gamma3710 { m: need(a.m, "m")?, seed }
        }
    };
    let class = spec.class();
    if let Some(given) = ctx.cli.class {
        if given != class {
            return Err(CliError::Usage(format!("{} belongs to class {class}, not {given}", spec.name())));
        }
    }
    let space = build_truncation(&spec);
    let mut report = Report::new("limits", &["limit", "n", "class", "check", "result", "detail"]);
    for check in &a.check {
        let (result, detail) = match check {
            Check::Witness => (check_divergence_witness(&space), None),
            Check::Validate => {
                let m = validate(&space, class);
                (m.is_member(), m.witness().map(|w| w.to_string()))
            }
            Check::Sentence(SentenceId::Extension { q, p, r }) => match find_extension_failure(&space, *q, *p, *r) {
                None => (true, None),
                Some(f) => (false, Some(f.to_string())),
            },
            Check::Sentence(s) => (eval_sentence(&space, *s), None),
        };
        report.push(vec![
            spec.name().into(),
            num(space.n()),
            class.as_str().into(),
            check.to_string().into(),
            result.into(),
            detail.into(),
        ]);
    }
    if let Some(path) = &a.out {
        write_spaces(path, std::slice::from_ref(&space))?;
    }
    let mut out = Outcome::new(report);
    out.class = Some(class.to_string());
    out.n_range = Some(space.n().to_string());
    out.seeds = seeds;
    Ok(out)
}

fn cmd_amalgamation(ctx: &mut Ctx, a: &AmalgamationArgs) -> Result<Outcome, CliError> {
    let class = ctx.class()?;
    let mut seeds = Vec::new();
    let mode = match a.trials {
        None => AmalgamationMode::Exhaustive,
        Some(count) => {
            let seed = ctx.seed("amalgamation --trials")?;
            seeds.push(seed.to_string());
            AmalgamationMode::Trials { count, seed }
        }
    };
    let r = amalgamation_check(class, a.base_max, mode, ctx.strategy)?;
    let mut report = Report::new("amalgamation", &["base", "x", "y"]);
    let profile = |p: &[u8]| p.iter().map(|&d| char::from(b'0' + d)).collect::<String>();
    for f in &r.failures {
        report.push(vec![upper_digits(&f.base).into(), profile(&f.x).into(), profile(&f.y).into()]);
    }
    report.summarize("class", class.as_str());
    report.summarize("base_max", num(a.base_max));
    report.summarize("mode", if a.trials.is_some() { "trials" } else { "exhaustive" });
    report.summarize("bases", num(r.bases));
    report.summarize("pairs", num(r.pairs));
    report.summarize("identified", num(r.identified));
    report.summarize("failures", num(r.failures.len()));
    let mut out = Outcome::new(report);
    out.exit = if r.failures.is_empty() { EXIT_OK } else { EXIT_DISCREPANCY };
    out.class = Some(class.to_string());
    out.n_range = Some(format!("0..{}", a.base_max));
    out.seeds = seeds;
    Ok(out)
}

fn cmd_report(ctx: &mut Ctx, a: &ReportArgs) -> Result<Outcome, CliError> {
    let classes = match ctx.cli.class {
        Some(c) => vec![c],
        None => vec![ClassId::A1, ClassId::A2],
    };
    let max_oracle = if ctx.cli.force { ORACLE_FORCED_MAX_N } else { ORACLE_MAX_N };
    let mut report = Report::new("report", COUNT_COLUMNS);
    let mut rows = Vec::new();
    for &class in &classes {
        for mode in [Labeling::Labeled, Labeling::Unlabeled] {
            for n in a.n.iter() {
                let mut methods = vec![MethodName::Formula, MethodName::Exact];
                if a.oracle && n <= max_oracle {
                    methods.push(MethodName::Oracle);
                }
                let r = ctx.count_row(n, class, mode, &methods)?;
                report.push(count_cells(&r));
                rows.push(r);
            }
        }
    }
    let exit = count_exit(&rows)?;
    report.summarize("cells", num(rows.len()));
    report.summarize("discrepancies", num(rows.iter().filter(|r| r.has_paper_discrepancy()).count()));
    let mut out = Outcome::new(report);
    out.exit = exit;
    out.class = ctx.cli.class.map(|c| c.to_string());
    out.n_range = Some(a.n.to_string());
    Ok(out)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut ctx = Ctx { cli, cache: Cache::new(&cli.cache_dir), cache_hits: 0, strategy: Strategy::default() };
    let mut out = match &cli.command {
        Command::Count(a) => cmd_count(&mut ctx, a),
        Command::Enumerate(a) => cmd_enumerate(&mut ctx, a),
        Command::Proportions(a) => cmd_proportions(&mut ctx, a),
        Command::Sample(a) => cmd_sample(&mut ctx, a),
        Command::Limits(a) => cmd_limits(&mut ctx, a),
        Command::Amalgamation(a) => cmd_amalgamation(&mut ctx, a),
        Command::Report(a) => cmd_report(&mut ctx, a),
    }?;
    out.cache_hits = ctx.cache_hits;
    Ok(out)
}

/// Parses `args`, prints the report body to stdout and the run manifest to
/// stderr, and returns the process exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.report.render(cli.format));
            let manifest = RunManifest {
                command_line: args,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                class: out.class,
                n_range: out.n_range,
                seeds: out.seeds,
                cache_hits: out.cache_hits.to_string(),
                wall_time_ms: start.elapsed().as_millis().to_string(),
            };
            eprintln!("{}", manifest.to_json());
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ! {
    std::process::exit(main_with_args(std::env::args().collect()))
}

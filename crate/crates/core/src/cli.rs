//! Command-line front end: job files, commands and output formatting.

use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::demos;
use crate::error::{AlgebraError, RegionError, RingError};
use crate::field::DEFAULT_PRIME;
use crate::groebner::{FreeModule, GradedHom};
use crate::regions::{self, DegreeBox, Region, Seeds, Strategy};
use crate::resolution::BettiTable;
use crate::ring::{make_ring, Multidegree, Polynomial, RingSpec};
use crate::truncation::{has_linear_truncation, truncate, PresentedModule};

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn prefix(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "E_PARSE",
            CliError::Validation(_) => "E_VALIDATION",
            CliError::Internal(_) => "E_INTERNAL",
        }
    }

    /// `CODE: message` on one line.
    pub fn line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("{}: {}", self.prefix(), msg.trim())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RegionError> for CliError {
    fn from(e: RegionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDesc {
    pub n: Vec<i64>,
    #[serde(default = "default_prime")]
    pub p: u32,
}

fn default_prime() -> u32 {
    DEFAULT_PRIME
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDesc {
    pub target_twists: Vec<Multidegree>,
    pub source_twists: Vec<Multidegree>,
    /// `target_twists.len()` rows of `source_twists.len()` polynomials.
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxDesc {
    pub lo: Multidegree,
    pub hi: Multidegree,
}

/// A job file: a ring, a presentation matrix and optional parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub ring: RingDesc,
    pub module: ModuleDesc,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub search_box: Option<BoxDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Multidegree>,
}

/// A job file after parsing and validation.
#[derive(Debug, Clone)]
pub struct Job {
    pub ring: Arc<RingSpec>,
    pub module: PresentedModule,
    pub search_box: Option<DegreeBox>,
    pub degree: Option<Multidegree>,
}

impl JobFile {
    pub fn from_json(text: &str) -> Result<JobFile, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("job {}:{}: {e}", e.line(), e.column())))
    }

    /// Parses every entry and checks shapes, degrees and homogeneity.
    pub fn load(&self) -> Result<Job, CliError> {
        let ring = make_ring(&self.ring.n, self.ring.p)?;
        let m = &self.module;
        if m.entries.len() != m.target_twists.len() {
            return Err(CliError::Validation(format!(
                "matrix has {} rows, {} target twists",
                m.entries.len(),
                m.target_twists.len()
            )));
        }
        let mut rows = Vec::with_capacity(m.entries.len());
        for (k, row) in m.entries.iter().enumerate() {
            if row.len() != m.source_twists.len() {
                return Err(CliError::Validation(format!(
                    "row {k} has {} entries, {} source twists",
                    row.len(),
                    m.source_twists.len()
                )));
            }
            let mut parsed = Vec::with_capacity(row.len());
            for (l, text) in row.iter().enumerate() {
                let p = ring
                    .parse(text)
                    .map_err(|e| CliError::Parse(format!("entry ({k},{l}) at {e}")))?;
                parsed.push(p);
            }
            rows.push(parsed);
        }
        let hom = GradedHom::from_matrix(
            &ring,
            FreeModule::new(m.source_twists.clone()),
            FreeModule::new(m.target_twists.clone()),
            &rows,
        )?;
        let module = PresentedModule::new(hom)?;
        let search_box = match &self.search_box {
            Some(b) => {
                ring.check_degree(&b.lo)?;
                Some(DegreeBox::new(b.lo.clone(), b.hi.clone())?)
            }
            None => None,
        };
        if let Some(d) = &self.degree {
            ring.check_degree(d)?;
        }
        Ok(Job {
            ring,
            module,
            search_box,
            degree: self.degree.clone(),
        })
    }

    /// The canonical job file of a presented module.
    pub fn of_module(m: &PresentedModule) -> JobFile {
        let ring = m.ring();
        let pres = m.presentation();
        JobFile {
            ring: RingDesc {
                n: ring.dims().iter().map(|&n| n as i64).collect(),
                p: ring.characteristic(),
            },
            module: ModuleDesc {
                target_twists: pres.target().twists().to_vec(),
                source_twists: pres.source().twists().to_vec(),
                entries: render_rows(pres),
            },
            search_box: None,
            degree: None,
        }
    }
}

impl Job {
    /// Canonical form: entries printed back from the parsed polynomials.
    pub fn to_job_file(&self) -> JobFile {
        let mut f = JobFile::of_module(&self.module);
        f.search_box = self.search_box.as_ref().map(|b| BoxDesc {
            lo: b.lo().clone(),
            hi: b.hi().clone(),
        });
        f.degree = self.degree.clone();
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_job_file()).expect("serializable")
    }
}

fn render_rows(h: &GradedHom) -> Vec<Vec<String>> {
    h.to_rows()
        .iter()
        .map(|row| row.iter().map(Polynomial::to_string).collect())
        .collect()
}

#[derive(Parser, Debug)]
#[command(
    name = "multitrunc",
    version,
    about = "Resolutions and linear truncations of multigraded modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub job: Option<std::path::PathBuf>,
    /// Built-in module instead of a job file.
    #[arg(long, global = true, value_name = "NAME")]
    pub demo: Option<String>,
    /// Search box `LO..HI`, e.g. `0,0..10,5`.
    #[arg(
        long = "box",
        global = true,
        value_name = "LO..HI",
        allow_hyphen_values = true
    )]
    pub search_box: Option<String>,
    /// Degree, e.g. `1,1`.
    #[arg(long, global = true, value_name = "D", allow_hyphen_values = true)]
    pub degree: Option<String>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Command {
    /// Minimal free resolution: ranks and Betti table.
    Resolve,
    /// Degrees of each Tor module.
    SupportTor,
    /// Minimal degrees with a linear truncation.
    LinearTruncations,
    /// Betti-number bounds and regularities.
    Bounds,
    /// Minimal presentation of a truncation and its linearity.
    Truncate,
    /// Frontier search with an evaluation count.
    FindRegion {
        #[arg(long, value_enum, default_value_t = StrategyArg::Sequential)]
        strategy: StrategyArg,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyArg {
    Sequential,
    Parallel,
}

fn parse_degree(s: &str) -> Result<Multidegree, CliError> {
    let body = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    body.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(Multidegree::new)
        .map_err(|_| CliError::Parse(format!("bad degree {s:?}, expected e.g. 1,2")))
}

fn parse_box(s: &str) -> Result<(Multidegree, Multidegree), CliError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| CliError::Parse(format!("bad box {s:?}, expected LO..HI")))?;
    Ok((parse_degree(lo)?, parse_degree(hi)?))
}

/// Parses `args` (including the program name), runs the command and writes
/// its output.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            write!(out, "{e}").map_err(io_err)?;
            return Ok(());
        }
        Err(e) => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ")
                .to_string();
            return Err(CliError::Parse(first));
        }
    };
    let text = execute(&cli)?;
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

fn load_job(cli: &Cli) -> Result<Job, CliError> {
    let mut job = match (&cli.job, &cli.demo) {
        (Some(_), Some(_)) => return Err(CliError::Parse("--job and --demo are exclusive".into())),
        (None, None) => return Err(CliError::Parse("one of --job or --demo is required".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            JobFile::from_json(&text)?.load()?
        }
        (None, Some(name)) => {
            let m = demos::by_name(name).ok_or_else(|| {
                CliError::Parse(format!(
                    "unknown demo {name:?}, expected one of {}",
                    demos::NAMES.join(", ")
                ))
            })?;
            Job {
                ring: m.ring().clone(),
                module: m,
                search_box: None,
                degree: None,
            }
        }
    };
    if let Some(b) = &cli.search_box {
        let (lo, hi) = parse_box(b)?;
        job.ring.check_degree(&lo)?;
        job.search_box = Some(DegreeBox::new(lo, hi)?);
    }
    if let Some(d) = &cli.degree {
        let d = parse_degree(d)?;
        job.ring.check_degree(&d)?;
        job.degree = Some(d);
    }
    Ok(job)
}

#[derive(Serialize)]
struct BettiEntry<'a> {
    degree: &'a Multidegree,
    count: usize,
}

#[derive(Serialize)]
struct ResolveOut<'a> {
    ranks: Vec<usize>,
    betti: Vec<Vec<BettiEntry<'a>>>,
    regularity: Option<i64>,
}

#[derive(Serialize)]
struct BoundsOut {
    linear_truncations_bound: Region,
    regularity_bound: Region,
    partial_regularities: Option<Multidegree>,
    regularity: Option<i64>,
}

#[derive(Serialize)]
struct TruncateOut {
    degree: Multidegree,
    target_twists: Vec<Multidegree>,
    source_twists: Vec<Multidegree>,
    entries: Vec<Vec<String>>,
    linear: bool,
}

#[derive(Serialize)]
struct SearchOut {
    #[serde(rename = "box")]
    search_box: Option<BoxDesc>,
    region: Region,
    evaluations: usize,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Ranks as a full sequence including the rank of `F_0` even when zero.
fn betti_by_index(b: &BettiTable) -> Vec<Vec<BettiEntry<'_>>> {
    let mut out: Vec<Vec<BettiEntry>> = (0..b.len()).map(|_| Vec::new()).collect();
    for (i, d, n) in b.entries() {
        out[i].push(BettiEntry {
            degree: d,
            count: n,
        });
    }
    for step in &mut out {
        step.reverse();
    }
    out
}

fn fmt_region(r: &Region) -> String {
    if r.is_whole() {
        return "all degrees\n".into();
    }
    let gens: Vec<String> = r.gens().iter().map(|g| g.to_string()).collect();
    format!("{{{}}}\n", gens.join(", "))
}

fn strategy_of(s: StrategyArg) -> Result<Strategy, CliError> {
    match s {
        StrategyArg::Sequential => Ok(Strategy::Sequential),
        #[cfg(feature = "parallel")]
        StrategyArg::Parallel => Ok(Strategy::Parallel),
        #[cfg(not(feature = "parallel"))]
        StrategyArg::Parallel => Err(CliError::Validation(
            "built without the parallel feature".into(),
        )),
    }
}

/// Runs a parsed command and returns its output text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let job = load_job(cli)?;
    let m = &job.module;
    let out = match cli.command {
        Command::Resolve => {
            let b = m.betti();
            if cli.pretty {
                let ranks: Vec<String> = b.ranks().iter().map(|r| r.to_string()).collect();
                format!("ranks: {}\n{}", ranks.join(" "), b.render())
            } else {
                json(&ResolveOut {
                    ranks: b.ranks(),
                    betti: betti_by_index(b),
                    regularity: b.total_regularity(),
                })
            }
        }
        Command::SupportTor => {
            let b = m.betti();
            let support: Vec<Vec<Multidegree>> = (0..b.len()).map(|i| b.degrees(i)).collect();
            if cli.pretty {
                let mut s = String::new();
                for (i, ds) in support.iter().enumerate() {
                    let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                    writeln!(s, "{i}: {}", ds.join(" ")).unwrap();
                }
                s
            } else {
                json(&support)
            }
        }
        Command::LinearTruncations => {
            let region = regions::linear_truncations(m, job.search_box.as_ref())?;
            if cli.pretty {
                fmt_region(&region)
            } else {
                json(&region)
            }
        }
        Command::Bounds => {
            let b = m.betti();
            let o = BoundsOut {
                linear_truncations_bound: regions::linear_truncations_bound(m),
                regularity_bound: regions::regularity_bound(m),
                partial_regularities: b.partial_regularities(),
                regularity: b.total_regularity(),
            };
            if cli.pretty {
                let mut s = String::new();
                write!(
                    s,
                    "linear truncations bound: {}",
                    fmt_region(&o.linear_truncations_bound)
                )
                .unwrap();
                write!(s, "regularity bound: {}", fmt_region(&o.regularity_bound)).unwrap();
                let pr = o
                    .partial_regularities
                    .as_ref()
                    .map_or("none".into(), |d| d.to_string());
                writeln!(s, "partial regularities: {pr}").unwrap();
                let reg = o.regularity.map_or("none".into(), |r| r.to_string());
                writeln!(s, "regularity: {reg}").unwrap();
                s
            } else {
                json(&o)
            }
        }
        Command::Truncate => {
            let d = job
                .degree
                .clone()
                .ok_or_else(|| CliError::Parse("truncate needs --degree or a job degree".into()))?;
            let t = truncate(&d, m)?;
            let linear = has_linear_truncation(m, &d)?;
            let p = t.presentation();
            let o = TruncateOut {
                degree: d,
                target_twists: p.target().twists().to_vec(),
                source_twists: p.source().twists().to_vec(),
                entries: render_rows(p),
                linear,
            };
            if cli.pretty {
                let mut s = String::new();
                let tw = |v: &[Multidegree]| {
                    v.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(s, "generators: {}", tw(&o.target_twists)).unwrap();
                writeln!(s, "relations: {}", tw(&o.source_twists)).unwrap();
                for row in &o.entries {
                    writeln!(s, "  [{}]", row.join(", ")).unwrap();
                }
                writeln!(s, "linear: {}", o.linear).unwrap();
                s
            } else {
                json(&o)
            }
        }
        Command::FindRegion { strategy } => {
            let bx = match &job.search_box {
                Some(b) => Some(b.clone()),
                None => regions::default_box(m),
            };
            let search = match &bx {
                Some(b) => regions::linear_truncations_search(
                    m,
                    Some(b),
                    &Seeds::default(),
                    strategy_of(strategy)?,
                )?,
                None => regions::Search {
                    region: Region::empty(m.ring().r()),
                    evaluations: 0,
                },
            };
            let o = SearchOut {
                search_box: bx.map(|b| BoxDesc {
                    lo: b.lo().clone(),
                    hi: b.hi().clone(),
                }),
                region: search.region,
                evaluations: search.evaluations,
            };
            if cli.pretty {
                let bs = o
                    .search_box
                    .as_ref()
                    .map_or("none".into(), |b| format!("{}..{}", b.lo, b.hi));
                format!(
                    "box: {bs}\nevaluations: {}\nregion: {}",
                    o.evaluations,
                    fmt_region(&o.region)
                )
            } else {
                json(&o)
            }
        }
    };
    Ok(out)
}

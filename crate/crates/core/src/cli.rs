//! Command-line interface. Artifacts go to standard output (or a file),
//! progress and errors to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bf_core::{parse_fn, BoolFn, Closure, MinorMap, NamedClass, TuplePoint};
use crate::clonoid::presets::parse_generators;
use crate::clonoid::{
    decompose_via_mcuk, preset, semibisectable, shared_enumeration, stability_check, theta_right_stability,
    CheckOptions, ClonoidDescriptor, Meet, Side, Verdict,
};
use crate::error::Error;
use crate::lattice::{all_ideals, closed_ideals, ideal_lattice_dot, ideals_via_filters};
use crate::poset::{label_listed_names, shared_poset};

/// Environment variable naming the directory for artifacts when no
/// `--output` is given.
pub const OUTPUT_DIR_ENV: &str = "CLONOIDS_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "clonoids",
    version,
    about = "Minorant-minor posets, ideal lattices, and clonoid enumeration"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for the exhaustive stability loops.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Seed for sampled stability checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the artifact to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Default directory for artifacts.
    #[arg(long, env = OUTPUT_DIR_ENV, global = true, hide_env_values = true)]
    pub output_dir: Option<PathBuf>,
    /// Allow rank 4, which has no published ground truth.
    #[arg(long, global = true)]
    pub experimental: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on single functions.
    #[command(subcommand, name = "fn")]
    Fn(FnCommand),
    /// Build the minorant-minor poset.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Count, list, and filter order ideals.
    #[command(subcommand)]
    Ideals(IdealsCommand),
    /// Enumerate clonoids, their covers, and membership.
    #[command(subcommand)]
    Clonoids(ClonoidsCommand),
    /// Semibisectability and decomposition.
    #[command(subcommand)]
    Semibisect(SemibisectCommand),
    /// Bounded stability checks against a clone.
    #[command(subcommand)]
    Stability(StabilityCommand),
    /// Same as `clonoids member`.
    Member(MemberArgs),
}

#[derive(Debug, Subcommand)]
pub enum FnCommand {
    /// Value at a tuple such as `101`.
    Eval {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        point: String,
    },
    /// Minor along a one-based map such as `1,1,2`.
    Minor {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        map: String,
        /// Target arity; defaults to the largest map entry.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// `f(g1, ..., gn)`.
    Compose {
        #[arg(long = "fn")]
        f: String,
        /// Comma-separated inner functions of a common arity.
        #[arg(long)]
        inner: String,
    },
    /// Closure under one of XI, IX, M, Mneg, R.
    Closure {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        closure: Closure,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub k: u8,
}

#[derive(Debug, Subcommand)]
pub enum PosetCommand {
    /// Classes of functions with at most k true points and their order.
    Build {
        #[command(flatten)]
        rank: RankArgs,
        /// Quotient by one of the closed orders.
        #[arg(long)]
        closure: Option<Closure>,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealsCommand {
    Count {
        #[command(flatten)]
        rank: RankArgs,
        /// Count through filters as well and require agreement.
        #[arg(long)]
        cross_check: bool,
    },
    List {
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Ideals closed under the given closure.
    Closed {
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long)]
        closure: Closure,
    },
}

#[derive(Debug, Clone, Args)]
pub struct MemberArgs {
    #[command(flatten)]
    pub rank: RankArgs,
    /// Comma-separated poset elements generating Θ, e.g. `id,plus`.
    #[arg(long, default_value = "")]
    pub theta: String,
    /// Intersect with one of the meet classes.
    #[arg(long)]
    pub meet: Option<String>,
    /// A fixed class instead of `K_k(Θ)`.
    #[arg(long, conflicts_with_all = ["theta", "meet"])]
    pub named: Option<String>,
    #[arg(long = "fn")]
    pub f: String,
}

#[derive(Debug, Clone, Args)]
pub struct DescriptorArgs {
    #[command(flatten)]
    pub rank: RankArgs,
    #[arg(long, default_value = "")]
    pub theta: String,
    #[arg(long)]
    pub meet: Option<String>,
    #[arg(long, conflicts_with_all = ["theta", "meet"])]
    pub named: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum ClonoidsCommand {
    /// All clonoids of rank k, deduplicated, with aliases and lower covers.
    Enumerate {
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Lower covers of one clonoid.
    Covers(DescriptorArgs),
    Member(MemberArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SemibisectArgs {
    #[arg(long = "fn")]
    pub f: String,
    /// Comma-separated generators.
    #[arg(long)]
    pub gens: String,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum SemibisectCommand {
    Check(SemibisectArgs),
    Decompose(SemibisectArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CloneArgs {
    /// Clone preset, e.g. `OX`, `McU2`.
    #[arg(long, required_unless_present = "gens")]
    pub clone: Option<String>,
    /// Explicit generators instead of a preset.
    #[arg(long, conflicts_with = "clone")]
    pub gens: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub arity_cap: usize,
    /// Compositions per generator and arity before sampling.
    #[arg(long, default_value_t = 1 << 25)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum StabilityCommand {
    /// `C K ⊆ K` for a registry class `K`.
    Left {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        clone: CloneArgs,
    },
    /// `K C ⊆ K` for a registry class `K`.
    Right {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        clone: CloneArgs,
    },
    /// `K_k(Θ) C ⊆ K_k(Θ)` through the minorant-minors of `Θ C`.
    ThetaRight {
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long)]
        theta: String,
        #[command(flatten)]
        clone: CloneArgs,
    },
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k: Option<usize>,
    pub closure: Option<Closure>,
    pub arity_cap: Option<usize>,
    pub format: Format,
    pub jobs: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub experimental: bool,
}

/// Failure of a command, with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit status 2.
    Usage(String),
    /// The computation failed: exit status 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity(_) | Error::Consistency(_) => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn progress(msg: &str) {
    eprintln!("[clonoids] {msg}");
}

impl RunConfig {
    fn rank(&self, rank: &RankArgs) -> CliResult<usize> {
        let k = rank.k as usize;
        if k == 4 && !self.experimental {
            return Err(CliError::Usage("k = 4 is experimental and needs --experimental".into()));
        }
        Ok(k)
    }

    fn no_dot(&self, what: &str) -> CliResult<()> {
        if self.format == Format::Dot {
            return Err(CliError::Usage(format!("{what} has no DOT output")));
        }
        Ok(())
    }
}

fn json(v: &impl serde::Serialize) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Compute(e.to_string()))
}

fn descriptor(k: usize, theta: &str, meet: Option<&str>, named: Option<&str>) -> CliResult<ClonoidDescriptor> {
    if let Some(n) = named {
        return Ok(ClonoidDescriptor::Named(n.parse::<NamedClass>()?));
    }
    let t = crate::clonoid::parse_theta(k, theta)?;
    Ok(match meet {
        Some(m) => ClonoidDescriptor::KlikMeet(t, m.parse::<Meet>()?),
        None => ClonoidDescriptor::Klik(t),
    })
}

fn bool_text(cfg: &RunConfig, value: bool) -> CliResult<String> {
    cfg.no_dot("a yes/no answer")?;
    Ok(match cfg.format {
        Format::Json => format!("{value}\n"),
        _ => format!("{value}\n"),
    })
}

fn fn_text(cfg: &RunConfig, f: &BoolFn) -> CliResult<String> {
    cfg.no_dot("a function")?;
    Ok(match cfg.format {
        Format::Json => json(f)?,
        _ => format!("{f}\n"),
    })
}

fn verdict_text(cfg: &RunConfig, v: &Verdict) -> CliResult<String> {
    cfg.no_dot("a stability verdict")?;
    if cfg.format == Format::Json {
        return json(v);
    }
    Ok(match v {
        Verdict::Pass { exhaustive, checked } => {
            format!("pass ({checked} compositions, exhaustive up to the cap: {exhaustive})\n")
        }
        Verdict::Fail { counterexample } => format!("fail: {}\n", counterexample.description),
        Verdict::Inconclusive { checked, reason } => format!("inconclusive after {checked}: {reason}\n"),
    })
}

fn clone_of(args: &CloneArgs) -> CliResult<crate::clonoid::ClonePreset> {
    match (&args.clone, &args.gens) {
        (Some(name), _) => Ok(preset(name)?),
        (None, Some(list)) => Ok(crate::clonoid::ClonePreset {
            name: "custom".into(),
            generators: parse_generators(list)?,
            predicate: "All".parse()?,
        }),
        (None, None) => Err(CliError::Usage("give --clone or --gens".into())),
    }
}

fn check_options(cfg: &RunConfig, args: &CloneArgs) -> CliResult<CheckOptions> {
    if args.arity_cap == 0 || args.arity_cap > 4 {
        return Err(CliError::Usage(format!(
            "--arity-cap must be in 1..=4, got {}",
            args.arity_cap
        )));
    }
    Ok(CheckOptions {
        arity_cap: args.arity_cap,
        budget: args.budget,
        seed: cfg.seed,
        jobs: cfg.jobs.max(1),
    })
}

fn member_command(cfg: &RunConfig, m: &MemberArgs) -> CliResult<String> {
    let k = cfg.rank(&m.rank)?;
    let d = descriptor(k, &m.theta, m.meet.as_deref(), m.named.as_deref())?;
    d.validate()?;
    let f = parse_fn(&m.f)?;
    bool_text(cfg, d.member(&f))
}

/// Runs one parsed command and returns the artifact together with a file stem
/// used when writing to the output directory.
pub fn execute(cli: &Cli) -> CliResult<(String, &'static str)> {
    let cfg = RunConfig {
        k: None,
        closure: None,
        arity_cap: None,
        format: cli.format,
        jobs: cli.jobs,
        seed: cli.seed,
        output: cli.output.clone(),
        experimental: cli.experimental,
    };
    let out = match &cli.command {
        Command::Fn(c) => match c {
            FnCommand::Eval { f, point } => {
                let f = parse_fn(f)?;
                let p: TuplePoint = point.parse()?;
                (
                    bool_text(&cfg, f.eval(&p)?)?.replace("true", "1").replace("false", "0"),
                    "eval",
                )
            }
            FnCommand::Minor { f, map, arity } => {
                let f = parse_fn(f)?;
                let entries: Vec<usize> = map
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::MalformedTuple(map.clone())))
                    .collect::<crate::Result<_>>()?;
                let target = arity.unwrap_or_else(|| entries.iter().copied().max().unwrap_or(1));
                let mm = MinorMap::new(target, &entries)?;
                (fn_text(&cfg, &f.minor(&mm)?)?, "minor")
            }
            FnCommand::Compose { f, inner } => {
                let f = parse_fn(f)?;
                let inner = parse_generators(inner)?;
                (fn_text(&cfg, &f.compose(&inner)?)?, "compose")
            }
            FnCommand::Closure { f, closure } => (fn_text(&cfg, &parse_fn(f)?.closure(*closure))?, "closure"),
        },
        Command::Poset(PosetCommand::Build { rank, closure }) => {
            let k = cfg.rank(rank)?;
            let start = Instant::now();
            let p = shared_poset(k, *closure)?;
            if closure.is_none() && k <= 3 {
                label_listed_names(&p)?;
            }
            progress(&format!(
                "poset with {} classes built in {:.2?}",
                p.len(),
                start.elapsed()
            ));
            let text = match cfg.format {
                Format::Dot => p.to_dot(),
                Format::Json => json(&p.to_json())?,
                Format::Text => {
                    let mut s = String::new();
                    for (i, e) in p.elements().iter().enumerate() {
                        s += &format!("{i}\t{}\t{}\t{}\n", p.display_name(i), e.table, e.true_points.join(" "));
                    }
                    for &(a, b) in p.covers() {
                        s += &format!("{} < {}\n", p.display_name(a), p.display_name(b));
                    }
                    s
                }
            };
            (text, "poset")
        }
        Command::Ideals(c) => match c {
            IdealsCommand::Count { rank, cross_check } => {
                cfg.no_dot("a count")?;
                let k = cfg.rank(rank)?;
                let p = shared_poset(k, None)?;
                let start = Instant::now();
                let n = all_ideals(&p)?.len();
                progress(&format!("{n} ideals in {:.2?}", start.elapsed()));
                if *cross_check {
                    let m = ideals_via_filters(&p)?.len();
                    if m != n {
                        return Err(CliError::Compute(format!("{n} ideals directly, {m} through filters")));
                    }
                }
                let text = match cfg.format {
                    Format::Json => json(&serde_json::json!({ "k": k, "ideals": n }))?,
                    _ => format!("{n}\n"),
                };
                (text, "ideal-count")
            }
            IdealsCommand::List { rank } => {
                let k = cfg.rank(rank)?;
                let p = shared_poset(k, None)?;
                let ideals = all_ideals(&p)?;
                let text = match cfg.format {
                    Format::Dot => ideal_lattice_dot(&ideals),
                    Format::Json => json(&ideals.iter().map(|i| i.to_json()).collect::<Vec<_>>())?,
                    Format::Text => ideals.iter().map(|i| format!("{i}\n")).collect(),
                };
                (text, "ideals")
            }
            IdealsCommand::Closed { rank, closure } => {
                let k = cfg.rank(rank)?;
                let p = shared_poset(k, None)?;
                let ideals = closed_ideals(&p, *closure, k)?;
                progress(&format!("{} {closure}-closed ideals", ideals.len()));
                let text = match cfg.format {
                    Format::Dot => ideal_lattice_dot(&ideals),
                    Format::Json => json(&ideals.iter().map(|i| i.to_json()).collect::<Vec<_>>())?,
                    Format::Text => ideals.iter().map(|i| format!("{i}\n")).collect(),
                };
                (text, "closed-ideals")
            }
        },
        Command::Clonoids(c) => match c {
            ClonoidsCommand::Enumerate { rank } => {
                let k = cfg.rank(rank)?;
                let start = Instant::now();
                let e = shared_enumeration(k)?;
                progress(&format!("{} clonoids in {:.2?}", e.len(), start.elapsed()));
                for d in &e.diagnostics {
                    progress(&format!("diagnostic: {d}"));
                }
                let text = match cfg.format {
                    Format::Dot => e.to_dot()?,
                    Format::Json => json(&e.to_json()?)?,
                    Format::Text => {
                        let mut s = String::new();
                        for c in &e.clonoids {
                            let covers: Vec<String> = e.lower_covers(c.id)?.iter().map(|&j| j.to_string()).collect();
                            s += &format!(
                                "{}\t{}\t{}\tcovers: {}\n",
                                c.id,
                                c.names.join("="),
                                c.descriptor,
                                covers.join(",")
                            );
                        }
                        s
                    }
                };
                (text, "clonoids")
            }
            ClonoidsCommand::Covers(a) => {
                cfg.no_dot("a cover list")?;
                let k = cfg.rank(&a.rank)?;
                let d = descriptor(k, &a.theta, a.meet.as_deref(), a.named.as_deref())?;
                let e = shared_enumeration(k)?;
                let i = e
                    .index_of(&d)?
                    .ok_or_else(|| CliError::Usage(format!("{d} is not a clonoid of rank {k}")))?;
                let covers = e.lower_covers(i)?;
                let text = match cfg.format {
                    Format::Json => json(
                        &covers
                            .iter()
                            .map(|&j| serde_json::json!({ "descriptor": e.clonoids[j].descriptor, "names": e.clonoids[j].names }))
                            .collect::<Vec<_>>(),
                    )?,
                    _ => covers
                        .iter()
                        .map(|&j| format!("{}\t{}\n", e.clonoids[j].display_name(), e.clonoids[j].descriptor))
                        .collect(),
                };
                (text, "covers")
            }
            ClonoidsCommand::Member(m) => (member_command(&cfg, m)?, "member"),
        },
        Command::Member(m) => (member_command(&cfg, m)?, "member"),
        Command::Semibisect(c) => match c {
            SemibisectCommand::Check(a) => {
                let f = parse_fn(&a.f)?;
                let gens = parse_generators(&a.gens)?;
                (bool_text(&cfg, semibisectable(&f, &gens, a.k)?)?, "semibisect")
            }
            SemibisectCommand::Decompose(a) => {
                cfg.no_dot("a decomposition")?;
                let f = parse_fn(&a.f)?;
                let gens = parse_generators(&a.gens)?;
                let d = decompose_via_mcuk(&f, &gens, a.k)?;
                let text = match cfg.format {
                    Format::Json => json(&d)?,
                    _ => {
                        let inner: Vec<String> = d.inner.iter().map(|g| g.to_string()).collect();
                        format!("h = {}\ninner = {}\n", d.h, inner.join(","))
                    }
                };
                (text, "decomposition")
            }
        },
        Command::Stability(c) => {
            let (verdict, stem) = match c {
                StabilityCommand::Left { class, clone } | StabilityCommand::Right { class, clone } => {
                    let side = if matches!(c, StabilityCommand::Left { .. }) {
                        Side::Left
                    } else {
                        Side::Right
                    };
                    let k: NamedClass = class.parse()?;
                    let opts = check_options(&cfg, clone)?;
                    let pred = |f: &BoolFn| k.member(f);
                    (stability_check(&pred, side, &clone_of(clone)?, &opts)?, "stability")
                }
                StabilityCommand::ThetaRight { rank, theta, clone } => {
                    let k = cfg.rank(rank)?;
                    let t = crate::clonoid::parse_theta(k, theta)?;
                    let opts = check_options(&cfg, clone)?;
                    (theta_right_stability(&t, &clone_of(clone)?, &opts)?, "theta-stability")
                }
            };
            (verdict_text(&cfg, &verdict)?, stem)
        }
    };
    Ok(out)
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Text => "txt",
        Format::Json => "json",
        Format::Dot => "dot",
    }
}

/// Parses `args`, runs the command, and writes the artifact to `out` unless
/// a file destination is configured. Returns the exit status.
pub fn run_with_output<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, stem)) => {
            let target = cli.output.clone().or_else(|| {
                cli.output_dir
                    .as_ref()
                    .map(|d| d.join(format!("{stem}.{}", extension(cli.format))))
            });
            let written = match target {
                Some(path) => std::fs::write(&path, &text).map(|_| progress(&format!("wrote {}", path.display()))),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with_output(std::env::args_os(), &mut lock)
}

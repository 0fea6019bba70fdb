//! Argument parsing, file IO and output rendering.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use transdom_core::paley::PARADOX_BUDGET;
use transdom_core::solvers::{DominationMethod, DEFAULT_EXACT_CEILING};
use transdom_core::vcnets::{ShatterMode, Variant, SHATTER_BUDGET};
use transdom_core::{Hypergraph, Tournament};

use crate::commands::{self, DomMethod, EnclMethod, Outcome, ShatterQuery};
use crate::format;
use crate::gen;
use crate::report::{InputDigest, RunReport};
use crate::{exit, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "transdom",
    version,
    about = "Domination, enclosure and box covers for transitively colored tournaments"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Upper bound on worker threads. Commands currently run single-threaded.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnclosureMethod {
    Exact,
    Scramblings,
    GreedyScramblings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Cube,
    Halved,
    Refined,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Cube => Variant::Cube,
            VariantArg::Halved => Variant::Halved,
            VariantArg::Refined => Variant::Refined,
        }
    }
}

/// Where a hypergraph comes from: the domination hypergraph of a tournament
/// file, of a Paley tournament, or of a scrambled coordinate tournament.
#[derive(Debug, Args)]
pub struct HypergraphSource {
    /// Tournament file.
    pub file: Option<PathBuf>,
    /// Use the Paley tournament on this many vertices.
    #[arg(long, conflicts_with_all = ["file", "points"])]
    pub q: Option<u64>,
    /// Point file; the coordinate tournament scrambled by --mask is used.
    #[arg(long, conflicts_with = "file")]
    pub points: Option<PathBuf>,
    /// Scrambling mask, bit i-1 reversing color i.
    #[arg(long, default_value_t = 0, requires = "points")]
    pub mask: u64,
    #[arg(long, requires = "points")]
    pub relabel: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum (or greedy) dominating set of a tournament.
    Dom {
        file: PathBuf,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        /// Give up once no set of this size exists.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Enclosure set of a colored tournament.
    Encl {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EnclosureMethod::Scramblings)]
        method: EnclosureMethod,
    },
    /// Reverse the listed color classes of a colored tournament.
    Scramble {
        file: PathBuf,
        /// Colors to reverse, comma separated.
        #[arg(long, value_delimiter = ',')]
        colors: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the scramblings of a coordinate tournament and their classes.
    Classify {
        file: PathBuf,
        #[arg(long)]
        relabel: bool,
    },
    /// Box cover of a point set from dominating sets of all scramblings.
    Boxcover {
        /// Point file; omit to use --random.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolveMethod::Exact)]
        method: SolveMethod,
        #[arg(long)]
        relabel: bool,
        /// Generate this many seeded random points instead of reading a file.
        #[arg(long, conflicts_with = "file", requires = "dim")]
        random: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        /// Above this many points the exact solver falls back to greedy.
        #[arg(long, default_value_t = 512)]
        exact_ceiling: usize,
    },
    /// Net-size feasibility arithmetic for parity tournaments.
    Appendix {
        #[arg(long, required_unless_present = "scan")]
        a: Option<u64>,
        #[arg(long, required_unless_present = "scan")]
        b: Option<u64>,
        #[arg(long, value_enum, default_value_t = VariantArg::Refined)]
        variant: VariantArg,
        /// Tabulate every a, b up to --max-a, --max-b.
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 40)]
        max_a: u64,
        #[arg(long, default_value_t = 40)]
        max_b: u64,
    },
    /// Paley tournament on q vertices.
    Paley {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the degree and discrepancy argument against a colored Paley tournament.
    Refute { file: PathBuf },
    /// Decide whether no k vertices dominate.
    Paradoxical {
        #[command(flatten)]
        source: TournamentSource,
        #[arg(long)]
        k: usize,
    },
    /// Search for a transitive k-coloring.
    Colorsearch {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colored tournament of a permutation file.
    Permutation {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a permutation back from a transitive 2-coloring.
    Recover {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Majority tournament of an odd profile of orders.
    Majority {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// VC dimension of a domination hypergraph, optionally with a shatter count.
    Vc {
        #[command(flatten)]
        source: HypergraphSource,
        /// Evaluate the shatter function at this size.
        #[arg(long)]
        shatter: Option<usize>,
        /// Count only traces of this size.
        #[arg(long, requires = "shatter")]
        trace: Option<usize>,
        /// Estimate from this many random subsets instead of enumerating.
        #[arg(long, requires = "shatter")]
        sampled: Option<u64>,
    },
    /// Fractional transversal number and an optimal dual matching.
    Lp {
        #[command(flatten)]
        source: HypergraphSource,
        /// Floating-point simplex instead of exact rationals.
        #[arg(long)]
        approx: bool,
    },
    /// Sample nets from the optimal fractional transversal.
    Epsnet {
        #[command(flatten)]
        source: HypergraphSource,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Point set with no point inside the box of two others.
    Extremal {
        #[arg(long)]
        d: usize,
        /// Search for this many points instead of using the built-in set.
        #[arg(long)]
        search: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct TournamentSource {
    pub file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub q: Option<u64>,
}

/// Result of one invocation: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Session {
    digest: InputDigest,
}

impl Session {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|error| CliError::Io {
            path: path.display().to_string(),
            error,
        })?;
        self.digest.add("file", text.as_bytes());
        Ok(text)
    }

    fn parsed<T>(
        &mut self,
        path: &Path,
        parse: impl FnOnce(&str) -> Result<T, format::ParseError>,
    ) -> Result<T, CliError> {
        let text = self.read(path)?;
        parse(&text).map_err(|error| CliError::Parse {
            path: path.display().to_string(),
            error,
        })
    }

    fn tournament(&mut self, path: &Path) -> Result<Tournament, CliError> {
        self.parsed(path, format::parse_tournament)
    }

    fn points(
        &mut self,
        path: &Path,
        relabel: bool,
    ) -> Result<transdom_core::geometry::PointSet, CliError> {
        let text = self.read(path)?;
        format::parse_points(&text, relabel).map_err(|e| match e {
            CliError::Parse { error, .. } => CliError::Parse {
                path: path.display().to_string(),
                error,
            },
            other => other,
        })
    }

    fn hypergraph(&mut self, src: &HypergraphSource) -> Result<Hypergraph, CliError> {
        match (&src.file, src.q, &src.points) {
            (Some(f), _, _) => Ok(self.tournament(f)?.domination_hypergraph()),
            (_, Some(q), _) => Ok(commands::paley_input(q)?.domination_hypergraph()),
            (_, _, Some(p)) => {
                let s = self.points(p, src.relabel)?;
                commands::scrambling_hypergraph(&s, src.mask)
            }
            _ => Err(CliError::Usage(
                "give a tournament file, --q or --points".into(),
            )),
        }
    }
}

fn write_out(path: &Option<PathBuf>, out: &Outcome) -> Result<(), CliError> {
    if let (Some(path), Some(text)) = (path, &out.artifact) {
        std::fs::write(path, text).map_err(|error| CliError::Io {
            path: path.display().to_string(),
            error,
        })?;
    }
    Ok(())
}

/// The seed a randomized command uses when none is given.
pub const DEFAULT_SEED: u64 = 0;

fn dispatch(cli: &Cli, session: &mut Session) -> Result<(Outcome, Option<u64>), CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let budget = cli.budget;
    let out = match &cli.command {
        Command::Dom {
            file,
            greedy,
            limit,
            ..
        } => {
            let t = session.tournament(file)?;
            let method = if *greedy {
                DomMethod::Greedy
            } else {
                DomMethod::Exact
            };
            commands::dom(&t, method, *limit, DEFAULT_EXACT_CEILING)?
        }
        Command::Encl { file, method } => {
            let ct = session.parsed(file, format::parse_colored)?;
            let m = match method {
                EnclosureMethod::Exact => EnclMethod::Exact,
                EnclosureMethod::Scramblings => EnclMethod::Scramblings,
                EnclosureMethod::GreedyScramblings => EnclMethod::GreedyScramblings,
            };
            commands::encl(&ct, m)?
        }
        Command::Scramble { file, colors, out } => {
            let ct = session.parsed(file, format::parse_colored)?;
            let o = commands::scramble(&ct, colors)?;
            write_out(out, &o)?;
            o
        }
        Command::Classify { file, relabel } => {
            commands::classify(&session.points(file, *relabel)?)?
        }
        Command::Boxcover {
            file,
            method,
            relabel,
            random,
            dim,
            exact_ceiling,
        } => {
            let s = match (file, random) {
                (Some(f), _) => session.points(f, *relabel)?,
                (None, Some(n)) => {
                    let d = dim.expect("clap enforces --dim with --random");
                    if *n == 0 || d == 0 {
                        return Err(CliError::Usage(
                            "--random and --dim must be positive".into(),
                        ));
                    }
                    let s = gen::random_points(&mut gen::rng(seed), *n, d);
                    return commands::boxcover(&s, domination_method(*method), *exact_ceiling)
                        .map(|o| (o, Some(seed)));
                }
                (None, None) => {
                    return Err(CliError::Usage("give a point file or --random".into()))
                }
            };
            commands::boxcover(&s, domination_method(*method), *exact_ceiling)?
        }
        Command::Appendix {
            a,
            b,
            variant,
            scan,
            max_a,
            max_b,
        } => {
            if *scan {
                commands::appendix_table(*max_a, *max_b, (*variant).into())?
            } else {
                let (a, b) = (a.expect("clap requires --a"), b.expect("clap requires --b"));
                commands::appendix(a, b, (*variant).into())?
            }
        }
        Command::Paley { q, out } => {
            let o = commands::paley(*q)?;
            write_out(out, &o)?;
            o
        }
        Command::Refute { file } => {
            commands::refute(&session.parsed(file, format::parse_colored)?)?
        }
        Command::Paradoxical { source, k } => {
            let t = match (&source.file, source.q) {
                (Some(f), _) => session.tournament(f)?,
                (None, Some(q)) => commands::paley_input(q)?,
                (None, None) => {
                    return Err(CliError::Usage("give a tournament file or --q".into()))
                }
            };
            commands::paradoxical(&t, *k, budget.unwrap_or(PARADOX_BUDGET))?
        }
        Command::Colorsearch { file, k, out } => {
            let t = session.tournament(file)?;
            let o = commands::colorsearch(
                &t,
                *k,
                budget.unwrap_or(transdom_core::colorsearch::DEFAULT_COLOR_BUDGET),
            )?;
            write_out(out, &o)?;
            o
        }
        Command::Permutation { file, out } => {
            let o = commands::permutation(&session.parsed(file, format::parse_permutation)?)?;
            write_out(out, &o)?;
            o
        }
        Command::Recover { file, out } => {
            let o = commands::recover(&session.parsed(file, format::parse_colored)?)?;
            write_out(out, &o)?;
            o
        }
        Command::Majority { file, out } => {
            let o = commands::majority(&session.parsed(file, format::parse_orders)?)?;
            write_out(out, &o)?;
            o
        }
        Command::Vc {
            source,
            shatter,
            trace,
            sampled,
        } => {
            let h = session.hypergraph(source)?;
            let query = shatter.map(|size| ShatterQuery {
                size,
                trace: *trace,
                mode: match sampled {
                    Some(trials) => ShatterMode::Sampled {
                        seed,
                        trials: *trials,
                    },
                    None => ShatterMode::Exact {
                        budget: budget.unwrap_or(SHATTER_BUDGET),
                    },
                },
            });
            let o = commands::vc(&h, query)?;
            if sampled.is_some() {
                return Ok((o, Some(seed)));
            }
            o
        }
        Command::Lp { source, approx } => commands::lp(&session.hypergraph(source)?, !approx)?,
        Command::Epsnet {
            source,
            a,
            b,
            trials,
        } => {
            let h = session.hypergraph(source)?;
            return commands::epsnet(&h, *a, *b, *trials, seed).map(|o| (o, Some(seed)));
        }
        Command::Extremal { d, search, out } => {
            let o = commands::extremal(*d, *search, seed, budget.unwrap_or(10_000_000))?;
            write_out(out, &o)?;
            return Ok((o, search.map(|_| seed)));
        }
    };
    Ok((out, None))
}

fn domination_method(m: SolveMethod) -> DominationMethod {
    match m {
        SolveMethod::Exact => DominationMethod::Exact,
        SolveMethod::Greedy => DominationMethod::Greedy,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dom { .. } => "dom",
        Command::Encl { .. } => "encl",
        Command::Scramble { .. } => "scramble",
        Command::Classify { .. } => "classify",
        Command::Boxcover { .. } => "boxcover",
        Command::Appendix { .. } => "appendix",
        Command::Paley { .. } => "paley",
        Command::Refute { .. } => "refute",
        Command::Paradoxical { .. } => "paradoxical",
        Command::Colorsearch { .. } => "colorsearch",
        Command::Permutation { .. } => "permutation",
        Command::Recover { .. } => "recover",
        Command::Majority { .. } => "majority",
        Command::Vc { .. } => "vc",
        Command::Lp { .. } => "lp",
        Command::Epsnet { .. } => "epsnet",
        Command::Extremal { .. } => "extremal",
    }
}

/// Runs a parsed command line and renders its report.
pub fn execute(cli: &Cli, argv: &[String]) -> Execution {
    let start = Instant::now();
    let mut session = Session {
        digest: InputDigest::new(),
    };
    for arg in argv.iter().skip(1) {
        session.digest.add("arg", arg.as_bytes());
    }
    match dispatch(cli, &mut session) {
        Ok((out, seed)) => {
            let report = RunReport {
                command: command_name(&cli.command).into(),
                inputs: session.digest.hex(),
                result: out.payload,
                elapsed_ms: start.elapsed().as_millis() as u64,
                seed,
            };
            let stdout = match cli.format {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => match &out.artifact {
                    Some(text) if !has_out(&cli.command) => text.clone(),
                    _ => out.summary + "\n",
                },
            };
            Execution {
                code: exit::OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Execution {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn has_out(c: &Command) -> bool {
    matches!(
        c,
        Command::Scramble { out: Some(_), .. }
            | Command::Paley { out: Some(_), .. }
            | Command::Colorsearch { out: Some(_), .. }
            | Command::Permutation { out: Some(_), .. }
            | Command::Recover { out: Some(_), .. }
            | Command::Majority { out: Some(_), .. }
            | Command::Extremal { out: Some(_), .. }
    )
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&argv) {
        Ok(cli) => execute(&cli, &argv),
        Err(e) => {
            let rendered = e.render().to_string();
            let code = if e.use_stderr() {
                exit::PARSE
            } else {
                exit::OK
            };
            if code == exit::OK {
                Execution {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Execution {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            }
        }
    }
}

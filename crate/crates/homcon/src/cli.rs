//! Argument parsing and dispatch.

use clap::{Args, Parser, Subcommand};

use homcon_core::{ComplexKind, Error, Limits, PermGroup};

use crate::render::{render, Format};
use crate::report::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "homcon", version, about = "Mod-2 homology of orbit, rectangle and box complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Cross-validate against independent oracles.
    #[arg(long, global = true)]
    pub check: bool,

    /// Largest ground set swept over all 2^n subsets.
    #[arg(long, env = "HOMCON_LIMIT", global = true)]
    pub limit: Option<usize>,

    /// Largest group order enumerated element by element.
    #[arg(long, global = true)]
    pub order_limit: Option<usize>,

    /// Largest number of partitions or tableaux enumerated.
    #[arg(long, global = true)]
    pub cell_limit: Option<usize>,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit polynomial X(G,q) and self-complementary orbits.
    Orbits {
        /// cyclic:N, symmetric:N, wreath:K,L or gens:N:(1 2)(3 4),(1 3)
        #[arg(long)]
        group: String,
    },
    /// Homology of one of the four orbit complexes.
    Homology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "inv-d")]
        kind: String,
    },
    /// Partitions in a k x l rectangle.
    Rect {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Plane partitions in an r x c x t box.
    Box {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        t: usize,
    },
    /// inv-d homology of the cyclic group C_n.
    Necklace {
        #[arg(long, default_value_t = 18)]
        n: usize,
        /// Every even n from 2 up to --n.
        #[arg(long)]
        all_even: bool,
        /// Test the conjectured recursion for even n.
        #[arg(long)]
        check_conjecture: bool,
    },
    /// Transitive group on 2b points without 2-power derangements.
    Isbell {
        #[arg(long)]
        b: usize,
    },
}

/// What a run produced: the exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn limits_from(opts: &GlobalOpts) -> Limits {
    let mut limits = Limits::default();
    if let Some(n) = opts.limit {
        limits.max_points = n;
    }
    if let Some(n) = opts.order_limit {
        limits.max_group_order = n;
    }
    if let Some(n) = opts.cell_limit {
        limits.max_cells = n;
    }
    limits
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LimitExceeded { .. } => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

fn compute(cli: &Cli, limits: &Limits) -> homcon_core::Result<Report> {
    let check = cli.opts.check;
    Ok(match &cli.command {
        Command::Orbits { group } => Report::Orbits(report::orbits(&PermGroup::parse(group)?, check, limits)?),
        Command::Homology { group, kind } => {
            let kind: ComplexKind = kind.parse()?;
            Report::Homology(report::homology(&PermGroup::parse(group)?, kind, check, limits)?)
        }
        Command::Rect { k, l } => Report::Rect(report::rect(*k, *l, check, limits)?),
        Command::Box { r, c, t } => Report::Box(report::box_report(*r, *c, *t, check, limits)?),
        Command::Necklace { n, all_even, check_conjecture } => {
            let ns: Vec<usize> = if *all_even { (2..=*n).step_by(2).collect() } else { vec![*n] };
            Report::Necklace(report::necklace(&ns, *check_conjecture, limits)?)
        }
        Command::Isbell { b } => Report::Isbell(report::isbell(*b, limits)?),
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let limits = limits_from(&cli.opts);
    let pool = match cli.opts.threads {
        Some(0) => return Outcome::error(EXIT_USAGE, "--threads must be at least 1"),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return Outcome::error(1, e),
    };
    let report = match pool.install(|| compute(cli, &limits)) {
        Ok(r) => r,
        Err(e) => return Outcome::error(exit_code(&e), e),
    };
    let stdout = render(&report, cli.opts.format);
    let failed = report.failed_checks();
    if failed.is_empty() {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    } else {
        let stderr = failed.iter().map(|c| format!("violation: {}\n", c.name)).collect();
        Outcome { code: EXIT_VIOLATION, stdout, stderr }
    }
}

/// Parses and runs; clap usage errors exit with code 2, help and version with 0.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

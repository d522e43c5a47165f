//! The `fixres` command-line front end.
//!
//! Every subcommand prints one JSON document to standard output. Exit status is
//! 0 on success, 1 when a verification fails, and 2 on usage errors or
//! malformed input.

mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use fixres::group::{Group, DEFAULT_ORDER_CAP};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: malformed JSON at {path}: {message}")]
    Json { file: String, path: String, message: String },
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] fixres::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use fixres::Error as E;
        match self {
            CliError::Usage(_) | CliError::Json { .. } | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                E::InvalidPermutation(_)
                | E::DegreeMismatch(..)
                | E::NotASubgroup(_)
                | E::NotAHomomorphism(_)
                | E::NotAnAutomorphism(_)
                | E::InvalidWitness(_)
                | E::InvalidComplex(_)
                | E::InvalidResolutionData(_)
                | E::InvalidResolving(_)
                | E::InvalidInput(_) => 2,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact rational arithmetic.
    Exact,
    /// Double precision with a 1e-9 tolerance.
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "fixres", version, about = "Finite group classification, resolutions and transfer checks")]
pub struct Cli {
    /// Largest group order whose subgroup lattice is enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    /// Arithmetic for barycentric weights.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a group comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct GroupArgs {
    /// Group JSON file: {"degree": n, "generators": [[cycles]]}.
    #[arg(long, value_name = "FILE")]
    pub group: Option<PathBuf>,
    /// Name of a catalog group.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Constructor recipe, e.g. alternating:5.
    #[arg(long, value_name = "RECIPE")]
    pub recipe: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BatchArgs {
    #[command(flatten)]
    pub source: GroupArgs,
    /// Run over every catalog group in catalog order.
    #[arg(long)]
    pub all: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dress verdict, witness, depth and dimension bound.
    Classify(BatchArgs),
    /// Longest subgroup chain.
    Depth(BatchArgs),
    /// Table of marks.
    Marks(BatchArgs),
    /// The invariant r_G and optionally a resolving function with value -1 at G.
    Resolving {
        #[command(flatten)]
        batch: BatchArgs,
        #[arg(long)]
        find_unit: bool,
    },
    /// Euler-characteristic induction and join.
    Oliver {
        #[command(flatten)]
        source: GroupArgs,
        /// Resolving function per subgroup class (JSON list of integers).
        #[arg(long, value_name = "FILE")]
        phi: Option<PathBuf>,
    },
    /// Resolve a G-complex along resolution data.
    Resolve {
        /// Base complex JSON.
        #[arg(long, value_name = "FILE")]
        complex: Option<PathBuf>,
        /// Resolution data JSON; every fiber is a point when absent.
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
        /// Where to write the resolved complex.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        source: GroupArgs,
    },
    /// Transfer-reducibility witnesses.
    #[command(subcommand)]
    Transfer(TransferCommand),
    /// Finite quotients of crystallographic groups and prime selection.
    #[command(subcommand)]
    Crystallo(CrystalloCommand),
    /// List the group catalog, or recompute its recorded invariants.
    Catalog {
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransferCommand {
    /// Check a witness of the first condition.
    CheckDfh {
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
        /// Build the coset-map fixture over a catalog group instead.
        #[arg(long, value_name = "NAME", conflicts_with = "witness")]
        fixture: Option<String>,
        #[arg(long, default_value = "1/2")]
        lambda: String,
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Write the witness that was checked.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Check a witness of the second condition.
    CheckCtr {
        #[arg(long, value_name = "FILE")]
        witness: PathBuf,
        #[arg(long, default_value_t = fixres::transfer::DENSE_SAMPLES)]
        samples: usize,
    },
    /// Assemble a witness of the second condition and check it.
    Assemble {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        /// Built-in input: c2 (swapped edge) or s3 (triangle).
        #[arg(long, value_name = "NAME", conflicts_with = "input")]
        fixture: Option<String>,
        /// Fixture fibers: star (cones on the stabilizer) or point.
        #[arg(long, default_value = "star")]
        fibers: String,
        #[arg(long, default_value = "1/2")]
        lambda: String,
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(long, default_value_t = fixres::transfer::DENSE_SAMPLES)]
        samples: usize,
        /// Where to write the assembled witness.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write the assembly input that was used.
        #[arg(long, value_name = "FILE")]
        emit_input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CrystalloCommand {
    /// The quotient by s times the lattice and its Dress subgroups onto F.
    Quotient {
        #[arg(long)]
        n: usize,
        /// JSON list of integer matrices generating F.
        #[arg(long, value_name = "FILE")]
        fgens: PathBuf,
        #[arg(long)]
        s: u64,
    },
    /// The subgroup dichotomy for (Z/s)^n by Z/r.
    Dichotomy {
        #[arg(long)]
        n: Option<usize>,
        /// JSON integer matrix.
        #[arg(long, value_name = "FILE")]
        m: PathBuf,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        nu: u64,
        #[arg(long)]
        o: u64,
    },
    /// Primes p ≡ rho mod mu with few prime factors in f(p).
    Primes {
        /// `On` or comma-separated coefficients, constant term first.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        rho: i64,
        #[arg(long)]
        mu: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
    /// Order of GL_n(Z/s).
    Gl {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u64,
    },
    /// Kernel homomorphism for (Z/p)^2 → Z/p given by (c1, c2).
    Kernel {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[arg(long, allow_negative_numbers = true)]
        c2: i64,
    },
}

/// Result of a subcommand: the document to print and whether checks passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize to JSON")
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let file = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { file: file.clone(), source })?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Json { file: file.clone(), path, message: e.into_inner().to_string() }
    })?;
    de.end().map_err(|e| CliError::Json { file, path: ".".into(), message: e.to_string() })?;
    Ok(value)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io { file: path.display().to_string(), source })
}

/// A group together with its catalog name, when it has one.
pub struct NamedGroup {
    pub name: Option<String>,
    pub group: Group,
}

pub fn load_group(args: &GroupArgs) -> CliResult<Option<NamedGroup>> {
    let given = [args.group.is_some(), args.catalog.is_some(), args.recipe.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => return Ok(None),
        1 => {}
        _ => return Err(CliError::Usage("give only one of --group, --catalog and --recipe".into())),
    }
    if let Some(path) = &args.group {
        let spec: fixres::io::GroupSpec = read_json(path)?;
        return Ok(Some(NamedGroup { name: None, group: spec.build()? }));
    }
    if let Some(name) = &args.catalog {
        let entry = fixres::catalog::lookup(name)
            .ok_or_else(|| CliError::Usage(format!("no catalog group named {name:?}")))?;
        return Ok(Some(NamedGroup { name: Some(entry.name.clone()), group: entry.build()? }));
    }
    let recipe = args.recipe.as_deref().expect("one source given");
    Ok(Some(NamedGroup { name: None, group: fixres::catalog::from_recipe(recipe)? }))
}

pub fn require_group(args: &GroupArgs) -> CliResult<NamedGroup> {
    load_group(args)?.ok_or_else(|| CliError::Usage("a group is required: --group, --catalog or --recipe".into()))
}

fn batch_groups(b: &BatchArgs) -> CliResult<Option<Vec<NamedGroup>>> {
    if !b.all {
        return Ok(None);
    }
    if load_group(&b.source)?.is_some() {
        return Err(CliError::Usage("--all cannot be combined with a single group".into()));
    }
    fixres::catalog::catalog()
        .into_iter()
        .map(|e| Ok(NamedGroup { name: Some(e.name.clone()), group: e.build()? }))
        .collect::<CliResult<Vec<_>>>()
        .map(Some)
}

/// Runs `f` on one group or, with `--all`, on each catalog group in order.
fn per_group(ctx: &Cli, b: &BatchArgs, f: impl Fn(&Cli, &NamedGroup) -> CliResult<Outcome>) -> CliResult<Outcome> {
    match batch_groups(b)? {
        None => f(ctx, &require_group(&b.source)?),
        Some(groups) => {
            let mut ok = true;
            let mut rows = Vec::new();
            for g in &groups {
                let o = f(ctx, g)?;
                ok &= o.ok;
                let mut row = serde_json::Map::new();
                row.insert("name".into(), Value::from(g.name.clone()));
                if let Value::Object(m) = o.value {
                    row.extend(m);
                }
                rows.push(Value::Object(row));
            }
            Ok(Outcome { value: Value::Array(rows), ok })
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Classify(b) => per_group(cli, b, commands::classify),
        Command::Depth(b) => per_group(cli, b, commands::depth),
        Command::Marks(b) => per_group(cli, b, commands::marks),
        Command::Resolving { batch, find_unit } => {
            per_group(cli, batch, |c, g| commands::resolving(c, g, *find_unit))
        }
        Command::Oliver { source, phi } => commands::oliver(cli, &require_group(source)?, phi.as_deref()),
        Command::Resolve { complex, data, out, source } => {
            commands::resolve(complex.as_deref(), data.as_deref(), out.as_deref(), source)
        }
        Command::Transfer(t) => commands::transfer(cli, t),
        Command::Crystallo(c) => commands::crystallo(c),
        Command::Catalog { verify } => commands::catalog(cli, *verify),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.value).expect("serializable");
            let _ = writeln!(out, "{text}");
            if o.ok {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

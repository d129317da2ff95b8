use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::LevelFilter;
use nilconn::orbits::load_orbit_file;
use nilconn::report::{analyze, build_orbit, run_theorem, write_report};
use nilconn::{AlgebraId, ConditionSet, Error, OrbitKind};

#[derive(Parser)]
#[command(name = "nilconn", version, about = "Invariant connections on nilpotent adjoint orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Log progress and record per-stage timings in reports.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one orbit of one algebra.
    Analyze {
        /// Algebra such as A2, C3 or G2.
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = OrbitArg::Minimal)]
        orbit: OrbitArg,
        /// Orbit file for `--orbit custom`.
        #[arg(long)]
        orbit_file: Option<PathBuf>,
        /// Entry of the orbit file to use.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, default_value = "I,IIp,adh")]
        conditions: String,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep minimal and regular orbits of every supported algebra up to a rank.
    Theorem {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=4))]
        max_rank: u8,
        #[arg(long, default_value = "I,IIp,adh")]
        conditions: String,
        /// Write the JSON table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitArg {
    Minimal,
    Regular,
    Custom,
}

impl From<OrbitArg> for OrbitKind {
    fn from(o: OrbitArg) -> Self {
        match o {
            OrbitArg::Minimal => OrbitKind::Minimal,
            OrbitArg::Regular => OrbitKind::Regular,
            OrbitArg::Custom => OrbitKind::Custom,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::UnsupportedType(_) => 3,
        Error::Io(_) => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze {
            algebra,
            orbit,
            orbit_file,
            label,
            conditions,
            out,
        } => {
            let id: AlgebraId = algebra.parse()?;
            let conditions: ConditionSet = conditions.parse()?;
            let kind = OrbitKind::from(orbit);
            let specs = match (&orbit_file, kind) {
                (Some(path), OrbitKind::Custom) => load_orbit_file(path)?,
                (None, OrbitKind::Custom) => return Err(Error::Invalid("--orbit custom needs --orbit-file".into())),
                _ => Vec::new(),
            };
            let spec = match (&label, specs.len()) {
                (Some(l), _) => Some(
                    specs
                        .iter()
                        .find(|s| &s.label == l)
                        .ok_or_else(|| Error::Invalid(format!("no orbit labelled {l:?}")))?,
                ),
                (None, 1) => specs.first(),
                (None, 0) => None,
                (None, _) => return Err(Error::Invalid("orbit file has several entries; pick one with --label".into())),
            };
            let ctx = build_orbit(id, kind, spec)?;
            log::info!("{id} {}: dim h = {}, dim m = {}", ctx.label(), ctx.dim_h(), ctx.dim_m());
            let report = analyze(&ctx, &conditions, cli.verbose)?;
            if let Some(path) = out {
                write_report(&report, path)?;
            }
            println!("{}", report.summary_line());
        }
        Command::Theorem {
            max_rank,
            conditions,
            out,
        } => {
            let conditions: ConditionSet = conditions.parse()?;
            let table = run_theorem(usize::from(max_rank), &conditions)?;
            if let Some(path) = out {
                write_report(&table, path)?;
            }
            for row in &table.rows {
                println!("{}", row.summary_line());
            }
            println!("agreement={}", table.agreement);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { LevelFilter::Info } else { LevelFilter::Warn })
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lace_ground::braid::{is_alternating, to_braid_word};
use lace_ground::canonical::{canonical_id, is_canonical};
use lace_ground::enumerator::{
    count_table, enumerate, write_solutions, Connectivity, SearchConfig,
};
use lace_ground::format::deserialize;
use lace_ground::path::generate_lace_paths;
use lace_ground::render::{render_svg, RenderOptions};
use lace_ground::validator::{full_report, DEFAULT_MAX_CYCLES};
use lace_ground::{GroundEmbedding, PruneRule, TorusDims};

const PROPERTY_FAILURE: u8 = 1;
const USAGE: u8 = 2;
const INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lace-ground",
    version,
    about = "Enumerate and check bobbin-lace ground embeddings on the torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnectivityArg {
    Plain,
    NonContractible,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneArg {
    Sound,
    LiteralGreater,
    LiteralLess,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Disable pruning inside the search.
    #[arg(long)]
    no_prune: bool,
    #[arg(long, value_enum, default_value = "sound")]
    prune_rule: PruneArg,
    #[arg(long, value_enum, default_value = "strict")]
    connectivity: ConnectivityArg,
    /// Same as `--connectivity strict`.
    #[arg(long)]
    strict: bool,
    /// Stop each search after this many nodes.
    #[arg(long)]
    budget: Option<u64>,
}

impl SearchArgs {
    fn config(&self, dims: TorusDims) -> SearchConfig {
        let prune = match (self.no_prune, self.prune_rule) {
            (true, _) => PruneRule::Off,
            (false, PruneArg::Sound) => PruneRule::Sound,
            (false, PruneArg::LiteralGreater) => PruneRule::LiteralGreater,
            (false, PruneArg::LiteralLess) => PruneRule::LiteralLess,
        };
        let connectivity = match (self.strict, self.connectivity) {
            (true, _) | (false, ConnectivityArg::Strict) => Connectivity::Strict,
            (false, ConnectivityArg::Plain) => Connectivity::Plain,
            (false, ConnectivityArg::NonContractible) => Connectivity::NonContractible,
        };
        SearchConfig::new(dims)
            .jobs(self.jobs)
            .prune(prune)
            .connectivity(connectivity)
            .node_budget(self.budget)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count (or list) lace paths of a given height.
    Paths {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        height: u32,
        #[arg(long)]
        list: bool,
    },
    /// Enumerate canonical ground embeddings of one grid.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        cols: u32,
        /// Directory for one `.gnd` file per solution.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a ground file against the fundamental properties.
    Verify {
        file: PathBuf,
        /// Require the planar lift to be connected.
        #[arg(long)]
        strict: bool,
        /// Print the braid word of every annotated vertex.
        #[arg(long)]
        braid: bool,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_MAX_CYCLES)]
        max_cycles: usize,
    },
    /// Print the canonical identifier of a ground file.
    Canon { file: PathBuf },
    /// Draw a ground file tiled over several periods as SVG.
    Render {
        file: PathBuf,
        /// Tiling as `<rows>x<cols>`.
        #[arg(long, default_value = "1x1", value_parser = parse_repeats)]
        repeats: (u32, u32),
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        labels: bool,
    },
    /// Table of class counts for every grid up to the bounds.
    Counts {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_rows: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_cols: u32,
        /// Also write the table as TSV here.
        #[arg(long)]
        tsv: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn parse_repeats(s: &str) -> Result<(u32, u32), String> {
    let (r, c) = s.split_once('x').ok_or("expected <rows>x<cols>")?;
    let r: u32 = r.parse().map_err(|_| format!("bad row count `{r}`"))?;
    let c: u32 = c.parse().map_err(|_| format!("bad column count `{c}`"))?;
    if r == 0 || c == 0 {
        return Err("repeats must be positive".into());
    }
    Ok((r, c))
}

struct Failure(u8, String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed pipe downstream (`| head`) is not an error
        match e.kind() {
            io::ErrorKind::BrokenPipe => Failure(0, String::new()),
            _ => Failure(USAGE, e.to_string()),
        }
    }
}

fn load(file: &PathBuf) -> Result<GroundEmbedding, Failure> {
    let text =
        fs::read_to_string(file).map_err(|e| Failure(USAGE, format!("{}: {e}", file.display())))?;
    deserialize(&text).map_err(|e| Failure(USAGE, format!("{}: {e}", file.display())))
}

fn dims(rows: u32, cols: u32) -> Result<TorusDims, Failure> {
    TorusDims::new(rows, cols).map_err(|e| Failure(USAGE, e.to_string()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Paths { height, list } => {
            let paths = generate_lace_paths(height).map_err(|e| Failure(USAGE, e.to_string()))?;
            if list {
                for p in &paths {
                    writeln!(stdout, "{p}")?;
                }
            }
            writeln!(stdout, "{}", paths.len())?;
            Ok(0)
        }
        Command::Enumerate {
            rows,
            cols,
            out,
            search,
        } => {
            let config = search.config(dims(rows, cols)?);
            let result = enumerate(&config).map_err(|e| Failure(USAGE, e.to_string()))?;
            if let Some(dir) = out {
                write_solutions(&result, &dir)
                    .map_err(|e| Failure(USAGE, format!("{}: {e}", dir.display())))?;
            }
            writeln!(stdout, "{}", result.summary())?;
            Ok(if result.complete { 0 } else { INCOMPLETE })
        }
        Command::Verify {
            file,
            strict,
            braid,
            report,
            max_cycles,
        } => {
            let e = load(&file)?;
            let r = full_report(&e, strict, max_cycles);
            match report {
                ReportFormat::Text => print!("{}", r.to_text()),
                ReportFormat::Json => println!("{}", r.to_json()),
            }
            if braid {
                for (v, z) in e.zeta() {
                    let w = to_braid_word(z, 0);
                    let alt = if is_alternating(&w) {
                        "alternating"
                    } else {
                        "not alternating"
                    };
                    writeln!(stdout, "braid {v} {z}: {w} ({alt})")?;
                }
            }
            Ok(if r.all_pass() { 0 } else { PROPERTY_FAILURE })
        }
        Command::Canon { file } => {
            let e = load(&file)?;
            writeln!(stdout, "{}", canonical_id(&e))?;
            writeln!(stdout, "canonical: {}", is_canonical(&e))?;
            Ok(0)
        }
        Command::Render {
            file,
            repeats,
            out,
            labels,
        } => {
            let e = load(&file)?;
            let opts = RenderOptions {
                repeat_rows: repeats.0,
                repeat_cols: repeats.1,
                labels,
            };
            fs::write(&out, render_svg(&e, &opts))
                .map_err(|err| Failure(USAGE, format!("{}: {err}", out.display())))?;
            Ok(0)
        }
        Command::Counts {
            max_rows,
            max_cols,
            tsv,
            search,
        } => {
            let table = count_table(max_rows, max_cols, &search.config(dims(1, 1)?))
                .map_err(|e| Failure(USAGE, e.to_string()))?;
            write!(stdout, "{}", table.to_tsv())?;
            writeln!(stdout)?;
            write!(stdout, "{}", table.to_pretty())?;
            if let Some(path) = tsv {
                fs::write(&path, table.to_tsv())
                    .map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
            }
            let complete = table.cells.iter().flatten().all(|c| c.complete);
            Ok(if complete { 0 } else { INCOMPLETE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("lace-ground: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

//! Command-line front end: parses arguments into a `RunConfig`, executes it
//! through the library runner, and emits the JSON (or CSV) report.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 when a search
//! budget is exceeded, 4 on internal invariant violations.

use affray::runner::{run, to_csv, ColoringFile, Command, RunConfig};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "affray",
    version,
    about = "Exact-arithmetic toolkit for affine semigroups: largeness certificates, sum-product patterns, finite models"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Worker threads (0 = library default). Thread count never changes
    /// results, only wall time.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed echoed into the report for reproducibility bookkeeping.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for backtracking searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Commands {
    /// Ring predicates: ideal indices, coset data, non-amenability witnesses.
    Ring {
        #[command(subcommand)]
        sub: RingCmd,
    },
    /// Build one of the named block constructions.
    Construct {
        /// thickbad | example45
        name: String,
        #[arg(long)]
        blocks: u32,
    },
    /// Verify a construction contains no instance of a pattern on a window.
    Verify {
        /// thickbad | example45
        name: String,
        #[arg(long)]
        blocks: u32,
        /// sum-product-pair | succ-double-triple
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        window: String,
        /// Lower bound for both pattern parameters (e.g. 3 for x, y > 2).
        #[arg(long)]
        min_value: Option<i64>,
    },
    /// Search or check an affine syndeticity certificate.
    Certify {
        #[command(subcommand)]
        sub: CertifyCmd,
    },
    /// Search for largeness witnesses.
    Witness {
        #[command(subcommand)]
        sub: WitnessCmd,
    },
    /// Exact density sequence of a set along a residence sequence.
    Density {
        #[arg(long)]
        set: String,
        /// nat | intbox | farey | fromthick
        #[arg(long)]
        folner: String,
        #[arg(long)]
        upto: u64,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        thick_set: Option<String>,
        #[arg(long)]
        thick_window: Option<String>,
    },
    /// Pattern searches over sets and colorings.
    Search {
        #[command(subcommand)]
        sub: SearchCmd,
    },
    /// Minimal forcing-window search by backtracking over colorings.
    Ramsey {
        #[command(subcommand)]
        sub: RamseyCmd,
    },
    /// Finite semigroup analysis: idempotents, minimal ideals, kernel.
    Semigroup {
        #[command(subcommand)]
        sub: SemigroupCmd,
    },
    /// Joint return sets for the affine action on Z/n.
    Returnsets {
        #[arg(long = "mod")]
        modulus: u64,
        /// JSON file holding a list of subsets of Z/n, e.g. [[0,1],[3,4]].
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// All nonempty subset sums of a finite generator list.
    Fs {
        #[arg(long, default_value = "z")]
        ring: String,
        /// Comma-separated elements, e.g. "1,2,4".
        #[arg(long)]
        elements: String,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Ring classification flags.
    Info { ring: String },
    /// Additive index of the ideal xR with coset representatives.
    Index {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        x: String,
    },
    /// Least shift of xR disjoint from it (non-amenability witness).
    Nonamen {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        window: String,
    },
    /// Coset partition check for a list of samples over a probe window.
    Probe {
        #[arg(long)]
        ring: String,
        /// Comma-separated nonzero samples.
        #[arg(long)]
        samples: String,
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    Syndetic {
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 2)]
        height: u64,
        #[arg(long, default_value_t = 8)]
        max_maps: usize,
        /// JSON file with a map family to check instead of searching,
        /// e.g. ["(1)*x+(0)", "(1)*x+(1)"].
        #[arg(long)]
        maps: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    Thick {
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: String,
        /// JSON file with the map family.
        #[arg(long)]
        maps: PathBuf,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    Pattern {
        /// schur | product-triple | sum-product-pair | sum-product-quad |
        /// restricted-pair
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        set: Option<String>,
        /// JSON coloring file {ring, window, r, colors}.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Window supplying the subring pool for restricted-pair.
        #[arg(long)]
        subring_window: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_witnesses: usize,
        #[arg(long)]
        min_value: Option<i64>,
    },
    Multsyndetic {
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: String,
        /// Comma-separated multiplicative shift family, e.g. "1,2".
        #[arg(long)]
        divisors: String,
        #[arg(long)]
        probe_window: String,
        #[arg(long, default_value_t = 10)]
        max_witnesses: usize,
        #[arg(long)]
        relaxed: bool,
    },
}

#[derive(Subcommand)]
enum RamseyCmd {
    MinimalN {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        colors: u8,
        #[arg(long)]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum SemigroupCmd {
    Analyze {
        /// Residue ring, e.g. zmod:6.
        #[arg(long)]
        ring: String,
        /// affine | affine-units | mul | add
        #[arg(long, default_value = "affine")]
        which: String,
        /// Restrict dilation coefficients to units (same as --which affine-units).
        #[arg(long)]
        units_only: bool,
    },
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, affray::Error> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| affray::Error::Config(format!("{}: {e}", path.display())))
}

fn parse_modulus(ring: &str) -> Result<u64, affray::Error> {
    match ring.strip_prefix("zmod:") {
        Some(n) => n
            .parse()
            .map_err(|e| affray::Error::Config(format!("bad modulus in {ring:?}: {e}"))),
        None => Err(affray::Error::Config(format!(
            "semigroup analysis takes a residue ring (zmod:n), got {ring:?}"
        ))),
    }
}

fn build_command(command: Commands) -> Result<Command, affray::Error> {
    Ok(match command {
        Commands::Ring { sub } => match sub {
            RingCmd::Info { ring } => Command::RingInfo { ring },
            RingCmd::Index { ring, x } => Command::RingIndex { ring, x },
            RingCmd::Nonamen { ring, x, window } => Command::RingWitness { ring, x, window },
            RingCmd::Probe {
                ring,
                samples,
                window,
            } => Command::RingProbe {
                ring,
                samples: split_list(&samples),
                window,
            },
        },
        Commands::Construct { name, blocks } => Command::Construct { name, blocks },
        Commands::Verify {
            name,
            blocks,
            pattern,
            window,
            min_value,
        } => Command::VerifyPattern {
            name,
            blocks,
            pattern,
            window,
            min_value,
        },
        Commands::Certify { sub } => match sub {
            CertifyCmd::Syndetic {
                ring,
                set,
                window,
                height,
                max_maps,
                maps,
            } => Command::CertifySyndetic {
                ring,
                set,
                window,
                height,
                max_maps,
                maps: match maps {
                    Some(path) => Some(read_json(&path)?),
                    None => None,
                },
            },
        },
        Commands::Witness { sub } => match sub {
            WitnessCmd::Thick {
                ring,
                set,
                window,
                maps,
            } => Command::WitnessThick {
                ring,
                set,
                window,
                maps: read_json(&maps)?,
            },
        },
        Commands::Density {
            set,
            folner,
            upto,
            ring,
            thick_set,
            thick_window,
        } => Command::Density {
            set,
            folner,
            up_to: upto,
            ring,
            thick_set,
            thick_window,
        },
        Commands::Search { sub } => match sub {
            SearchCmd::Pattern {
                pattern,
                ring,
                window,
                set,
                coloring,
                subring_window,
                max_witnesses,
                min_value,
            } => Command::SearchPattern {
                pattern,
                ring,
                window,
                set,
                coloring: match coloring {
                    Some(path) => Some(read_json::<ColoringFile>(&path)?),
                    None => None,
                },
                subring_window,
                max_witnesses,
                min_value,
            },
            SearchCmd::Multsyndetic {
                ring,
                set,
                window,
                divisors,
                probe_window,
                max_witnesses,
                relaxed,
            } => Command::SearchMultSyndetic {
                ring,
                set,
                window,
                divisors: split_list(&divisors),
                probe_window,
                max_witnesses,
                relaxed,
            },
        },
        Commands::Ramsey { sub } => match sub {
            RamseyCmd::MinimalN {
                pattern,
                colors,
                max_n,
            } => Command::RamseyMinimalN {
                pattern,
                colors,
                max_n,
            },
        },
        Commands::Semigroup { sub } => match sub {
            SemigroupCmd::Analyze {
                ring,
                which,
                units_only,
            } => Command::SemigroupAnalyze {
                modulus: parse_modulus(&ring)?,
                which: if units_only {
                    "affine-units".to_string()
                } else {
                    which
                },
            },
        },
        Commands::Returnsets {
            modulus,
            sets,
            delta,
            epsilon,
        } => Command::ReturnSets {
            modulus,
            sets: read_json(&sets)?,
            delta,
            epsilon,
        },
        Commands::Fs { ring, elements } => Command::FiniteSums {
            ring,
            elements: split_list(&elements),
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = cli.global;
    let config = match build_command(cli.command) {
        Ok(command) => RunConfig {
            command,
            threads: global.threads,
            seed: global.seed,
            budget: global.budget,
        },
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let report = match run(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let rendered = match global.format.as_str() {
        "json" => match serde_json::to_string_pretty(&report) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: report serialization failed: {e}");
                return ExitCode::from(4);
            }
        },
        "csv" => match to_csv(&report) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        other => {
            eprintln!("error: unknown format {other:?} (json, csv)");
            return ExitCode::from(2);
        }
    };
    match &global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{rendered}"),
    }
    ExitCode::SUCCESS
}

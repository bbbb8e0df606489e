use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use weylmod::cli::{self, CacheOptions, Command, CommandRequest};

#[derive(Copy, Clone, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Tsv,
    Text,
}

impl From<OutputFormat> for cli::Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => cli::Format::Json,
            OutputFormat::Tsv => cli::Format::Tsv,
            OutputFormat::Text => cli::Format::Text,
        }
    }
}

/// Exact computations with Weyl modules, parabolic subgroup schemes and the
/// unseparated incidence variety in prime characteristic.
#[derive(Parser, Debug)]
#[command(name = "weylmod", version, about)]
struct Args {
    #[command(subcommand)]
    command: Cli,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Cache directory (defaults to $WEYLMOD_CACHE_DIR when set).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Bypass the result cache entirely.
    #[arg(long, global = true)]
    no_cache: bool,

    /// On cache hits, recompute and fail if stored and fresh payloads differ.
    #[arg(long, global = true)]
    verify_cache: bool,

    /// Cap on dim V(λ) for module constructions.
    #[arg(long, global = true, default_value_t = weylmod::highestweight::DEFAULT_DIM_CAP)]
    cap: u64,

    /// Cap on monomial-basis sizes for incidence rank computations.
    #[arg(long, global = true, default_value_t = weylmod::incidence::DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
}

#[derive(Subcommand, Debug)]
enum Cli {
    /// Cartan matrix and positive roots of a root system.
    Roots { system: String },
    /// Weyl dimension of V(λ).
    WeylDim { system: String, weight: String },
    /// Weight multiplicities of V(λ) (Freudenthal).
    WeylChar { system: String, weight: String },
    /// Weyl module and its simple head mod p.
    Simple {
        system: String,
        weight: String,
        #[arg(short)]
        p: u64,
        /// Include the lattice lowering-action matrices in the payload.
        #[arg(long)]
        dump_action: bool,
    },
    /// Composition multiplicities [V(λ) : L(μ)].
    Decompose {
        system: String,
        weight: String,
        #[arg(short)]
        p: u64,
    },
    /// Jantzen sum formula as a virtual Weyl character.
    Jantzen {
        system: String,
        weight: String,
        #[arg(short)]
        p: u64,
        /// Also emit the weight expansion.
        #[arg(long)]
        expand: bool,
        /// Cross-check against the contravariant Gram valuations.
        #[arg(long)]
        check_gram: bool,
    },
    /// Stabilizer exponent table of the highest weight line in ℙ(L(λ)).
    Stabilizer {
        system: String,
        weight: String,
        #[arg(short)]
        p: u64,
        /// Compare against an embedded reference table (C4 or B2).
        #[arg(long)]
        check_paper_table: Option<String>,
    },
    /// Character lattice of the stabilizer parabolic (standard cases only).
    Lattice {
        system: String,
        weight: String,
        #[arg(short)]
        p: u64,
    },
    /// Very-ampleness of the line bundle attached to a character χ.
    VeryAmple {
        system: String,
        weight: String,
        /// The character χ, in the same weight syntax.
        #[arg(long)]
        chi: String,
        #[arg(short)]
        p: u64,
    },
    /// Cohomology of L(a, b̄) on the unseparated incidence variety.
    Incidence {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Force the brute-force h⁰ oracle and compare.
        #[arg(long)]
        oracle: bool,
        /// Present the factor-swapped form Σ xᵢ yᵢ^q.
        #[arg(long)]
        swap: bool,
    },
}

impl From<Cli> for Command {
    fn from(c: Cli) -> Command {
        match c {
            Cli::Roots { system } => Command::Roots { system },
            Cli::WeylDim { system, weight } => Command::WeylDim { system, weight },
            Cli::WeylChar { system, weight } => Command::WeylChar { system, weight },
            Cli::Simple {
                system,
                weight,
                p,
                dump_action,
            } => Command::Simple {
                system,
                weight,
                p,
                dump_action,
            },
            Cli::Decompose { system, weight, p } => Command::Decompose { system, weight, p },
            Cli::Jantzen {
                system,
                weight,
                p,
                expand,
                check_gram,
            } => Command::Jantzen {
                system,
                weight,
                p,
                expand,
                check_gram,
            },
            Cli::Stabilizer {
                system,
                weight,
                p,
                check_paper_table,
            } => Command::Stabilizer {
                system,
                weight,
                p,
                check_paper_table,
            },
            Cli::Lattice { system, weight, p } => Command::Lattice { system, weight, p },
            Cli::VeryAmple {
                system,
                weight,
                chi,
                p,
            } => Command::VeryAmple {
                system,
                weight,
                chi,
                p,
            },
            Cli::Incidence {
                n,
                p,
                r,
                a,
                b,
                oracle,
                swap,
            } => Command::Incidence {
                n,
                p,
                r,
                a,
                b,
                oracle,
                swap,
            },
        }
    }
}

fn main() {
    let args = Args::parse();
    let cache_dir = args
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("WEYLMOD_CACHE_DIR").map(PathBuf::from));
    let request = CommandRequest {
        command: args.command.into(),
        format: args.format.into(),
        cache: CacheOptions {
            dir: cache_dir,
            bypass: args.no_cache,
            verify: args.verify_cache,
        },
        dim_cap: args.cap,
        oracle_cap: args.oracle_cap,
    };
    match cli::run(&request) {
        Ok(envelope) => {
            match cli::render(&envelope, request.format) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("weylmod: {e}");
                    std::process::exit(e.exit_code());
                }
            }
            for w in &envelope.warnings {
                eprintln!("weylmod: warning: {w}");
            }
            std::process::exit(envelope.exit_code);
        }
        Err(e) => {
            eprintln!("weylmod: error[{}]: {e}", e.code());
            std::process::exit(e.exit_code());
        }
    }
}

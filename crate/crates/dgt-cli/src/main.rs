use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dgt_core::io::LoadedSystem;
use dgt_core::json;
use dgt_core::{DgtError, Result};

#[derive(Parser)]
#[command(name = "dgt", version, about = "Exact computations for linear difference systems")]
struct Cli {
    /// Indent the JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OperatorArgs {
    /// Operator in s (the shift), e.g. "x*s - (x+1)"
    #[arg(long)]
    op: String,
    /// Parameter names, comma separated
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

#[derive(Args)]
struct SystemArgs {
    /// JSON system file
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    system: Option<PathBuf>,
    /// Inline matrix, rows separated by ';' and entries by ','
    #[arg(long)]
    matrix: Option<String>,
    /// Parameter names for --matrix, comma separated
    #[arg(long, value_delimiter = ',', requires = "matrix")]
    params: Vec<String>,
    /// Variable name for --matrix
    #[arg(long, default_value = "x", requires = "matrix")]
    var: String,
}

impl SystemArgs {
    fn load(&self) -> Result<LoadedSystem> {
        match (&self.system, &self.matrix) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| DgtError::Invalid(format!("{}: {e}", path.display())))?;
                json::load_system(&text)
            }
            (None, Some(m)) => json::matrix_system(m, &self.params, &self.var),
            (None, None) => unreachable!("clap requires one of --system and --matrix"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hypergeometric solutions of an operator
    Hyper {
        #[command(flatten)]
        op: OperatorArgs,
        /// Adjoin algebraic constants (rational coefficients only)
        #[arg(long)]
        algebraic: bool,
    },
    /// Polynomial solutions of an operator
    Polysols {
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Indicial polynomial at infinity and its integer roots
    Indicial {
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Dimension of the system over the constants
    Dim {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Symmetric power Sym_nu(A) on monomials of degree at most nu
    Sym {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1)]
        nu: u32,
    },
    /// Matrix of l x l minors
    Minor {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(short)]
        l: usize,
    },
    /// Companion form of the system and its gauge matrix
    Companion {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Lattice of multiplicative sigma^l-relations among rational functions
    Zlattice {
        #[arg(short, default_value_t = 1)]
        l: u32,
        #[arg(required = true, allow_negative_numbers = true)]
        entries: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Galois group of a diagonal system, as a character lattice
    GaloisDiag {
        #[arg(required = true, allow_negative_numbers = true)]
        entries: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Check supplied group data against the system (needs a group block)
    Criterion {
        #[arg(long)]
        system: PathBuf,
    },
    /// Generators of the radical of a subgroup of Q*
    Radical {
        #[arg(required = true, allow_negative_numbers = true)]
        generators: Vec<String>,
    },
    /// Substitute rationals for the parameters
    Specialize {
        #[command(flatten)]
        sys: SystemArgs,
        /// name=value, repeatable
        #[arg(long, required = true)]
        assign: Vec<String>,
    },
    /// Does a specialization preserve the Galois group?
    Report {
        #[command(flatten)]
        sys: SystemArgs,
        /// name=value, repeatable
        #[arg(long, required = true)]
        assign: Vec<String>,
    },
}

fn run(cmd: &Command) -> Result<serde_json::Value> {
    match cmd {
        Command::Hyper { op, algebraic } => json::hyper(&op.op, &op.params, *algebraic),
        Command::Polysols { op } => json::polysols(&op.op, &op.params),
        Command::Indicial { op } => json::indicial(&op.op, &op.params),
        Command::Dim { sys } => Ok(json::dim(&sys.load()?)),
        Command::Sym { sys, nu } => {
            if *nu == 0 {
                return Err(DgtError::Invalid("nu must be at least 1".into()));
            }
            Ok(json::sym(&sys.load()?, *nu))
        }
        Command::Minor { sys, l } => json::minor(&sys.load()?, *l),
        Command::Companion { sys } => json::companion(&sys.load()?),
        Command::Zlattice { l, entries, params } => json::zlattice(entries, *l, params),
        Command::GaloisDiag { entries, params } => json::galois_diag(entries, params),
        Command::Criterion { system } => {
            let sys = SystemArgs {
                system: Some(system.clone()),
                matrix: None,
                params: Vec::new(),
                var: "x".into(),
            };
            json::criterion(&sys.load()?)
        }
        Command::Radical { generators } => json::radical(generators),
        Command::Specialize { sys, assign } => json::specialize(&sys.load()?, assign),
        Command::Report { sys, assign } => json::report(&sys.load()?, assign),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(v) => {
            if cli.pretty {
                println!("{v:#}");
            } else {
                println!("{v}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json::error_json(&e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

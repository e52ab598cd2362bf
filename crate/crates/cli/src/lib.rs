//! Command-line front end: argument parsing, file I/O and reports.

pub mod commands;
pub mod corpus;
pub mod io;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::Report;

#[derive(Parser, Debug)]
#[command(name = "equiv-alg", version, about = "Exact checks for finite abelian group actions on algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Input file; names of bundled corpus files are also accepted.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Output file (or directory for `tubular`).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Ground field for commands that build their own data: prime:p or cyclotomic:n.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// default, regular, simples, or a JSON file with a module list.
    #[arg(long = "probe-set", global = true, value_name = "SET")]
    pub probe_set: Option<String>,
    /// Degree bound for truncations.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Cmd {
    /// Associativity and unit of an algebra file.
    #[command(name = "validate-algebra")]
    ValidateAlgebra,
    /// Weak-action axioms and the induced action on modules.
    #[command(name = "validate-action")]
    ValidateAction,
    /// Builds R ∗ G and checks it.
    #[command(name = "crossed-product")]
    CrossedProduct,
    /// Equivariant modules: crossed-product realization, adjunctions, monads.
    Equivariantize {
        /// Equivariant functor file to equivariantize instead.
        #[arg(long, value_name = "FILE")]
        functor: Option<PathBuf>,
    },
    /// Character group and the dual action on equivariant modules.
    Dualize,
    /// Monad isomorphism and the Θ-equivalence on probes.
    #[command(name = "verify-duality")]
    VerifyDuality,
    /// Compatible pair of a cyclic action, and the round trip.
    #[command(name = "cyclic-classify")]
    CyclicClassify,
    /// Searches a d-compatibility witness for an automorphism.
    #[command(name = "d-compatible")]
    DCompatible {
        /// Overrides the order stored in the file.
        #[arg(long)]
        order: Option<u64>,
    },
    /// Obstruction cocycle and class of a commuting functor datum.
    Obstruction,
    /// Induced permutation of the projective classes in K0.
    #[command(name = "k0-action")]
    K0Action,
    /// Orbit counts on both sides of the duality, and End(Ind M).
    #[command(name = "orbit-census")]
    OrbitCensus,
    /// Tubular coordinate algebras and the graded automorphisms g1, g2, g3.
    Tubular {
        /// Weight type: 2,2,2,2 or 3,3,3 or 4,4,2 or 6,3,2.
        #[arg(long = "type", value_name = "WEIGHTS")]
        kind: Option<String>,
        /// Parameter λ for type 2,2,2,2, as a JSON scalar.
        #[arg(long)]
        lambda: Option<String>,
        /// Validate g1, g2, g3 and emit their cyclic actions.
        #[arg(long = "check-table1")]
        check_table1: bool,
    },
    /// The weak-action identity suite on the bundled actions or on --in.
    #[command(name = "appendix-a-suite")]
    AppendixASuite,
}

/// Usage or input error; exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl From<io::InputError> for UsageError {
    fn from(e: io::InputError) -> Self {
        UsageError(e.0)
    }
}

/// Exit status and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::run(&cli) {
        Ok(rep) => {
            let mut stderr = String::new();
            for c in rep.failures() {
                stderr.push_str(&format!("check failed: {}\n", c.name));
            }
            Outcome { code: rep.exit_code(), stdout: rep.render(), stderr }
        }
        Err(UsageError(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "scheme-spectra",
    version,
    about = "Exact eigenmatrices and extremal eigenvalues of classical distance-regular graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for grid scans (0 = one per core).
    #[arg(long, global = true, env = "SCHEME_SPECTRA_JOBS", default_value_t = 0)]
    pub jobs: usize,

    /// Report wall-clock time (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the eigenmatrix P (rows i, columns j).
    Pmatrix(SchemeArg),
    /// Extremal data of one column, with the predicted extremal indices.
    Column {
        #[command(flatten)]
        scheme: SchemeArg,
        /// Column index (distance).
        #[arg(short, long)]
        j: usize,
    },
    /// Extremal data of every column.
    Analyze(SchemeArg),
    /// Check a theorem, proposition, lemma or conjecture over a parameter box.
    Verify {
        /// Theorem id, e.g. H-THM-NONBINARY.
        id: Option<String>,
        /// Parameter box, e.g. "q=3..8,d=1..30"; defaults to the catalog box.
        #[arg(long = "box")]
        param_box: Option<String>,
        /// List the catalog instead.
        #[arg(long)]
        list: bool,
    },
    /// Hamming columns with fewer than d+1 distinct eigenvalues.
    Scan {
        /// Parameter box; defaults to the boxes of the published table.
        #[arg(long = "box")]
        param_box: Option<String>,
        /// Only rows with at least this many distinct values.
        #[arg(long, default_value_t = 0)]
        min: usize,
        /// Only rows with at most this many distinct values.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Integral zeros of binary Krawtchouk polynomials.
    Zeros {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        d_max: u32,
    },
    /// Least q beyond which every K_j(d-j+1) is the unique column minimum.
    Q0 {
        #[arg(long)]
        d: u32,
    },
    /// Evaluate a bound lemma at one point, or sweep it over a box.
    Bounds {
        /// Lemma id, e.g. H-LEM-QPOW.
        id: Option<String>,
        /// Single instance, e.g. "q=3,d=5,j=4,i=2".
        #[arg(long, conflicts_with = "param_box")]
        params: Option<String>,
        /// Sweep box; defaults to the lemma's default box.
        #[arg(long = "box")]
        param_box: Option<String>,
        /// List the registered lemmas.
        #[arg(long)]
        list: bool,
    },
    /// Run the identity suite on one scheme.
    Identities(SchemeArg),
}

#[derive(Debug, Args)]
pub struct SchemeArg {
    /// Scheme, e.g. hamming:d=4,q=3 or dualpolar:q=2,d=5,e=1.
    #[arg(long)]
    pub scheme: String,
}

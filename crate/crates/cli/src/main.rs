//! `commeq`: exact counts of solutions to commutator systems in small finite
//! groups.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 work
//! budget exceeded.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commeq::DEFAULT_BUDGET;
use render::Format;

#[derive(Parser)]
#[command(name = "commeq", version, about = "Exact commutator-system counts in finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, conjugacy classes, centre and derived subgroup.
    Info {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Per-class values of f_n or t_n.
    Count(CountArgs),
    /// Coefficients of f_n or t_n in the irreducible characters.
    Coeffs(CoeffsArgs),
    /// The distribution Q3 and its convolution powers.
    Dist(DistArgs),
    /// Upper and lower bounds on the commuting probabilities.
    Bounds {
        #[arg(long)]
        group: String,
        /// Character table provider.
        #[arg(long, default_value = "auto")]
        table: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Elements g with f_k(g) > 0.
    Ore {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// An explicit x1, x2, x3 in S_n with all pairwise commutators equal to g.
    Triple {
        #[arg(long)]
        n: usize,
        /// Target permutation in cycle notation, e.g. "(1,2,3)(4,5)(6,7)".
        #[arg(long)]
        g: String,
    },
    /// Run the verification suites and print a pass/fail matrix.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check methods for exact agreement, then time them.
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long)]
    pub group: String,
    /// f2, f3, t3, fn:<n> or tn:<n>.
    #[arg(long = "fn")]
    pub function: String,
    /// brute, brute-naive, character, closed or recursive.
    #[arg(long, default_value = "brute")]
    pub method: String,
    /// Generators of a subgroup to restrict all unknowns to, separated by
    /// `;` or top-level commas (element names, indices or cycles).
    #[arg(long)]
    pub subgroup: Option<String>,
    /// Character table provider for coefficients and the character method.
    #[arg(long, default_value = "auto")]
    pub table: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Also save the report as JSON to this path.
    #[arg(long)]
    pub output: Option<String>,
    /// Record timing as 0 so that output is byte-stable.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "fn")]
    pub function: String,
    /// Character table provider.
    #[arg(long, default_value = "auto")]
    pub table: String,
    /// character, closed or brute (decomposition of the enumerated counts).
    #[arg(long, default_value = "character")]
    pub method: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args)]
pub struct DistArgs {
    #[arg(long)]
    pub group: String,
    /// Number of convolution powers of Q3 to trace.
    #[arg(long, default_value_t = 1)]
    pub convolve: usize,
    /// Include the L1 distance of each power to the uniform distribution.
    #[arg(long)]
    pub l1: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "fn")]
    pub function: String,
    /// Comma-separated methods; the first is the baseline for speedups.
    #[arg(long, default_value = "brute-naive,brute,character")]
    pub methods: String,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, default_value = "auto")]
    pub table: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Info { group, format } => commands::info(&group, format),
        Command::Count(a) => commands::count(&a),
        Command::Coeffs(a) => commands::coeffs(&a),
        Command::Dist(a) => commands::dist(&a),
        Command::Bounds {
            group,
            table,
            budget,
            format,
        } => commands::bounds(&group, &table, budget, format),
        Command::Ore {
            group,
            k,
            budget,
            format,
        } => commands::ore(&group, k, budget, format),
        Command::Triple { n, g } => commands::triple(n, &g),
        Command::Verify { suite, format } => commands::verify(&suite, format),
        Command::Bench(a) => commands::bench(&a),
    };
    let out = std::io::stdout();
    let mut out = out.lock();
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let _ = out.write_all(failure.output.as_bytes());
            let _ = out.flush();
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.kind.code())
        }
    }
}

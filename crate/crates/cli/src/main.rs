use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gstopo::choice::{RuleSpec, ScfTableFile, SocialChoiceFunction};
use gstopo::pipeline::{ValidationLevel, DEFAULT_NODE_BUDGET};
use gstopo::report::{
    cmd_analyze, cmd_arrangement, cmd_enumerate, cmd_homology, cmd_verify, HomologyTarget, ReportDocument, Suite,
    SuiteConfig,
};
use gstopo::Error;

/// Exact homology checks of the topological proof of the
/// Muller–Satterthwaite theorem.
#[derive(Parser)]
#[command(name = "gstopo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of one rule and, if it is monotonic and unanimous,
    /// read its dictator off the homology pairing.
    Analyze(AnalyzeArgs),
    /// Run verification suites on one instance.
    Verify(VerifyArgs),
    /// Betti numbers and torsion of N_A, N_P or the profile nerve.
    Homology(HomologyArgs),
    /// Enumerate every monotonic, unanimous rule by backtracking.
    EnumerateScf(EnumerateArgs),
    /// Survey the dimensions of the subspaces R^λ over all colorings.
    Arrangement(ArrangementArgs),
}

#[derive(Args)]
struct Instance {
    /// Number of alternatives.
    #[arg(short = 'n')]
    n: usize,
    /// Number of voters.
    #[arg(short = 'N', default_value_t = 1)]
    voters: usize,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'N')]
    voters: Option<usize>,
    /// Named rule: dictatorship:L, constant:A, plurality_lex, borda_lex.
    #[arg(long, conflicts_with = "table", required_unless_present = "table")]
    rule: Option<String>,
    /// JSON table file with fields n, N and entries.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Scan every profile when validating the induced map.
    #[arg(long)]
    exhaustive_validation: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: Instance,
    /// Comma-separated suites; all of them by default.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random tables for the equivalence suite.
    #[arg(long, default_value_t = 1000)]
    random_tables: usize,
    /// Node budget for the enumeration suite.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    exhaustive_validation: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HomologyArgs {
    /// NA, NP or NProfiles.
    #[arg(long)]
    target: String,
    #[command(flatten)]
    instance: Instance,
    /// A single degree; all degrees by default.
    #[arg(short = 'k')]
    degree: Option<usize>,
    /// Write the faces of the complex as JSON.
    #[arg(long)]
    dump_complex: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    instance: Instance,
    /// Give up after this many search nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ArrangementArgs {
    #[command(flatten)]
    instance: Instance,
    #[command(flatten)]
    output: Output,
}

/// Exit statuses: 0 all checks pass, 1 a check failed, 2 bad input.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Envelope { .. }
            | Error::InvalidTable(_)
            | Error::Precondition(_)
            | Error::InvalidOrder { .. }
            | Error::AlternativeOutOfRange { .. }
            | Error::ProfileLength { .. }
            | Error::DegreeOutOfRange { .. }
            | Error::Io(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    let (doc, out) = match command {
        Command::Analyze(args) => {
            let (f, source) = load_rule(&args)?;
            let validation = args.exhaustive_validation.then_some(ValidationLevel::Exhaustive);
            (cmd_analyze(&f, &source, validation)?, args.output.out)
        }
        Command::Verify(args) => {
            let suites = if args.suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                args.suite.iter().map(|s| s.trim().parse()).collect::<Result<_, Error>>()?
            };
            let mut config = SuiteConfig::new(args.instance.n, args.instance.voters).with_suites(suites);
            config.seed = args.seed;
            config.random_tables = args.random_tables;
            config.node_budget = args.budget;
            if args.exhaustive_validation {
                config.validation_level = ValidationLevel::Exhaustive;
            }
            (cmd_verify(&config)?, args.output.out)
        }
        Command::Homology(args) => {
            let target: HomologyTarget = args.target.parse()?;
            let (doc, cx) = cmd_homology(target, args.instance.n, args.instance.voters, args.degree)?;
            if let Some(path) = args.dump_complex {
                let text = serde_json::to_string_pretty(&cx.dump()).map_err(Error::from)?;
                std::fs::write(path, text).map_err(Error::from)?;
            }
            (doc, args.output.out)
        }
        Command::EnumerateScf(args) => {
            (cmd_enumerate(args.instance.n, args.instance.voters, args.budget)?, args.output.out)
        }
        Command::Arrangement(args) => (cmd_arrangement(args.instance.n, args.instance.voters)?, args.output.out),
    };
    emit(&doc, out)?;
    Ok(doc.passed)
}

fn load_rule(args: &AnalyzeArgs) -> Result<(SocialChoiceFunction, String), Failure> {
    if let Some(path) = &args.table {
        let f = ScfTableFile::load(path)?;
        let mismatch = args.n.is_some_and(|n| n != f.alternatives()) || args.voters.is_some_and(|v| v != f.voters());
        if mismatch {
            return Err(Failure::Usage("-n/-N disagree with the table file".into()));
        }
        return Ok((f, path.display().to_string()));
    }
    let spec: RuleSpec = args.rule.as_deref().unwrap_or_default().parse()?;
    let (Some(n), Some(voters)) = (args.n, args.voters) else {
        return Err(Failure::Usage("--rule needs -n and -N".into()));
    };
    Ok((spec.build(n, voters)?, spec.to_string()))
}

fn emit(doc: &ReportDocument, out: Option<PathBuf>) -> Result<(), Failure> {
    let text = doc.to_json()?;
    match out {
        Some(path) => {
            std::fs::write(&path, text + "\n").map_err(Error::from)?;
            eprintln!("{}: {} -> {}", doc.command, if doc.passed { "pass" } else { "FAIL" }, path.display());
        }
        None => {
            if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(Error::from(e).into());
                }
            }
        }
    }
    Ok(())
}

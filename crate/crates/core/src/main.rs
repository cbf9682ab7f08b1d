use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubic_approx::cli::{
    report_json, run_classify, run_construct, run_estimate, run_liouville, run_report,
    write_outputs, ProblemSpec, RunOutput,
};
use cubic_approx::Error;

#[derive(Parser)]
#[command(
    name = "cubic-approx",
    version,
    about = "Approximation constants of rational points on cubic hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict the constant and build the matching curves.
    Classify(Common),
    /// Build the curves for the classified case.
    Construct(Common),
    /// Enumerate points and estimate the constant empirically.
    Estimate(Common),
    /// Check the Liouville-type lower bound empirically.
    Liouville(Common),
    /// Run everything and compare.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file of key=value lines.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Directory for report.json, points.csv and envelope.tsv.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cubic form, e.g. "x0^3 + x1^3 + x2^3 + x3^3".
    #[arg(long)]
    form: Option<String>,
    /// Point as colon-separated integers.
    #[arg(long)]
    point: Option<String>,
    /// "real" or "p=<prime>".
    #[arg(long)]
    place: Option<String>,
    #[arg(long)]
    height_bound: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated radii, e.g. "1/2,1/4".
    #[arg(long)]
    epsilons: Option<String>,
    #[arg(long)]
    attempts: Option<String>,
    #[arg(long)]
    search_bound: Option<String>,
    /// A rational line on X, e.g. "s; -s; t; -t".
    #[arg(long)]
    line: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    /// Comma-separated height bounds for the Liouville check.
    #[arg(long)]
    liouville_bounds: Option<String>,
}

impl Common {
    fn spec(&self) -> Result<ProblemSpec, Error> {
        let mut spec = match &self.problem {
            Some(p) => ProblemSpec::read(p)?,
            None => ProblemSpec::default(),
        };
        let flags = [
            ("form", &self.form),
            ("point", &self.point),
            ("place", &self.place),
            ("height_bound", &self.height_bound),
            ("seed", &self.seed),
            ("epsilons", &self.epsilons),
            ("attempts", &self.attempts),
            ("search_bound", &self.search_bound),
            ("line", &self.line),
            ("gamma", &self.gamma),
            ("liouville_bounds", &self.liouville_bounds),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                spec.set(k, v)?;
            }
        }
        Ok(spec)
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let (common, output) = match &cli.command {
        Command::Classify(c) => (
            c,
            RunOutput {
                report: run_classify(&c.spec()?)?,
                points: Vec::new(),
            },
        ),
        Command::Construct(c) => (
            c,
            RunOutput {
                report: run_construct(&c.spec()?)?,
                points: Vec::new(),
            },
        ),
        Command::Estimate(c) => (c, run_estimate(&c.spec()?)?),
        Command::Liouville(c) => (
            c,
            RunOutput {
                report: run_liouville(&c.spec()?)?,
                points: Vec::new(),
            },
        ),
        Command::Report(c) => (c, run_report(&c.spec()?)?),
    };
    match &common.out {
        Some(dir) => write_outputs(dir, &output.report, &output.points),
        None => {
            print!("{}", report_json(&output.report));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(match e {
                Error::Parse { .. } | Error::Invalid(_) | Error::Io(_) => 2,
                _ => 1,
            })
        }
    }
}

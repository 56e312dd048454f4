use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use reqtrace::java::ParseDiagnostic;
use reqtrace::pipeline::{cmd_evaluate, cmd_extract, cmd_trace, CodeSource, PipelineConfig, DEFAULT_THRESHOLD};
use reqtrace::Error;

#[derive(Parser)]
#[command(name = "reqtrace", version, about = "Recover requirement-to-code trace links with LSI and FCA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a Java source tree into a code-facts XML file.
    Extract {
        #[arg(long, value_name = "PATH")]
        src: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Recover trace links and write them to an output directory.
    Trace(TraceArgs),
    /// Score a links file against gold links.
    Evaluate {
        #[arg(long, value_name = "FILE")]
        links: PathBuf,
        #[arg(long, value_name = "FILE")]
        gold: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, value_name = "PATH", conflicts_with = "facts", required_unless_present = "facts")]
    src: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    facts: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    reqs: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, allow_negative_numbers = true)]
    threshold: f64,
    #[arg(long, value_name = "N")]
    topics: Option<usize>,
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, value_name = "FILE")]
    gold: Option<PathBuf>,
    #[arg(long)]
    dump_intermediates: bool,
}

impl TraceArgs {
    fn into_config(self) -> PipelineConfig {
        let source = match (self.src, self.facts) {
            (Some(src), _) => CodeSource::Src(src),
            (None, Some(facts)) => CodeSource::Facts(facts),
            (None, None) => unreachable!("clap requires one of --src and --facts"),
        };
        PipelineConfig {
            source,
            requirements_dir: self.reqs,
            threshold: self.threshold,
            topics: self.topics,
            stopwords_file: self.stopwords,
            output_dir: self.out,
            gold_file: self.gold,
            dump_intermediates: self.dump_intermediates,
        }
    }
}

fn report_diagnostics(diags: &[ParseDiagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn fmt_pct(v: Option<f64>) -> String {
    v.map_or_else(|| "N/A".into(), |x| format!("{:.0}%", x * 100.0))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Extract { src, out } => {
            let (metrics, diags) = cmd_extract(&src, &out)?;
            report_diagnostics(&diags);
            println!("{metrics}");
        }
        Command::Trace(args) => {
            let outcome = cmd_trace(&args.into_config())?;
            report_diagnostics(&outcome.diagnostics);
            let links = &outcome.artifacts.links;
            println!(
                "{} requirements, {} classes, {} links, {} concepts",
                links.links.len(),
                outcome.artifacts.context.attributes().len(),
                links.link_count(),
                outcome.artifacts.poset.concepts.len()
            );
            if let Some(r) = outcome.report {
                println!("precision {} recall {}", fmt_pct(r.precision), fmt_pct(r.recall));
            }
        }
        Command::Evaluate { links, gold, out } => {
            let r = cmd_evaluate(&links, &gold, &out)?;
            for s in &r.per_requirement {
                println!("{}\t{}\t{}", s.requirement, fmt_pct(s.precision), fmt_pct(s.recall));
            }
            println!("(micro)\t{}\t{}", fmt_pct(r.precision), fmt_pct(r.recall));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

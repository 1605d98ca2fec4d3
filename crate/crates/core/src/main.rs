use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use diffusion_auction::bench::{bench_instance, write_csv, BenchRow};
use diffusion_auction::dot::to_dot;
use diffusion_auction::generate::{gen_random, GenConfig};
use diffusion_auction::harness::{build_corpus, degree_cap, run_suites, CorpusConfig, Instance, Suite};
use diffusion_auction::io::{graph_to_json, parse_graph};
use diffusion_auction::mechanism::OutcomeRecord;
use diffusion_auction::rational::parse_rational;
use diffusion_auction::{MechanismKind, Rational};

#[derive(Parser)]
#[command(name = "diffusion-auction", version, about = "Diffusion auctions on social graphs")]
struct Cli {
    /// Tie-breaking order among equally good bidders and paths.
    #[arg(long, global = true, value_enum, default_value_t = TieBreak::Lexicographic)]
    tie_break: TieBreak,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TieBreak {
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run one mechanism on one graph and print the outcome.
    Run {
        #[arg(long)]
        mechanism: MechanismKind,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Check strategic properties over a generated corpus or given graphs.
    Verify {
        /// Comma-separated suites: ic, ir, dominance, floor, oracle,
        /// zero-payment, degeneracy, cuts, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Check these graph files instead of a generated corpus.
        #[arg(long)]
        graph: Vec<PathBuf>,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum)]
        output: Option<Output>,
    },
    /// Generate random graph files.
    Gen {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Allow negative edge weights (graphs with negative cycles are redrawn).
        #[arg(long)]
        allow_negative_weights: bool,
        /// Directory for `seed-<k>.json` files; a single graph goes to stdout
        /// when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate revenue and welfare of every mechanism against the baseline.
    Bench {
        /// Graph files; a generated corpus is used when none are given.
        #[arg(long)]
        graph: Vec<PathBuf>,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
    /// Write a graph in Graphviz DOT form.
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        /// Outcome JSON (as printed by `run`) whose path is highlighted.
        #[arg(long)]
        outcome: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Debug)]
struct CorpusArgs {
    /// Non-seller nodes per generated graph.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value = "1/2", value_parser = parse_amount)]
    edge_prob: Rational,
    #[arg(long, default_value_t = 10)]
    value_max: i64,
    #[arg(long, default_value_t = 5)]
    weight_max: i64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of graphs.
    #[arg(long)]
    seeds: Option<usize>,
}

impl CorpusArgs {
    fn config(&self, default_seeds: usize, allow_negative_weights: bool) -> CorpusConfig {
        CorpusConfig {
            seeds: self.seeds.unwrap_or(default_seeds),
            first_seed: self.seed,
            generator: GenConfig {
                n: self.n,
                edge_prob: self.edge_prob,
                value_max: self.value_max,
                weight_max: self.weight_max,
                seed: self.seed,
                allow_negative_weights,
            },
        }
    }
}

fn parse_amount(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Failures that map to exit code 1 rather than 2.
struct Violations;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let TieBreak::Lexicographic = cli.tie_break;
    match dispatch(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Violations)) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<Option<Violations>> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Run { mechanism, graph, output } => {
            let g = parse_graph(&graph)?;
            match output {
                Output::Json => {
                    let outcome = mechanism.build().run_or_no_sale(&g, &g.truthful_profile())?;
                    serde_json::to_writer_pretty(&mut out, &outcome.to_record(&g))?;
                    writeln!(out)?;
                }
                Output::Csv => {
                    let mut rows = bench_instance(&instance_name(&graph), &g, &[mechanism])?;
                    write_csv(&mut rows, &mut out)?;
                }
            }
        }
        Command::Verify { suite, graph, corpus, output } => {
            let suites = Suite::parse_list(&suite).map_err(anyhow::Error::msg)?;
            let instances =
                if graph.is_empty() { build_corpus(&corpus.config(500, false))? } else { load_instances(&graph)? };
            let reports = run_suites(&suites, &instances, degree_cap())?;
            if output == Some(Output::Json) {
                serde_json::to_writer_pretty(&mut out, &reports)?;
                writeln!(out)?;
            } else {
                for report in &reports {
                    writeln!(out, "{report}")?;
                    for v in report.violations.iter().take(5) {
                        let node = v.node.as_deref().unwrap_or("-");
                        writeln!(out, "  {} node {node}: {}", v.instance, v.detail)?;
                    }
                }
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(Some(Violations));
            }
        }
        Command::Gen { corpus, allow_negative_weights, out: dir } => {
            let config = corpus.config(1, allow_negative_weights);
            match dir {
                None if config.seeds == 1 => {
                    write!(out, "{}", graph_to_json(&gen_random(&config.generator)?))?;
                }
                None => bail!("--out DIR is required when generating more than one graph"),
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
                    for inst in build_corpus(&config)? {
                        let path = dir.join(format!("{}.json", inst.name));
                        fs::write(&path, graph_to_json(&inst.graph))
                            .with_context(|| format!("cannot write {}", path.display()))?;
                        writeln!(out, "{}", path.display())?;
                    }
                }
            }
        }
        Command::Bench { graph, corpus, output } => {
            let instances =
                if graph.is_empty() { build_corpus(&corpus.config(20, false))? } else { load_instances(&graph)? };
            let mut rows: Vec<BenchRow> = Vec::new();
            for inst in &instances {
                rows.extend(bench_instance(&inst.name, &inst.graph, &MechanismKind::ALL)?);
            }
            match output {
                Output::Csv => write_csv(&mut rows, &mut out)?,
                Output::Json => {
                    rows.sort_by(|a, b| a.instance.cmp(&b.instance));
                    serde_json::to_writer_pretty(&mut out, &rows)?;
                    writeln!(out)?;
                }
            }
        }
        Command::ExportDot { graph, outcome, out: target } => {
            let g = parse_graph(&graph)?;
            let path = match outcome {
                Some(file) => {
                    let text = fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;
                    let record: OutcomeRecord = serde_json::from_str(&text)
                        .with_context(|| format!("{} is not an outcome file", file.display()))?;
                    for id in &record.path {
                        if g.node(id).is_none() {
                            bail!("outcome path node `{id}` is not in the graph");
                        }
                    }
                    Some(record.path)
                }
                None => None,
            };
            let dot = to_dot(&g, path.as_deref());
            match target {
                Some(file) => fs::write(&file, dot).with_context(|| format!("cannot write {}", file.display()))?,
                None => write!(out, "{dot}")?,
            }
        }
    }
    Ok(None)
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_instances(paths: &[PathBuf]) -> Result<Vec<Instance>> {
    paths.iter().map(|p| Ok(Instance::new(instance_name(p), parse_graph(p)?))).collect()
}

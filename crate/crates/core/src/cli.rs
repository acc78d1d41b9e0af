// SPDX-License-Identifier: Apache-2.0
//! Command-line interface of the `gam` binary.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::ccns::{ccns_matrix, continuous_ccns_matrix, CcnsOptions};
use crate::error::{GamError, Result};
use crate::gradient::{finite_difference_check, WeightedMetric};
use crate::graph::WeightedGraph;
use crate::homophily::{continuous_homophily, continuous_regression_homophily, node_homophily, regression_homophily};
use crate::io::parse::{
    parse_features, parse_labels, parse_splits, write_edge_list, write_features, write_labels, write_splits,
    WeightedLayout,
};
use crate::io::report::{Record, ReportFormat, ReportWriter};
use crate::io::snapshot::{load_graph, load_snapshot_sequence, AnyGraph, GraphLayout};
use crate::labels::{NodeLabels, NodeSet, Split, SplitMask, Task};
use crate::neighborhood::KHopExpander;
use crate::synth::{generate_synthetic, knn_graph, random_splits, SyntheticSpec, SyntheticTask};
use crate::trajectory::{analyze_trajectory, TrackedMetric, TrajectoryOptions};

#[derive(Debug, Parser)]
#[command(name = "gam", version, about = "Graph adjacency metrics: homophily and cross-class neighborhood similarity")]
pub struct Cli {
    /// Worker threads for metric computation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate metrics overall and per split.
    Evaluate(EvaluateArgs),
    /// Track metrics over a snapshot manifest and correlate them with performance.
    Trajectory(TrajectoryArgs),
    /// Generate a synthetic population graph dataset.
    Synth(SynthArgs),
    /// Build a Euclidean kNN graph from a feature table.
    Knn(KnnArgs),
    /// Check analytic weight gradients against central differences.
    Gradcheck(GradcheckArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    #[arg(long)]
    pub graph: PathBuf,
    /// Treat the graph file as weighted.
    #[arg(long)]
    pub weighted: bool,
    /// Weighted file layout.
    #[arg(long, default_value = "triplets")]
    pub layout: WeightedLayout,
}

impl GraphInput {
    fn layout(&self) -> GraphLayout {
        if self.weighted {
            GraphLayout::Weighted(self.layout)
        } else {
            GraphLayout::Edges
        }
    }
}

#[derive(Debug, Args)]
pub struct LabelInput {
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, default_value = "classification")]
    pub task: Task,
}

#[derive(Debug, Args)]
pub struct ReportOutput {
    #[arg(long, default_value = "jsonl")]
    pub format: ReportFormat,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub labels: LabelInput,
    #[arg(long)]
    pub splits: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k_max: usize,
    /// Leave u = v pairs out of the CCNS diagonal.
    #[arg(long)]
    pub exclude_self_pairs: bool,
    #[command(flatten)]
    pub output: ReportOutput,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Snapshot graphs are weighted (unless a manifest line sets `layout`).
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, default_value = "triplets")]
    pub layout: WeightedLayout,
    #[command(flatten)]
    pub labels: LabelInput,
    /// Average over one split only.
    #[arg(long, requires = "splits")]
    pub split: Option<Split>,
    #[arg(long)]
    pub splits: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "homophily,dccns")]
    pub metrics: Vec<TrackedMetric>,
    /// Performance values are errors: correlate against their negation.
    #[arg(long)]
    pub lower_is_better: bool,
    #[command(flatten)]
    pub output: ReportOutput,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub num_nodes: usize,
    #[arg(long, default_value = "classification")]
    pub task: Task,
    #[arg(long, default_value_t = 2)]
    pub num_classes: usize,
    #[arg(long, default_value_t = 50)]
    pub num_features: usize,
    #[arg(long, default_value_t = 5)]
    pub num_informative: usize,
    #[arg(long, default_value_t = 5)]
    pub knn_k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory receiving features.txt, labels.txt, splits.txt and graph.txt.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct KnnArgs {
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Edge list output (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GradcheckArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub labels: LabelInput,
    #[arg(long, default_value_t = 1e-6)]
    pub step: f64,
    /// Maximum accepted relative error.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| GamError::io(path, e))
}

/// Destination for command output: a file or the supplied writer.
struct Sink<'a> {
    name: PathBuf,
    out: Box<dyn Write + 'a>,
}

impl<'a> Sink<'a> {
    fn new(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Self> {
        Ok(match path {
            Some(p) => Sink {
                name: p.to_path_buf(),
                out: Box::new(BufWriter::new(File::create(p).map_err(|e| GamError::io(p, e))?)),
            },
            None => Sink { name: PathBuf::from("<stdout>"), out: Box::new(stdout) },
        })
    }

    fn err(&self) -> impl Fn(std::io::Error) -> GamError + '_ {
        |e| GamError::io(&self.name, e)
    }
}

fn write_records(records: &[Record], output: &ReportOutput, stdout: &mut dyn Write) -> Result<()> {
    let sink = Sink::new(output.out.as_deref(), stdout)?;
    let name = sink.name.clone();
    let mut writer = ReportWriter::new(sink.out, output.format);
    for r in records {
        writer.write(r).map_err(|e| GamError::io(&name, e))?;
    }
    writer.flush().map_err(|e| GamError::io(&name, e))
}

/// Run a parsed command, writing reports to `stdout` unless `--out` is given.
pub fn run(cli: Cli, stdout: &mut (dyn Write + Send)) -> Result<()> {
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            builder = builder.num_threads(n);
        }
        builder.build().map_err(|e| GamError::input(format!("cannot start thread pool: {e}")))?
    };
    pool.install(move || match cli.command {
        Command::Evaluate(a) => evaluate(&a, stdout),
        Command::Trajectory(a) => trajectory(&a, stdout),
        Command::Synth(a) => synth(&a),
        Command::Knn(a) => knn(&a, stdout),
        Command::Gradcheck(a) => gradcheck(&a, stdout),
    })
}

fn load_labels(input: &LabelInput, num_nodes: usize) -> Result<NodeLabels> {
    parse_labels(open(&input.labels)?, input.task, Some(num_nodes))
}

/// The overall set (`None`) followed by each nonempty split.
fn evaluation_sets(splits: Option<&Path>, num_nodes: usize) -> Result<Vec<(String, Option<NodeSet>)>> {
    let mut sets = vec![("all".to_string(), None)];
    if let Some(path) = splits {
        let mask = parse_splits(open(path)?, Some(num_nodes))?;
        for split in Split::EVALUATED {
            if mask.count(split) > 0 {
                sets.push((split.to_string(), Some(mask.nodes(split)?)));
            }
        }
    }
    Ok(sets)
}

/// A class missing from one split makes that split's CCNS undefined; skip it
/// rather than failing the whole evaluation. The overall set still errors.
fn ccns_or_skip(result: Result<Record>, split: &str) -> Result<Option<Record>> {
    match result {
        Ok(r) => Ok(Some(r)),
        Err(GamError::EmptyClass { class }) if split != "all" => {
            log::warn!("skipping CCNS on split {split}: class {class} has no member nodes there");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn evaluate(a: &EvaluateArgs, stdout: &mut dyn Write) -> Result<()> {
    if a.k_max == 0 {
        return Err(GamError::input("--k-max must be at least 1"));
    }
    let graph = load_graph(&a.graph.graph, a.graph.layout())?;
    let labels = load_labels(&a.labels, graph.num_nodes())?;
    let sets = evaluation_sets(a.splits.as_deref(), graph.num_nodes())?;
    let options = CcnsOptions { include_self_pairs: !a.exclude_self_pairs };
    let classification = labels.task() == Task::Classification;
    let mut records = Vec::new();
    match &graph {
        AnyGraph::Discrete(g) => {
            for k in 1..=a.k_max {
                let nbh = KHopExpander::new(g, k)?;
                for (split, set) in &sets {
                    let restrict = set.as_ref();
                    if classification {
                        let h = node_homophily(&labels, &nbh, restrict)?;
                        records.push(Record::homophily("node_homophily", k, split, &h));
                        let m = ccns_matrix(&labels, &nbh, restrict, options).map(|m| Record::ccns("ccns", split, &m));
                        records.extend(ccns_or_skip(m, split)?);
                    } else {
                        let h = regression_homophily(&labels, &nbh, restrict)?;
                        records.push(Record::homophily("regression_homophily", k, split, &h));
                    }
                }
            }
        }
        AnyGraph::Weighted(g) => {
            if a.k_max > 1 {
                return Err(GamError::input(
                    "weighted graphs support k = 1 only; multi-hop weighted metrics are a deferred extension",
                ));
            }
            for (split, set) in &sets {
                let restrict = set.as_ref();
                if classification {
                    let h = continuous_homophily(g, &labels, restrict)?;
                    records.push(Record::homophily("continuous_homophily", 1, split, &h));
                    let m = continuous_ccns_matrix(g, &labels, restrict, options)
                        .map(|m| Record::ccns("continuous_ccns", split, &m));
                    records.extend(ccns_or_skip(m, split)?);
                } else {
                    let h = continuous_regression_homophily(g, &labels, restrict)?;
                    records.push(Record::homophily("continuous_regression_homophily", 1, split, &h));
                }
            }
        }
    }
    write_records(&records, &a.output, stdout)
}

fn trajectory(a: &TrajectoryArgs, stdout: &mut dyn Write) -> Result<()> {
    let layout = if a.weighted { GraphLayout::Weighted(a.layout) } else { GraphLayout::Edges };
    let seq = load_snapshot_sequence(&a.manifest, layout)?;
    let labels = load_labels(&a.labels, seq.num_nodes())?;
    let (restrict, split_name) = match (a.split, &a.splits) {
        (Some(split), Some(path)) => {
            let mask: SplitMask = parse_splits(open(path)?, Some(seq.num_nodes()))?;
            (Some(mask.nodes(split)?), Some(split.to_string()))
        }
        _ => (None, None),
    };
    let mut metrics = a.metrics.clone();
    metrics.dedup();
    if labels.task() == Task::Regression && metrics.contains(&TrackedMetric::CcnsDistance) {
        log::warn!("CCNS distance needs class labels; tracking homophily only");
        metrics.retain(|&m| m != TrackedMetric::CcnsDistance);
    }
    let opts = TrajectoryOptions {
        metrics,
        lower_is_better: a.lower_is_better,
        restrict,
        split_name,
        ccns: CcnsOptions::default(),
    };
    let analysis = analyze_trajectory(&seq, &labels, &opts)?;
    write_records(&analysis.records(), &a.output, stdout)
}

fn synth(a: &SynthArgs) -> Result<()> {
    let task = match a.task {
        Task::Classification => SyntheticTask::Classification { num_classes: a.num_classes },
        Task::Regression => SyntheticTask::Regression,
    };
    let spec = SyntheticSpec {
        num_nodes: a.num_nodes,
        num_features: a.num_features,
        num_informative: a.num_informative,
        task,
        knn_k: a.knn_k,
        seed: a.seed,
    };
    let data = generate_synthetic(&spec)?;
    let splits = random_splits(a.num_nodes, 0.6, 0.2, a.seed)?;
    fs::create_dir_all(&a.out).map_err(|e| GamError::io(&a.out, e))?;
    let write = |name: &str, f: &dyn Fn(&mut dyn Write) -> std::io::Result<()>| -> Result<()> {
        let path = a.out.join(name);
        let file = File::create(&path).map_err(|e| GamError::io(&path, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w).and_then(|_| w.flush()).map_err(|e| GamError::io(&path, e))
    };
    write("features.txt", &|w| write_features(&data.features, w))?;
    write("labels.txt", &|w| write_labels(&data.labels, w))?;
    write("splits.txt", &|w| write_splits(&splits, w))?;
    write("graph.txt", &|w| write_edge_list(&data.graph, w))?;
    Ok(())
}

fn knn(a: &KnnArgs, stdout: &mut dyn Write) -> Result<()> {
    let features = parse_features(open(&a.features)?)?;
    let graph = knn_graph(&features, a.k)?;
    let mut sink = Sink::new(a.out.as_deref(), stdout)?;
    let result = write_edge_list(&graph, &mut sink.out).and_then(|_| sink.out.flush());
    result.map_err(sink.err())
}

fn gradcheck(a: &GradcheckArgs, stdout: &mut dyn Write) -> Result<()> {
    let graph = match load_graph(&a.graph.graph, a.graph.layout())? {
        AnyGraph::Weighted(g) => g,
        AnyGraph::Discrete(g) => WeightedGraph::from_discrete(&g, 1.0)?,
    };
    let labels = load_labels(&a.labels, graph.num_nodes())?;
    let metric = match labels.task() {
        Task::Classification => WeightedMetric::ContinuousHomophily,
        Task::Regression => WeightedMetric::ContinuousRegressionHomophily,
    };
    let report = finite_difference_check(&graph, &labels, metric, a.step)?;
    let mut sink = Sink::new(a.out.as_deref(), stdout)?;
    let result = serde_json::to_writer(&mut sink.out, &report)
        .map_err(std::io::Error::from)
        .and_then(|_| sink.out.write_all(b"\n"))
        .and_then(|_| sink.out.flush());
    result.map_err(sink.err())?;
    if report.max_relative_error > a.tolerance {
        return Err(GamError::Invariant(format!(
            "analytic gradient disagrees with finite differences: max relative error {:e} > {:e}",
            report.max_relative_error, a.tolerance
        )));
    }
    Ok(())
}

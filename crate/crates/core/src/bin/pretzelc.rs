use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use pretzelc::cache::Cache;
use pretzelc::classify::{analyze_with, enumerate_timed, Bounds, ClassRecord, Donaldson, Status, Verdict};
use pretzelc::dot::to_dot;
use pretzelc::lattice::{find_embedding, wu_class, SearchConfig, SearchOutcome};
use pretzelc::params::{classify_type, normalize, ParamList};
use pretzelc::plumbing::{negative_definite_graph, StarGraph};
use pretzelc::report::{write_csv, write_jsonl, AnalysisRecord};

/// Searches on graphs above this rank need an explicit node limit.
const UNLIMITED_RANK: usize = 12;

#[derive(Parser)]
#[command(name = "pretzelc", version, about = "Fiberedness and slice obstructions for pretzel knots")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Stop the embedding search after this many nodes
    #[arg(long, env = "PRETZELC_NODE_LIMIT")]
    node_limit: Option<u64>,
    /// Allow unbounded searches on graphs of rank above 12
    #[arg(long)]
    unlimited: bool,
    /// Oracle mode: no symmetry breaking or pruning
    #[arg(long)]
    exhaustive: bool,
    /// Disable the Wu-class cut
    #[arg(long)]
    no_wu_pruning: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            wu_pruning: !self.no_wu_pruning,
            node_limit: if self.unlimited { None } else { self.node_limit.filter(|&n| n > 0) },
            exhaustive: self.exhaustive,
            parallel: false,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type, fiberedness, obstructions and family of one knot
    Analyze {
        /// Parameters, e.g. "1,1,1,1,-3,-3,-3" or "[1^4],-3,-3,-3"
        #[arg(allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        json: bool,
        /// Include wall time
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Embedding witness or exhaustion certificate for the plumbing lattice
    Embed {
        #[arg(allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The canonical negative definite plumbing graph
    Graph {
        #[arg(allow_hyphen_values = true)]
        params: String,
        /// Graphviz output with the Wu set highlighted
        #[arg(long)]
        dot: bool,
    },
    /// One record per mutation class within bounds
    Enumerate {
        #[arg(long)]
        max_strands: usize,
        #[arg(long)]
        max_param: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for the embedding cache
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Fill the ms column
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// Input problems exit with 2; everything else that fails is reported the
/// same way since it also means no verdict was produced.
struct InputError(String);

fn input_err(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

impl From<anyhow::Error> for InputError {
    fn from(e: anyhow::Error) -> Self {
        InputError(format!("{e:#}"))
    }
}

fn parse_knot(s: &str) -> Result<ParamList, InputError> {
    let p: ParamList = s.parse().map_err(input_err)?;
    let n = normalize(&p);
    if !classify_type(&n).is_knot() {
        return Err(InputError(format!("P({p}) is a link, not a knot")));
    }
    Ok(p)
}

fn rank_guard(g: &StarGraph, args: &SearchArgs) -> Result<(), InputError> {
    if g.rank() > UNLIMITED_RANK && args.config().node_limit.is_none() && !args.unlimited {
        return Err(InputError(format!(
            "plumbing graph has rank {} > {UNLIMITED_RANK}; pass --node-limit N or --unlimited",
            g.rank()
        )));
    }
    Ok(())
}

fn print_human(v: &Verdict, ms: Option<u64>) {
    println!("P({})", v.input);
    println!("  normalized   {}", v.normalized);
    println!("  type         {}", v.kind);
    println!("  fibered      {} ({})", v.fibered.status, v.fibered.subcase);
    if let Some(o) = &v.obstructions {
        let sq = if o.det_square { "square" } else { "not a square" };
        println!("  determinant  {} ({sq})", o.det);
        println!("  signature    {}", o.signature);
        println!("  donaldson    {} ({} nodes)", o.donaldson.as_str(), o.nodes);
    }
    match &v.family {
        Some(f) => println!("  family       {f}"),
        None => println!("  family       none"),
    }
    for f in v.family_matches.iter().skip(1) {
        println!("               also {f}");
    }
    println!("  exceptional  {}", if v.exceptional { "yes" } else { "no" });
    println!("  ribbon moves {}", if v.detectably_ribbon { "reduce to a known base" } else { "inconclusive" });
    println!("  status       {}", v.status);
    if let Some(ms) = ms {
        println!("  time         {ms} ms");
    }
}

fn cmd_analyze(params: &str, json: bool, timings: bool, args: &SearchArgs) -> Result<ExitCode, InputError> {
    let p = parse_knot(params)?;
    let cfg = args.config();
    let start = Instant::now();
    let refused = AtomicBool::new(false);
    let v = analyze_with(&p, |g| {
        if rank_guard(g, args).is_err() {
            refused.store(true, Ordering::Relaxed);
            return SearchOutcome::Inconclusive { nodes: 0 };
        }
        find_embedding(g, &cfg)
    })
    .map_err(input_err)?;
    if refused.load(Ordering::Relaxed) {
        let g = negative_definite_graph(&v.normalized).map_err(input_err)?;
        rank_guard(&g, args)?;
    }
    let ms = timings.then(|| start.elapsed().as_millis() as u64);
    if json {
        let rec = AnalysisRecord::new(params, &v, ms);
        println!("{}", serde_json::to_string_pretty(&rec).map_err(input_err)?);
    } else {
        print_human(&v, ms);
    }
    Ok(if v.status == Status::Inconclusive { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn cmd_embed(params: &str, json: bool, args: &SearchArgs) -> Result<ExitCode, InputError> {
    let p = parse_knot(params)?;
    let g = negative_definite_graph(&normalize(&p)).map_err(input_err)?;
    rank_guard(&g, args)?;
    let out = find_embedding(&g, &args.config());
    if json {
        println!("{}", serde_json::to_string(&out).map_err(input_err)?);
    } else {
        let whose = if g.mirrored { " (graph of the mirror)" } else { "" };
        match &out {
            SearchOutcome::Embedding { embedding, nodes } => {
                println!("embedding of P({p}){whose}, rank {}, {nodes} nodes", g.rank());
                let width = embedding.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
                for (w, row) in g.weights().iter().zip(&embedding.rows) {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
                    println!("  [{w:>3}]  {}", cells.join(" "));
                }
            }
            SearchOutcome::NoEmbedding { nodes } => println!("NO EMBEDDING ({nodes} nodes searched)"),
            SearchOutcome::Inconclusive { nodes } => println!("INCONCLUSIVE (node limit hit after {nodes} nodes)"),
        }
    }
    Ok(match out {
        SearchOutcome::Inconclusive { .. } => ExitCode::from(3),
        _ => ExitCode::SUCCESS,
    })
}

fn cmd_graph(params: &str, dot: bool) -> Result<ExitCode, InputError> {
    let p = parse_knot(params)?;
    let g = negative_definite_graph(&normalize(&p)).map_err(input_err)?;
    let wu = wu_class(&g).ok();
    let title = format!("P({p}){}", if g.mirrored { " mirrored" } else { "" });
    if dot {
        print!("{}", to_dot(&g, wu.as_ref(), &title));
    } else {
        println!("{title}");
        let mark = |i: usize| if wu.as_ref().is_some_and(|w| w.contains(i)) { "*" } else { "" };
        println!("  center {}{}", g.center_weight, mark(0));
        let mut next = 1;
        for chain in &g.legs {
            let cells: Vec<String> = chain
                .iter()
                .enumerate()
                .map(|(j, w)| format!("{w}{}", mark(next + j)))
                .collect();
            next += chain.len();
            println!("  leg    {}", cells.join(" - "));
        }
        println!("  (* = Wu class)");
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    max_strands: usize,
    max_param: i64,
    out: Option<PathBuf>,
    format: Format,
    jobs: Option<usize>,
    cache: Option<PathBuf>,
    timings: bool,
    args: &SearchArgs,
) -> Result<ExitCode, InputError> {
    if max_strands < 3 || max_param < 2 {
        return Err(InputError("need --max-strands >= 3 and --max-param >= 2".into()));
    }
    let cfg = args.config();
    let cache = cache.map(|d| Cache::open(&d)).transpose().map_err(input_err)?;
    let bounds = Bounds {
        max_strands,
        max_abs_param: max_param,
    };
    let run = || {
        enumerate_timed(bounds, |g| match &cache {
            Some(c) => c.search(g, &cfg),
            None => find_embedding(g, &cfg),
        })
    };
    let records = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .context("building worker pool")?
            .install(run),
        None => run(),
    }
    .map_err(input_err)?;
    if let Some(c) = &cache {
        c.flush().map_err(input_err)?;
    }
    let rows: Vec<(ClassRecord, Option<u64>)> =
        records.into_iter().map(|(r, ms)| (r, timings.then_some(ms))).collect();

    let write = |w: Box<dyn Write>| match format {
        Format::Csv => write_csv(w, &rows),
        Format::Jsonl => write_jsonl(w, &rows),
    };
    match &out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            write(Box::new(BufWriter::new(f))).map_err(input_err)?;
        }
        None => write(Box::new(BufWriter::new(io::stdout().lock()))).map_err(input_err)?,
    }

    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (r, _) in &rows {
        *counts.entry(r.verdict.status.to_string()).or_default() += 1;
    }
    let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{k}={n}")).collect();
    let summary = format!("{} classes: {}", rows.len(), parts.join(", "));
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    let inconclusive = rows
        .iter()
        .any(|(r, _)| r.verdict.obstructions.as_ref().is_some_and(|o| o.donaldson == Donaldson::Inconclusive));
    Ok(if inconclusive { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Analyze {
            params,
            json,
            timings,
            search,
        } => cmd_analyze(params, *json, *timings, search),
        Cmd::Embed { params, json, search } => cmd_embed(params, *json, search),
        Cmd::Graph { params, dot } => cmd_graph(params, *dot),
        Cmd::Enumerate {
            max_strands,
            max_param,
            out,
            format,
            jobs,
            cache,
            timings,
            search,
        } => cmd_enumerate(*max_strands, *max_param, out.clone(), *format, *jobs, cache.clone(), *timings, search),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

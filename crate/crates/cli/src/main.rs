use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use critsets::crowns::{crown_reduce_vertex_cover, KernelStatus, KernelStep};
use critsets::enumerate::{exhaustive, GraphClass, RandomCorpus, MAX_CANONICAL_ORDER};
use critsets::independence::alpha;
use critsets::io::{parse_graph, render_edge_list, Format};
use critsets::report::{analyze, audit, render_text, Limited, OutputFormat, RunConfig, SCHEMA};
use critsets::scan::{scan, ScanClass};
use critsets::theorems::{verify_corpus, Check, CheckCount, Counterexample};
use critsets::{Error, Graph, Limits};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;

#[derive(Parser)]
#[command(name = "critsets", version, about = "Critical sets, crowns and local maximum independent sets")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest graph for exact independence number.
    #[arg(long, global = true, default_value_t = Limits::default().exact)]
    exact_limit: usize,
    /// Largest graph for listing maximum and local maximum independent sets.
    #[arg(long, global = true, default_value_t = Limits::default().enumeration)]
    enumeration_limit: usize,
    /// Largest graph for whole-family computations.
    #[arg(long, global = true, default_value_t = Limits::default().family)]
    family_limit: usize,
    /// Worker threads.
    #[arg(long, global = true, env = "CRITSETS_THREADS")]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one graph.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "edgelist")]
        format: Format,
        /// Re-ingest the JSON report and re-validate every listed set.
        #[arg(long)]
        audit: bool,
    },
    /// Re-validate a saved JSON report against its graph.
    Audit {
        file: PathBuf,
        report: PathBuf,
        #[arg(long, default_value = "edgelist")]
        format: Format,
    },
    /// Check every theorem over a corpus of graphs.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Where to write the first counterexample (default: stderr).
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Crown-reduction kernel for Vertex Cover with budget k.
    Kernelize {
        file: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value = "edgelist")]
        format: Format,
        /// Kernel edge list (default: <file>.kernel).
        #[arg(long)]
        kernel: Option<PathBuf>,
        /// JSON trace (default: <file>.trace.json).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exhaustive scan for graphs with CritIndep = Crown and for triangle-free
    /// graphs splitting the greedoid conjecture.
    Scan {
        #[arg(long)]
        max_n: usize,
        #[arg(long, conflicts_with = "bipartite")]
        triangle_free: bool,
        #[arg(long)]
        bipartite: bool,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Number of random graphs (with --max-n and --seed).
    #[arg(long, requires = "max_n")]
    random: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// All graphs on 1..=K vertices.
    #[arg(long)]
    exhaustive: Option<usize>,
    /// All trees on 1..=K vertices.
    #[arg(long)]
    tree: Option<usize>,
    /// All bipartite graphs on 1..=K vertices.
    #[arg(long)]
    bipartite: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Limit(String),
    Verify(String),
    Infeasible,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::Limit(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = match f {
                Failure::Input(m) => {
                    eprintln!("error: {m}");
                    EXIT_INPUT
                }
                Failure::Limit(m) => {
                    eprintln!("limit exceeded: {m}");
                    EXIT_LIMIT
                }
                Failure::Verify(m) => {
                    eprintln!("verification failed: {m}");
                    EXIT_VERIFY
                }
                Failure::Infeasible => EXIT_INFEASIBLE,
            };
            ExitCode::from(code)
        }
    }
}

fn config(opts: &GlobalOpts) -> Outcome<RunConfig> {
    let threads = opts.threads.unwrap_or(1);
    let c = RunConfig {
        limits: Limits {
            exact: opts.exact_limit,
            enumeration: opts.enumeration_limit,
            family: opts.family_limit,
        },
        format: if opts.json { OutputFormat::Json } else { OutputFormat::Text },
        threads,
        ..RunConfig::default()
    };
    c.validate()?;
    if let Some(t) = opts.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
    }
    Ok(c)
}

fn run(cli: Cli) -> Outcome<()> {
    let mut cfg = config(&cli.opts)?;
    match cli.command {
        Command::Analyze { file, format, audit } => cmd_analyze(&file, format, audit, &cfg),
        Command::Audit { file, report, format } => cmd_audit(&file, &report, format, &cfg),
        Command::Verify { corpus, certificate } => cmd_verify(&corpus, certificate.as_deref(), &mut cfg),
        Command::Kernelize {
            file,
            k,
            format,
            kernel,
            trace,
        } => cmd_kernelize(&file, k, format, kernel, trace, &cfg),
        Command::Scan {
            max_n,
            triangle_free,
            bipartite,
        } => {
            let class = if triangle_free {
                ScanClass::TriangleFree
            } else if bipartite {
                ScanClass::Bipartite
            } else {
                ScanClass::All
            };
            cfg.max_n = max_n;
            cmd_scan(max_n, class, &cfg)
        }
    }
}

fn read_graph(path: &Path, format: Format) -> Outcome<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text, format).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Outcome<()> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn cmd_analyze(path: &Path, format: Format, with_audit: bool, cfg: &RunConfig) -> Outcome<()> {
    let g = read_graph(path, format)?;
    let report = analyze(&g, cfg)?;
    let json = to_json(&report);
    match cfg.format {
        OutputFormat::Json => println!("{json}"),
        OutputFormat::Text => print!("{}", render_text(&g, &report)),
    }
    if with_audit {
        let value: Value = serde_json::from_str(&json).expect("own report parses");
        let a = audit(&g, &value, &cfg.limits)?;
        if !a.ok() {
            return Err(Failure::Verify(format!("audit: {}", a.problems.join("; "))));
        }
        eprintln!("audit: {} fields re-validated", a.checked);
    }
    if report.failed_checks() > 0 {
        return Err(Failure::Verify(format!("{} theorem checks failed", report.failed_checks())));
    }
    Ok(())
}

fn cmd_audit(path: &Path, report: &Path, format: Format, cfg: &RunConfig) -> Outcome<()> {
    let g = read_graph(path, format)?;
    let text = fs::read_to_string(report).map_err(|e| Failure::Input(format!("{}: {e}", report.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", report.display())))?;
    let a = audit(&g, &value, &cfg.limits)?;
    match cfg.format {
        OutputFormat::Json => println!("{}", to_json(&a)),
        OutputFormat::Text => {
            for p in &a.problems {
                println!("problem: {p}");
            }
            println!("audit: {} fields checked, {} problems", a.checked, a.problems.len());
        }
    }
    if a.ok() {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{} audit problems", a.problems.len())))
    }
}

#[derive(Serialize)]
struct OrderCount {
    n: usize,
    graphs: usize,
    connected: usize,
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    schema: u32,
    config: &'a RunConfig,
    corpus: String,
    graphs: usize,
    connected: usize,
    orders: Vec<OrderCount>,
    checks: Vec<(Check, CheckCount)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<&'a Counterexample>,
}

fn corpus(args: &CorpusArgs, cfg: &mut RunConfig) -> Outcome<(String, Vec<Graph>)> {
    let bounded = |k: usize| {
        if k > MAX_CANONICAL_ORDER - 1 {
            Err(Failure::Limit(format!("exhaustive corpora need K <= {}", MAX_CANONICAL_ORDER - 1)))
        } else {
            Ok(k)
        }
    };
    let chosen = [args.random, args.exhaustive, args.tree, args.bipartite].iter().filter(|x| x.is_some()).count();
    if chosen != 1 {
        return Err(Failure::Input(
            "choose exactly one of --random, --exhaustive, --tree, --bipartite".into(),
        ));
    }
    if args.max_n.is_some() && args.random.is_none() {
        return Err(Failure::Input("--max-n applies to --random only".into()));
    }
    if let Some(count) = args.random {
        let max_n = args.max_n.unwrap_or(0);
        cfg.seed = args.seed;
        cfg.random_count = count;
        cfg.max_n = max_n;
        let graphs = RandomCorpus {
            count,
            min_n: 1,
            max_n,
            seed: args.seed,
        }
        .generate()?;
        return Ok((format!("random: {count} graphs, n <= {max_n}, seed {}", args.seed), graphs));
    }
    let (label, class, k) = if let Some(k) = args.exhaustive {
        ("all graphs", GraphClass::All, k)
    } else if let Some(k) = args.tree {
        ("trees", GraphClass::Tree, k)
    } else if let Some(k) = args.bipartite {
        ("bipartite graphs", GraphClass::Bipartite, k)
    } else {
        unreachable!("exactly one corpus option is set")
    };
    let k = bounded(k)?;
    cfg.max_n = k;
    Ok((format!("exhaustive: {label}, n <= {k}"), exhaustive(k, class)?))
}

fn cmd_verify(args: &CorpusArgs, certificate: Option<&Path>, cfg: &mut RunConfig) -> Outcome<()> {
    let (label, graphs) = corpus(args, cfg)?;
    let tally = verify_corpus(&graphs, &Check::ALL, cfg.limits)?;
    let top = graphs.iter().map(Graph::n).max().unwrap_or(0);
    let mut orders: Vec<OrderCount> = (1..=top)
        .map(|n| OrderCount {
            n,
            graphs: 0,
            connected: 0,
        })
        .collect();
    for g in graphs.iter().filter(|g| g.n() > 0) {
        let o = &mut orders[g.n() - 1];
        o.graphs += 1;
        o.connected += usize::from(g.is_connected());
    }
    let summary = VerifySummary {
        schema: SCHEMA,
        config: cfg,
        corpus: label,
        graphs: graphs.len(),
        connected: orders.iter().map(|o| o.connected).sum(),
        orders,
        checks: Check::ALL.iter().map(|&c| (c, tally.count(c))).collect(),
        first_failure: tally.first_failure.as_ref().map(|(_, c)| c),
    };
    match cfg.format {
        OutputFormat::Json => println!("{}", to_json(&summary)),
        OutputFormat::Text => {
            println!("corpus: {}", summary.corpus);
            println!("graphs: {} ({} connected)", summary.graphs, summary.connected);
            for o in &summary.orders {
                println!("  n = {:>2}: {} graphs, {} connected", o.n, o.graphs, o.connected);
            }
            println!("{:<40} {:>8} {:>8} {:>8}", "check", "passed", "skipped", "failed");
            for (c, n) in &summary.checks {
                println!("{:<40} {:>8} {:>8} {:>8}", c.to_string(), n.passed, n.skipped, n.failed);
            }
            println!("result: {}", if tally.failures() == 0 { "pass" } else { "FAIL" });
        }
    }
    if let Some((_, cx)) = &tally.first_failure {
        let cert = to_json(cx);
        match certificate {
            Some(p) => write_file(p, &cert)?,
            None => eprintln!("{cert}"),
        }
        return Err(Failure::Verify(format!("{} check failures; first: {}", tally.failures(), cx.check)));
    }
    Ok(())
}

#[derive(Serialize)]
struct KernelTrace<'a> {
    schema: u32,
    config: &'a RunConfig,
    n: usize,
    m: usize,
    k: i64,
    status: KernelStatus,
    budget: i64,
    removed_cover_size: usize,
    kernel_n: usize,
    kernel_m: usize,
    /// Kernel vertex -> input vertex.
    vertex_map: &'a [usize],
    steps: &'a [KernelStep],
    identity: Limited<CoverIdentity>,
}

/// `τ(G) = τ(kernel) + Σ|N(S_i)|`.
#[derive(Serialize)]
struct CoverIdentity {
    tau: usize,
    tau_kernel: usize,
    removed: usize,
    holds: bool,
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_kernelize(
    path: &Path,
    k: i64,
    format: Format,
    kernel_path: Option<PathBuf>,
    trace_path: Option<PathBuf>,
    cfg: &RunConfig,
) -> Outcome<()> {
    let g = read_graph(path, format)?;
    let kz = crown_reduce_vertex_cover(&g, k)?;
    let removed = kz.removed_cover_size();
    let identity = match (alpha(&g, &cfg.limits), alpha(&kz.kernel, &cfg.limits)) {
        (Ok(a), Ok(b)) => {
            let (tau, tau_kernel) = (g.n() - a, kz.kernel.n() - b);
            Limited::Value(CoverIdentity {
                tau,
                tau_kernel,
                removed,
                holds: tau == tau_kernel + removed,
            })
        }
        (Err(Error::SizeLimit { .. }), _) | (_, Err(Error::SizeLimit { .. })) => Limited::Skipped,
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    let trace = KernelTrace {
        schema: SCHEMA,
        config: cfg,
        n: g.n(),
        m: g.m(),
        k,
        status: kz.status,
        budget: kz.budget,
        removed_cover_size: removed,
        kernel_n: kz.kernel.n(),
        kernel_m: kz.kernel.m(),
        vertex_map: &kz.vertex_map,
        steps: &kz.steps,
        identity,
    };
    let kernel_path = kernel_path.unwrap_or_else(|| with_suffix(path, ".kernel"));
    let trace_path = trace_path.unwrap_or_else(|| with_suffix(path, ".trace.json"));
    write_file(&kernel_path, &render_edge_list(&kz.kernel))?;
    let json = to_json(&trace);
    write_file(&trace_path, &json)?;
    match cfg.format {
        OutputFormat::Json => println!("{json}"),
        OutputFormat::Text => {
            println!(
                "removed {} crowns, cover vertices forced: {removed}, kernel n = {} m = {}, remaining budget {}",
                kz.steps.len(),
                kz.kernel.n(),
                kz.kernel.m(),
                kz.budget
            );
            match trace.identity.value() {
                Some(id) => println!(
                    "tau = {} = tau(kernel) {} + removed {}: {}",
                    id.tau,
                    id.tau_kernel,
                    id.removed,
                    if id.holds { "ok" } else { "MISMATCH" }
                ),
                None => println!("cover identity: skipped(limit)"),
            }
            println!("kernel: {}", kernel_path.display());
            println!("trace: {}", trace_path.display());
        }
    }
    if matches!(trace.identity.value(), Some(id) if !id.holds) {
        return Err(Failure::Verify("cover identity does not hold".into()));
    }
    if kz.status == KernelStatus::Infeasible {
        eprintln!("infeasible: no vertex cover of size {k}");
        return Err(Failure::Infeasible);
    }
    Ok(())
}

fn cmd_scan(max_n: usize, class: ScanClass, cfg: &RunConfig) -> Outcome<()> {
    let report = scan(max_n, class, &cfg.limits)?;
    match cfg.format {
        OutputFormat::Json => println!("{}", to_json(&report)),
        OutputFormat::Text => {
            let c = &report.counts;
            println!("scanned {} graphs (n <= {max_n}), {} triangle-free", c.graphs, c.triangle_free);
            println!("CritIndep = Crown: {} graphs", c.crit_eq_crown);
            for e in &report.crit_eq_crown {
                println!("  n = {} d = {} edges {:?}", e.graph.n, e.critical_difference, e.graph.edges);
            }
            println!("CritIndep greedoid: {} graphs", c.crit_indep_greedoid);
            println!("every closure KE with unique perfect matching: {} graphs", c.closures_ke_with_unique_perfect_matching);
            println!("Psi augmentoid: {} graphs", c.psi_augmentoid);
            println!("conjecture disagreements (triangle-free): {}", report.conjecture_disagreements.len());
            for e in &report.conjecture_disagreements {
                println!(
                    "  n = {} edges {:?}: greedoid {}, closures {}",
                    e.graph.n, e.graph.edges, e.crit_indep_greedoid, e.closures_ke_with_unique_perfect_matching
                );
            }
            println!("theorem failures: {}", report.failures.len());
        }
    }
    if let Some(first) = report.failures.first() {
        eprintln!("{}", to_json(first));
        return Err(Failure::Verify(format!("{} theorem failures during scan", report.failures.len())));
    }
    Ok(())
}

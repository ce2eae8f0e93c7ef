use std::fmt::{self, Write as _};
use std::time::Instant;

use kmetric::constructions::{corona, CoronaSpec};
use kmetric::formulas::TheoremId;
use kmetric::harness::{Harness, TheoremReport, Verdict, VerifySummary, REPORT_SCHEMA_VERSION};
use kmetric::metric_sets::{c_of_h, PairTable};
use kmetric::solver::{self, SolverConfig, DEFAULT_NODE_BUDGET};
use kmetric::{Bitset, Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{load_graph, parse_family, GraphInput, KRange};
use crate::{exit, exit_code, Cli, Command, Format, Global};

pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Core(e) => exit_code(e),
            CliError::Usage(_) => exit::USAGE,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn solver_config(g: &Global) -> Result<SolverConfig> {
    let node_budget = match g.node_budget {
        Some(b) => b,
        None => match std::env::var("KMETRIC_NODE_BUDGET") {
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(b) if b >= 1 => b,
                _ => return Err(CliError::Usage(format!("KMETRIC_NODE_BUDGET={v:?} is not a positive integer"))),
            },
            Err(_) => DEFAULT_NODE_BUDGET,
        },
    };
    Ok(SolverConfig {
        node_budget,
        threads: g.threads as usize,
    })
}

pub fn run(cli: &Cli) -> Result<u8> {
    let cfg = solver_config(&cli.global)?;
    let fmt = cli.global.format;
    let out = match &cli.command {
        Command::Analyze { graph } => analyze(&load_graph(graph)?, fmt),
        Command::Dimk { graph, k, timings } => dimk(&load_graph(graph)?, *k, *timings, fmt, &cfg)?,
        Command::Basis { graph, k, all, audit } => basis(&load_graph(graph)?, *k, *all, *audit, fmt, &cfg)?,
        Command::Sweep {
            theorem,
            n,
            graph,
            base,
            attach,
            k,
            random,
        } => {
            let theorem: TheoremId = theorem.parse()?;
            let reports = sweep(
                theorem,
                SweepArgs {
                    n: *n,
                    graph: graph.as_deref(),
                    base: base.as_deref(),
                    attach: attach.as_deref(),
                    k: *k,
                    random: *random,
                    seed: cli.global.seed,
                },
                &cfg,
            )?;
            let violated = reports.iter().any(|r| r.verdict == Verdict::Violated);
            print!("{}", render_reports(&reports, fmt));
            return Ok(if violated { exit::VIOLATION } else { 0 });
        }
        Command::Verify { only } => {
            let only = only.as_deref().map(str::parse::<TheoremId>).transpose()?;
            let summary = Harness::new(cfg).verify(only, cfg.threads);
            print!("{}", render_summary(&summary, fmt));
            return Ok(if summary.violations > 0 { exit::VIOLATION } else { 0 });
        }
    };
    print!("{out}");
    Ok(0)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |v| v.to_string())
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize)]
struct Analysis {
    schema_version: u32,
    graph: String,
    order: usize,
    size: usize,
    connected: bool,
    dimensional_k: Option<usize>,
    twins: Vec<(usize, usize)>,
    c: Option<usize>,
    diameter: Option<u32>,
    girth: Option<usize>,
}

fn analyze(input: &GraphInput, fmt: Format) -> String {
    let g = &input.graph;
    let connected = g.is_connected();
    if !connected {
        eprintln!("warning: graph is disconnected; k' and diameter are undefined");
    }
    let a = Analysis {
        schema_version: REPORT_SCHEMA_VERSION,
        graph: input.name.clone(),
        order: g.order(),
        size: g.size(),
        connected,
        dimensional_k: connected
            .then(|| PairTable::new(g).ok().and_then(|t| t.dimensional_k().ok()))
            .flatten(),
        twins: g.twins(),
        c: c_of_h(g).ok(),
        diameter: g.diameter().ok(),
        girth: g.girth(),
    };
    let twins = a
        .twins
        .iter()
        .map(|(x, y)| format!("{x}-{y}"))
        .collect::<Vec<_>>();
    match fmt {
        Format::Json => json(&a),
        Format::Csv => format!(
            "graph,order,size,connected,dimensional_k,twin_pairs,twins,c,diameter,girth\n{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&a.graph),
            a.order,
            a.size,
            a.connected,
            opt(a.dimensional_k),
            a.twins.len(),
            twins.join(";"),
            opt(a.c),
            opt(a.diameter),
            opt(a.girth),
        ),
        Format::Text => {
            let none = || "undefined".to_string();
            let mut s = String::new();
            writeln!(s, "graph     {}", a.graph).unwrap();
            writeln!(s, "order     {}", a.order).unwrap();
            writeln!(s, "size      {}", a.size).unwrap();
            writeln!(s, "k'        {}", a.dimensional_k.map_or_else(none, |v| v.to_string())).unwrap();
            writeln!(s, "twins     {} pairs {}", a.twins.len(), twins.join(" ")).unwrap();
            writeln!(s, "C(g)      {}", a.c.map_or_else(none, |v| v.to_string())).unwrap();
            writeln!(s, "diameter  {}", a.diameter.map_or_else(none, |v| v.to_string())).unwrap();
            writeln!(s, "girth     {}", a.girth.map_or_else(|| "none (acyclic)".into(), |v| v.to_string())).unwrap();
            s
        }
    }
}

// ---------------------------------------------------------------------------
// dimk / basis

/// Validates `k` against `1..=k'` of the graph.
fn k_range(table: &PairTable, k: Option<KRange>) -> Result<KRange> {
    let max = table.dimensional_k()?;
    let k = k.unwrap_or(KRange { lo: 1, hi: max });
    if k.lo == 0 {
        return Err(Error::ZeroK.into());
    }
    if k.hi > max {
        return Err(Error::KTooLarge { k: k.hi, max }.into());
    }
    Ok(k)
}

#[derive(Serialize)]
struct DimRow {
    k: usize,
    dim: usize,
    nodes_explored: u64,
    proof: solver::Proof,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

#[derive(Serialize)]
struct DimTable<'a> {
    schema_version: u32,
    graph: &'a str,
    rows: Vec<DimRow>,
}

fn dimk(input: &GraphInput, k: Option<KRange>, timings: bool, fmt: Format, cfg: &SolverConfig) -> Result<String> {
    let table = PairTable::new(&input.graph)?;
    let ks = k_range(&table, k)?;
    let mut rows = Vec::new();
    for k in ks.iter() {
        let t = Instant::now();
        let inst = solver::instance_from_table(&table, k, None, None)?;
        let r = solver::solve_exact_with(&inst, cfg)?;
        let ms = t.elapsed().as_secs_f64() * 1e3;
        rows.push(DimRow {
            k,
            dim: r.dim,
            nodes_explored: r.nodes_explored,
            proof: r.proof,
            wall_ms: (timings || fmt == Format::Text).then_some(ms),
        });
    }
    let out = DimTable {
        schema_version: REPORT_SCHEMA_VERSION,
        graph: &input.name,
        rows,
    };
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut s = String::from(if timings { "k,dim,nodes_explored,proof,wall_ms\n" } else { "k,dim,nodes_explored,proof\n" });
            for r in &out.rows {
                let proof = proof_name(r.proof);
                match r.wall_ms {
                    Some(ms) => writeln!(s, "{},{},{},{proof},{ms:.3}", r.k, r.dim, r.nodes_explored),
                    None => writeln!(s, "{},{},{},{proof}", r.k, r.dim, r.nodes_explored),
                }
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}\n{:>3} {:>6} {:>12} {:>10}\n", out.graph, "k", "dim_k", "nodes", "ms");
            for r in &out.rows {
                writeln!(s, "{:>3} {:>6} {:>12} {:>10.3}", r.k, r.dim, r.nodes_explored, r.wall_ms.unwrap_or(0.0)).unwrap();
            }
            s
        }
    })
}

fn proof_name(p: solver::Proof) -> &'static str {
    match p {
        solver::Proof::Exact => "exact",
        solver::Proof::GreedyUpperBoundOnly => "greedy_upper_bound_only",
    }
}

#[derive(Serialize)]
struct Coverage {
    pair: (usize, usize),
    hits: usize,
    size: usize,
}

#[derive(Serialize)]
struct BasisOut<'a> {
    schema_version: u32,
    graph: &'a str,
    k: usize,
    dim: usize,
    proof: solver::Proof,
    nodes_explored: u64,
    witness: Vec<usize>,
    labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bases: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<Vec<Coverage>>,
}

fn basis(
    input: &GraphInput,
    k: KRange,
    all: Option<usize>,
    audit: bool,
    fmt: Format,
    cfg: &SolverConfig,
) -> Result<String> {
    if k.lo != k.hi {
        return Err(CliError::Usage("basis takes a single k".into()));
    }
    let g = &input.graph;
    let table = PairTable::new(g)?;
    let k = k_range(&table, Some(k))?.lo;
    let inst = solver::instance_from_table(&table, k, None, None)?;
    let r = solver::solve_exact_with(&inst, cfg)?;
    let bases = match all {
        Some(0) => return Err(CliError::Usage("--all needs N >= 1".into())),
        Some(n) => Some(solver::solve_exact_all_with(&inst, n, cfg)?),
        None => None,
    };
    let witness = bases.as_ref().map_or_else(|| r.witness.clone(), |b| b[0].clone());
    let audit = audit.then(|| {
        let s = Bitset::from_indices(g.order(), witness.iter().copied());
        table
            .iter()
            .map(|d| Coverage {
                pair: d.pair,
                hits: d.members.intersection_count(&s),
                size: d.len(),
            })
            .collect::<Vec<_>>()
    });
    let out = BasisOut {
        schema_version: REPORT_SCHEMA_VERSION,
        graph: &input.name,
        k,
        dim: r.dim,
        proof: r.proof,
        nodes_explored: r.nodes_explored,
        labels: witness.iter().map(|&v| g.label(v)).collect(),
        witness,
        bases,
        audit,
    };
    let set = |w: &[usize]| {
        let items: Vec<String> = w.iter().map(usize::to_string).collect();
        format!("{{{}}}", items.join(", "))
    };
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut s = String::from("graph,k,dim,index,basis\n");
            let list = out.bases.clone().unwrap_or_else(|| vec![out.witness.clone()]);
            for (i, b) in list.iter().enumerate() {
                let vs: Vec<String> = b.iter().map(usize::to_string).collect();
                writeln!(s, "{},{},{},{i},{}", csv_field(out.graph), k, out.dim, vs.join(";")).unwrap();
            }
            if let Some(a) = &out.audit {
                s.push_str("\nx,y,hits,size\n");
                for c in a {
                    writeln!(s, "{},{},{},{}", c.pair.0, c.pair.1, c.hits, c.size).unwrap();
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}\ndim_{k} = {} ({})\n", out.graph, out.dim, proof_name(out.proof));
            match &out.bases {
                Some(list) => {
                    for (i, b) in list.iter().enumerate() {
                        writeln!(s, "basis {i}: {}", set(b)).unwrap();
                    }
                }
                None => writeln!(s, "basis: {}", set(&out.witness)).unwrap(),
            }
            if g.labels().is_some() {
                writeln!(s, "labels: {}", out.labels.join(" ")).unwrap();
            }
            if let Some(a) = &out.audit {
                let min = a.iter().map(|c| c.hits).min().unwrap_or(0);
                writeln!(s, "audit: {} pairs, min hits {min} (need {k})", a.len()).unwrap();
                for c in a {
                    writeln!(s, "  ({}, {}) {}/{}", c.pair.0, c.pair.1, c.hits, c.size).unwrap();
                }
            }
            s
        }
    })
}

// ---------------------------------------------------------------------------
// sweep / verify

struct SweepArgs<'a> {
    n: Option<KRange>,
    graph: Option<&'a str>,
    base: Option<&'a str>,
    attach: Option<&'a str>,
    k: Option<KRange>,
    random: Option<usize>,
    seed: u64,
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

fn random_coronas(count: usize, seed: u64) -> Vec<(String, CoronaSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let nb = rng.gen_range(2..=3);
            let base = random_connected(&mut rng, nb, 0.5);
            let hs = (0..nb)
                .map(|_| {
                    let n = rng.gen_range(2..=5);
                    random_connected(&mut rng, n, 0.4)
                })
                .collect();
            let spec = CoronaSpec::new(base, hs).expect("matching family");
            debug_assert!(corona(&spec).0.is_connected());
            (format!("random[seed={seed},#{i}]"), spec)
        })
        .collect()
}

fn sweep(theorem: TheoremId, a: SweepArgs<'_>, cfg: &SolverConfig) -> Result<Vec<TheoremReport>> {
    let threads = cfg.threads;
    let h = Harness::new(SolverConfig { threads: 1, ..*cfg });
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let ks: Vec<Option<usize>> = match a.k {
        Some(r) => r.iter().map(Some).collect(),
        None => vec![None],
    };

    if theorem.fan_wheel().is_some() {
        let n = a.n.ok_or_else(|| CliError::Usage(format!("{theorem} needs --n a..b")))?;
        return Ok(pool.install(|| n.iter().collect::<Vec<_>>().par_iter().map(|&n| h.fan_wheel(theorem, n)).collect()));
    }
    if !theorem.is_corona() {
        let g = a.graph.ok_or_else(|| CliError::Usage(format!("{theorem} needs --graph")))?;
        return Ok(vec![h.graph_claim(theorem, &g.parse()?)]);
    }
    let per_k = |run: &(dyn Fn(Option<usize>) -> Vec<TheoremReport> + Sync)| -> Vec<TheoremReport> {
        ks.iter().flat_map(|&k| run(k)).collect()
    };
    if let Some(count) = a.random {
        let specs = random_coronas(count, a.seed);
        return Ok(pool.install(|| {
            specs
                .par_iter()
                .map(|(name, spec)| per_k(&|k| h.corona_claim_spec(theorem, name.clone(), spec.clone(), k)))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        }));
    }
    let (Some(base), Some(attach)) = (a.base, a.attach) else {
        return Err(CliError::Usage(format!("{theorem} needs --base and --attach (or --random N)")));
    };
    let base = base.parse()?;
    let hs = parse_family(attach)?;
    Ok(pool.install(|| per_k(&|k| h.corona_claim(theorem, &base, &hs, k))))
}

#[derive(Serialize)]
struct ReportList<'a> {
    schema_version: u32,
    reports: &'a [TheoremReport],
}

fn text_report(r: &TheoremReport) -> String {
    use kmetric::harness::Predicted;
    let pred = match r.predicted {
        Some(Predicted::Value { value }) => format!("= {value}"),
        Some(Predicted::Bounds { lower, upper }) => format!("in [{lower}, {upper}]"),
        Some(Predicted::AtMost { upper }) => format!("<= {upper}"),
        Some(Predicted::AtLeast { lower }) => format!(">= {lower}"),
        Some(Predicted::Below { bound }) => format!("< {bound}"),
        None => "-".into(),
    };
    let k = r.k.map_or("-".into(), |k| k.to_string());
    let mut s = format!(
        "{:<12} {:<30} k={:<2} predicted {:<10} observed {:<4} {}",
        r.verdict.as_str(),
        r.instance,
        k,
        pred,
        opt(r.observed),
        r.theorem
    );
    if !r.reason.is_empty() {
        write!(s, " ({})", r.reason).unwrap();
    }
    s
}

fn render_reports(reports: &[TheoremReport], fmt: Format) -> String {
    match fmt {
        Format::Json => json(&ReportList {
            schema_version: REPORT_SCHEMA_VERSION,
            reports,
        }),
        Format::Csv => {
            let mut s = format!("{}\n", TheoremReport::CSV_HEADER);
            for r in reports {
                writeln!(s, "{}", r.csv_row()).unwrap();
            }
            s
        }
        Format::Text => reports.iter().map(|r| text_report(r) + "\n").collect(),
    }
}

fn render_summary(summary: &VerifySummary, fmt: Format) -> String {
    match fmt {
        Format::Json => json(summary),
        Format::Csv => summary.to_csv(),
        Format::Text => {
            let mut s = format!(
                "{:<30} {:>9} {:>9} {:>12} {:>8} {:>7}\n",
                "claim", "confirmed", "bound", "inapplicable", "violated", "skipped"
            );
            for (name, t) in &summary.per_theorem {
                writeln!(
                    s,
                    "{name:<30} {:>9} {:>9} {:>12} {:>8} {:>7}",
                    t.confirmed, t.bound_held, t.inapplicable, t.violated, t.skipped
                )
                .unwrap();
            }
            for r in summary.reports.iter().filter(|r| matches!(r.verdict, Verdict::Violated | Verdict::Skipped)) {
                writeln!(s, "{}", text_report(r)).unwrap();
            }
            writeln!(s, "{} reports, {} violations, {} skipped", summary.reports.len(), summary.violations, summary.skipped).unwrap();
            s
        }
    }
}

use crate::{DriverArgs, Family, FormatArg, GenerateSpec, GraphArgs, Probe, TraceFormat};
use equicolor::coloring::{dominates_all, first_conflict};
use equicolor::dynamics::{equitable_k_coloring, equitable_k_coloring_observed, DriverConfig};
use equicolor::generate::{self, InstanceSpec};
use equicolor::io::{self, GraphFormat};
use equicolor::list_domination::{dominating_full_coloring, DominationInstance};
use equicolor::oracle::{self, OracleBudget};
use equicolor::pipeline::equitable_delta_coloring;
use equicolor::{Error, Graph};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

pub enum CliError {
    Domain(Error),
    /// A failed `verify` check.
    Check { kind: &'static str, message: String, detail: Value },
    Usage(String),
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Domain(e) => e.to_json(),
            CliError::Check { kind, message, detail } => json!({ "error": kind, "message": message, "detail": detail }),
            CliError::Usage(message) => json!({ "error": "Usage", "message": message }),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn format_of(arg: FormatArg) -> GraphFormat {
    match arg {
        FormatArg::Dimacs => GraphFormat::Dimacs,
        FormatArg::EdgeJson => GraphFormat::EdgeJson,
    }
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    let format = args.format.map(format_of).unwrap_or_else(|| GraphFormat::from_path(&args.graph));
    Ok(io::read_graph(&args.graph, format)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| {
            CliError::Domain(io::IoError::Io { path: path.display().to_string(), message: e.to_string() }.into())
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn config(d: &DriverArgs) -> DriverConfig {
    DriverConfig {
        m_max: d.m_max,
        retries: d.retries,
        batch: d.batch,
        seed: d.seed,
        randomize_start: d.randomize_start,
        ..DriverConfig::default()
    }
}

pub fn color_equitable(g: &GraphArgs, k: usize, start: Option<&Path>, d: &DriverArgs, out: Option<&Path>) -> Result<()> {
    let graph = load_graph(g)?;
    let start = start.map(io::read_coloring).transpose()?;
    let (f, _) = equitable_k_coloring(&graph, k, start.as_ref(), &config(d))?;
    emit(&io::coloring_to_json(&f), out)
}

pub fn color_delta(g: &GraphArgs, delta: Option<usize>, report: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let graph = load_graph(g)?;
    let delta = delta.unwrap_or(graph.max_degree());
    let (f, rep) = equitable_delta_coloring(&graph, delta)?;
    if let Some(path) = report {
        emit(&serde_json::to_string_pretty(&rep).expect("report serializes"), Some(path))?;
    }
    emit(&io::coloring_to_json(&f), out)
}

pub fn dominate(g: &GraphArgs, lists: &Path, out: Option<&Path>) -> Result<()> {
    let graph = load_graph(g)?;
    let file = io::read_lists(lists)?;
    let inst = DominationInstance::new(graph, file.lists(), file.seed()?);
    let f = dominating_full_coloring(&inst)?;
    emit(&io::coloring_to_json(&f), out)
}

pub fn verify(g: &GraphArgs, coloring: &Path, equitable: bool, dominated: Option<&Path>) -> Result<()> {
    let graph = load_graph(g)?;
    let f = io::read_coloring(coloring)?;
    if f.n() != graph.n() {
        return Err(CliError::Check {
            kind: "SizeMismatch",
            message: format!("coloring has {} vertices, graph has {}", f.n(), graph.n()),
            detail: json!({ "expected": graph.n(), "got": f.n() }),
        });
    }
    if let Some((u, v)) = first_conflict(&graph, &f) {
        return Err(CliError::Check {
            kind: "ImproperColoring",
            message: format!("edge ({u}, {v}) has both ends colored {}", f.get(u).unwrap()),
            detail: json!({ "edge": [u, v], "color": f.get(u) }),
        });
    }
    if equitable && f.gap() > 1 {
        return Err(CliError::Check {
            kind: "NotEquitable",
            message: format!("class sizes differ by {}", f.gap()),
            detail: json!({ "counts": f.counts(), "gap": f.gap() }),
        });
    }
    if let Some(path) = dominated {
        let h = io::read_coloring(path)?;
        if !dominates_all(&f, &h) {
            return Err(CliError::Check {
                kind: "NotDominating",
                message: "some color is used less often than in the reference coloring".into(),
                detail: json!({ "counts": f.counts(), "reference": h.counts() }),
            });
        }
    }
    let report = json!({
        "valid": true,
        "proper": true,
        "total": f.is_total(),
        "counts": f.counts(),
        "gap": f.gap(),
    });
    emit(&report.to_string(), None)
}

pub fn trace(g: &GraphArgs, k: usize, d: &DriverArgs, format: TraceFormat) -> Result<()> {
    let graph = load_graph(g)?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    if format == TraceFormat::Csv {
        let _ = writeln!(out, "step,disc,l1,cumulative");
    }
    let mut observer = |s: &equicolor::dynamics::TraceStep| {
        let _ = match format {
            TraceFormat::Jsonl => writeln!(out, "{}", serde_json::to_string(s).expect("steps serialize")),
            TraceFormat::Csv => writeln!(
                out,
                "{},{},{},{}",
                s.step,
                equicolor::rational::to_string(&s.disc),
                equicolor::rational::to_string(&s.l1),
                equicolor::rational::to_string(&s.cumulative)
            ),
        };
    };
    let result = equitable_k_coloring_observed(&graph, k, None, &config(d), &mut observer);
    if let Ok((f, trace)) = &result {
        if format == TraceFormat::Jsonl {
            let summary = json!({
                "initial": trace.initial.counts(),
                "final": f.counts(),
                "restarts": trace.restarts,
                "ledger": trace.ledger.to_json(),
            });
            let _ = writeln!(out, "{summary}");
        }
    }
    let _ = out.flush();
    result.map(|_| ()).map_err(CliError::from)
}

pub fn oracle(
    probe: Probe,
    g: &GraphArgs,
    k: Option<usize>,
    coloring: Option<&Path>,
    lists: Option<&Path>,
    m: usize,
) -> Result<()> {
    let graph = load_graph(g)?;
    let budget = OracleBudget::default();
    let need_k = || k.ok_or_else(|| CliError::Usage("this probe needs --k".into()));
    let result: Value = match probe {
        Probe::Count => {
            let k = need_k()?;
            json!(oracle::count_proper_colorings(&graph, k, &budget)?)
        }
        Probe::Equitable => json!(oracle::equitable_exists(&graph, need_k()?, &budget)?),
        Probe::Move => {
            let path = coloring.ok_or_else(|| CliError::Usage("the move probe needs --coloring".into()))?;
            let f = io::read_coloring(path)?;
            json!(oracle::find_admissible_move(&graph, &f, m, &budget)?)
        }
        Probe::Dominate => {
            let path = lists.ok_or_else(|| CliError::Usage("the dominate probe needs --lists".into()))?;
            let file = io::read_lists(path)?;
            let found = oracle::find_dominating(&graph, &file.lists(), &file.seed()?, &budget)?;
            json!(found)
        }
        Probe::Blocks => json!(oracle::brute_blocks(&graph, &budget)?),
        Probe::Gallai => json!(oracle::brute_is_gallai_tree(&graph, &budget)?),
    };
    let name = format!("{probe:?}").to_lowercase();
    emit(&json!({ "probe": name, "result": result }).to_string(), None)
}

fn bench_graph(family: Family, n: usize, seed: u64) -> Result<Graph> {
    let g = match family {
        Family::Regular3 => generate::regular(n, 3, seed)?,
        Family::Regular4 => generate::regular(n, 4, seed)?,
        Family::Regular5 => generate::regular(n, 5, seed)?,
        Family::Gnp => generate::gnp(n, 3.0 / n as f64, seed)?,
        Family::Torus => {
            let rows = ((n as f64).sqrt() as usize).max(3);
            generate::torus(rows, (n / rows).max(3))?
        }
    };
    Ok(g)
}

pub fn bench(family: Family, n: usize, instances: usize, seed: u64) -> Result<()> {
    let mut worst = 0f64;
    let mut total = 0f64;
    let mut failures = 0;
    for i in 0..instances {
        let s = seed.wrapping_add(i as u64);
        let g = bench_graph(family, n, s)?;
        let k = g.max_degree() + 1;
        let start = Instant::now();
        let result = equitable_k_coloring(&g, k, None, &DriverConfig { seed: s, ..DriverConfig::default() });
        let ms = start.elapsed().as_secs_f64() * 1e3;
        worst = worst.max(ms);
        total += ms;
        let line = match result {
            Ok((f, trace)) => json!({
                "seed": s, "n": g.n(), "k": k, "ms": ms, "gap": f.gap(),
                "steps": trace.move_steps(), "restarts": trace.restarts,
            }),
            Err(e) => {
                failures += 1;
                json!({ "seed": s, "n": g.n(), "k": k, "ms": ms, "error": Error::from(e).to_json() })
            }
        };
        println!("{line}");
    }
    let mean = if instances > 0 { total / instances as f64 } else { 0.0 };
    println!("{}", json!({ "instances": instances, "failures": failures, "max_ms": worst, "mean_ms": mean }));
    Ok(())
}

pub fn generate(spec: GenerateSpec, format: FormatArg, out: Option<&Path>) -> Result<()> {
    let spec = match spec {
        GenerateSpec::Regular { n, d, seed } => InstanceSpec::Regular { n, d, seed },
        GenerateSpec::Gnp { n, p, seed } => InstanceSpec::Gnp { n, p, seed },
        GenerateSpec::Torus { rows, cols } => InstanceSpec::Torus { rows, cols },
        GenerateSpec::Bipartite { a, b, p, seed } => InstanceSpec::Bipartite { a, b, p, seed },
        GenerateSpec::GallaiTree { blocks, max_block, seed } => InstanceSpec::GallaiTree { blocks, max_block, seed },
        GenerateSpec::Hub { n, delta, target_avg, hubs, seed } => InstanceSpec::Hub { n, delta, target_avg, hubs, seed },
        GenerateSpec::Named { name, n } => InstanceSpec::Named { name, n },
    };
    let g = generate::generate(&spec)?;
    emit(io::format_graph(&g, format_of(format)).trim_end(), out)
}

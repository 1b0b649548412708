//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Pass criterion ids (`C1` .. `C11`) as arguments to run a subset. The run
//! exits nonzero on any unexpected failure. Criterion C5 fails on a fixed set
//! of small colorings; it prints FAIL and only fails the run when that set
//! differs from `tests/data/move_probe_counterexamples.json`. Set
//! `EQUICOLOR_WRITE_ARCHIVE=1` to rewrite the archive.

use equicolor::coloring::{Color, ListAssignment, PartialColoring};
use equicolor::distribution::{l1_distance, l1_values, rearranged, ColorDistribution};
use equicolor::dynamics::{
    equitable_k_coloring, find_improving_move, DriverConfig, DynamicsError, DynamicsTrace, MovePolicy, StepKind,
};
use equicolor::forest::{build_one_ended_subforest, dominating_delta_coloring, forest_recolor, ForestError};
use equicolor::generate;
use equicolor::graph::{components, is_gallai_tree, named};
use equicolor::list_domination::{dominating_full_coloring, DominationInstance};
use equicolor::oracle::{self, canon, OracleBudget};
use equicolor::pipeline::{cost, equitable_delta_coloring, extract_dense_set, ClaimVerdict};
use equicolor::rational::{abs, checked_mul, checked_pow};
use equicolor::{Graph, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

type Levels = Vec<Vec<Vec<u16>>>;

struct Outcome {
    pass: bool,
    /// Failed, but exactly as archived.
    known: bool,
    detail: String,
}

impl Outcome {
    fn check(failures: &[String], detail: String) -> Outcome {
        let detail = match failures.first() {
            None => detail,
            Some(first) => format!("{detail}; {} failures, first: {first}", failures.len()),
        };
        Outcome { pass: failures.is_empty(), known: false, detail }
    }
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn rng_for(parts: &[u64]) -> ChaCha8Rng {
    let seed = parts.iter().fold(0xA076_1D64_78BD_642Fu64, |h, &p| (h ^ p).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29));
    ChaCha8Rng::seed_from_u64(seed)
}

fn counts_of(colors: &[Color], k: usize) -> Vec<usize> {
    let mut counts = vec![0; k];
    for &c in colors {
        counts[c] += 1;
    }
    counts
}

fn gap_of(counts: &[usize]) -> usize {
    counts.iter().max().unwrap_or(&0) - counts.iter().min().unwrap_or(&0)
}

/// `max_α |count(α)/n − 1/k|`.
fn disc_of(counts: &[usize], n: usize) -> Rational {
    let k = counts.len() as i128;
    counts.iter().map(|&c| abs(r(c as i128, n as i128) - r(1, k))).max().unwrap_or_default()
}

fn bad_edge(g: &Graph, colors: &[Option<Color>]) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| colors[u].is_some() && colors[u] == colors[v])
}

/// Random proper partial coloring: each vertex, in shuffled order, is colored
/// with probability `p` by a random list color not used on its neighbours.
fn random_partial(g: &Graph, lists: &[Vec<Color>], p: f64, rng: &mut ChaCha8Rng) -> Vec<Option<Color>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut colors = vec![None; g.n()];
    for v in order {
        if !rng.gen_bool(p) {
            continue;
        }
        let free: Vec<Color> =
            lists[v].iter().copied().filter(|&c| g.neighbors(v).iter().all(|&w| colors[w] != Some(c))).collect();
        colors[v] = free.choose(rng).copied();
    }
    colors
}

fn dominates(result: &[Color], seed: &[Option<Color>], k: usize) -> bool {
    let have = counts_of(result, k);
    let need = counts_of(&seed.iter().flatten().copied().collect::<Vec<_>>(), k);
    have.iter().zip(&need).all(|(h, n)| h >= n)
}

// C1, C2, C3

enum Family {
    Regular(usize),
    Gnp,
    Torus,
}

fn family_graph(family: &Family, n: usize, seed: u64) -> Graph {
    match *family {
        Family::Regular(d) => generate::regular(n, d, seed).unwrap(),
        Family::Gnp => generate::gnp(n, 3.0 / n as f64, seed).unwrap(),
        Family::Torus => {
            let (rows, cols) = match n {
                50 => (5, 10),
                200 => (10, 20),
                _ => (20, 25),
            };
            generate::torus(rows, cols).unwrap()
        }
    }
}

/// Replays a trace from its start coloring. Returns the ledger-bound and
/// stability-bound checks separately.
fn replay(g: &Graph, k: usize, trace: &DynamicsTrace, result: &[Color]) -> (Result<(), String>, Result<(), String>) {
    let n = g.n();
    let seven = checked_pow(r(7, 1), k as u32 + 1);
    let mut colors = trace.start.clone();
    let mut counts = counts_of(&colors, k);
    let mut attempt_start = colors.clone();
    let mut disc0 = disc_of(&counts, n);
    let mut cumulative = Rational::default();
    let mut ledger = Ok(());
    let mut fail = |msg: String| {
        if ledger.is_ok() {
            ledger = Err(msg);
        }
    };
    for step in &trace.steps {
        let before = counts.clone();
        for &(v, c) in &step.assignments {
            colors[v] = c;
        }
        counts = counts_of(&colors, k);
        if counts != step.counts {
            fail(format!("step {}: counts {:?}, trace says {:?}", step.step, counts, step.counts));
        }
        for &(v, c) in &step.assignments {
            if g.neighbors(v).iter().any(|&w| colors[w] == c) {
                fail(format!("step {}: vertex {v} conflicts", step.step));
            }
        }
        if let StepKind::Restart { .. } = step.kind {
            if step.assignments.len() != n {
                fail(format!("step {}: restart assigns {} of {n} vertices", step.step, step.assignments.len()));
            }
            attempt_start = colors.clone();
            disc0 = disc_of(&counts, n);
            cumulative = Rational::default();
            continue;
        }
        let moved: usize = before.iter().zip(&counts).map(|(&a, &b)| a.abs_diff(b)).sum();
        let l1 = r(moved as i128, n as i128);
        cumulative += l1;
        if step.l1 != l1 || step.cumulative != cumulative {
            fail(format!("step {}: l1 {} cumulative {}, trace says {} {}", step.step, l1, cumulative, step.l1, step.cumulative));
        }
        if let Some(bound) = seven.and_then(|p| checked_mul(&(p / 6), &disc0)) {
            if cumulative > bound {
                fail(format!("step {}: cumulative {cumulative} above {bound}", step.step));
            }
        }
    }
    if colors != result {
        fail("replay does not end at the returned coloring".into());
    }
    let changed = attempt_start.iter().zip(result).filter(|(a, b)| a != b).count();
    let stability = match seven.and_then(|p| checked_mul(&(p / 2), &disc0)) {
        Some(bound) if r(changed as i128, n as i128) > bound => {
            Err(format!("{changed} of {n} vertices changed, bound {bound}"))
        }
        _ => Ok(()),
    };
    (ledger, stability)
}

fn driver_criteria() -> [Outcome; 3] {
    let families = [
        ("regular-3", Family::Regular(3)),
        ("regular-4", Family::Regular(4)),
        ("regular-5", Family::Regular(5)),
        ("gnp-3/n", Family::Gnp),
        ("torus", Family::Torus),
    ];
    let (mut c1, mut c2, mut c3) = (Vec::new(), Vec::new(), Vec::new());
    let (mut runs, mut stalls, mut slowest, mut steps, mut restarts) = (0, 0, Duration::ZERO, 0, 0);
    for (name, family) in &families {
        for n in [50, 200, 500] {
            for seed in 0..100u64 {
                let g = family_graph(family, n, seed);
                let k = g.max_degree() + 1;
                let config = DriverConfig { seed, randomize_start: true, ..DriverConfig::default() };
                let clock = Instant::now();
                let result = equitable_k_coloring(&g, k, None, &config);
                let elapsed = clock.elapsed();
                slowest = slowest.max(elapsed);
                runs += 1;
                let label = format!("{name} n={n} seed={seed}");
                if elapsed >= Duration::from_secs(5) {
                    c1.push(format!("{label}: took {elapsed:?}"));
                }
                let (f, trace) = match result {
                    Ok(ok) => ok,
                    Err(e) => {
                        if matches!(e, DynamicsError::Stalled { .. }) {
                            stalls += 1;
                        }
                        c1.push(format!("{label}: {e}"));
                        continue;
                    }
                };
                let Some(colors) = f.to_total() else {
                    c1.push(format!("{label}: partial result"));
                    continue;
                };
                let assignment: Vec<Option<Color>> = colors.iter().map(|&c| Some(c)).collect();
                if colors.iter().any(|&c| c >= k) || bad_edge(&g, &assignment).is_some() {
                    c1.push(format!("{label}: improper result"));
                }
                let gap = gap_of(&counts_of(&colors, k));
                if gap > 1 {
                    c1.push(format!("{label}: gap {gap}"));
                }
                steps += trace.move_steps();
                restarts += trace.restarts;
                let (ledger, stability) = replay(&g, k, &trace, &colors);
                if let Err(e) = ledger {
                    c2.push(format!("{label}: {e}"));
                }
                if let Err(e) = stability {
                    c3.push(format!("{label}: {e}"));
                }
            }
        }
    }
    [
        Outcome::check(
            &c1,
            format!("{runs} runs, {stalls} stalls, {restarts} restarts, {steps} moves, slowest {slowest:.1?}"),
        ),
        Outcome::check(&c2, format!("{runs} traces replayed exactly")),
        Outcome::check(&c3, format!("{runs} runs within the stability bound")),
    ]
}

// C4

fn c4_rearrangement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let sorted = |counts: &[usize]| {
        let total: usize = counts.iter().sum();
        let mut v: Vec<Rational> = counts.iter().map(|&c| r(c as i128, total as i128)).collect();
        v.sort();
        v
    };
    let l1 = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| abs(x - y)).sum::<Rational>();
    let random_counts = |k: usize, rng: &mut ChaCha8Rng| {
        let mut c: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=30)).collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        c
    };
    let pairs = 10_000;
    let clock = Instant::now();
    for i in 0..pairs {
        let k = rng.gen_range(1..=8);
        let (a, b) = (random_counts(k, &mut rng), random_counts(k, &mut rng));
        let (w, e) = (ColorDistribution::from_counts(&a), ColorDistribution::from_counts(&b));
        let (ws, es) = (rearranged(&w), rearranged(&e));
        let before = l1_distance(&w, &e).unwrap();
        let after = l1_values(&ws, &es);
        if ws != sorted(&a) || es != sorted(&b) {
            failures.push(format!("pair {i}: rearrangement differs from a plain sort"));
        }
        let (wv, ev) = (w.values(), e.values());
        if before != l1(&wv, &ev) || after != l1(&ws, &es) {
            failures.push(format!("pair {i}: l1 distance disagrees"));
        }
        if after > before {
            failures.push(format!("pair {i}: {a:?} vs {b:?} grows from {before} to {after}"));
        }
    }
    let elapsed = clock.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::check(&failures, format!("{pairs} pairs in {elapsed:.1?}"))
}

// C5

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Counterexample {
    n: usize,
    edges: Vec<(usize, usize)>,
    coloring: Vec<Color>,
    counts: Vec<usize>,
    connected: bool,
    resolved_at_m6: bool,
}

const ARCHIVE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/move_probe_counterexamples.json");

fn c5_move_probe(levels: &Levels) -> Outcome {
    let budget = OracleBudget { max_palette: 10, ..OracleBudget::default() }.unlimited_time();
    let policy = MovePolicy { m_max: 3, ..MovePolicy::default() };
    let mut found = Vec::new();
    let mut disagreements = Vec::new();
    let (mut graphs, mut colorings, mut engine_misses) = (0usize, 0usize, 0usize);
    for (n, level) in levels.iter().enumerate() {
        for rows in level {
            let g = canon::from_rows(rows);
            let k = g.max_degree() + 1;
            graphs += 1;
            for c in oracle::enumerate_colorings_up_to_renaming(&g, k, &budget).unwrap() {
                let c = c.unwrap();
                let f = PartialColoring::from_total(k, &c).unwrap();
                if f.gap() < 2 {
                    continue;
                }
                colorings += 1;
                let exists = oracle::improving_move_exists(&g, &f, 3, &budget).unwrap();
                // The engine scans connected domains only, so it may miss moves
                // but must never report one the oracle rejects.
                match find_improving_move(&g, &f, &policy) {
                    Some(_) if !exists => disagreements.push(format!(
                        "n={n} {:?} {c:?}: engine move the oracle rejects",
                        g.edges().collect::<Vec<_>>()
                    )),
                    None if exists => engine_misses += 1,
                    _ => {}
                }
                if !exists {
                    found.push(Counterexample {
                        n,
                        edges: g.edges().collect(),
                        counts: f.counts().to_vec(),
                        coloring: c,
                        connected: g.is_connected(),
                        resolved_at_m6: oracle::improving_move_exists(&g, &f, 6, &budget).unwrap(),
                    });
                }
            }
        }
    }
    if std::env::var_os("EQUICOLOR_WRITE_ARCHIVE").is_some() {
        std::fs::write(ARCHIVE, serde_json::to_string_pretty(&found).unwrap() + "\n").unwrap();
    }
    let archived: Vec<Counterexample> =
        std::fs::read_to_string(ARCHIVE).ok().and_then(|s| serde_json::from_str(&s).ok()).unwrap_or_default();
    let connected = found.iter().filter(|c| c.connected).count();
    let resolved = found.iter().filter(|c| c.resolved_at_m6).count();
    let detail = format!(
        "{graphs} graphs with n ≤ 9, {colorings} colorings with gap ≥ 2 (up to renaming); {} have no admissible move \
         of size ≤ 3 ({connected} on connected graphs, {resolved} resolved at size ≤ 6); engine: {} unconfirmed moves, \
         {engine_misses} moves outside its connected-domain scan",
        found.len(),
        disagreements.len()
    );
    let matches = found == archived;
    let pass = found.is_empty() && disagreements.is_empty();
    let known = !pass && disagreements.is_empty() && matches;
    let detail = match disagreements.first() {
        Some(first) => format!("{detail}, first: {first}"),
        None => detail,
    };
    let detail = if known {
        format!("{detail}; matches the archive, so C1 only tolerates stalls on archived patterns")
    } else if !pass && !matches {
        format!("{detail}; archive has {} entries and does not match", archived.len())
    } else {
        detail
    };
    Outcome { pass, known, detail }
}

// C6

fn c6_list_domination(levels: &Levels) -> Outcome {
    let budget = OracleBudget { max_palette: 10, max_list_size: 10, ..OracleBudget::default() }.unlimited_time();
    let mut failures = Vec::new();
    let (mut graphs, mut instances) = (0, 0);
    for (n, level) in levels.iter().enumerate().take(9) {
        for (index, rows) in level.iter().enumerate() {
            if !canon::is_connected_rows(rows) {
                continue;
            }
            let g = canon::from_rows(rows);
            let all: Vec<usize> = (0..n).collect();
            let gallai = oracle::brute_is_gallai_tree(&g, &budget).unwrap();
            if n > 0 && is_gallai_tree(&g, &all).unwrap() != gallai {
                failures.push(format!("n={n} #{index}: Gallai classification disagrees"));
            }
            if gallai || n == 0 {
                continue;
            }
            graphs += 1;
            let palette = g.max_degree() + 2;
            for pair in 0..50u64 {
                instances += 1;
                let label = format!("n={n} #{index} pair {pair}");
                let mut rng = rng_for(&[6, n as u64, index as u64, pair]);
                let lists: Vec<Vec<Color>> = (0..n)
                    .map(|v| {
                        let size = (g.degree(v) + rng.gen_bool(0.25) as usize).min(palette);
                        let mut l = rand::seq::index::sample(&mut rng, palette, size).into_vec();
                        l.sort_unstable();
                        l
                    })
                    .collect();
                let seed = random_partial(&g, &lists, 0.7, &mut rng);
                let seed_coloring = PartialColoring::from_assignment(palette, seed.clone()).unwrap();
                let lists = ListAssignment::new(lists);
                let inst = DominationInstance::new(g.clone(), lists.clone(), seed_coloring.clone());
                match dominating_full_coloring(&inst) {
                    Err(e) => failures.push(format!("{label}: {e}")),
                    Ok(f) => match f.to_total() {
                        None => failures.push(format!("{label}: partial result")),
                        Some(colors) => {
                            let assignment: Vec<Option<Color>> = colors.iter().map(|&c| Some(c)).collect();
                            if (0..n).any(|v| !lists.list(v).contains(&colors[v])) {
                                failures.push(format!("{label}: color outside its list"));
                            } else if bad_edge(&g, &assignment).is_some() {
                                failures.push(format!("{label}: improper"));
                            } else if !dominates(&colors, &seed, palette) {
                                failures.push(format!("{label}: does not dominate"));
                            }
                        }
                    },
                }
                if !oracle::domination_exists(&g, &lists, &seed_coloring, &budget).unwrap() {
                    failures.push(format!("{label}: oracle finds no dominating coloring"));
                }
            }
        }
    }
    Outcome::check(&failures, format!("{graphs} connected non-Gallai graphs, {instances} instances, oracle-confirmed"))
}

// C7

fn forest_case(g: &Graph, d: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = g.n();
    let mut anchors = Vec::new();
    for comp in components(g) {
        let mut chosen: Vec<usize> = comp.iter().copied().filter(|_| rng.gen_bool(0.25)).collect();
        if chosen.is_empty() {
            chosen.push(*comp.choose(rng).unwrap());
        }
        anchors.extend(chosen);
    }
    let lists = vec![(0..d).collect::<Vec<_>>(); n];
    let seed = random_partial(g, &lists, 0.7, rng);
    let seed_coloring = PartialColoring::from_assignment(d, seed.clone()).unwrap();
    let forest = build_one_ended_subforest(g, &anchors).map_err(|e| e.to_string())?;
    let (f, witness) = forest_recolor(g, &forest, &seed_coloring, d).map_err(|e| e.to_string())?;
    let colors = f.assignment();
    let mut is_anchor = vec![false; n];
    for &a in &anchors {
        is_anchor[a] = true;
    }
    if let Some(v) = (0..n).find(|&v| !is_anchor[v] && colors[v].is_none()) {
        return Err(format!("non-anchor {v} left uncolored"));
    }
    if colors.iter().flatten().any(|&c| c >= d) || bad_edge(g, colors).is_some() {
        return Err("improper result".into());
    }
    let have = counts_of(&colors.iter().flatten().copied().collect::<Vec<_>>(), d);
    let need = counts_of(&seed.iter().flatten().copied().collect::<Vec<_>>(), d);
    if have.iter().zip(&need).any(|(h, n)| h < n) {
        return Err(format!("counts {have:?} below seed {need:?}"));
    }
    // ψ moves each vertex at most one step up the forest; restricted to the
    // preimages it must be a color-preserving bijection onto the seed domain.
    if let Some(x) = (0..n).find(|&x| witness.psi[x] != x && Some(witness.psi[x]) != forest.parent(x)) {
        return Err(format!("psi({x}) = {} is neither {x} nor its parent", witness.psi[x]));
    }
    let mut used = vec![false; n];
    for y in 0..n {
        match (seed[y], witness.preimage[y]) {
            (None, None) => {}
            (Some(c), Some(x)) => {
                if used[x] {
                    return Err(format!("preimage {x} used twice"));
                }
                used[x] = true;
                if witness.psi[x] != y || colors[x] != Some(c) {
                    return Err(format!("preimage {x} of {y} does not map back with color {c}"));
                }
            }
            _ => return Err(format!("preimage of {y} does not match the seed domain")),
        }
    }
    Ok(())
}

fn c7_forest(levels: &Levels) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for i in 0..200u64 {
        let mut rng = rng_for(&[7, i]);
        let n = rng.gen_range(5..=60);
        let p = rng.gen_range(0.02..0.25);
        let g = generate::gnp(n, p, i).unwrap();
        let d = g.max_degree().max(1) + rng.gen_range(0..=1);
        cases += 1;
        if let Err(e) = forest_case(&g, d, &mut rng) {
            failures.push(format!("triple {i}: {e}"));
        }
    }
    for (n, level) in levels.iter().enumerate().take(8).skip(1) {
        for (index, rows) in level.iter().enumerate() {
            let g = canon::from_rows(rows);
            for draw in 0..3u64 {
                let mut rng = rng_for(&[7, n as u64, index as u64, draw]);
                cases += 1;
                if let Err(e) = forest_case(&g, g.max_degree().max(1), &mut rng) {
                    failures.push(format!("n={n} #{index} draw {draw}: {e}"));
                }
            }
        }
    }
    Outcome::check(&failures, format!("{cases} cases, witnesses verified"))
}

// C8

fn c8_dominating_delta(levels: &Levels) -> Outcome {
    let budget = OracleBudget { max_palette: 10, max_list_size: 10, ..OracleBudget::default() }.unlimited_time();
    let mut failures = Vec::new();
    let (mut valid, mut excluded) = (0, 0);
    for (n, level) in levels.iter().enumerate() {
        for (index, rows) in level.iter().enumerate() {
            let g = canon::from_rows(rows);
            let delta = g.max_degree();
            if delta < 3 {
                continue;
            }
            let label = format!("n={n} #{index}");
            let mut rng = rng_for(&[8, n as u64, index as u64]);
            let lists = vec![(0..delta).collect::<Vec<_>>(); n];
            let seed = random_partial(&g, &lists, 0.8, &mut rng);
            let seed_coloring = PartialColoring::from_assignment(delta, seed.clone()).unwrap();
            let regular_gallai = components(&g).into_iter().find(|comp| {
                comp.iter().all(|&v| g.degree(v) == delta)
                    && oracle::brute_is_gallai_tree(&g.induced(comp), &budget).unwrap()
            });
            let result = dominating_delta_coloring(&g, &seed_coloring, delta);
            if let Some(comp) = regular_gallai {
                excluded += 1;
                match result {
                    Err(ForestError::RegularGallaiComponent { component }) if component == comp => {}
                    other => failures.push(format!("{label}: expected RegularGallaiComponent, got {other:?}")),
                }
                if oracle::count_proper_colorings(&g.induced(&comp), delta, &budget).unwrap() != 0 {
                    failures.push(format!("{label}: excluded component has a proper {delta}-coloring"));
                }
                continue;
            }
            valid += 1;
            let colors = match result.map(|f| f.to_total()) {
                Ok(Some(colors)) => colors,
                Ok(None) => {
                    failures.push(format!("{label}: partial result"));
                    continue;
                }
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    continue;
                }
            };
            let assignment: Vec<Option<Color>> = colors.iter().map(|&c| Some(c)).collect();
            if colors.iter().any(|&c| c >= delta) || bad_edge(&g, &assignment).is_some() {
                failures.push(format!("{label}: improper"));
            } else if !dominates(&colors, &seed, delta) {
                failures.push(format!("{label}: does not dominate"));
            }
            let uniform = ListAssignment::uniform(n, delta);
            if !oracle::domination_exists(&g, &uniform, &seed_coloring, &budget).unwrap() {
                failures.push(format!("{label}: oracle finds no dominating coloring"));
            }
        }
    }
    Outcome::check(
        &failures,
        format!(
            "{valid} valid graphs with n ≤ 9 and Δ ≥ 3, each re-solved by the oracle; \
             {excluded} with a Δ-regular Gallai component rejected"
        ),
    )
}

// C9, C10

struct Sparse {
    label: String,
    delta: usize,
    graph: Graph,
}

fn sparse_corpus(deltas: &[usize], sizes: &[usize], seeds: u64) -> Vec<Sparse> {
    let mut out = Vec::new();
    for &delta in deltas {
        for &n in sizes {
            for seed in 0..seeds {
                let avg = delta as f64 / 5.0;
                let room = (avg * n as f64 / 2.0).floor() as usize / delta;
                let hubs = 1 + (seed as usize % room.clamp(1, 4));
                let graph = generate::hub(n, delta, avg, hubs, seed).unwrap();
                out.push(Sparse { label: format!("hub Δ={delta} n={n} seed={seed}"), delta, graph });
            }
        }
    }
    out
}

/// `2·n·C(X′)` as (twice the boundary edges) + (twice the internal edges).
fn twice_cost(rows: &[u16], subset: u16) -> u32 {
    let mut total = 0;
    for (x, &row) in rows.iter().enumerate() {
        if subset >> x & 1 == 1 {
            total += 2 * (row & !subset).count_ones() + (row & subset).count_ones();
        }
    }
    total
}

/// (X1) and (X2) for `t = 2Δ/5`, in integers.
fn check_x1_x2(g: &Graph, delta: usize, x: &[usize]) -> Result<(), String> {
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    for y in (0..g.n()).filter(|&y| !inside[y]) {
        if 5 * g.degree(y) >= 4 * delta {
            return Err(format!("X1 fails at {y}"));
        }
        let outside = g.neighbors(y).iter().filter(|&&w| !inside[w]).count();
        if 5 * outside >= 2 * delta {
            return Err(format!("X2 fails at {y}"));
        }
    }
    Ok(())
}

/// (X3) for `X` itself and either all its subsets (when small) or 100 random ones.
fn check_x3(g: &Graph, delta: usize, x: &[usize], rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = g.n();
    let report = cost(g, x);
    let twice = 2 * report.boundary_edges + 2 * report.internal_edges;
    if report.cost != r(twice as i128, 2 * n as i128) {
        return Err(format!("cost of X is {}, expected {twice}/(2n)", report.cost));
    }
    let holds = |sub: &[usize]| {
        let mut member = vec![false; n];
        for &v in sub {
            member[v] = true;
        }
        let twice: usize = sub
            .iter()
            .map(|&v| g.neighbors(v).iter().map(|&w| if member[w] { 1 } else { 2 }).sum::<usize>())
            .sum();
        // C(X′) ≥ t·|X′|/n with t = 2Δ/5.
        5 * twice >= 4 * delta * sub.len()
    };
    let subsets: Vec<Vec<usize>> = if x.len() <= 12 {
        (1u32..1 << x.len()).map(|mask| (0..x.len()).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).collect()).collect()
    } else {
        std::iter::once(x.to_vec())
            .chain((0..100).map(|_| x.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()))
            .collect()
    };
    match subsets.into_iter().find(|sub| !holds(sub)) {
        Some(sub) => Err(format!("X3 fails for {sub:?}")),
        None => Ok(()),
    }
}

fn c9_dense_set(levels: &Levels, corpus: &[Sparse]) -> Outcome {
    let mut failures = Vec::new();
    let mut largest = r(0, 1);
    for (i, s) in corpus.iter().enumerate() {
        let x = extract_dense_set(&s.graph, r(2 * s.delta as i128, 5));
        let mut rng = rng_for(&[9, i as u64]);
        if let Err(e) = check_x1_x2(&s.graph, s.delta, &x).and_then(|_| check_x3(&s.graph, s.delta, &x, &mut rng)) {
            failures.push(format!("{}: {e}", s.label));
        }
        let share = r(x.len() as i128, s.graph.n() as i128);
        largest = largest.max(share);
        if share > r(1, 4) {
            failures.push(format!("{}: |X|/n = {share} above 1/4", s.label));
        }
    }
    // Every graph on at most nine vertices, dense or not: all subsets of X.
    let mut small = 0;
    for (n, level) in levels.iter().enumerate() {
        for (index, rows) in level.iter().enumerate() {
            let g = canon::from_rows(rows);
            let delta = g.max_degree();
            if delta == 0 {
                continue;
            }
            small += 1;
            let x = extract_dense_set(&g, r(2 * delta as i128, 5));
            let xmask = x.iter().fold(0u16, |m, &v| m | 1 << v);
            let mut sub = xmask;
            while sub != 0 {
                if 5 * twice_cost(rows, sub) < 4 * delta as u32 * sub.count_ones() {
                    failures.push(format!("n={n} #{index}: X3 fails for mask {sub:#b}"));
                    break;
                }
                sub = (sub - 1) & xmask;
            }
            if let Err(e) = check_x1_x2(&g, delta, &x) {
                failures.push(format!("n={n} #{index}: {e}"));
            }
        }
    }
    Outcome::check(
        &failures,
        format!(
            "{} sparse graphs (largest |X|/n = {largest}), {small} graphs with n ≤ 9 checked over all subsets",
            corpus.len()
        ),
    )
}

fn c10_pipeline(corpus: &[Sparse]) -> Outcome {
    let mut failures = Vec::new();
    let (mut within_two, mut worst_gap, mut slack_claims) = (0, 0, 0);
    for s in corpus {
        let (g, delta, n) = (&s.graph, s.delta, s.graph.n());
        let label = &s.label;
        let (f, report) = match equitable_delta_coloring(g, delta) {
            Ok(ok) => ok,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let Some(colors) = f.to_total() else {
            failures.push(format!("{label}: partial result"));
            continue;
        };
        let assignment: Vec<Option<Color>> = colors.iter().map(|&c| Some(c)).collect();
        if colors.iter().any(|&c| c >= delta) || bad_edge(g, &assignment).is_some() || colors != report.f {
            failures.push(format!("{label}: improper or inconsistent result"));
            continue;
        }
        let x = &report.cost.x;
        let mut frozen = vec![false; n];
        for &v in x {
            frozen[v] = true;
            if report.g[v] != colors[v] {
                failures.push(format!("{label}: balancing moved {v} inside X"));
            }
        }
        let counts = counts_of(&colors, delta);
        'p2: for alpha in 0..delta {
            for beta in 0..delta {
                if counts[beta] < counts[alpha] + 2 {
                    continue;
                }
                let free = (0..n).find(|&y| {
                    colors[y] == beta && !frozen[y] && g.neighbors(y).iter().all(|&w| colors[w] != alpha)
                });
                if let Some(y) = free {
                    failures.push(format!("{label}: {y} could still move from {beta} to {alpha}"));
                    break 'p2;
                }
            }
        }
        let slack = r(delta as i128 + 1, n as i128);
        for claim in &report.claims {
            match claim.verdict {
                ClaimVerdict::Holds => {}
                ClaimVerdict::HoldsWithSlack if claim.lhs - claim.rhs <= slack => slack_claims += 1,
                _ => failures.push(format!("{label}: claim {} fails ({} vs {})", claim.name, claim.lhs, claim.rhs)),
            }
        }
        let gap = gap_of(&counts);
        worst_gap = worst_gap.max(gap);
        if gap <= 2 {
            within_two += 1;
        }
        if gap > delta + 1 {
            failures.push(format!("{label}: gap {gap}"));
        }
    }
    if 100 * within_two < 95 * corpus.len() {
        failures.push(format!("gap ≤ 2 on only {within_two} of {}", corpus.len()));
    }
    Outcome::check(
        &failures,
        format!(
            "{} instances, gap ≤ 2 on {within_two}, worst gap {worst_gap}, {slack_claims} claims within rounding slack",
            corpus.len()
        ),
    )
}

// C11

fn c11_oracle() -> Outcome {
    let budget = OracleBudget::default();
    let mut failures = Vec::new();
    let k3 = oracle::count_proper_colorings(&named::complete(3), 3, &budget).unwrap();
    if k3 != 6 {
        failures.push(format!("K3 with 3 colors: {k3} colorings"));
    }
    let k33 = Graph::new(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
    if oracle::equitable_exists(&k33, 3, &budget).unwrap() {
        failures.push("K3,3 has an equitable 3-coloring".into());
    }
    let c5 = oracle::enumerate_proper_colorings(&named::cycle(5), oracle::Colors::Palette(2), &budget).unwrap();
    if c5.count() != 0 {
        failures.push("C5 has a proper 2-coloring".into());
    }
    for n in 3..=8u32 {
        for k in 2..=4u64 {
            let cycle = oracle::count_proper_colorings(&named::cycle(n as usize), k as usize, &budget).unwrap();
            let path = oracle::count_proper_colorings(&named::path(n as usize), k as usize, &budget).unwrap();
            let closed_cycle = (k - 1).pow(n) as i128 + if n % 2 == 0 { 1 } else { -1 } * (k as i128 - 1);
            let closed_path = k * (k - 1).pow(n - 1);
            if cycle as i128 != closed_cycle || path != closed_path {
                failures.push(format!("n={n} k={k}: cycle {cycle} path {path}"));
            }
        }
    }
    Outcome::check(&failures, "K3 → 6, K3,3 not equitably 3-colorable, C5 not 2-colorable, closed forms agree".into())
}

fn main() {
    let wanted: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let run = |id: &str| wanted.is_empty() || wanted.iter().any(|w| w.eq_ignore_ascii_case(id));
    let needs_levels = ["C5", "C6", "C7", "C8", "C9"].iter().any(|id| run(id));
    let levels: Levels = if needs_levels { canon::graphs_by_order(9) } else { Vec::new() };
    let corpus = || {
        let mut c = sparse_corpus(&[10, 15], &[100, 400], 25);
        c.extend(sparse_corpus(&[5, 8], &[30, 60], 10));
        c
    };

    let mut results: Vec<(&str, &str, Outcome, Duration)> = Vec::new();
    if run("C1") || run("C2") || run("C3") {
        let clock = Instant::now();
        let [c1, c2, c3] = driver_criteria();
        let elapsed = clock.elapsed();
        for (id, name, outcome) in
            [("C1", "equitable driver", c1), ("C2", "ledger bound", c2), ("C3", "stability bound", c3)]
        {
            if run(id) {
                print_line(id, name, &outcome, elapsed);
                results.push((id, name, outcome, elapsed));
            }
        }
    }
    let mut timed = |id: &'static str, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        if run(id) {
            let clock = Instant::now();
            let outcome = f();
            let elapsed = clock.elapsed();
            print_line(id, name, &outcome, elapsed);
            results.push((id, name, outcome, elapsed));
        }
    };

    timed("C4", "rearrangement contraction", &mut c4_rearrangement);
    timed("C5", "small-move probe", &mut || c5_move_probe(&levels));
    timed("C6", "list domination", &mut || c6_list_domination(&levels));
    timed("C7", "forest recoloring", &mut || c7_forest(&levels));
    timed("C8", "dominating Δ-coloring", &mut || c8_dominating_delta(&levels));
    let sparse = if run("C9") || run("C10") { corpus() } else { Vec::new() };
    timed("C9", "dense set", &mut || c9_dense_set(&levels, &sparse));
    timed("C10", "sparse Δ-coloring pipeline", &mut || c10_pipeline(&sparse[..100]));
    timed("C11", "oracle self-checks", &mut c11_oracle);

    let unexpected = results.iter().filter(|(_, _, o, _)| !o.pass && !o.known).count();
    let known = results.iter().filter(|(_, _, o, _)| o.known).count();
    let passed = results.iter().filter(|(_, _, o, _)| o.pass).count();
    println!("acceptance: {passed} passed, {known} failed as archived, {unexpected} failed unexpectedly");
    if unexpected > 0 {
        std::process::exit(1);
    }
}

fn print_line(id: &str, name: &str, outcome: &Outcome, elapsed: Duration) {
    let status = match (outcome.pass, outcome.known) {
        (true, _) => "PASS",
        (false, true) => "FAIL (known)",
        (false, false) => "FAIL",
    };
    println!("{id:<4} {status:<13} {name} [{elapsed:.1?}]: {}", outcome.detail);
}

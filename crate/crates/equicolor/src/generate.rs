//! Seeded instance generators. The same spec always yields the same graph.

use crate::graph::{named, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum GenerateError {
    #[error("infeasible parameters: {reason}")]
    InfeasibleParameters { reason: String },
    #[error("no simple pairing found after {attempts} attempts")]
    RejectionLimit { attempts: usize },
}

fn infeasible(reason: impl Into<String>) -> GenerateError {
    GenerateError::InfeasibleParameters { reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum InstanceSpec {
    /// Uniform `d`-regular graph from the pairing model, rejecting loops and
    /// repeated pairs.
    Regular { n: usize, d: usize, seed: u64 },
    /// Erdős–Rényi `G(n, p)`.
    Gnp { n: usize, p: f64, seed: u64 },
    /// `rows × cols` grid with wrap-around; 4-regular for sides ≥ 3.
    Torus { rows: usize, cols: usize },
    /// Random bipartite graph on parts of size `a` and `b`.
    Bipartite { a: usize, b: usize, p: f64, seed: u64 },
    /// Connected graph built by gluing `blocks` random cliques and odd
    /// cycles at cut vertices.
    GallaiTree { blocks: usize, max_block: usize, seed: u64 },
    /// `hubs` vertices of degree `delta` over a random sparse remainder with
    /// average degree at most `target_avg` and maximum degree `delta`.
    Hub { n: usize, delta: usize, target_avg: f64, hubs: usize, seed: u64 },
    /// Path, cycle, complete, star, petersen or bowtie.
    Named { name: String, n: usize },
}

pub fn generate(spec: &InstanceSpec) -> Result<Graph, GenerateError> {
    match *spec {
        InstanceSpec::Regular { n, d, seed } => regular(n, d, seed),
        InstanceSpec::Gnp { n, p, seed } => gnp(n, p, seed),
        InstanceSpec::Torus { rows, cols } => torus(rows, cols),
        InstanceSpec::Bipartite { a, b, p, seed } => bipartite(a, b, p, seed),
        InstanceSpec::GallaiTree { blocks, max_block, seed } => gallai_tree(blocks, max_block, seed),
        InstanceSpec::Hub { n, delta, target_avg, hubs, seed } => hub(n, delta, target_avg, hubs, seed),
        InstanceSpec::Named { ref name, n } => named_graph(name, n),
    }
}

const PAIRING_ATTEMPTS: usize = 100_000;

pub fn regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if (n * d) % 2 == 1 {
        return Err(infeasible(format!("n·d = {} is odd", n * d)));
    }
    if d > 0 && d >= n {
        return Err(infeasible(format!("degree {d} needs more than {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(points.len() / 2);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Ok(Graph::new(n, &edges).expect("pairing is simple"));
    }
    Err(GenerateError::RejectionLimit { attempts: PAIRING_ATTEMPTS })
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(infeasible(format!("edge probability {p} outside [0, 1]")));
    }
    Ok(())
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("pairs are distinct"))
}

pub fn torus(rows: usize, cols: usize) -> Result<Graph, GenerateError> {
    if rows < 3 || cols < 3 {
        return Err(infeasible(format!("torus sides must be at least 3, got {rows}×{cols}")));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((id(r, c), id(r, (c + 1) % cols)));
            edges.push((id(r, c), id((r + 1) % rows, c)));
        }
    }
    Ok(Graph::new(rows * cols, &edges).expect("torus with sides ≥ 3 is simple"))
}

pub fn bipartite(a: usize, b: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            if rng.gen_bool(p) {
                edges.push((u, a + v));
            }
        }
    }
    Ok(Graph::new(a + b, &edges).expect("pairs are distinct"))
}

pub fn gallai_tree(blocks: usize, max_block: usize, seed: u64) -> Result<Graph, GenerateError> {
    if blocks == 0 || max_block < 2 {
        return Err(infeasible("need at least one block of size at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 1;
    let mut edges = Vec::new();
    for _ in 0..blocks {
        let cut = rng.gen_range(0..n);
        let size = rng.gen_range(2..=max_block);
        let odd_cycle = size >= 5 && size % 2 == 1 && rng.gen_bool(0.5);
        let vertices: Vec<usize> = std::iter::once(cut).chain(n..n + size - 1).collect();
        n += size - 1;
        if odd_cycle {
            for i in 0..size {
                edges.push((vertices[i], vertices[(i + 1) % size]));
            }
        } else {
            for i in 0..size {
                for j in i + 1..size {
                    edges.push((vertices[i], vertices[j]));
                }
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("blocks share only cut vertices"))
}

pub fn hub(n: usize, delta: usize, target_avg: f64, hubs: usize, seed: u64) -> Result<Graph, GenerateError> {
    let budget = (target_avg * n as f64 / 2.0).floor();
    if !(budget >= 0.0) {
        return Err(infeasible(format!("bad target average {target_avg}")));
    }
    let budget = budget as usize;
    if hubs == 0 || delta == 0 {
        return Err(infeasible("need at least one hub of positive degree"));
    }
    if n < hubs + delta {
        return Err(infeasible(format!("{n} vertices cannot host {hubs} hubs of degree {delta}")));
    }
    if hubs * delta > budget {
        return Err(infeasible(format!(
            "{hubs} hubs of degree {delta} need {} edges, average {target_avg} allows {budget}",
            hubs * delta
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = CappedBuilder { delta, degree: vec![0; n], present: HashSet::new(), edges: Vec::new() };
    let others: Vec<usize> = (hubs..n).collect();
    for h in 0..hubs {
        let mut pool: Vec<usize> = others.iter().copied().filter(|&v| b.degree[v] + 1 < delta).collect();
        pool.shuffle(&mut rng);
        let mut placed = 0;
        for v in pool {
            if placed == delta {
                break;
            }
            if b.add(h, v) {
                placed += 1;
            }
        }
        if placed < delta {
            return Err(infeasible(format!("hub {h} found only {placed} free neighbours")));
        }
    }
    // Fill the remaining edge budget with random edges below the degree cap.
    let mut failures = 0;
    while b.edges.len() < budget && failures < 100 * n {
        let u = rng.gen_range(hubs..n);
        let v = rng.gen_range(hubs..n);
        if b.add(u, v) {
            failures = 0;
        } else {
            failures += 1;
        }
    }
    let g = Graph::new(n, &b.edges).expect("edges are deduplicated");
    debug_assert_eq!(g.max_degree(), delta);
    debug_assert!((2 * g.edge_count()) as f64 <= target_avg * n as f64);
    Ok(g)
}

struct CappedBuilder {
    delta: usize,
    degree: Vec<usize>,
    present: HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl CappedBuilder {
    fn add(&mut self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        if u == v || self.degree[u] >= self.delta || self.degree[v] >= self.delta || !self.present.insert(e) {
            return false;
        }
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edges.push(e);
        true
    }
}

pub fn named_graph(name: &str, n: usize) -> Result<Graph, GenerateError> {
    let need = |min: usize| if n < min { Err(infeasible(format!("{name} needs n ≥ {min}"))) } else { Ok(()) };
    match name {
        "path" => need(1).map(|_| named::path(n)),
        "cycle" => need(3).map(|_| named::cycle(n)),
        "complete" => Ok(named::complete(n)),
        "star" => Ok(named::star(n)),
        "empty" => Ok(Graph::empty(n)),
        "petersen" => Ok(named::petersen()),
        "bowtie" => Ok(named::bowtie()),
        _ => Err(infeasible(format!("unknown named graph {name:?}"))),
    }
}

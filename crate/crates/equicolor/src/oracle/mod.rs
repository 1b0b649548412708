//! Brute-force ground truth for tiny instances.
//!
//! Everything here is plain enumeration so that it can be trusted without
//! reading the engines it checks. Searches stop early once the answer is
//! known and abort with [`OracleError::BudgetExceeded`] past the budget.

pub mod canon;

use crate::coloring::{Color, ListAssignment, PartialColoring};
use crate::graph::Graph;
use serde::Serialize;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum OracleError {
    #[error("oracle budget exceeded: {what}")]
    BudgetExceeded { what: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_palette: usize,
    pub max_list_size: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_palette: 6, max_list_size: 6, time_cap: Some(Duration::from_secs(60)) }
    }
}

impl OracleBudget {
    pub fn unlimited_time(self) -> OracleBudget {
        OracleBudget { time_cap: None, ..self }
    }

    fn check_vertices(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_vertices {
            return Err(exceeded(format!("{n} vertices, limit {}", self.max_vertices)));
        }
        Ok(())
    }

    fn check_palette(&self, k: usize) -> Result<(), OracleError> {
        if k > self.max_palette {
            return Err(exceeded(format!("palette of {k} colors, limit {}", self.max_palette)));
        }
        Ok(())
    }

    fn check_lists(&self, lists: &ListAssignment) -> Result<(), OracleError> {
        if let Some(l) = lists.lists().iter().map(Vec::len).max().filter(|&l| l > self.max_list_size) {
            return Err(exceeded(format!("list of {l} colors, limit {}", self.max_list_size)));
        }
        Ok(())
    }

    fn clock(&self) -> Clock {
        Clock { deadline: self.time_cap.map(|d| Instant::now() + d), ticks: 0 }
    }
}

fn exceeded(what: String) -> OracleError {
    OracleError::BudgetExceeded { what }
}

struct Clock {
    deadline: Option<Instant>,
    ticks: u64,
}

impl Clock {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(exceeded("time cap reached".into()));
        }
        Ok(())
    }
}

/// Where vertex colors come from.
#[derive(Debug, Clone, Copy)]
pub enum Colors<'a> {
    Palette(usize),
    Lists(&'a ListAssignment),
}

/// Lazy stream of proper total colorings in lexicographic order.
///
/// Yields `Err(BudgetExceeded)` once if the time cap is hit, then stops.
pub struct ProperColorings {
    earlier: Vec<Vec<usize>>,
    options: Vec<Vec<Color>>,
    /// Only colorings whose colors first appear in increasing order.
    up_to_renaming: bool,
    idx: Vec<usize>,
    colors: Vec<Color>,
    depth: usize,
    started: bool,
    done: bool,
    clock: Clock,
}

impl ProperColorings {
    fn new(g: &Graph, options: Vec<Vec<Color>>, up_to_renaming: bool, budget: &OracleBudget) -> ProperColorings {
        let n = g.n();
        ProperColorings {
            earlier: (0..n).map(|v| g.neighbors(v).iter().copied().filter(|&w| w < v).collect()).collect(),
            options,
            up_to_renaming,
            idx: vec![0; n],
            colors: vec![0; n],
            depth: 0,
            started: false,
            done: false,
            clock: budget.clock(),
        }
    }

    fn limit(&self, depth: usize) -> usize {
        if !self.up_to_renaming {
            return self.options[depth].len();
        }
        let next_new = self.colors[..depth].iter().map(|&c| c + 1).max().unwrap_or(0);
        self.options[depth].iter().take_while(|&&c| c <= next_new).count()
    }
}

impl Iterator for ProperColorings {
    type Item = Result<Vec<Color>, OracleError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.options.len();
        if n == 0 {
            self.done = true;
            return Some(Ok(Vec::new()));
        }
        if self.started {
            self.idx[self.depth] += 1;
        }
        self.started = true;
        loop {
            if self.idx[self.depth] >= self.limit(self.depth) {
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.idx[self.depth] = 0;
                self.depth -= 1;
                self.idx[self.depth] += 1;
                continue;
            }
            if let Err(e) = self.clock.tick() {
                self.done = true;
                return Some(Err(e));
            }
            let v = self.depth;
            let c = self.options[v][self.idx[v]];
            if self.earlier[v].iter().any(|&w| self.colors[w] == c) {
                self.idx[v] += 1;
                continue;
            }
            self.colors[v] = c;
            if v + 1 == n {
                return Some(Ok(self.colors.clone()));
            }
            self.depth += 1;
            self.idx[self.depth] = 0;
        }
    }
}

fn options_for(g: &Graph, colors: Colors<'_>, budget: &OracleBudget) -> Result<Vec<Vec<Color>>, OracleError> {
    budget.check_vertices(g.n())?;
    match colors {
        Colors::Palette(k) => {
            budget.check_palette(k)?;
            Ok(vec![(0..k).collect(); g.n()])
        }
        Colors::Lists(lists) => {
            budget.check_lists(lists)?;
            assert_eq!(lists.n(), g.n(), "one list per vertex");
            Ok(lists.lists().to_vec())
        }
    }
}

pub fn enumerate_proper_colorings(
    g: &Graph,
    colors: Colors<'_>,
    budget: &OracleBudget,
) -> Result<ProperColorings, OracleError> {
    Ok(ProperColorings::new(g, options_for(g, colors, budget)?, false, budget))
}

/// Proper `k`-colorings with one representative per renaming of colors:
/// the first vertex of each class uses the smallest unused color.
pub fn enumerate_colorings_up_to_renaming(
    g: &Graph,
    k: usize,
    budget: &OracleBudget,
) -> Result<ProperColorings, OracleError> {
    Ok(ProperColorings::new(g, options_for(g, Colors::Palette(k), budget)?, true, budget))
}

pub fn count_proper_colorings(g: &Graph, k: usize, budget: &OracleBudget) -> Result<u64, OracleError> {
    let mut count = 0;
    for c in enumerate_proper_colorings(g, Colors::Palette(k), budget)? {
        c?;
        count += 1;
    }
    Ok(count)
}

/// `k(k−1)^{n−1}` proper colorings of the path on `n ≥ 1` vertices.
pub fn path_proper_colorings(n: u32, k: u64) -> u128 {
    assert!(n >= 1);
    k as u128 * (k.saturating_sub(1) as u128).pow(n - 1)
}

/// `(k−1)^n + (−1)^n (k−1)` proper colorings of the cycle on `n ≥ 3` vertices.
pub fn cycle_proper_colorings(n: u32, k: u64) -> u128 {
    assert!(n >= 3);
    if k == 0 {
        return 0;
    }
    let base = (k - 1) as u128;
    if n.is_multiple_of(2) {
        base.pow(n) + base
    } else {
        base.pow(n) - base
    }
}

fn gap_of(colors: &[Color], k: usize) -> usize {
    let mut counts = vec![0usize; k];
    for &c in colors {
        counts[c] += 1;
    }
    counts.iter().max().unwrap_or(&0) - counts.iter().min().unwrap_or(&0)
}

pub fn equitable_exists(g: &Graph, k: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    if k == 0 {
        return Ok(g.n() == 0);
    }
    for c in enumerate_colorings_up_to_renaming(g, k, budget)? {
        if gap_of(&c?, k) <= 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Some total proper `L`-coloring with at least as many vertices of each
/// color as `g0`, if one exists.
pub fn find_dominating(
    g: &Graph,
    lists: &ListAssignment,
    g0: &PartialColoring,
    budget: &OracleBudget,
) -> Result<Option<Vec<Color>>, OracleError> {
    let options = options_for(g, Colors::Lists(lists), budget)?;
    let n = g.n();
    assert_eq!(g0.n(), n);
    let width = options.iter().flatten().map(|&c| c + 1).max().unwrap_or(0).max(g0.k());
    let mut need = vec![0usize; width];
    for c in g0.assignment().iter().flatten() {
        need[*c] += 1;
    }
    let mut state = DomSearch {
        g,
        options: &options,
        need,
        have: vec![0; width],
        colors: vec![usize::MAX; n],
        clock: budget.clock(),
    };
    let deficit = state.need.iter().sum();
    Ok(state.run(0, deficit)?.then_some(state.colors))
}

pub fn domination_exists(
    g: &Graph,
    lists: &ListAssignment,
    g0: &PartialColoring,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    Ok(find_dominating(g, lists, g0, budget)?.is_some())
}

struct DomSearch<'a> {
    g: &'a Graph,
    options: &'a [Vec<Color>],
    need: Vec<usize>,
    have: Vec<usize>,
    colors: Vec<Color>,
    clock: Clock,
}

impl DomSearch<'_> {
    /// `deficit` is the number of required color slots still unfilled; a
    /// branch dies once it exceeds the number of uncolored vertices.
    fn run(&mut self, v: usize, deficit: usize) -> Result<bool, OracleError> {
        let n = self.colors.len();
        if deficit > n - v {
            return Ok(false);
        }
        if v == n {
            return Ok(true);
        }
        for i in 0..self.options[v].len() {
            self.clock.tick()?;
            let c = self.options[v][i];
            if self.g.neighbors(v).iter().any(|&w| w < v && self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            self.have[c] += 1;
            let next = if self.have[c] <= self.need[c] { deficit - 1 } else { deficit };
            if self.run(v + 1, next)? {
                return Ok(true);
            }
            self.have[c] -= 1;
        }
        self.colors[v] = usize::MAX;
        Ok(false)
    }
}

/// An admissible move found by exhaustive scan: new colors on its domain,
/// and the witness color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMove {
    pub assignments: Vec<(usize, Color)>,
    pub witness: Color,
}

/// Smallest admissible move of size at most `m` for the total coloring `f`,
/// scanning domains by size then by vertex bitmask.
///
/// A move recolors every vertex of its domain, which is any set of at most
/// `m` vertices inside one connected component; the domain itself need not
/// be connected. Leaving a vertex unchanged is the same move on a smaller
/// domain, so those maps are skipped. A move is admissible when
/// the result is proper, the ledger condition `Σ|δ| ≤ 6·min δ⁺` holds, and
/// some gaining color `α` satisfies `c(α) < c(β)` and
/// `c(α) + δ_α ≤ c(β) + δ_β` for every losing color `β`.
pub fn find_admissible_move(
    g: &Graph,
    f: &PartialColoring,
    m: usize,
    budget: &OracleBudget,
) -> Result<Option<OracleMove>, OracleError> {
    let n = g.n();
    budget.check_vertices(n)?;
    let k = f.k();
    budget.check_palette(k)?;
    let colors = f.to_total().expect("improving moves are defined for total colorings");
    let mut counts = vec![0i64; k];
    for &c in &colors {
        counts[c] += 1;
    }
    let component: Vec<u32> = (0..n).map(|v| reach_mask(g, v)).collect();
    let mut clock = budget.clock();
    for size in 1..=m.min(n) {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != size || mask & !component[mask.trailing_zeros() as usize] != 0 {
                continue;
            }
            let domain: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let mut new = vec![0usize; size];
            loop {
                clock.tick()?;
                if let Some(witness) = check_move(g, &colors, &counts, &domain, &new) {
                    let assignments = domain.iter().copied().zip(new.iter().copied()).collect();
                    return Ok(Some(OracleMove { assignments, witness }));
                }
                // Odometer over all maps domain -> 0..k.
                let mut i = 0;
                while i < size && new[i] + 1 == k {
                    new[i] = 0;
                    i += 1;
                }
                if i == size {
                    break;
                }
                new[i] += 1;
            }
        }
    }
    Ok(None)
}

pub fn improving_move_exists(g: &Graph, f: &PartialColoring, m: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    Ok(find_admissible_move(g, f, m, budget)?.is_some())
}

/// Vertices reachable from `start` inside `G[mask]`, as a mask.
fn reach_within(g: &Graph, mask: u32, start: usize) -> u32 {
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen
}

/// The connected component of `v`, as a mask.
fn reach_mask(g: &Graph, v: usize) -> u32 {
    reach_within(g, u32::MAX, v)
}

fn connected_mask(g: &Graph, mask: u32) -> bool {
    reach_within(g, mask, mask.trailing_zeros() as usize) == mask
}

fn check_move(g: &Graph, colors: &[Color], counts: &[i64], domain: &[usize], new: &[Color]) -> Option<Color> {
    if domain.iter().zip(new).any(|(&v, &c)| colors[v] == c) {
        return None;
    }
    let mut after = colors.to_vec();
    for (&v, &c) in domain.iter().zip(new) {
        after[v] = c;
    }
    if g.edges().any(|(u, v)| after[u] == after[v]) {
        return None;
    }
    let mut delta = vec![0i64; counts.len()];
    for (&v, &c) in domain.iter().zip(new) {
        delta[c] += 1;
        delta[colors[v]] -= 1;
    }
    let l1: i64 = delta.iter().map(|d| d.abs()).sum();
    let min_gain = delta.iter().copied().filter(|&d| d > 0).min()?;
    if l1 > 6 * min_gain {
        return None;
    }
    let losers: Vec<usize> = (0..counts.len()).filter(|&b| delta[b] < 0).collect();
    (0..counts.len())
        .filter(|&a| delta[a] > 0)
        .filter(|&a| losers.iter().all(|&b| counts[a] < counts[b] && counts[a] + delta[a] <= counts[b] + delta[b]))
        .min_by_key(|&a| (counts[a], a))
}

fn mask_of(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

/// Whether `G[mask]` is connected and stays connected after deleting any
/// one vertex; two adjacent vertices count, one vertex does not.
fn two_connected_mask(g: &Graph, mask: u32) -> bool {
    match mask.count_ones() {
        0 | 1 => false,
        2 => {
            let u = mask.trailing_zeros() as usize;
            let v = 31 - mask.leading_zeros() as usize;
            g.has_edge(u, v)
        }
        _ => {
            connected_mask(g, mask)
                && (0..g.n()).filter(|&v| mask >> v & 1 == 1).all(|v| connected_mask(g, mask & !(1 << v)))
        }
    }
}

/// Blocks by definition: maximal 2-connected vertex sets, plus isolated
/// vertices. Each block sorted, blocks sorted.
pub fn brute_blocks(g: &Graph, budget: &OracleBudget) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = g.n();
    budget.check_vertices(n)?;
    let candidates: Vec<u32> = (1u32..1 << n).filter(|&m| two_connected_mask(g, m)).collect();
    let mut blocks: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|&&m| !candidates.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    blocks.extend((0..n).filter(|&v| g.degree(v) == 0).map(|v| vec![v]));
    blocks.sort();
    Ok(blocks)
}

pub fn brute_is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Odd cycle on at least three vertices as an induced subgraph.
pub fn brute_is_odd_cycle(g: &Graph, vertices: &[usize]) -> bool {
    let mask = mask_of(vertices);
    vertices.len() >= 3
        && vertices.len() % 2 == 1
        && connected_mask(g, mask)
        && vertices.iter().all(|&v| g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count() == 2)
}

/// Connected graph whose every block is a clique or an odd cycle.
pub fn brute_is_gallai_tree(g: &Graph, budget: &OracleBudget) -> Result<bool, OracleError> {
    if g.n() == 0 || !connected_mask(g, (1u32 << g.n()) - 1) {
        return Ok(false);
    }
    Ok(brute_blocks(g, budget)?.iter().all(|b| brute_is_clique(g, b) || brute_is_odd_cycle(g, b)))
}

pub fn brute_contains_clique(g: &Graph, q: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    let n = g.n();
    budget.check_vertices(n)?;
    Ok((0u32..1 << n).any(|m| {
        m.count_ones() as usize == q && brute_is_clique(g, &(0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
    }))
}

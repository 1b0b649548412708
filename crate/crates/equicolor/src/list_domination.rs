//! Total list colorings that dominate a given partial coloring.
//!
//! For a connected graph that is not a Gallai tree, a degree-list assignment
//! `L` and a proper partial `L`-coloring `g`, [`dominating_full_coloring`]
//! returns a total proper `L`-coloring `f` with `f ≽ g`: every color is used
//! at least as often by `f` as by `g`.

use crate::coloring::{Color, ListAssignment, PartialColoring};
use crate::graph::{block_decomposition, block_kind, BlockKind, Graph};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum ListDominationError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex {vertex} has {list_size} colors but degree {degree}")]
    NotDegreeList { vertex: usize, list_size: usize, degree: usize },
    #[error("seed is not a proper list coloring at vertex {vertex}")]
    ImproperSeed { vertex: usize },
    #[error("graph is a Gallai tree")]
    GallaiTree,
    #[error("pivot {pivot} is not a vertex of a graph with {n} vertices")]
    PivotOutOfRange { pivot: usize, n: usize },
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub seed: PartialColoring,
    /// Vertex allowed to stay uncolored by [`color_all_but_one`]; vertex 0 if unset.
    pub pivot: Option<usize>,
}

impl DominationInstance {
    pub fn new(graph: Graph, lists: ListAssignment, seed: PartialColoring) -> DominationInstance {
        DominationInstance { graph, lists, seed, pivot: None }
    }

    pub fn with_pivot(mut self, pivot: usize) -> DominationInstance {
        self.pivot = Some(pivot);
        self
    }

    fn palette(&self) -> usize {
        self.seed.k().max(self.lists.palette_bound())
    }
}

fn validate(inst: &DominationInstance) -> Result<(), ListDominationError> {
    let g = &inst.graph;
    let n = g.n();
    for got in [inst.lists.n(), inst.seed.n()] {
        if got != n {
            return Err(ListDominationError::SizeMismatch { expected: n, got });
        }
    }
    if !g.is_connected() {
        return Err(ListDominationError::NotConnected);
    }
    if let Some(vertex) = inst.lists.first_short_list(g) {
        return Err(ListDominationError::NotDegreeList {
            vertex,
            list_size: inst.lists.list(vertex).len(),
            degree: g.degree(vertex),
        });
    }
    for v in 0..n {
        if let Some(c) = inst.seed.get(v) {
            if !inst.lists.contains(v, c) || g.neighbors(v).iter().any(|&w| inst.seed.get(w) == Some(c)) {
                return Err(ListDominationError::ImproperSeed { vertex: v });
            }
        }
    }
    Ok(())
}

fn to_coloring(k: usize, h: Vec<Option<Color>>) -> PartialColoring {
    PartialColoring::from_assignment(k, h).expect("colors come from the lists")
}

/// Proper partial `L`-coloring `f ≽ g` coloring every vertex except possibly the pivot.
pub fn color_all_but_one(inst: &DominationInstance) -> Result<PartialColoring, ListDominationError> {
    validate(inst)?;
    let n = inst.graph.n();
    if n == 0 {
        return Ok(inst.seed.clone());
    }
    let u = inst.pivot.unwrap_or(0);
    if u >= n {
        return Err(ListDominationError::PivotOutOfRange { pivot: u, n });
    }
    let mut h = inst.seed.assignment().to_vec();
    all_but_one(&inst.graph, inst.lists.lists(), &mut h, u);
    let f = to_coloring(inst.palette(), h);
    debug_check(inst, &f, false);
    Ok(f)
}

/// Total dominating coloring when some vertex has more colors than neighbours.
///
/// Returns `Ok(None)` when every list is exactly degree-sized.
pub fn lemma_large_list_shortcut(inst: &DominationInstance) -> Result<Option<PartialColoring>, ListDominationError> {
    validate(inst)?;
    let g = &inst.graph;
    let Some(x) = (0..g.n()).find(|&x| inst.lists.list(x).len() > g.degree(x)) else {
        return Ok(None);
    };
    let mut h = inst.seed.assignment().to_vec();
    large_list(g, inst.lists.lists(), &mut h, x);
    let f = to_coloring(inst.palette(), h);
    debug_check(inst, &f, true);
    Ok(Some(f))
}

/// Total proper `L`-coloring dominating the seed, for connected non-Gallai graphs.
pub fn dominating_full_coloring(inst: &DominationInstance) -> Result<PartialColoring, ListDominationError> {
    validate(inst)?;
    let g = &inst.graph;
    if g.n() == 0 {
        return Err(ListDominationError::GallaiTree);
    }
    let blocks = block_decomposition(g).blocks;
    let Some(block) = blocks
        .into_iter()
        .filter(|b| block_kind(g, b) == BlockKind::Other)
        .min_by_key(|b| b[0])
    else {
        return Err(ListDominationError::GallaiTree);
    };
    let lists = inst.lists.lists();
    let mut h = inst.seed.assignment().to_vec();
    let u = block[0];
    all_but_one(g, lists, &mut h, u);
    if h[u].is_none() {
        h[u] = free_color(g, &lists[u], &h, u);
    }
    if h[u].is_none() {
        // Every vertex outside the block is now colored; re-solve inside it.
        let mut inside = vec![false; g.n()];
        for &x in &block {
            inside[x] = true;
        }
        let residual: Vec<Vec<Color>> = block
            .iter()
            .map(|&x| {
                let outside: Vec<Color> =
                    g.neighbors(x).iter().filter(|&&y| !inside[y]).filter_map(|&y| h[y]).collect();
                lists[x].iter().copied().filter(|c| !outside.contains(c)).collect()
            })
            .collect();
        let sub = g.induced(&block);
        let mut local: Vec<Option<Color>> = block.iter().map(|&x| h[x]).collect();
        solve_block(&sub, &residual, &mut local);
        for (i, &x) in block.iter().enumerate() {
            h[x] = local[i];
        }
    }
    let f = to_coloring(inst.palette(), h);
    debug_check(inst, &f, true);
    Ok(f)
}

fn debug_check(inst: &DominationInstance, f: &PartialColoring, total: bool) {
    if !crate::debug::enabled() {
        return;
    }
    let g = &inst.graph;
    assert!(crate::coloring::is_proper(g, f), "result is not proper");
    assert!((0..g.n()).all(|v| f.get(v).is_none_or(|c| inst.lists.contains(v, c))), "color outside list");
    assert!(crate::coloring::dominates(f, &inst.seed, &inst.lists.union()), "result does not dominate the seed");
    if total {
        assert!(f.is_total(), "result is not total");
    } else {
        let u = inst.pivot.unwrap_or(0);
        assert!((0..g.n()).all(|v| v == u || f.is_colored(v)), "a non-pivot vertex is uncolored");
    }
}

fn free_color(g: &Graph, list: &[Color], h: &[Option<Color>], v: usize) -> Option<Color> {
    list.iter().copied().find(|&c| g.neighbors(v).iter().all(|&w| h[w] != Some(c)))
}

/// In-place all-but-one coloring on a connected graph with degree lists.
///
/// Repeatedly: extend `h` greedily to a maximal coloring of the live
/// vertices, take a leaf `z ≠ u` of a DFS tree rooted at `u`, and, if `z`
/// is blocked, give it the color of a neighbour and uncolor that neighbour.
/// Then freeze `z` and drop its color from its live neighbours' lists.
/// Class counts never decrease.
fn all_but_one(g: &Graph, lists: &[Vec<Color>], h: &mut [Option<Color>], u: usize) {
    let n = g.n();
    let mut lists = lists.to_vec();
    let mut alive = vec![true; n];
    let mut remaining = n;
    loop {
        for v in 0..n {
            if alive[v] && h[v].is_none() {
                h[v] = lists[v]
                    .iter()
                    .copied()
                    .find(|&c| g.neighbors(v).iter().all(|&w| !alive[w] || h[w] != Some(c)));
            }
        }
        if remaining <= 1 {
            break;
        }
        let z = first_leaf(g, &alive, u);
        if h[z].is_none() {
            // Blocked with a degree-sized list: the live neighbours carry each
            // list color exactly once.
            let y = *g.neighbors(z).iter().find(|&&w| alive[w]).expect("z has a live neighbour");
            debug_assert!(h[y].is_some_and(|c| lists[z].contains(&c)));
            h[z] = h[y];
            h[y] = None;
        }
        let c = h[z].expect("z colored");
        alive[z] = false;
        remaining -= 1;
        for &w in g.neighbors(z) {
            if alive[w] {
                lists[w].retain(|&d| d != c);
            }
        }
    }
}

/// First vertex finished by a DFS from `u` over live vertices, taking
/// smallest neighbours first. It is a leaf of the DFS tree other than `u`.
fn first_leaf(g: &Graph, alive: &[bool], u: usize) -> usize {
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut v = u;
    while let Some(&w) = g.neighbors(v).iter().find(|&&w| alive[w] && !seen[w]) {
        seen[w] = true;
        v = w;
    }
    assert_ne!(v, u, "live subgraph must be connected with at least two vertices");
    v
}

/// All-but-one pivoted at `x`, where `|L(x)| > deg(x)` guarantees `x` ends colored.
fn large_list(g: &Graph, lists: &[Vec<Color>], h: &mut [Option<Color>], x: usize) {
    all_but_one(g, lists, h, x);
    if h[x].is_none() {
        h[x] = free_color(g, &lists[x], h, x);
    }
    assert!(h[x].is_some(), "a vertex with a spare color cannot stay blocked");
}

/// Total coloring of a 2-connected block that is neither a clique nor an
/// odd cycle, given degree lists and a seed missing at most one vertex.
fn solve_block(g: &Graph, lists: &[Vec<Color>], h: &mut [Option<Color>]) {
    let n = g.n();
    if let Some(x) = (0..n).find(|&x| lists[x].len() > g.degree(x)) {
        large_list(g, lists, h, x);
        return;
    }
    let unequal = (0..n).find_map(|x| {
        g.neighbors(x).iter().find_map(|&y| {
            lists[x].iter().copied().find(|c| !lists[y].contains(c)).map(|beta| (x, y, beta))
        })
    });
    if let Some((x, y, beta)) = unequal {
        all_but_one(g, lists, h, x);
        if h[x].is_none() {
            h[x] = free_color(g, &lists[x], h, x);
        }
        if h[x].is_some() {
            return;
        }
        // x is blocked, so exactly one neighbour z carries β; z ≠ y as β ∉ L(y).
        let z = *g.neighbors(x).iter().find(|&&w| h[w] == Some(beta)).expect("β is blocked at x");
        h[z] = None;
        let rest: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        let sub = g.induced(&rest);
        let sub_lists: Vec<Vec<Color>> = rest
            .iter()
            .map(|&v| {
                let mut l = lists[v].clone();
                if g.has_edge(v, x) {
                    l.retain(|&c| c != beta);
                }
                l
            })
            .collect();
        let mut local: Vec<Option<Color>> = rest.iter().map(|&v| h[v]).collect();
        let y_local = rest.iter().position(|&v| v == y).unwrap();
        large_list(&sub, &sub_lists, &mut local, y_local);
        for (i, &v) in rest.iter().enumerate() {
            h[v] = local[i];
        }
        h[x] = Some(beta);
        return;
    }
    let list = &lists[0];
    if list.len() == 2 {
        // Even cycle: either proper 2-coloring has n/2 vertices per color.
        let side = bipartition(g).expect("an even cycle is bipartite");
        for v in 0..n {
            h[v] = Some(list[side[v]]);
        }
        return;
    }
    let required = counts_of(h);
    let solution = equal_list_search(g, list, h, &required).expect("a dominating coloring exists");
    for v in 0..n {
        h[v] = Some(solution[v]);
    }
}

fn counts_of(h: &[Option<Color>]) -> Vec<(Color, usize)> {
    let mut out: Vec<(Color, usize)> = Vec::new();
    for c in h.iter().flatten() {
        match out.iter_mut().find(|e| e.0 == *c) {
            Some(e) => e.1 += 1,
            None => out.push((*c, 1)),
        }
    }
    out
}

fn bipartition(g: &Graph) -> Option<Vec<usize>> {
    let mut side = vec![usize::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// Branch and bound for a proper coloring from one shared list meeting
/// per-color lower bounds. Vertices are visited in BFS order from an
/// uncolored vertex and try their seed color first.
fn equal_list_search(
    g: &Graph,
    list: &[Color],
    seed: &[Option<Color>],
    required: &[(Color, usize)],
) -> Option<Vec<Color>> {
    let n = g.n();
    let start = (0..n).find(|&v| seed[v].is_none()).unwrap_or(0);
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[start] = true;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        for &w in g.neighbors(order[i]) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    let idx = |c: Color| list.iter().position(|&d| d == c).expect("seed colors come from the list");
    let mut need = vec![0usize; list.len()];
    for &(c, cnt) in required {
        need[idx(c)] = cnt;
    }
    let prefs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let first = seed[v].map(idx);
            first.into_iter().chain((0..list.len()).filter(|&j| Some(j) != first)).collect()
        })
        .collect();
    let mut assign = vec![usize::MAX; n];
    let mut have = vec![0usize; list.len()];
    let deficit: usize = need.iter().sum();
    if search(g, &order, &prefs, &need, &mut assign, &mut have, deficit, 0) {
        Some(assign.iter().map(|&j| list[j]).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    order: &[usize],
    prefs: &[Vec<usize>],
    need: &[usize],
    assign: &mut [usize],
    have: &mut [usize],
    deficit: usize,
    depth: usize,
) -> bool {
    if deficit > order.len() - depth {
        return false;
    }
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &j in &prefs[v] {
        if g.neighbors(v).iter().any(|&w| assign[w] == j) {
            continue;
        }
        assign[v] = j;
        have[j] += 1;
        let next = if have[j] <= need[j] { deficit - 1 } else { deficit };
        if search(g, order, prefs, need, assign, have, next, depth + 1) {
            return true;
        }
        have[j] -= 1;
        assign[v] = usize::MAX;
    }
    false
}

//! Finite simple undirected graphs and the structural queries used as
//! preconditions elsewhere: components, blocks, Gallai trees and cliques.

use crate::rational::{rat, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum GraphError {
    #[error("endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex set is not a connected component")]
    NotAComponent,
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// Immutable simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    max_degree: usize,
}

/// Builds a graph, rejecting out-of-range endpoints, loops and repeated pairs.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::new(n, edges)
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge { u: a, v: b });
            }
        }
        Ok(Graph::from_sorted_adjacency(adj))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Trusts the caller: lists must be sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Graph {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        Graph { adj, edge_count, max_degree }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`. Local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    pub fn is_connected(&self) -> bool {
        components(self).len() <= 1
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Component index of every vertex, matching the order of [`components`].
pub fn component_labels(g: &Graph) -> Vec<usize> {
    let mut label = vec![0; g.n()];
    for (i, comp) in components(g).iter().enumerate() {
        for &v in comp {
            label[v] = i;
        }
    }
    label
}

/// Whether `vertices` induces a connected subgraph (the empty set does not).
pub fn is_connected_set(g: &Graph, vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let mut inside = vec![false; g.n()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![vertices[0]];
    seen[vertices[0]] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count == vertices.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted, ordered by smallest vertex
    /// then lexicographically. Isolated vertices form singleton blocks.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// Block-cut tree edges as `(block index, cut vertex)`.
    pub tree_edges: Vec<(usize, usize)>,
}

/// Blocks via the Hopcroft–Tarjan edge-stack search, run iteratively.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // Frames: (vertex, parent, next neighbor index).
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| membership[v] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if membership[v] >= 2 {
                tree_edges.push((i, v));
            }
        }
    }
    BlockDecomposition { blocks, cut_vertices, tree_edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Clique,
    OddCycle,
    Other,
}

/// Classifies a block (given as a vertex set) by its induced degrees.
pub fn block_kind(g: &Graph, block: &[usize]) -> BlockKind {
    let size = block.len();
    if size <= 2 {
        return BlockKind::Clique;
    }
    let mut inside = vec![false; g.n()];
    for &v in block {
        inside[v] = true;
    }
    let degs: Vec<usize> = block
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count())
        .collect();
    if degs.iter().all(|&d| d == size - 1) {
        BlockKind::Clique
    } else if size % 2 == 1 && degs.iter().all(|&d| d == 2) {
        BlockKind::OddCycle
    } else {
        BlockKind::Other
    }
}

/// Blocks of the subgraph induced by `component` that are neither cliques
/// nor odd cycles, in global vertex ids.
pub fn non_gallai_blocks(g: &Graph, component: &[usize]) -> Vec<Vec<usize>> {
    let sub = g.induced(component);
    block_decomposition(&sub)
        .blocks
        .into_iter()
        .filter(|b| block_kind(&sub, b) == BlockKind::Other)
        .map(|b| b.into_iter().map(|i| component[i]).collect())
        .collect()
}

/// Whether `component` is a Gallai tree: every block a clique or an odd cycle.
pub fn is_gallai_tree(g: &Graph, component: &[usize]) -> Result<bool, GraphError> {
    let mut sorted = component.to_vec();
    sorted.sort_unstable();
    let label = component_labels(g);
    let ok = !sorted.is_empty()
        && sorted.windows(2).all(|w| w[0] != w[1])
        && sorted.iter().all(|&v| v < g.n())
        && sorted.iter().all(|&v| label[v] == label[sorted[0]])
        && components(g)[label[sorted[0]]].len() == sorted.len();
    if !ok {
        return Err(GraphError::NotAComponent);
    }
    Ok(non_gallai_blocks(g, &sorted).is_empty())
}

/// Whether some `q` vertices are pairwise adjacent.
pub fn contains_clique(g: &Graph, q: usize) -> bool {
    if q == 0 {
        return true;
    }
    if q == 1 {
        return g.n() > 0;
    }
    if q > g.max_degree() + 1 {
        return false;
    }
    // Grow cliques from each vertex through its higher-numbered neighbours.
    fn extend(g: &Graph, cand: &[usize], size: usize, q: usize) -> bool {
        if size == q {
            return true;
        }
        if size + cand.len() < q {
            return false;
        }
        for (i, &v) in cand.iter().enumerate() {
            if size + cand.len() - i < q {
                return false;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            if extend(g, &next, size + 1, q) {
                return true;
            }
        }
        false
    }
    (0..g.n()).any(|v| {
        if g.degree(v) + 1 < q {
            return false;
        }
        let cand: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w > v && g.degree(w) + 1 >= q)
            .collect();
        extend(g, &cand, 1, q)
    })
}

/// `2|E|/|V|` as an exact rational.
pub fn average_degree(g: &Graph) -> Result<Rational, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    Ok(rat(2 * g.edge_count() as i128, g.n() as i128))
}

/// Small named graphs used in examples, tests and the CLI.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::new(a + b, &edges).expect("complete bipartite")
    }

    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    /// Two triangles sharing vertex 2.
    pub fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).expect("bowtie")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("petersen")
    }
}

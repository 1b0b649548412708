//! Canonical forms and isomorphism-free generation of small graphs.
//!
//! Graphs are adjacency bit rows (`u16`, so at most 16 vertices). The
//! canonical code is the largest upper-triangle bit string over the leaves
//! of an individualization-refinement search; twins are branched on once.

use crate::graph::Graph;
use rayon::prelude::*;
use std::collections::HashSet;

pub const MAX_CANON_VERTICES: usize = 16;

pub fn to_rows(g: &Graph) -> Vec<u16> {
    assert!(g.n() <= MAX_CANON_VERTICES, "canonical forms support at most 16 vertices");
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w)).collect()
}

pub fn from_rows(rows: &[u16]) -> Graph {
    let n = rows.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| rows[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).expect("rows describe a simple graph")
}

/// Refines an ordered partition until every vertex in a cell has the same
/// number of neighbours in each cell. New cells are ordered by signature.
fn refine(rows: &[u16], cells: &mut Vec<Vec<u8>>) {
    loop {
        let masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v)).collect();
        let mut next: Vec<Vec<u8>> = Vec::with_capacity(rows.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, u8)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|&m| (rows[v as usize] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|e| e.1).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn leaf_code(rows: &[u16], cells: &[Vec<u8>]) -> u128 {
    let order: Vec<usize> = cells.iter().map(|c| c[0] as usize).collect();
    let n = order.len();
    let mut code = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            code <<= 1;
            if rows[order[i]] >> order[j] & 1 == 1 {
                code |= 1;
            }
        }
    }
    code
}

fn twins(rows: &[u16], u: usize, v: usize) -> bool {
    let open = rows[u] & !(1 << v) == rows[v] & !(1 << u);
    open && (rows[u] >> v & 1 == rows[v] >> u & 1)
}

fn search(rows: &[u16], cells: Vec<Vec<u8>>, best: &mut u128) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        *best = (*best).max(leaf_code(rows, &cells));
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        let v = v as usize;
        if tried.iter().any(|&u| twins(rows, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<u8> = next[target].iter().copied().filter(|&w| w as usize != v).collect();
        next[target] = vec![v as u8];
        next.insert(target + 1, rest);
        refine(rows, &mut next);
        search(rows, next, best);
    }
}

/// Isomorphism invariant that determines the graph up to isomorphism.
pub fn canonical_code(rows: &[u16]) -> u128 {
    let n = rows.len();
    assert!(n <= MAX_CANON_VERTICES);
    if n <= 1 {
        return 0;
    }
    let mut cells = vec![(0..n as u8).collect::<Vec<u8>>()];
    refine(rows, &mut cells);
    let mut best = 0;
    search(rows, cells, &mut best);
    best
}

/// Graph on `n` vertices with the given canonical code.
pub fn from_code(n: usize, code: u128) -> Vec<u16> {
    let mut rows = vec![0u16; n];
    let mut bit = (n * n.saturating_sub(1) / 2) as i64 - 1;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit -= 1;
        }
    }
    rows
}

/// One representative per isomorphism class for each order `0..=n_max`,
/// each level sorted by canonical code.
///
/// Every graph on `n+1` vertices arises from one on `n` vertices by adding a
/// vertex of maximum degree, so only those extensions are tried.
pub fn graphs_by_order(n_max: usize) -> Vec<Vec<Vec<u16>>> {
    assert!(n_max <= 10, "generation is meant for tiny orders");
    let mut levels: Vec<Vec<Vec<u16>>> = vec![vec![Vec::new()]];
    for n in 0..n_max {
        let parents = &levels[n];
        let found: Vec<u128> = parents
            .par_iter()
            .flat_map_iter(|rows| {
                let degrees: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
                (0u32..1 << n).filter_map(move |s| {
                    let size = s.count_ones();
                    let max_deg = (0..n).map(|w| degrees[w] + (s >> w & 1)).max().unwrap_or(0);
                    if size < max_deg {
                        return None;
                    }
                    let mut child = rows.clone();
                    for (w, row) in child.iter_mut().enumerate() {
                        if s >> w & 1 == 1 {
                            *row |= 1 << n;
                        }
                    }
                    child.push(s as u16);
                    Some(canonical_code(&child))
                })
            })
            .collect();
        let mut codes: Vec<u128> = found.into_iter().collect::<HashSet<_>>().into_iter().collect();
        codes.sort_unstable();
        levels.push(codes.into_iter().map(|c| from_code(n + 1, c)).collect());
    }
    levels
}

pub fn is_connected_rows(rows: &[u16]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0u16;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= rows[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

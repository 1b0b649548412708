//! Anchored subforests and dominating `Δ`-colorings.
//!
//! An anchored subforest points every non-anchor vertex at a neighbour, with
//! no cycles, so that following the pointers always ends in the anchor set.
//! [`forest_recolor`] uses it to push the uncolored vertices of a partial
//! `Δ`-coloring into the anchors without shrinking any color class, and
//! [`dominating_delta_coloring`] finishes the job per component.

use crate::coloring::{greedy_maximal, identity_order, ListAssignment, PartialColoring};
use crate::graph::{block_decomposition, block_kind, components, BlockKind, Graph};
use crate::list_domination::{dominating_full_coloring, DominationInstance};
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum ForestError {
    #[error("the component containing vertex {vertex} has no anchor")]
    ComponentMissesAnchor { vertex: usize },
    #[error("anchor {vertex} is not a vertex of a graph with {n} vertices")]
    AnchorOutOfRange { vertex: usize, n: usize },
    #[error("component {component:?} is a regular Gallai tree and has no proper coloring with this palette")]
    RegularGallaiComponent { component: Vec<usize> },
    #[error("seed is not a proper partial coloring within the palette at vertex {vertex}")]
    ImproperSeed { vertex: usize },
    #[error("palette of size {k} is too small for maximum degree {max_degree}")]
    PaletteTooSmall { k: usize, max_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneEndedForest {
    anchors: Vec<usize>,
    parent: Vec<Option<usize>>,
    height: Vec<usize>,
}

impl OneEndedForest {
    /// Sorted anchor set.
    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// `φ(x)`, absent exactly on anchors.
    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    /// Greatest `n` with `x ∈ im(φⁿ)`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn heights(&self) -> &[usize] {
        &self.height
    }

    pub fn max_height(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    pub fn is_anchor(&self, x: usize) -> bool {
        self.parent[x].is_none()
    }

    /// Checks adjacency to parents, acyclicity and the height recursion.
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.n();
        let edges_ok = (0..n).all(|x| self.parent[x].is_none_or(|p| g.has_edge(x, p)));
        let reaches = (0..n).all(|x| {
            let mut v = x;
            for _ in 0..=n {
                match self.parent[v] {
                    Some(p) => v = p,
                    None => return true,
                }
            }
            false
        });
        let mut expect = vec![0; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.height[x]);
        for &x in &order {
            if let Some(p) = self.parent[x] {
                expect[p] = expect[p].max(expect[x] + 1);
            }
        }
        edges_ok && reaches && expect == self.height
    }
}

/// Multi-source BFS forest pointing every vertex toward the nearest anchor.
pub fn build_one_ended_subforest(g: &Graph, anchors: &[usize]) -> Result<OneEndedForest, ForestError> {
    let n = g.n();
    let mut sorted = anchors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&vertex) = sorted.iter().find(|&&v| v >= n) {
        return Err(ForestError::AnchorOutOfRange { vertex, n });
    }
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &a in &sorted {
        dist[a] = 0;
        queue.push_back(a);
    }
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    if let Some(vertex) = (0..n).find(|&v| dist[v] == usize::MAX) {
        return Err(ForestError::ComponentMissesAnchor { vertex });
    }
    let mut height = vec![0; n];
    for &x in order.iter().rev() {
        if let Some(p) = parent[x] {
            height[p] = height[p].max(height[x] + 1);
        }
    }
    Ok(OneEndedForest { anchors: sorted, parent, height })
}

/// Certificate that every color class of the result covers the seed's class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestWitness {
    /// `ψ(x) = x` on anchors and on seed vertices that kept their color, else `φ(x)`.
    pub psi: Vec<usize>,
    /// For each seed-colored `y`, a vertex of the same final color with `ψ` mapping back to `y`.
    /// Distinct seed vertices get distinct entries.
    pub preimage: Vec<Option<usize>>,
}

fn maximalize(g: &Graph, palette: &ListAssignment, f: &PartialColoring) -> PartialColoring {
    greedy_maximal(g, palette, f, &identity_order(g.n())).expect("stages keep the coloring proper")
}

fn check_seed(g: &Graph, seed: &PartialColoring, d: usize) -> Result<PartialColoring, ForestError> {
    if seed.n() != g.n() {
        return Err(ForestError::ImproperSeed { vertex: seed.n().min(g.n()) });
    }
    if g.max_degree() > d {
        return Err(ForestError::PaletteTooSmall { k: d, max_degree: g.max_degree() });
    }
    for v in 0..g.n() {
        if let Some(c) = seed.get(v) {
            if c >= d || g.neighbors(v).iter().any(|&w| seed.get(w) == Some(c)) {
                return Err(ForestError::ImproperSeed { vertex: v });
            }
        }
    }
    Ok(seed.with_palette(d).expect("colors checked"))
}

/// Stage-by-height recoloring: the result colors every non-anchor vertex and
/// uses each color at least as often as `seed`.
///
/// At stage `n` the coloring is first made maximal. Each still-uncolored
/// non-anchor vertex `x` of height `n` sees every color exactly once, so it
/// takes the color of `φ(x)`, which becomes uncolored.
pub fn forest_recolor(
    g: &Graph,
    forest: &OneEndedForest,
    seed: &PartialColoring,
    d: usize,
) -> Result<(PartialColoring, ForestWitness), ForestError> {
    let n = g.n();
    let seed = check_seed(g, seed, d)?;
    let palette = ListAssignment::uniform(n, d);
    let check = crate::debug::enabled();
    let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); forest.max_height() + 1];
    for x in 0..n {
        by_height[forest.height(x)].push(x);
    }
    let mut preimage: Vec<Option<usize>> = vec![None; n];
    let mut kept: Vec<bool> = (0..n).map(|v| seed.is_colored(v)).collect();
    let mut f = seed.clone();
    for (stage, layer) in by_height.iter().enumerate() {
        let fp = maximalize(g, &palette, &f);
        let mut next = fp.clone();
        let blocked: Vec<usize> =
            layer.iter().copied().filter(|&x| !forest.is_anchor(x) && !fp.is_colored(x)).collect();
        for &x in &blocked {
            let p = forest.parent(x).expect("non-anchor");
            debug_assert!(g.neighbors(x).iter().all(|&w| fp.is_colored(w)));
            next.set(x, fp.get(p));
        }
        for &x in &blocked {
            let p = forest.parent(x).expect("non-anchor");
            next.set(p, None);
            if kept[p] {
                kept[p] = false;
                preimage[p] = Some(x);
            }
        }
        if check {
            check_stage(g, forest, stage, &f, &next);
        }
        f = next;
    }
    f = maximalize(g, &palette, &f);
    for y in 0..n {
        if kept[y] {
            preimage[y] = Some(y);
        }
    }
    let psi = (0..n)
        .map(|x| if forest.is_anchor(x) || kept[x] { x } else { forest.parent(x).expect("non-anchor") })
        .collect();
    let witness = ForestWitness { psi, preimage };
    assert!((0..n).all(|v| forest.is_anchor(v) || f.is_colored(v)), "a non-anchor vertex is uncolored");
    assert!(witness_holds(&seed, &f, &witness), "the witness map does not certify domination");
    Ok((f, witness))
}

/// Stage invariants: earlier strata are frozen, they are colored off the
/// anchors, and every lost color reappears on a child of the current height.
fn check_stage(g: &Graph, forest: &OneEndedForest, stage: usize, before: &PartialColoring, after: &PartialColoring) {
    for x in 0..g.n() {
        let h = forest.height(x);
        if h < stage && before.is_colored(x) {
            assert_eq!(before.get(x), after.get(x), "stratum below {stage} changed at {x}");
        }
        if h <= stage && !forest.is_anchor(x) {
            assert!(after.is_colored(x), "vertex {x} of height {h} uncolored after stage {stage}");
        }
        if let Some(alpha) = before.get(x) {
            if after.get(x) != Some(alpha) {
                let replaced = g.neighbors(x).iter().any(|&c| {
                    forest.parent(c) == Some(x)
                        && forest.height(c) == stage
                        && after.get(c) == Some(alpha)
                        && before.get(c) != Some(alpha)
                });
                assert!(replaced, "vertex {x} lost color {alpha} without a replacing child");
            }
        }
    }
}

fn witness_holds(seed: &PartialColoring, f: &PartialColoring, w: &ForestWitness) -> bool {
    let n = seed.n();
    let mut used = vec![false; n];
    for y in 0..n {
        let Some(alpha) = seed.get(y) else { continue };
        let Some(x) = w.preimage[y] else { return false };
        if used[x] || f.get(x) != Some(alpha) || w.psi[x] != y {
            return false;
        }
        used[x] = true;
    }
    (0..seed.k()).all(|c| f.count(c) >= seed.count(c))
}

/// Total proper coloring from `0..d` using each color at least as often as `seed`.
///
/// Components with a vertex of degree below `d` are anchored at those
/// vertices. Otherwise the component is anchored at its first block that is
/// neither a clique nor an odd cycle, which is then re-solved with residual
/// lists. A `d`-regular Gallai-tree component has no such coloring.
pub fn dominating_delta_coloring(g: &Graph, seed: &PartialColoring, d: usize) -> Result<PartialColoring, ForestError> {
    let seed = check_seed(g, seed, d)?;
    let mut anchors = Vec::new();
    let mut blocks = Vec::new();
    for comp in components(g) {
        let low: Vec<usize> = comp.iter().copied().filter(|&x| g.degree(x) < d).collect();
        if !low.is_empty() {
            anchors.extend(low);
            continue;
        }
        let sub = g.induced(&comp);
        let block = block_decomposition(&sub)
            .blocks
            .into_iter()
            .filter(|b| block_kind(&sub, b) == BlockKind::Other)
            .min_by_key(|b| b[0]);
        match block {
            Some(b) => {
                let global: Vec<usize> = b.into_iter().map(|i| comp[i]).collect();
                anchors.extend(global.iter().copied());
                blocks.push(global);
            }
            None => return Err(ForestError::RegularGallaiComponent { component: comp }),
        }
    }
    let forest = build_one_ended_subforest(g, &anchors)?;
    let (mut f, _) = forest_recolor(g, &forest, &seed, d)?;
    for block in &blocks {
        let mut inside = vec![false; g.n()];
        for &x in block {
            inside[x] = true;
        }
        let lists: Vec<Vec<usize>> = block
            .iter()
            .map(|&x| {
                (0..d)
                    .filter(|&c| g.neighbors(x).iter().all(|&y| inside[y] || f.get(y) != Some(c)))
                    .collect()
            })
            .collect();
        let inst = DominationInstance::new(g.induced(block), ListAssignment::new(lists), f.restrict(block));
        let solved = dominating_full_coloring(&inst).expect("an anchor block is 2-connected, not a clique or odd cycle");
        for (i, &x) in block.iter().enumerate() {
            f.set(x, solved.get(i));
        }
    }
    let f = maximalize(g, &ListAssignment::uniform(g.n(), d), &f);
    assert!(f.is_total(), "dominating Δ-coloring left a vertex uncolored");
    if crate::debug::enabled() {
        assert!(crate::coloring::is_proper(g, &f));
        assert!(crate::coloring::dominates_all(&f, &seed));
    }
    Ok(f)
}

//! Partial colorings, list assignments and greedy maximal extensions.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum ColoringError {
    #[error("seed coloring is not a proper list coloring (vertex {vertex})")]
    ImproperSeed { vertex: usize },
    #[error("palette of size {k} is too small for maximum degree {max_degree}")]
    PaletteTooSmall { k: usize, max_degree: usize },
    #[error("set is not independent: edge {u}-{v}")]
    NotIndependent { u: usize, v: usize },
    #[error("color {color} at vertex {vertex} is outside the palette of size {k}")]
    ColorOutOfRange { vertex: usize, color: Color, k: usize },
    #[error("coloring has {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// A map from a subset of `0..n` into the palette `0..k`, with per-color
/// counts kept in sync.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    assignment: Vec<Option<Color>>,
    counts: Vec<usize>,
    domain: usize,
}

impl PartialColoring {
    /// Empty coloring of `n` vertices over `k` colors.
    pub fn new(n: usize, k: usize) -> PartialColoring {
        PartialColoring { assignment: vec![None; n], counts: vec![0; k], domain: 0 }
    }

    pub fn from_assignment(k: usize, assignment: Vec<Option<Color>>) -> Result<PartialColoring, ColoringError> {
        let mut counts = vec![0; k];
        let mut domain = 0;
        for (v, c) in assignment.iter().enumerate() {
            if let Some(c) = *c {
                if c >= k {
                    return Err(ColoringError::ColorOutOfRange { vertex: v, color: c, k });
                }
                counts[c] += 1;
                domain += 1;
            }
        }
        Ok(PartialColoring { assignment, counts, domain })
    }

    pub fn from_total(k: usize, colors: &[Color]) -> Result<PartialColoring, ColoringError> {
        PartialColoring::from_assignment(k, colors.iter().map(|&c| Some(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.assignment[v]
    }

    pub fn is_colored(&self, v: usize) -> bool {
        self.assignment[v].is_some()
    }

    /// Sets or clears the color of `v`. Panics if the color is out of range.
    pub fn set(&mut self, v: usize, c: Option<Color>) {
        if let Some(old) = self.assignment[v] {
            self.counts[old] -= 1;
            self.domain -= 1;
        }
        if let Some(new) = c {
            assert!(new < self.k(), "color {new} outside palette of size {}", self.k());
            self.counts[new] += 1;
            self.domain += 1;
        }
        self.assignment[v] = c;
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, c: Color) -> usize {
        self.counts.get(c).copied().unwrap_or(0)
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn is_total(&self) -> bool {
        self.domain == self.n()
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assignment
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.assignment[v].is_some()).collect()
    }

    pub fn uncolored(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.assignment[v].is_none()).collect()
    }

    pub fn class(&self, c: Color) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.assignment[v] == Some(c)).collect()
    }

    /// Colors of a total coloring; `None` if some vertex is uncolored.
    pub fn to_total(&self) -> Option<Vec<Color>> {
        self.assignment.iter().copied().collect()
    }

    /// Largest minus smallest class size (0 for an empty palette).
    pub fn gap(&self) -> usize {
        let max = self.counts.iter().max().copied().unwrap_or(0);
        let min = self.counts.iter().min().copied().unwrap_or(0);
        max - min
    }

    /// Same assignment over a palette of size `k`, which must cover every
    /// used color.
    pub fn with_palette(&self, k: usize) -> Result<PartialColoring, ColoringError> {
        PartialColoring::from_assignment(k, self.assignment.clone())
    }

    /// Restriction to `vertices`, reindexed so local `i` is `vertices[i]`.
    pub fn restrict(&self, vertices: &[usize]) -> PartialColoring {
        let assignment = vertices.iter().map(|&v| self.assignment[v]).collect();
        PartialColoring::from_assignment(self.k(), assignment).expect("palette unchanged")
    }
}

/// Per-vertex finite color sets, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> ListAssignment {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        ListAssignment { lists }
    }

    /// Every vertex gets the full palette `0..k`.
    pub fn uniform(n: usize, k: usize) -> ListAssignment {
        ListAssignment { lists: vec![(0..k).collect(); n] }
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn contains(&self, v: usize, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// `|L(x)| ≥ deg(x)` for every vertex.
    pub fn is_degree_list(&self, g: &Graph) -> bool {
        self.first_short_list(g).is_none()
    }

    pub fn first_short_list(&self, g: &Graph) -> Option<usize> {
        (0..g.n()).find(|&v| self.lists[v].len() < g.degree(v))
    }

    /// Union of all lists, sorted.
    pub fn union(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// One more than the largest listed color.
    pub fn palette_bound(&self) -> usize {
        self.lists.iter().flatten().max().map_or(0, |&c| c + 1)
    }

    pub fn restrict(&self, vertices: &[usize]) -> ListAssignment {
        ListAssignment { lists: vertices.iter().map(|&v| self.lists[v].clone()).collect() }
    }
}

pub fn is_proper(g: &Graph, f: &PartialColoring) -> bool {
    first_conflict(g, f).is_none()
}

/// Smallest edge whose endpoints share a color.
pub fn first_conflict(g: &Graph, f: &PartialColoring) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| f.get(u).is_some() && f.get(u) == f.get(v))
}

/// First vertex violating "proper partial L-coloring", if any.
fn seed_violation(g: &Graph, lists: &ListAssignment, seed: &PartialColoring) -> Option<usize> {
    if let Some((u, _)) = first_conflict(g, seed) {
        return Some(u);
    }
    (0..g.n()).find(|&v| seed.get(v).is_some_and(|c| !lists.contains(v, c)))
}

fn check_size(g: &Graph, f: &PartialColoring) -> Result<(), ColoringError> {
    if f.n() != g.n() {
        return Err(ColoringError::SizeMismatch { expected: g.n(), got: f.n() });
    }
    Ok(())
}

/// Smallest color of `list` not used on a colored neighbor of `v`.
pub fn smallest_free(g: &Graph, f: &PartialColoring, list: &[Color], v: usize) -> Option<Color> {
    list.iter().copied().find(|&c| g.neighbors(v).iter().all(|&w| f.get(w) != Some(c)))
}

/// Extends `seed` to an inclusion-maximal proper partial L-coloring.
///
/// Vertices are visited once in `order`; each uncolored vertex takes the
/// smallest list color free in its neighbourhood. A vertex passed over
/// stays blocked because colors are only ever added.
pub fn greedy_maximal(
    g: &Graph,
    lists: &ListAssignment,
    seed: &PartialColoring,
    order: &[usize],
) -> Result<PartialColoring, ColoringError> {
    check_size(g, seed)?;
    if let Some(vertex) = seed_violation(g, lists, seed) {
        return Err(ColoringError::ImproperSeed { vertex });
    }
    let k = seed.k().max(lists.palette_bound());
    let mut f = seed.with_palette(k)?;
    for &v in order {
        if f.get(v).is_none() {
            if let Some(c) = smallest_free(g, &f, lists.list(v), v) {
                f.set(v, Some(c));
            }
        }
    }
    Ok(f)
}

/// Total proper `k`-coloring extending `seed`; needs `k ≥ Δ + 1`.
pub fn greedy_extend_full(g: &Graph, k: usize, seed: &PartialColoring) -> Result<PartialColoring, ColoringError> {
    greedy_extend_full_ordered(g, k, seed, &identity_order(g.n()))
}

pub fn greedy_extend_full_ordered(
    g: &Graph,
    k: usize,
    seed: &PartialColoring,
    order: &[usize],
) -> Result<PartialColoring, ColoringError> {
    if k <= g.max_degree() {
        return Err(ColoringError::PaletteTooSmall { k, max_degree: g.max_degree() });
    }
    check_size(g, seed)?;
    if seed.k() > k {
        if let Some(v) = (0..g.n()).find(|&v| seed.get(v).is_some_and(|c| c >= k)) {
            return Err(ColoringError::ColorOutOfRange { vertex: v, color: seed.get(v).unwrap(), k });
        }
    }
    let seed = seed.with_palette(k)?;
    let f = greedy_maximal(g, &ListAssignment::uniform(g.n(), k), &seed, order)?;
    debug_assert!(f.is_total());
    Ok(f)
}

/// Maximal independent set containing the independent set `j`.
pub fn maximal_independent_superset(g: &Graph, j: &[usize]) -> Result<Vec<usize>, ColoringError> {
    let mut inside = vec![false; g.n()];
    for &v in j {
        inside[v] = true;
    }
    for &v in j {
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| inside[w]) {
            return Err(ColoringError::NotIndependent { u: v.min(w), v: v.max(w) });
        }
    }
    for v in 0..g.n() {
        if !inside[v] && g.neighbors(v).iter().all(|&w| !inside[w]) {
            inside[v] = true;
        }
    }
    Ok((0..g.n()).filter(|&v| inside[v]).collect())
}

/// `f ≽ h` over `palette_union`: every listed color has at least as many
/// vertices under `f` as under `h`.
pub fn dominates(f: &PartialColoring, h: &PartialColoring, palette_union: &[Color]) -> bool {
    palette_union.iter().all(|&c| f.count(c) >= h.count(c))
}

/// `f ≽ h` over every color either coloring can use.
pub fn dominates_all(f: &PartialColoring, h: &PartialColoring) -> bool {
    (0..f.k().max(h.k())).all(|c| f.count(c) >= h.count(c))
}

pub fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Uniformly shuffled vertex order, reproducible from `seed`.
pub fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order = identity_order(n);
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Greedy proper coloring in identity order using the smallest free color;
/// uses at most `Δ + 1` colors. Returned over the palette `0..Δ+1`.
pub fn greedy_coloring(g: &Graph) -> PartialColoring {
    let k = g.max_degree() + 1;
    greedy_extend_full(g, k, &PartialColoring::new(g.n(), k)).expect("Δ + 1 colors always suffice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn pc(k: usize, a: &[Option<Color>]) -> PartialColoring {
        PartialColoring::from_assignment(k, a.to_vec()).unwrap()
    }

    #[test]
    fn properness_examples() {
        let c4 = cycle(4);
        assert!(is_proper(&c4, &PartialColoring::from_total(2, &[0, 1, 0, 1]).unwrap()));
        let k3 = complete(3);
        assert!(!is_proper(&k3, &pc(3, &[Some(0), Some(0), None])));
        assert!(is_proper(&k3, &PartialColoring::new(3, 3)));
    }

    #[test]
    fn greedy_maximal_examples() {
        let k3 = complete(3);
        let lists = ListAssignment::uniform(3, 2);
        let f = greedy_maximal(&k3, &lists, &PartialColoring::new(3, 2), &[0, 1, 2]).unwrap();
        assert_eq!(f.assignment(), &[Some(0), Some(1), None]);
        let again = greedy_maximal(&k3, &lists, &f, &[0, 1, 2]).unwrap();
        assert_eq!(again, f);
        let c5 = cycle(5);
        let big = ListAssignment::uniform(5, 3);
        let t = greedy_maximal(&c5, &big, &PartialColoring::new(5, 3), &identity_order(5)).unwrap();
        assert!(t.is_total());
        let bad = pc(2, &[Some(0), Some(0), None]);
        assert!(matches!(
            greedy_maximal(&k3, &lists, &bad, &[0, 1, 2]),
            Err(ColoringError::ImproperSeed { .. })
        ));
    }

    #[test]
    fn greedy_extend_examples() {
        let c5 = cycle(5);
        let f = greedy_extend_full(&c5, 3, &PartialColoring::new(5, 3)).unwrap();
        assert!(f.is_total() && is_proper(&c5, &f));
        let k4 = complete(4);
        let seed = pc(4, &[Some(0), None, None, None]);
        let f = greedy_extend_full(&k4, 4, &seed).unwrap();
        assert_eq!(f.get(0), Some(0));
        assert!(f.is_total() && is_proper(&k4, &f));
        assert_eq!(
            greedy_extend_full(&c5, 2, &PartialColoring::new(5, 2)),
            Err(ColoringError::PaletteTooSmall { k: 2, max_degree: 2 })
        );
    }

    #[test]
    fn independent_superset_examples() {
        assert_eq!(maximal_independent_superset(&cycle(4), &[0]).unwrap(), vec![0, 2]);
        assert_eq!(maximal_independent_superset(&complete(4), &[1]).unwrap(), vec![1]);
        assert_eq!(maximal_independent_superset(&Graph::empty(3), &[]).unwrap(), vec![0, 1, 2]);
        assert!(maximal_independent_superset(&cycle(4), &[0, 1]).is_err());
    }

    #[test]
    fn domination_examples() {
        let h = pc(2, &[Some(0), None, None]);
        let f = pc(2, &[Some(0), Some(1), None]);
        assert!(dominates(&f, &h, &[0, 1]));
        let a = pc(2, &[Some(0), Some(0), Some(1)]);
        let b = pc(2, &[Some(0), Some(1), Some(1)]);
        assert!(!dominates(&a, &b, &[0, 1]));
        assert!(dominates(&a, &PartialColoring::new(3, 2), &[0, 1]));
    }

    #[test]
    fn counts_track_updates() {
        let mut f = PartialColoring::new(3, 2);
        f.set(0, Some(1));
        f.set(1, Some(1));
        f.set(0, Some(0));
        assert_eq!(f.counts(), &[1, 1]);
        f.set(1, None);
        assert_eq!(f.counts(), &[1, 0]);
        assert_eq!(f.domain_size(), 1);
    }
}

//! Search for admissible moves.
//!
//! The three structured patterns (single move, solo-neighbour pair, solo-
//! neighbour triple) are scanned first with the minimum classes as targets,
//! then with every class as a target. If both scans fail, connected domains
//! of growing size are searched exhaustively within a budget.

use super::{admissible, admissible_by_counts, RecoloringMove};
use crate::coloring::{Color, PartialColoring};
use crate::graph::Graph;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MovePolicy {
    /// Largest domain size considered.
    pub m_max: usize,
    /// Leaf evaluations allowed per exhaustive domain size.
    pub exhaustive_budget: u64,
}

impl Default for MovePolicy {
    fn default() -> Self {
        MovePolicy { m_max: 3, exhaustive_budget: 2_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum MoveKind {
    Single { widened: bool },
    Pair { widened: bool },
    Triple { widened: bool },
    Exhaustive { m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundMove {
    pub mv: RecoloringMove,
    pub witness: Color,
    pub kind: MoveKind,
}

/// First admissible move under `policy`, or `None`.
pub fn find_improving_move(g: &Graph, f: &PartialColoring, policy: &MovePolicy) -> Option<RecoloringMove> {
    find_move(g, f, policy).map(|found| found.mv)
}

/// Like [`find_improving_move`], also reporting the witness and which scan found it.
pub fn find_move(g: &Graph, f: &PartialColoring, policy: &MovePolicy) -> Option<FoundMove> {
    // Admissibility needs a losing class at least two above a gaining one.
    if f.k() == 0 || f.gap() < 2 || policy.m_max == 0 {
        return None;
    }
    let scan = Scanner::new(g, f);
    for widened in [false, true] {
        if let Some(found) = scan.patterns(widened, policy.m_max) {
            return Some(found);
        }
    }
    for m in 1..=policy.m_max {
        let mut budget = policy.exhaustive_budget;
        if let Some(found) = scan.exhaustive(m, &mut budget) {
            return Some(found);
        }
    }
    None
}

/// Every admissible structured-pattern move, in scan order.
pub(crate) fn pattern_candidates(g: &Graph, f: &PartialColoring, m_max: usize, limit: usize) -> Vec<FoundMove> {
    let scan = Scanner::new(g, f);
    let mut out = Vec::new();
    scan.visit_patterns(true, m_max, &mut |found| {
        out.push(found);
        out.len() >= limit
    });
    out
}

struct Scanner<'a> {
    g: &'a Graph,
    f: &'a PartialColoring,
    k: usize,
    /// `nc[v * k + c]` = number of neighbours of `v` colored `c`.
    nc: Vec<u32>,
}

impl<'a> Scanner<'a> {
    fn new(g: &'a Graph, f: &'a PartialColoring) -> Scanner<'a> {
        let k = f.k();
        let mut nc = vec![0u32; g.n() * k];
        for v in 0..g.n() {
            for &w in g.neighbors(v) {
                if let Some(c) = f.get(w) {
                    nc[v * k + c] += 1;
                }
            }
        }
        Scanner { g, f, k, nc }
    }

    fn nc(&self, v: usize, c: Color) -> u32 {
        self.nc[v * self.k + c]
    }

    fn color(&self, v: usize) -> Color {
        self.f.get(v).expect("dynamics run on total colorings")
    }

    fn patterns(&self, widened: bool, m_max: usize) -> Option<FoundMove> {
        let mut hit = None;
        self.visit_patterns(widened, m_max, &mut |found| {
            hit = Some(found);
            true
        });
        hit
    }

    /// Calls `visit` on admissible pattern moves until it returns `true`.
    fn visit_patterns(&self, widened: bool, m_max: usize, visit: &mut dyn FnMut(FoundMove) -> bool) {
        let counts = self.f.counts();
        let min = *counts.iter().min().expect("nonempty palette");
        let mut targets: Vec<Color> = (0..self.k).filter(|&c| widened || counts[c] == min).collect();
        targets.sort_by_key(|&c| (counts[c], c));
        let is_target = |c: Color| widened || counts[c] == min;
        let in_b = |c: Color| widened || counts[c] > min;
        let n = self.g.n();
        let mut offer = |mv: RecoloringMove, kind: MoveKind| -> bool {
            match admissible(self.g, self.f, &mv) {
                Some(witness) => visit(FoundMove { mv, witness, kind }),
                None => false,
            }
        };

        // x ∈ B recolored into a target class it does not touch.
        for x in 0..n {
            let beta = self.color(x);
            if !in_b(beta) {
                continue;
            }
            for &alpha in &targets {
                if alpha != beta && self.nc(x, alpha) == 0 && counts[beta] >= counts[alpha] + 2
                    && offer(RecoloringMove::single(x, alpha), MoveKind::Single { widened }) {
                        return;
                    }
            }
        }
        if m_max < 2 {
            return;
        }
        // x takes the color of its solo neighbour y, which moves to a class it does not touch.
        for x in 0..n {
            let beta = self.color(x);
            if !in_b(beta) {
                continue;
            }
            for &alpha in &targets {
                if alpha == beta || self.nc(x, alpha) != 1 {
                    continue;
                }
                let y = *self.g.neighbors(x).iter().find(|&&w| self.color(w) == alpha).expect("counted");
                for &alpha2 in &targets {
                    if alpha2 != alpha && self.nc(y, alpha2) == 0 {
                        let mv = RecoloringMove::new(vec![(x, alpha), (y, alpha2)]);
                        if offer(mv, MoveKind::Pair { widened }) {
                            return;
                        }
                    }
                }
            }
        }
        if m_max < 3 {
            return;
        }
        // Two non-adjacent vertices with solo neighbour y both take y's color;
        // y moves to a class it touches only through them.
        for y in 0..n {
            let alpha = self.color(y);
            if !is_target(alpha) {
                continue;
            }
            let solo: Vec<usize> = self
                .g
                .neighbors(y)
                .iter()
                .copied()
                .filter(|&x| in_b(self.color(x)) && self.nc(x, alpha) == 1)
                .collect();
            for (i, &x) in solo.iter().enumerate() {
                for &x2 in &solo[i + 1..] {
                    if self.g.has_edge(x, x2) {
                        continue;
                    }
                    for gamma in 0..self.k {
                        if gamma == alpha {
                            continue;
                        }
                        let own = (self.color(x) == gamma) as u32 + (self.color(x2) == gamma) as u32;
                        if self.nc(y, gamma) - own != 0 {
                            continue;
                        }
                        let mv = RecoloringMove::new(vec![(x, alpha), (x2, alpha), (y, gamma)]);
                        if offer(mv, MoveKind::Triple { widened }) {
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Exhaustive search over connected domains of exactly `m` vertices.
    fn exhaustive(&self, m: usize, budget: &mut u64) -> Option<FoundMove> {
        let n = self.g.n();
        let mut sub = Vec::with_capacity(m);
        for v in 0..n {
            sub.clear();
            sub.push(v);
            let ext: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
            if let Some(found) = self.extend(&mut sub, ext, v, m, budget) {
                return Some(found);
            }
            if *budget == 0 {
                return None;
            }
        }
        None
    }

    /// ESU-style enumeration: every connected set with minimum `root` is produced once.
    fn extend(&self, sub: &mut Vec<usize>, mut ext: Vec<usize>, root: usize, m: usize, budget: &mut u64) -> Option<FoundMove> {
        if sub.len() == m {
            return self.assign_domain(sub, budget);
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in self.g.neighbors(w) {
                if u > root
                    && !sub.contains(&u)
                    && !next.contains(&u)
                    && u != w
                    && sub.iter().all(|&s| !self.g.has_edge(s, u))
                {
                    next.push(u);
                }
            }
            sub.push(w);
            let found = self.extend(sub, next, root, m, budget);
            sub.pop();
            if found.is_some() || *budget == 0 {
                return found;
            }
        }
        None
    }

    fn assign_domain(&self, dom: &[usize], budget: &mut u64) -> Option<FoundMove> {
        let mut sorted = dom.to_vec();
        sorted.sort_unstable();
        // Colors each domain vertex may take given its fixed outside neighbours.
        let options: Vec<Vec<Color>> = sorted
            .iter()
            .map(|&v| {
                (0..self.k)
                    .filter(|&c| {
                        self.g.neighbors(v).iter().all(|&w| sorted.binary_search(&w).is_ok() || self.color(w) != c)
                    })
                    .collect()
            })
            .collect();
        let mut chosen = vec![0; sorted.len()];
        self.assign_rec(&sorted, &options, &mut chosen, 0, budget)
    }

    fn assign_rec(
        &self,
        dom: &[usize],
        options: &[Vec<Color>],
        chosen: &mut Vec<Color>,
        i: usize,
        budget: &mut u64,
    ) -> Option<FoundMove> {
        if *budget == 0 {
            return None;
        }
        if i == dom.len() {
            *budget -= 1;
            let mut d: Vec<(Color, i64)> = Vec::new();
            let mut bump = |c: Color, by: i64| match d.iter_mut().find(|e| e.0 == c) {
                Some(e) => e.1 += by,
                None => d.push((c, by)),
            };
            for (j, &v) in dom.iter().enumerate() {
                bump(chosen[j], 1);
                bump(self.color(v), -1);
            }
            d.retain(|e| e.1 != 0);
            d.sort_unstable();
            let witness = admissible_by_counts(self.f.counts(), &d)?;
            let mv = RecoloringMove::new(dom.iter().copied().zip(chosen.iter().copied()).collect());
            return Some(FoundMove { mv, witness, kind: MoveKind::Exhaustive { m: dom.len() } });
        }
        for &c in &options[i] {
            let clash = (0..i).any(|j| chosen[j] == c && self.g.has_edge(dom[j], dom[i]));
            if clash {
                continue;
            }
            chosen[i] = c;
            if let Some(found) = self.assign_rec(dom, options, chosen, i + 1, budget) {
                return Some(found);
            }
        }
        None
    }
}

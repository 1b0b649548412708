use equicolor::coloring::{first_conflict, greedy_coloring, ListAssignment, PartialColoring};
use equicolor::distribution::{
    discrepancy, is_more_equitable, l1_distance, l1_values, rearranged, ColorDistribution,
};
use equicolor::dynamics::{equitable_k_coloring, DriverConfig};
use equicolor::graph::{block_decomposition, contains_clique, is_gallai_tree};
use equicolor::io;
use equicolor::list_domination::{dominating_full_coloring, DominationInstance};
use equicolor::oracle::{self, canon, OracleBudget};
use equicolor::pipeline::{cost, quick_balance};
use equicolor::{Graph, Rational};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn sorted_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

#[test]
fn structure_matches_brute_force_up_to_seven_vertices() {
    let budget = OracleBudget::default();
    for level in canon::graphs_by_order(7) {
        for rows in level {
            let g = canon::from_rows(&rows);
            let blocks = sorted_blocks(block_decomposition(&g).blocks);
            assert_eq!(blocks, sorted_blocks(oracle::brute_blocks(&g, &budget).unwrap()), "{rows:?}");
            if g.n() > 0 && g.is_connected() {
                let all: Vec<usize> = (0..g.n()).collect();
                assert_eq!(is_gallai_tree(&g, &all).unwrap(), oracle::brute_is_gallai_tree(&g, &budget).unwrap());
            }
            for q in 2..=4 {
                assert_eq!(contains_clique(&g, q), oracle::brute_contains_clique(&g, q, &budget).unwrap());
            }
        }
    }
}

#[test]
fn canonical_codes_do_not_depend_on_labels() {
    let g = equicolor::graph::named::petersen();
    let rows = canon::to_rows(&g);
    let relabel: Vec<usize> = vec![3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (relabel[u], relabel[v])).collect();
    let h = Graph::new(10, &edges).unwrap();
    assert_eq!(canon::canonical_code(&rows), canon::canonical_code(&canon::to_rows(&h)));
}

fn counts_strategy() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..=7).prop_flat_map(|k| {
        let side = proptest::collection::vec(0usize..20, k).prop_filter("nonempty", |c| c.iter().sum::<usize>() > 0);
        (side.clone(), side)
    })
}

proptest! {
    #[test]
    fn io_round_trips(g in graph_strategy(12)) {
        prop_assert_eq!(io::parse_dimacs(&io::write_dimacs(&g)).unwrap(), g.clone());
        prop_assert_eq!(io::parse_edge_json(&io::write_edge_json(&g)).unwrap(), g);
    }

    #[test]
    fn rearrangement_contracts((a, b) in counts_strategy()) {
        let (w, e) = (ColorDistribution::from_counts(&a), ColorDistribution::from_counts(&b));
        prop_assert!(l1_values(&rearranged(&w), &rearranged(&e)) <= l1_distance(&w, &e).unwrap());
    }

    #[test]
    fn more_equitable_is_reflexive((a, _) in counts_strategy()) {
        let w = ColorDistribution::from_counts(&a);
        prop_assert!(is_more_equitable(&w, &w, false).unwrap());
        prop_assert!(!is_more_equitable(&w, &w, true).unwrap());
    }

    #[test]
    fn closed_forms_match_enumeration(n in 3usize..=8, k in 1usize..=4) {
        let budget = OracleBudget::default();
        let path = oracle::count_proper_colorings(&equicolor::graph::named::path(n), k, &budget).unwrap();
        let cycle = oracle::count_proper_colorings(&equicolor::graph::named::cycle(n), k, &budget).unwrap();
        prop_assert_eq!(path as u128, oracle::path_proper_colorings(n as u32, k as u64));
        prop_assert_eq!(cycle as u128, oracle::cycle_proper_colorings(n as u32, k as u64));
    }

    #[test]
    fn driver_output_is_equitable(g in graph_strategy(24), extra in 0usize..3, seed in any::<u64>()) {
        let k = g.max_degree() + 1 + extra;
        let config = DriverConfig { seed, randomize_start: true, ..DriverConfig::default() };
        let (f, trace) = equitable_k_coloring(&g, k, None, &config).unwrap();
        prop_assert!(f.is_total());
        prop_assert_eq!(first_conflict(&g, &f), None);
        prop_assert!(f.gap() <= 1);
        let start = ColorDistribution::from_counts(PartialColoring::from_total(k, &trace.start).unwrap().counts());
        prop_assert_eq!(discrepancy(&start), discrepancy(&trace.initial));
    }

    #[test]
    fn cost_is_additive(g in graph_strategy(14), split in any::<u64>()) {
        let n = g.n();
        let x: Vec<usize> = (0..n).filter(|v| split >> (2 * v) & 3 == 1).collect();
        let y: Vec<usize> = (0..n).filter(|v| split >> (2 * v) & 3 == 2).collect();
        let mut both = x.clone();
        both.extend(&y);
        let across = g.edges().filter(|&(u, v)| (x.contains(&u) && y.contains(&v)) || (x.contains(&v) && y.contains(&u))).count();
        let expected = cost(&g, &x).cost + cost(&g, &y).cost - Rational::new(across as i128, n as i128);
        prop_assert_eq!(cost(&g, &both).cost, expected);
    }

    #[test]
    fn quick_balance_reaches_its_fixpoint(g in graph_strategy(16), frozen in any::<u16>(), extra in 0usize..2) {
        let n = g.n();
        let k = g.max_degree() + 1 + extra;
        let f = PartialColoring::from_total(k, &greedy_coloring(&g).to_total().unwrap()).unwrap();
        let x: Vec<usize> = (0..n).filter(|v| frozen >> v & 1 == 1).collect();
        let out = quick_balance(&g, &f, &x, &greedy_coloring(&g)).unwrap();
        prop_assert_eq!(first_conflict(&g, &out), None);
        for &v in &x {
            prop_assert_eq!(out.get(v), f.get(v));
        }
        for alpha in 0..k {
            for beta in 0..k {
                if out.count(beta) >= out.count(alpha) + 2 {
                    let stuck = (0..n).all(|y| {
                        out.get(y) != Some(beta) || x.contains(&y) || g.neighbors(y).iter().any(|&w| out.get(w) == Some(alpha))
                    });
                    prop_assert!(stuck);
                }
            }
        }
    }

    #[test]
    fn list_domination_agrees_with_oracle(g in graph_strategy(7), picks in proptest::collection::vec(any::<u32>(), 7), seed_bits in any::<u32>()) {
        let n = g.n();
        let all: Vec<usize> = (0..n).collect();
        prop_assume!(n >= 2 && g.is_connected() && !is_gallai_tree(&g, &all).unwrap());
        let palette = g.max_degree() + 1;
        // Each list drops at most one color of the (Δ+1)-palette, so |L(v)| ≥ deg(v).
        let lists: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let skip = picks[v] as usize % (palette + 1);
                (0..palette).filter(|&c| c != skip).collect()
            })
            .collect();
        let mut seed = vec![None; n];
        for v in 0..n {
            let c = lists[v][(seed_bits >> (3 * v)) as usize % lists[v].len()];
            if seed_bits >> (v + 21) & 1 == 1 && g.neighbors(v).iter().all(|&w| seed[w] != Some(c)) {
                seed[v] = Some(c);
            }
        }
        let seed = PartialColoring::from_assignment(palette, seed).unwrap();
        let lists = ListAssignment::new(lists);
        let f = dominating_full_coloring(&DominationInstance::new(g.clone(), lists.clone(), seed.clone())).unwrap();
        prop_assert!(f.is_total());
        prop_assert_eq!(first_conflict(&g, &f), None);
        prop_assert!((0..palette).all(|c| f.count(c) >= seed.count(c)));
        let budget = OracleBudget { max_palette: 8, max_list_size: 8, ..OracleBudget::default() };
        prop_assert!(oracle::domination_exists(&g, &lists, &seed, &budget).unwrap());
    }
}

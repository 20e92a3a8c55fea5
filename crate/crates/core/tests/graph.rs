use std::collections::{BTreeSet, HashMap};

use kcenter_core::graph::{check_tau, random_connected_graph_with, random_tree_with};
use kcenter_core::{
    figure1_graph, laplacian, parse_edge_list, path_graph, random_connected_graph, random_tree, serialize_edge_list,
    stochastic, Error, Graph, PortSet,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=12, any::<u64>()).prop_map(|(n, seed)| random_connected_graph(n, 0.4, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laplacian_kills_constants_exactly(g in arb_graph()) {
        let l = laplacian::<i64>(&g);
        prop_assert!(l.row_sums().iter().all(|&s| s == 0));
        for i in 0..g.n() {
            prop_assert_eq!(l.get(i, i), g.degrees()[i] as i64);
        }
    }

    #[test]
    fn stochastic_rows_sum_to_one(g in arb_graph(), frac in 0.05f64..=1.0) {
        let tau = frac / g.max_degree() as f64;
        let z = stochastic(&g, tau).unwrap();
        for s in z.row_sums() {
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
        prop_assert!(z.min_entry() >= -1e-15);
    }

    #[test]
    fn random_trees_are_spanning_trees(n in 2usize..=500, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        prop_assert_eq!(t.n(), n);
        prop_assert_eq!(t.edge_count(), n - 1);
        prop_assert!(t.is_connected());
    }

    #[test]
    fn random_graphs_are_connected(n in 2usize..=20, p in 0.05f64..0.95, seed in any::<u64>()) {
        // sparse draws may exhaust the resampling budget; that is the only allowed error
        match random_connected_graph(n, p, seed) {
            Ok(g) => {
                prop_assert!(g.is_connected());
                prop_assert_eq!(g.n(), n);
            }
            Err(e) => prop_assert!(matches!(e, Error::GenerationFailure { .. }), "{e}"),
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text = serialize_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn relabelling_permutes_laplacian(g in arb_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        let zero_based: Vec<usize> = perm.iter().map(|p| p - 1).collect();
        prop_assert_eq!(laplacian::<i64>(&g).permuted(&zero_based), laplacian::<i64>(&h));
    }
}

#[test]
fn every_labelled_tree_on_four_nodes_appears() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for _ in 0..3200 {
        let t = random_tree_with(4, &mut rng).unwrap();
        *seen.entry(t.edges().collect()).or_default() += 1;
    }
    assert_eq!(seen.len(), 16);
    // 200 expected per tree; a uniform sampler stays well inside these bounds
    assert!(seen.values().all(|&c| (120..=280).contains(&c)), "{seen:?}");
}

#[test]
fn seeded_generation_is_reproducible() {
    assert_eq!(random_tree(40, 9).unwrap(), random_tree(40, 9).unwrap());
    assert_eq!(random_connected_graph(9, 0.4, 3).unwrap(), random_connected_graph(9, 0.4, 3).unwrap());
    let mut a = ChaCha8Rng::seed_from_u64(5);
    let mut b = ChaCha8Rng::seed_from_u64(5);
    assert_eq!(
        random_connected_graph_with(8, 0.3, &mut a).unwrap(),
        random_connected_graph_with(8, 0.3, &mut b).unwrap()
    );
}

#[test]
fn figure_graph_shape() {
    let g = figure1_graph();
    assert_eq!(g.n(), 11);
    assert_eq!(g.edge_count(), 11);
    assert!(g.is_connected());
    assert_eq!(g.degrees(), vec![1, 2, 3, 1, 3, 1, 2, 3, 2, 3, 1]);
}

#[test]
fn path_laplacian_entries() {
    let l = laplacian::<i64>(&path_graph(4).unwrap());
    let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| l.get(i, j)).collect()).collect();
    assert_eq!(rows, vec![vec![1, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 1]]);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::InvalidParameter { .. }) | Err(Error::InvalidOrder { .. })));
    assert!(Graph::new(3, [(1, 4)]).is_err());
    assert!(path_graph(0).is_err());
    assert!(PortSet::new(5, [6]).is_err());
    assert!(PortSet::new(3, [1, 2, 3]).is_err());
    assert!(PortSet::new(5, [2, 2]).is_err());
    assert!(random_connected_graph(5, 0.0, 1).is_err());
    assert!(random_connected_graph(5, 1.0, 1).is_err());
    let p = path_graph(5).unwrap();
    assert!(check_tau(&p, 0.0).is_err());
    assert!(check_tau(&p, 0.6).is_err());
    assert!(check_tau(&p, 0.5).is_ok());
    assert!(matches!(parse_edge_list("3\n1 2\n2 x\n"), Err(Error::Parse { line: 3, .. })));
    assert!(parse_edge_list("3\n2 1\n").is_err());
}

#[test]
fn port_sets_are_sorted_and_displayed() {
    let s = PortSet::new(9, [8, 2, 5]).unwrap();
    assert_eq!(s.indices(), &[2, 5, 8]);
    assert_eq!(s.to_string(), "{2,5,8}");
    let set: BTreeSet<usize> = s.indices().iter().copied().collect();
    assert_eq!(set.len(), 3);
}

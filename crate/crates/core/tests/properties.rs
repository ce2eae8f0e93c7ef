mod common;

use common::{oracle_dim, oracle_distances, oracle_distinctive, random_connected, rng};
use kmetric::constructions::{
    complement, cone, corona, cycle, fan, join, wheel, CoronaSpec,
};
use kmetric::formulas::{self, fan_dim, wheel_dim, Applicability};
use kmetric::harness::check_corona_basis;
use kmetric::metric_sets::{c_of_h, dimensional_k, is_k_generator, PairTable};
use kmetric::solver::{self, basis, build_instance, f_of_h_k, solve_exact_all, SolverConfig};
use kmetric::{Bitset, Graph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.0f64..0.7)
        .prop_map(|(n, seed, p)| random_connected(&mut rng(seed), n, p))
}

/// A path of order 7 with up to four extra vertices hung off it, filtered
/// to diameter at least 6.
fn long_graph_strategy() -> impl Strategy<Value = Graph> {
    (0usize..=4, any::<u64>()).prop_filter_map("diameter < 6", |(extra, seed)| {
        use rand::Rng;
        let mut r = rng(seed);
        let n = 7 + extra;
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
        for v in 7..n {
            let u = r.gen_range(0..v);
            edges.push((u, v));
            if r.gen_bool(0.3) {
                let w = r.gen_range(0..v);
                if w != u {
                    edges.push((w, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        (g.diameter().unwrap() >= 6).then_some(g)
    })
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distance_matrix_invariants(g in graph_strategy(12)) {
        let d = g.distances();
        let oracle = oracle_distances(&g);
        let n = g.order();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), oracle[u][v]);
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert_eq!(d.get(u, v) == Some(1), g.is_adjacent(u, v));
                for w in 0..n {
                    prop_assert!(d.get(u, w).unwrap() <= d.get(u, v).unwrap() + d.get(v, w).unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_edge_order(g in graph_strategy(10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| if seed % 2 == 0 { (u, v) } else { (v, u) }).collect();
        edges.shuffle(&mut rng(seed));
        prop_assert_eq!(Graph::from_edges(g.order(), edges).unwrap(), g);
    }

    #[test]
    fn distinctive_sets_match_oracle(g in graph_strategy(10)) {
        let table = PairTable::new(&g).unwrap();
        for ((x, y), zs) in oracle_distinctive(&g) {
            let row = table.get(x, y).unwrap();
            prop_assert_eq!(row.members.to_vec(), zs);
            prop_assert!(row.members.contains(x) && row.members.contains(y));
        }
    }

    #[test]
    fn twins_are_pairs_with_empty_nontrivial_set(g in graph_strategy(9)) {
        let table = PairTable::new(&g).unwrap();
        let mut from_table: Vec<(usize, usize)> =
            table.iter().filter(|r| r.nontrivial().is_empty()).map(|r| r.pair).collect();
        from_table.sort_unstable();
        prop_assert_eq!(g.twins(), from_table);
        prop_assert_eq!(table.dimensional_k().unwrap() == 2, !g.twins().is_empty());
        if g.order() > 2 {
            prop_assert!(table.dimensional_k().unwrap() < g.order());
        }
    }

    #[test]
    fn diameter_two_rows_are_neighbourhood_differences(g in graph_strategy(9)) {
        prop_assume!(g.diameter().unwrap() <= 2);
        let table = PairTable::new(&g).unwrap();
        for row in table.iter() {
            let (x, y) = row.pair;
            let mut expect = g.neighborhood(x);
            expect.symmetric_difference_with(&g.neighborhood(y));
            expect.insert(x);
            expect.insert(y);
            prop_assert_eq!(&row.members, &expect);
        }
    }

    #[test]
    fn c_is_complement_invariant(g in graph_strategy(9)) {
        prop_assert_eq!(c_of_h(&g).unwrap(), c_of_h(&complement(&g)).unwrap());
    }

    #[test]
    fn join_dimensional_value(g in graph_strategy(8)) {
        let observed = dimensional_k(&cone(&g).unwrap()).unwrap();
        prop_assert_eq!(observed, formulas::join_dimensional_k(&g).unwrap());
    }

    #[test]
    fn solver_invariants(g in graph_strategy(8)) {
        let n = g.order();
        let table = PairTable::new(&g).unwrap();
        let kmax = table.dimensional_k().unwrap();
        let mut prev = 0;
        for k in 1..=kmax {
            let inst = build_instance(&g, k, None, None).unwrap();
            let r = solver::solve_exact(&inst).unwrap();
            prop_assert!(r.dim >= k);
            prop_assert!(r.dim > prev);
            prev = r.dim;
            let w = Bitset::from_indices(n, r.witness.iter().copied());
            prop_assert!(inst.forced().is_subset(&w));
            prop_assert!(is_k_generator(&g, &r.witness, k).unwrap().is_generator());
            if k > 1 {
                prop_assert!(is_k_generator(&g, &r.witness, k - 1).unwrap().is_generator());
            }
            // dim_k = n exactly when every vertex lies in a row of size k
            prop_assert_eq!(r.dim == n, table.d_k_union(k).count() == n);
        }
    }

    /// A basis of K_1 + H avoiding the hub still separates every pair of
    /// H-vertices k times in K_1 + complement(H).
    #[test]
    fn k1h_complement_inner_pairs(g in graph_strategy(7)) {
        let comp_cone = cone(&complement(&g)).unwrap();
        let table = PairTable::new(&comp_cone).unwrap();
        let kmax = formulas::join_dimensional_k(&g).unwrap();
        for k in 1..=kmax {
            if f_of_h_k(&g, k, &cfg()).unwrap() == 0 {
                let r = basis(&cone(&g).unwrap(), k, &cfg()).unwrap();
                let s = Bitset::from_indices(g.order() + 1, r.witness.iter().copied());
                for row in table.iter().filter(|r| r.pair.0 >= 1) {
                    prop_assert!(row.members.intersection_count(&s) >= k);
                }
            }
        }
    }

    /// On attachments of diameter at least 6 the corona ignores
    /// complementation and matches the sum over K_1 + H_i.
    #[test]
    fn long_diameter_coronas_ignore_complement(g in long_graph_strategy(), h in long_graph_strategy()) {
        let base = kmetric::constructions::path(2).unwrap();
        let spec = CoronaSpec::new(base, vec![g, h]).unwrap();
        let comp = spec.complemented();
        let c = kmetric::metric_sets::c_of_family(spec.attachments()).unwrap();
        for k in 1..=c {
            let a = basis(&corona(&spec).0, k, &cfg()).unwrap().dim;
            let b = basis(&corona(&comp).0, k, &cfg()).unwrap().dim;
            let sum: usize = spec.attachments().iter()
                .map(|h| basis(&cone(h).unwrap(), k, &cfg()).unwrap().dim)
                .sum();
            prop_assert_eq!(a, b, "k = {}", k);
            prop_assert_eq!(a, sum, "k = {}", k);
        }
    }
}

fn random_corona(seed: u64, max_base: usize, max_attach: usize) -> CoronaSpec {
    use rand::Rng;
    let mut r = rng(seed);
    let nb = r.gen_range(2..=max_base);
    let base = random_connected(&mut r, nb, 0.5);
    let hs = (0..nb)
        .map(|_| {
            let n = r.gen_range(2..=max_attach);
            random_connected(&mut r, n, 0.4)
        })
        .collect();
    CoronaSpec::new(base, hs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn corona_structure(seed in any::<u64>()) {
        let spec = random_corona(seed, 4, 5);
        let (g, layout) = corona(&spec);
        let m: usize = spec.base().size()
            + spec.attachments().iter().map(|h| h.size() + h.order()).sum::<usize>();
        prop_assert_eq!(g.size(), m);
        prop_assert!(g.is_connected());
        prop_assert_eq!(g.order(), layout.order());
        let c = kmetric::metric_sets::c_of_family(spec.attachments()).unwrap();
        prop_assert_eq!(dimensional_k(&g).unwrap(), c);
    }

    #[test]
    fn every_optimal_corona_basis_is_structured(seed in any::<u64>()) {
        let spec = random_corona(seed, 3, 4);
        let (g, layout) = corona(&spec);
        let kmax = dimensional_k(&g).unwrap();
        for k in 1..=kmax {
            let inst = build_instance(&g, k, None, None).unwrap();
            let all = solve_exact_all(&inst, 64).unwrap();
            prop_assert!(!all.is_empty());
            for w in &all {
                if let Err(e) = check_corona_basis(&spec, &layout, w, k) {
                    return Err(TestCaseError::fail(format!("k = {k}: {e}")));
                }
            }
            // predictions never drop below k per attachment
            if let Ok(Applicability::Applies((lo, hi))) = formulas::sandwich_bounds(&spec, k, &cfg()) {
                prop_assert!(lo >= k * spec.attachments().len());
                prop_assert!(lo <= all[0].len() && all[0].len() <= hi);
            }
        }
    }
}

#[test]
fn oracle_agrees_on_named_graphs() {
    for g in [fan(5).unwrap(), wheel(6).unwrap(), cycle(7).unwrap(), kmetric::constructions::petersen()] {
        if g.order() > 10 {
            continue;
        }
        for k in 1..=dimensional_k(&g).unwrap() {
            assert_eq!(Some(solver::dim_k(&g, k).unwrap()), oracle_dim(&g, k));
        }
    }
}

#[test]
fn closed_forms_match_solver_for_all_valid_k() {
    for n in 1..=12 {
        let g = fan(n).unwrap();
        for k in 1..=dimensional_k(&g).unwrap() {
            if let Ok(v) = fan_dim(n, k) {
                assert_eq!(solver::dim_k(&g, k).unwrap(), v, "F{n} k={k}");
            }
        }
    }
    for n in 3..=12 {
        let g = wheel(n).unwrap();
        for k in 1..=dimensional_k(&g).unwrap() {
            if let Ok(v) = wheel_dim(n, k) {
                assert_eq!(solver::dim_k(&g, k).unwrap(), v, "W{n} k={k}");
            }
        }
    }
}

/// Rim subsets of size `k + 1` never cover the rim pairs of a large wheel.
#[test]
fn wheel_rim_needs_k_plus_two() {
    for n in 7..=9 {
        let g = wheel(n).unwrap();
        let table = PairTable::new(&g).unwrap();
        let rim_rows: Vec<Bitset> = table
            .iter()
            .filter(|r| r.pair.0 >= 1)
            .map(|r| r.members)
            .collect();
        for k in 2..=4 {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k + 1 {
                    continue;
                }
                let s = Bitset::from_indices(n + 1, (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1));
                assert!(
                    rim_rows.iter().any(|row| row.intersection_count(&s) < k),
                    "W{n} k={k}: rim set {s:?} covers all rim pairs"
                );
            }
        }
    }
}

#[test]
fn join_with_k1_matches_single_corona() {
    for h in [cycle(5).unwrap(), fan(4).unwrap()] {
        let k1 = Graph::empty(1).unwrap();
        let (a, _) = join(&k1, &h).unwrap();
        let (b, _) = corona(&CoronaSpec::uniform(k1, &h).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn hub_has_degree_n() {
    for n in 3..10 {
        assert_eq!(fan(n).unwrap().degree(0), n);
        assert_eq!(wheel(n).unwrap().degree(0), n);
    }
}

/// dim_k(K_1 + H) and dim_k(K_1 + complement(H)) can differ even with
/// f(H, k) = 0, including for long paths: hub pairs in the complement are
/// separated by N_H(x) instead of the non-neighbours of x. Only the
/// corona-level statement survives (see the property above).
#[test]
fn k1h_complement_values_can_differ() {
    let spider = Graph::from_edges(5, [(0, 2), (1, 2), (1, 3), (2, 4)]).unwrap();
    let p7 = kmetric::constructions::path(7).unwrap();
    for (h, k, a, b) in [(&spider, 1, 2, 3), (&spider, 2, 4, 5), (&p7, 2, 4, 5), (&p7, 3, 7, 8)] {
        let comp = complement(h);
        let h = h.clone();
        assert_eq!(f_of_h_k(&h, k, &cfg()).unwrap(), 0);
        assert_eq!(basis(&cone(&h).unwrap(), k, &cfg()).unwrap().dim, a);
        assert_eq!(basis(&cone(&comp).unwrap(), k, &cfg()).unwrap().dim, b);
        assert_eq!(oracle_dim(&cone(&h).unwrap(), k), Some(a));
        assert_eq!(oracle_dim(&cone(&comp).unwrap(), k), Some(b));
    }
}

/// Attachments with an end vertex whose support has degree two, and no
/// twins, give 3-dimensional coronas.
#[test]
fn end_vertex_attachments_are_three_dimensional() {
    let p5 = kmetric::constructions::path(5).unwrap();
    let p6 = kmetric::constructions::path(6).unwrap();
    let tailed = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]).unwrap();
    for hs in [vec![p5.clone(), p6.clone()], vec![tailed.clone(), p5], vec![tailed.clone(), tailed]] {
        assert!(hs.iter().all(|h| h.twins().is_empty()));
        let spec = CoronaSpec::new(kmetric::constructions::path(2).unwrap(), hs).unwrap();
        let g = corona(&spec).0;
        assert_eq!(dimensional_k(&g).unwrap(), 3);
        assert_eq!(common::oracle_dimensional_k(&g), 3);
    }
}

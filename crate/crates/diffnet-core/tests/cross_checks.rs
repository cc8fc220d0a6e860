//! Cross-module consistency checks: generated families against the
//! spectral routes, PMI/LIEEP/rank chains on exhaustive small corpora,
//! and the leader searches against their analytic bounds.

use diffnet_core::construct::{
    clique_chain, clique_chain_kirchhoff, construct_m, construct_mbar, enumerate_connected_graphs,
    full_pmi_certificate, optimal_clique_chain_search, random_connected, trim_to_n,
    CliqueChainSpec,
};
use diffnet_core::graph::{cycle_graph, path_graph, EdgeWeights, Graph};
use diffnet_core::leaders::{
    clique_chain_leader_bounds, clique_chain_pmi_leaders, eccentricity_bound_check,
    min_leaders_full_pmi, min_leaders_ssc_estimate, pmi_leader_lower_bound, Certificate,
};
use diffnet_core::spectral::{kirchhoff_eigen, kirchhoff_resistance, BoundsReport};
use diffnet_core::ssc::{
    dl_matrix, longest_pmi, maximal_lieep, ssc_rank_oracle, validate_pmi, LeaderSet, PmiMode,
};
use diffnet_core::Rng;

fn unit(g: &Graph) -> EdgeWeights {
    EdgeWeights::uniform(g, 1.0).unwrap()
}

fn spec(sizes: &[usize]) -> CliqueChainSpec {
    CliqueChainSpec::new(sizes.to_vec()).unwrap()
}

fn mbar_kf(k: usize, d: usize) -> f64 {
    let mbar = construct_mbar(k, d).unwrap();
    kirchhoff_eigen(&mbar.graph, &unit(&mbar.graph)).unwrap().kf
}

#[test]
fn dense_family_kirchhoff_reference_values() {
    // (k, D) -> reference K_f of the densified construction.
    let cases = [
        (2, 3, 16.64),
        (3, 3, 22.75),
        (3, 5, 74.63),
        (4, 5, 91.27),
        (7, 7, 301.66),
    ];
    for (k, d, expect) in cases {
        let kf = mbar_kf(k, d);
        assert!((kf - expect).abs() < 0.01, "k={k} d={d}: {kf} vs {expect}");
    }
}

#[test]
fn optimal_chain_reference_rows() {
    let cases: [(usize, usize, &[usize], f64); 4] = [
        (3, 7, &[1, 2, 3, 1], 10.5),
        (4, 13, &[1, 3, 5, 3, 1], 23.30),
        (5, 16, &[1, 3, 4, 4, 3, 1], 38.73),
        (6, 19, &[1, 2, 4, 4, 4, 3, 1], 59.85),
    ];
    for (d, n, sizes, expect) in cases {
        let (best, kf) = optimal_clique_chain_search(n, d).unwrap();
        assert_eq!(best.sizes(), sizes, "D={d} N={n}");
        assert!((kf - expect).abs() < 0.01, "D={d} N={n}: {kf} vs {expect}");
    }
}

#[test]
fn worst_case_on_optimal_chain() {
    let g = clique_chain(&spec(&[1, 2, 3, 1]));
    let k = diffnet_core::spectral::worst_case_kirchhoff(&g, 1.0).unwrap();
    assert!((k - 10.5).abs() < 0.01);
}

#[test]
fn resistance_route_on_six_node_chain() {
    // G_3(1,2,2,1): spectrum {0, 1.4384.., 3, 5, 5, 5.5616..} gives
    // K_f = 9.65; both routes must agree on it.
    let g = clique_chain(&spec(&[1, 2, 2, 1]));
    let e = kirchhoff_eigen(&g, &unit(&g)).unwrap().kf;
    let r = kirchhoff_resistance(&g, &unit(&g)).unwrap().kf;
    assert!((e - r).abs() < 1e-9 * e);
    assert!((r - 9.65).abs() < 1e-9, "kf = {r}");
}

#[test]
fn rank_oracle_full_on_dense_family() {
    let mbar = construct_mbar(4, 5).unwrap();
    let rank = ssc_rank_oracle(&mbar.graph, &mbar.leaders, 50, 0.5, 1.5, 17).unwrap();
    assert_eq!(rank, 21);
}

#[test]
fn certificate_validates_across_grid() {
    for k in 2..=5 {
        for d in 2..=6 {
            let mbar = construct_mbar(k, d).unwrap();
            let dl = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
            let cert = full_pmi_certificate(k, d).unwrap();
            assert_eq!(cert.len(), k * d + 1);
            assert_eq!(validate_pmi(&cert, &dl), Ok(true), "k={k} d={d}");
        }
    }
}

#[test]
fn sparse_and_dense_dl_vectors_agree_across_grid() {
    for k in 2..=5 {
        for d in 2..=6 {
            let m = construct_m(k, d).unwrap();
            let mbar = construct_mbar(k, d).unwrap();
            let a = dl_matrix(&m.graph, &m.leaders).unwrap();
            let b = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
            assert_eq!(a, b, "k={k} d={d}");
            // Densification only ever adds edges.
            for (u, v) in m.graph.edges() {
                assert!(mbar.graph.has_edge(u, v), "k={k} d={d}: lost ({u},{v})");
            }
        }
    }
}

#[test]
fn maximality_every_absent_edge_changes_some_distance() {
    for (k, d) in [(2, 3), (3, 3), (2, 4)] {
        let mbar = construct_mbar(k, d).unwrap();
        let base = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
        let n = mbar.graph.num_nodes();
        for u in 0..n {
            for v in (u + 1)..n {
                if mbar.graph.has_edge(u, v) {
                    continue;
                }
                let mut denser = mbar.graph.clone();
                denser.add_edge(u, v).unwrap();
                let dl = dl_matrix(&denser, &mbar.leaders).unwrap();
                assert_ne!(
                    dl, base,
                    "k={k} d={d}: edge ({u},{v}) preserved all DL vectors"
                );
            }
        }
    }
}

#[test]
fn trimmed_family_reaches_the_sharp_bound() {
    // (n, d) pairs across exact and genuinely trimmed instances.
    let cases = [(13, 4), (12, 4), (11, 5), (20, 5)];
    for (n, d) in cases {
        let k = pmi_leader_lower_bound(n, d);
        let mbar = construct_mbar(k, d).unwrap();
        let g = if mbar.graph.num_nodes() == n {
            mbar.graph.clone()
        } else {
            trim_to_n(&mbar, n).unwrap().graph
        };
        assert_eq!(g.diameter().unwrap(), d, "({n},{d})");
        let r = min_leaders_full_pmi(&g, 1_000_000).unwrap();
        assert_eq!(r.k_found, k, "({n},{d})");
        assert_eq!(r.certificate, Certificate::FullPmi);
    }
}

#[test]
fn route_agreement_on_random_corpus() {
    let mut rng = Rng::seed_from_u64(20260808);
    let mut count = 0;
    while count < 100 {
        let n = 2 + (rng.next_u64() % 29) as usize;
        let p = rng.next_f64() * 0.5;
        let g = random_connected(n, p, &mut rng);
        let w = EdgeWeights::from_fn(&g, 0.5, 2.0, |_, _| 0.5).unwrap();
        // Mix of uniform and random weights.
        let w = if count % 2 == 0 {
            w
        } else {
            let mut wr = Rng::derive(99, count as u64);
            EdgeWeights::from_fn(&g, 0.5, 2.0, |_, _| wr.uniform(0.5, 2.0)).unwrap()
        };
        let e = kirchhoff_eigen(&g, &w).unwrap().kf;
        let r = kirchhoff_resistance(&g, &w).unwrap().kf;
        assert!(
            (e - r).abs() <= 1e-8 * e.abs(),
            "n={n}: eigen {e} vs resistance {r}"
        );
        count += 1;
    }
}

#[test]
fn edge_addition_strictly_decreases_kf() {
    let mut corpus: Vec<Graph> = vec![
        path_graph(5),
        cycle_graph(6),
        clique_chain(&spec(&[1, 2, 2, 1])),
        construct_mbar(2, 3).unwrap().graph,
        path_graph(12),
    ];
    let mut rng = Rng::seed_from_u64(7);
    for n in 4..=12 {
        corpus.push(random_connected(n, 0.2, &mut rng));
    }
    for g in &corpus {
        let n = g.num_nodes();
        let base = kirchhoff_eigen(g, &unit(g)).unwrap().kf;
        for u in 0..n {
            for v in (u + 1)..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let mut denser = g.clone();
                denser.add_edge(u, v).unwrap();
                let kf = kirchhoff_eigen(&denser, &unit(&denser)).unwrap().kf;
                assert!(kf < base, "adding ({u},{v}) raised K_f: {kf} vs {base}");
            }
        }
    }
}

#[test]
fn bound_sandwich_small_grid() {
    for k in 3..=4 {
        for d in 3..=5 {
            let report = BoundsReport::new(k, d, mbar_kf(k, d)).unwrap();
            assert!(report.sandwich_holds(), "k={k} d={d}: {report:?}");
        }
    }
}

#[test]
fn quotient_kf_agrees_with_eigen_on_random_compositions() {
    let mut rng = Rng::seed_from_u64(31);
    for _ in 0..25 {
        let len = 2 + (rng.next_u64() % 6) as usize;
        let sizes: Vec<usize> = (0..len)
            .map(|_| 1 + (rng.next_u64() % 4) as usize)
            .collect();
        let s = spec(&sizes);
        let fast = clique_chain_kirchhoff(&s);
        let g = clique_chain(&s);
        let slow = kirchhoff_eigen(&g, &unit(&g)).unwrap().kf;
        assert!((fast - slow).abs() <= 1e-8 * slow, "{sizes:?}");
    }
}

/// PMI length <= rank estimate <= LIEEP cell count, exhaustively over
/// every connected graph on up to 6 nodes and every leader set of size
/// up to 3. (The full acceptance run extends this to 8 nodes with pairs.)
#[test]
fn soundness_chain_exhaustive_small() {
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n) {
            for leaders in leader_sets(n, 3) {
                let leaders = LeaderSet::new(leaders, n).unwrap();
                let dl = dl_matrix(&g, &leaders).unwrap();
                let pmi = longest_pmi(&dl, PmiMode::Exact).unwrap();
                let greedy = longest_pmi(&dl, PmiMode::Greedy).unwrap();
                assert!(greedy.len() <= pmi.len());
                assert_eq!(validate_pmi(&pmi, &dl), Ok(true));
                assert_eq!(validate_pmi(&greedy, &dl), Ok(true));
                let rank = ssc_rank_oracle(&g, &leaders, 12, 0.5, 1.5, 5).unwrap();
                let cells = maximal_lieep(&g, &leaders).num_cells();
                assert!(
                    pmi.len() <= rank && rank <= cells,
                    "n={n} leaders={:?}: pmi {} rank {rank} cells {cells}",
                    leaders.as_slice(),
                    pmi.len()
                );
                // Full-rank estimates require an all-singleton LIEEP.
                if rank == n {
                    assert_eq!(cells, n);
                }
                // Eccentricity capacity whenever the PMI is full.
                if pmi.len() == n {
                    let slack = eccentricity_bound_check(&g, &leaders).unwrap();
                    assert!(slack.satisfied);
                }
            }
        }
    }
}

fn leader_sets(n: usize, max_k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=max_k.min(n) {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            out.push(subset.clone());
            // advance
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if subset[i] < n - k + i {
                    subset[i] += 1;
                    for j in (i + 1)..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

/// The estimate can only be at most the full-PMI answer.
#[test]
fn estimate_never_exceeds_full_pmi_minimum() {
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n) {
            let full = min_leaders_full_pmi(&g, 1_000_000).unwrap();
            let est = min_leaders_ssc_estimate(&g, 12, 1_000_000, 3).unwrap();
            assert!(
                est.k_found <= full.k_found,
                "n={n}: estimate {} > full {}",
                est.k_found,
                full.k_found
            );
            let d = g.diameter().unwrap();
            assert!(full.k_found >= pmi_leader_lower_bound(n, d));
        }
    }
}

#[test]
fn chain_estimates_sit_in_bound_range() {
    for sizes in [
        &[1usize, 2, 2, 1][..],
        &[1, 2, 2, 1, 1],
        &[1, 3, 2, 1],
        &[1, 2, 3, 2, 1],
        &[2, 2, 2, 2],
    ] {
        let s = spec(sizes);
        let g = clique_chain(&s);
        let (lo, hi) = clique_chain_leader_bounds(&s).unwrap();
        let est = min_leaders_ssc_estimate(&g, 50, 1_000_000, 13).unwrap();
        assert!(
            est.k_found >= lo && est.k_found <= hi,
            "{sizes:?}: {} not in [{lo},{hi}]",
            est.k_found
        );
    }
}

#[test]
fn explicit_chain_leaders_match_upper_bound() {
    for sizes in [&[1usize, 2, 2, 1][..], &[1, 2, 3, 2, 1], &[2, 3, 1, 2]] {
        let s = spec(sizes);
        let g = clique_chain(&s);
        let leaders = clique_chain_pmi_leaders(&s);
        let dl = dl_matrix(&g, &leaders).unwrap();
        assert_eq!(
            longest_pmi(&dl, PmiMode::Exact).unwrap().len(),
            s.num_nodes()
        );
        let ecc = eccentricity_bound_check(&g, &leaders).unwrap();
        assert!(ecc.satisfied);
    }
}

#[test]
fn lieep_refinement_matches_brute_force_on_chain() {
    // G_3(1,2,2,1) with one leader in each middle clique: N = 6 is small
    // enough for the exhaustive coarsest-LIEEP oracle.
    let g = clique_chain(&spec(&[1, 2, 2, 1]));
    let leaders = LeaderSet::new(vec![1, 3], 6).unwrap();
    let refined = maximal_lieep(&g, &leaders);
    assert!(refined.is_lieep(&g, &leaders));
    let followers: Vec<usize> = (0..6).filter(|u| !leaders.contains(*u)).collect();
    let mut best = usize::MAX;
    // Restricted growth strings over the followers.
    let m = followers.len();
    let mut assign = vec![0usize; m];
    'outer: loop {
        let cells_count = assign.iter().copied().max().unwrap() + 1;
        let mut cells: Vec<Vec<usize>> = leaders.iter().map(|l| vec![l]).collect();
        for c in 0..cells_count {
            cells.push(
                followers
                    .iter()
                    .zip(assign.iter())
                    .filter(|(_, &a)| a == c)
                    .map(|(&f, _)| f)
                    .collect(),
            );
        }
        let part = diffnet_core::ssc::Partition::new(cells);
        if part.is_lieep(&g, &leaders) {
            best = best.min(part.num_cells());
        }
        let mut i = m;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let cap = assign[..i].iter().copied().max().map_or(0, |x| x + 1);
            if assign[i] < cap {
                assign[i] += 1;
                for a in assign[i + 1..].iter_mut() {
                    *a = 0;
                }
                break;
            }
        }
    }
    assert_eq!(best, refined.num_cells());
}

//! Independent brute-force oracle for the longest-PMI search.
//!
//! The production search reduces the problem to per-leader thresholds
//! and memoizes on them. The oracle here shares none of that: it runs a
//! plain DFS over sequence prefixes, keeping for every placed position
//! the set of witness coordinates still consistent with the elements
//! placed after it, and prunes only when some position runs out of
//! witnesses. Agreement over every small connected graph and leader set
//! checks the threshold reduction end to end.

use diffnet_core::construct::enumerate_connected_graphs;
use diffnet_core::ssc::{dl_matrix, longest_pmi, DLMatrix, LeaderSet, PmiMode};

fn brute_force_longest(dl: &DLMatrix) -> usize {
    let n = dl.num_nodes();
    let k = dl.num_leaders();
    let mut used = vec![false; n];
    let mut order: Vec<usize> = Vec::new();
    // witness_sets[i] = bitmask of coordinates still valid for order[i].
    let mut witness_sets: Vec<u32> = Vec::new();
    let full: u32 = (1 << k) - 1;
    let mut best = 0;
    dfs(
        dl,
        &mut used,
        &mut order,
        &mut witness_sets,
        full,
        &mut best,
    );
    best
}

fn dfs(
    dl: &DLMatrix,
    used: &mut Vec<bool>,
    order: &mut Vec<usize>,
    witness_sets: &mut Vec<u32>,
    full: u32,
    best: &mut usize,
) {
    *best = (*best).max(order.len());
    for cand in 0..dl.num_nodes() {
        if used[cand] {
            continue;
        }
        // Shrink every placed position's witness set against the
        // candidate; abandon the branch if one empties.
        let row_cand = dl.row(cand);
        let mut shrunk = Vec::with_capacity(witness_sets.len());
        let mut dead = false;
        for (i, &mask) in witness_sets.iter().enumerate() {
            let row_i = dl.row(order[i]);
            let mut next = 0u32;
            for a in 0..dl.num_leaders() {
                if mask & (1 << a) != 0 && row_i[a] < row_cand[a] {
                    next |= 1 << a;
                }
            }
            if next == 0 {
                dead = true;
                break;
            }
            shrunk.push(next);
        }
        if dead {
            continue;
        }
        let saved = witness_sets.clone();
        witness_sets.clear();
        witness_sets.extend(shrunk);
        witness_sets.push(full);
        used[cand] = true;
        order.push(cand);
        dfs(dl, used, order, witness_sets, full, best);
        order.pop();
        used[cand] = false;
        *witness_sets = saved;
    }
}

#[test]
fn exact_search_matches_brute_force_on_small_graphs() {
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n) {
            let mut sets: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
            for a in 0..n {
                for b in (a + 1)..n {
                    sets.push(vec![a, b]);
                }
            }
            for ids in sets {
                let leaders = LeaderSet::new(ids, n).unwrap();
                let dl = dl_matrix(&g, &leaders).unwrap();
                let expect = brute_force_longest(&dl);
                let got = longest_pmi(&dl, PmiMode::Exact).unwrap().len();
                assert_eq!(got, expect, "n={n} leaders={:?}", dl.leaders().as_slice());
            }
        }
    }
}

#[test]
fn exact_search_matches_brute_force_with_three_leaders() {
    for g in enumerate_connected_graphs(5) {
        let n = 5;
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let leaders = LeaderSet::new(vec![a, b, c], n).unwrap();
                    let dl = dl_matrix(&g, &leaders).unwrap();
                    let expect = brute_force_longest(&dl);
                    let got = longest_pmi(&dl, PmiMode::Exact).unwrap().len();
                    assert_eq!(got, expect, "leaders=({a},{b},{c})");
                }
            }
        }
    }
}

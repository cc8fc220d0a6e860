//! Comparison tables and figure data series: optimal clique chains next
//! to the dense leader-minimal family, leader-count comparisons, and the
//! Kirchhoff bound overlays.

use anyhow::{Context, Result};
use serde::Serialize;

use diffnet_core::construct::{construct_mbar, optimal_clique_chain_search};
use diffnet_core::graph::EdgeWeights;
use diffnet_core::leaders::pmi_leader_lower_bound;
use diffnet_core::spectral::{
    kf_lower_bound_degree, kf_lower_bound_subchain, kf_upper_bound_distance, kirchhoff_eigen,
};

/// One row of the robustness comparison table: the optimal clique chain
/// and the dense leader-minimal graph at the same `N = kD + 1` and `D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub d: usize,
    pub k: usize,
    pub spec: Vec<usize>,
    pub kf_chain: f64,
    pub kf_mbar: f64,
}

/// Compute a single `(D, k)` table row.
pub fn table_row(d: usize, k: usize) -> Result<TableRow> {
    let n = k * d + 1;
    let (spec, kf_chain) =
        optimal_clique_chain_search(n, d).with_context(|| format!("search N={n} D={d}"))?;
    let mbar = construct_mbar(k, d)?;
    let unit = EdgeWeights::uniform(&mbar.graph, 1.0)?;
    let kf_mbar = kirchhoff_eigen(&mbar.graph, &unit)?.kf;
    Ok(TableRow {
        d,
        k,
        spec: spec.sizes().to_vec(),
        kf_chain,
        kf_mbar,
    })
}

/// All rows of the comparison table for `d_list x k_list`, restricted to
/// `k <= d` (the default grid is triangular). Rows are emitted in
/// `(d, k)` order regardless of how many worker threads compute them.
pub fn reproduce_table1(
    d_list: &[usize],
    k_list: &[usize],
    threads: usize,
) -> Result<Vec<TableRow>> {
    let mut pairs = Vec::new();
    for &d in d_list {
        for &k in k_list {
            if k <= d {
                pairs.push((d, k));
            }
        }
    }
    parallel_map(pairs, threads, |(d, k)| table_row(d, k))
        .into_iter()
        .collect()
}

/// The default `(D, k)` grid of the comparison table: `D` in `3..=7`, `k` in
/// `2..=D`.
pub fn default_grid() -> (Vec<usize>, Vec<usize>) {
    ((3..=7).collect(), (2..=7).collect())
}

/// Leader counts for strong structural controllability at fixed `D`:
/// what a maximally robust clique chain needs (at least `N - (D+1)`)
/// against the sharp bound `ceil((N-1)/D)` attained by the dense family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeaderComparisonRow {
    pub n: usize,
    pub chain_leaders_lb: usize,
    pub sharp_bound: usize,
}

pub fn figure_leader_comparison(d: usize, n_list: &[usize]) -> Vec<LeaderComparisonRow> {
    n_list
        .iter()
        .map(|&n| LeaderComparisonRow {
            n,
            chain_leaders_lb: n.saturating_sub(d + 1),
            sharp_bound: pmi_leader_lower_bound(n, d),
        })
        .collect()
}

/// Kirchhoff comparison at one grid cell: exact values for the optimal
/// chain and the dense family plus the three analytic bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KfComparisonRow {
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub kf_chain: f64,
    pub kf_mbar: f64,
    pub lb_subchain: f64,
    pub lb_degree: f64,
    pub ub_distance: f64,
}

fn kf_row(k: usize, d: usize) -> Result<KfComparisonRow> {
    let row = table_row(d, k)?;
    Ok(KfComparisonRow {
        d,
        k,
        n: k * d + 1,
        kf_chain: row.kf_chain,
        kf_mbar: row.kf_mbar,
        lb_subchain: kf_lower_bound_subchain(k, d)?,
        lb_degree: kf_lower_bound_degree(k, d)?,
        ub_distance: kf_upper_bound_distance(k, d)?,
    })
}

/// Fixed `k`, sweeping `D`.
pub fn figure_kf_comparison(
    k: usize,
    d_list: &[usize],
    threads: usize,
) -> Result<Vec<KfComparisonRow>> {
    parallel_map(d_list.to_vec(), threads, |d| kf_row(k, d))
        .into_iter()
        .collect()
}

/// Fixed `D`, sweeping `k`.
pub fn figure_kf_comparison_fixed_d(
    d: usize,
    k_list: &[usize],
    threads: usize,
) -> Result<Vec<KfComparisonRow>> {
    parallel_map(k_list.to_vec(), threads, |k| kf_row(k, d))
        .into_iter()
        .collect()
}

/// Round half-to-even at two decimals, matching the table's printed
/// precision.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round_ties_even() / 100.0
}

fn spec_string(spec: &[usize]) -> String {
    spec.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV with the frozen column set `D,k,spec,kf_chain,kf_mbar`; the spec
/// is space-joined in quotes and the indices are printed at two
/// decimals.
pub fn table1_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("D,k,spec,kf_chain,kf_mbar\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},\"{}\",{:.2},{:.2}\n",
            r.d,
            r.k,
            spec_string(&r.spec),
            round2(r.kf_chain),
            round2(r.kf_mbar)
        ));
    }
    out
}

pub fn leader_comparison_csv(d: usize, rows: &[LeaderComparisonRow]) -> String {
    let mut out = String::from("D,N,chain_leaders_lb,sharp_bound\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            d, r.n, r.chain_leaders_lb, r.sharp_bound
        ));
    }
    out
}

pub fn kf_comparison_csv(rows: &[KfComparisonRow]) -> String {
    let mut out = String::from("D,k,N,kf_chain,kf_mbar,lb_subchain,lb_degree,ub_distance\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.d, r.k, r.n, r.kf_chain, r.kf_mbar, r.lb_subchain, r.lb_degree, r.ub_distance
        ));
    }
    out
}

/// Run `f` over `items` on up to `threads` workers, preserving input
/// order in the output.
pub fn parallel_map<T, U, F>(items: Vec<T>, threads: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let jobs: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let n = jobs.len();
    let queue = std::sync::Mutex::new(jobs);
    let mut slots: Vec<Option<U>> = Vec::new();
    slots.resize_with(n, || None);
    let slots_mutex = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop();
                let Some((idx, item)) = job else { break };
                let out = f(item);
                slots_mutex.lock().unwrap()[idx] = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every job ran"))
        .collect()
}

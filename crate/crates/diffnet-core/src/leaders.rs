//! Minimum-leader computations and the leader-count bounds that bracket
//! them: the distance-based lower bound `ceil((N-1)/D)`, the clique-chain
//! range `[N-(D+1), N-D]`, the eccentricity capacity check, and the
//! explicit full-PMI leader set for clique chains.

use alloc::vec::Vec;

use crate::construct::{clique_chain_offsets, CliqueChainSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ssc::{dl_matrix, longest_pmi, maximal_lieep, ssc_rank_oracle, LeaderSet, PmiMode};

/// Per-`k` guard on exhaustive subset enumeration.
pub const MAX_SUBSETS_PER_K: u64 = 1_000_000;

/// Weight interval used by the rank filter inside
/// [`min_leaders_ssc_estimate`].
const ESTIMATE_W_RANGE: (f64, f64) = (0.5, 1.5);

/// How a leader-search result is backed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// A full PMI sequence exists: proof of strong structural
    /// controllability.
    FullPmi,
    /// The randomized rank probe returned full rank on every draw;
    /// an estimate, not a proof.
    RankOracle,
    /// The search stopped on a budget or guard before finding a witness.
    Exhausted,
}

/// Outcome of a minimum-leader search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderSearchResult {
    /// Smallest leader count found; with [`Certificate::Exhausted`],
    /// the smallest count not yet ruled out.
    pub k_found: usize,
    /// The first witness subset in lexicographic order, when one exists.
    pub witness_leaders: Option<LeaderSet>,
    pub certificate: Certificate,
    pub subsets_examined: u64,
}

/// `ceil((N - 1) / D)`: no graph of diameter `D` admits a full PMI
/// sequence with fewer leaders.
pub fn pmi_leader_lower_bound(n: usize, d: usize) -> usize {
    assert!(d >= 1, "diameter must be >= 1");
    if n <= 1 {
        return if n == 0 { 0 } else { 1 };
    }
    (n - 2) / d + 1
}

/// Smallest `k` such that some `k`-subset of nodes yields a full PMI
/// sequence (hence strong structural controllability).
///
/// Searches `k` ascending from the distance lower bound; within each
/// `k`, subsets run in lexicographic order and the first witness wins.
/// `budget` caps the total number of subsets examined; on exhaustion the
/// result carries [`Certificate::Exhausted`] and the best-known `k`.
pub fn min_leaders_full_pmi(g: &Graph, budget: u64) -> Result<LeaderSearchResult> {
    g.ensure_connected()?;
    let n = g.num_nodes();
    let mut examined = 0u64;
    if n == 1 {
        return Ok(LeaderSearchResult {
            k_found: 1,
            witness_leaders: Some(LeaderSet::new(alloc::vec![0], 1)?),
            certificate: Certificate::FullPmi,
            subsets_examined: 0,
        });
    }
    let diam = g.diameter()?;
    let ecc: Vec<usize> = (0..n).map(|v| g.eccentricity(v)).collect::<Result<_>>()?;
    let start_k = pmi_leader_lower_bound(n, diam);
    for k in start_k..=n {
        if crate::construct::binomial(n as u128, k as u128) > MAX_SUBSETS_PER_K as u128 {
            return Ok(LeaderSearchResult {
                k_found: k,
                witness_leaders: None,
                certificate: Certificate::Exhausted,
                subsets_examined: examined,
            });
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            examined += 1;
            if examined > budget {
                return Ok(LeaderSearchResult {
                    k_found: k,
                    witness_leaders: None,
                    certificate: Certificate::Exhausted,
                    subsets_examined: examined,
                });
            }
            // Eccentricity capacity: a full PMI sequence needs
            // 1 + sum of leader eccentricities >= N.
            let capacity: usize = 1 + subset.iter().map(|&l| ecc[l]).sum::<usize>();
            if capacity >= n {
                let leaders = LeaderSet::new(subset.clone(), n)?;
                let dl = dl_matrix(g, &leaders)?;
                if all_rows_distinct(&dl) {
                    let seq = longest_pmi(&dl, PmiMode::Exact)?;
                    if seq.len() == n {
                        return Ok(LeaderSearchResult {
                            k_found: k,
                            witness_leaders: Some(leaders),
                            certificate: Certificate::FullPmi,
                            subsets_examined: examined,
                        });
                    }
                }
            }
            if !advance_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("k = N always yields a full PMI sequence");
}

/// Smallest `k` for which some subset passes both the LIEEP
/// all-singleton necessity filter and the randomized rank probe at full
/// rank. Flagged [`Certificate::RankOracle`] (an estimate) unless the
/// witness also has a full PMI sequence.
pub fn min_leaders_ssc_estimate(
    g: &Graph,
    trials: usize,
    budget: u64,
    seed: u64,
) -> Result<LeaderSearchResult> {
    g.ensure_connected()?;
    let n = g.num_nodes();
    let mut examined = 0u64;
    if n == 1 {
        return Ok(LeaderSearchResult {
            k_found: 1,
            witness_leaders: Some(LeaderSet::new(alloc::vec![0], 1)?),
            certificate: Certificate::FullPmi,
            subsets_examined: 0,
        });
    }
    for k in 1..=n {
        if crate::construct::binomial(n as u128, k as u128) > MAX_SUBSETS_PER_K as u128 {
            return Ok(LeaderSearchResult {
                k_found: k,
                witness_leaders: None,
                certificate: Certificate::Exhausted,
                subsets_examined: examined,
            });
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            examined += 1;
            if examined > budget {
                return Ok(LeaderSearchResult {
                    k_found: k,
                    witness_leaders: None,
                    certificate: Certificate::Exhausted,
                    subsets_examined: examined,
                });
            }
            let leaders = LeaderSet::new(subset.clone(), n)?;
            // Cheap necessity first: a strong structurally controllable
            // pair forces an all-singleton maximal LIEEP.
            if maximal_lieep(g, &leaders).all_singletons() {
                let rank = ssc_rank_oracle(
                    g,
                    &leaders,
                    trials,
                    ESTIMATE_W_RANGE.0,
                    ESTIMATE_W_RANGE.1,
                    seed,
                )?;
                if rank == n {
                    let dl = dl_matrix(g, &leaders)?;
                    let full_pmi = longest_pmi(&dl, PmiMode::Exact)?.len() == n;
                    return Ok(LeaderSearchResult {
                        k_found: k,
                        witness_leaders: Some(leaders),
                        certificate: if full_pmi {
                            Certificate::FullPmi
                        } else {
                            Certificate::RankOracle
                        },
                        subsets_examined: examined,
                    });
                }
            }
            if !advance_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("k = N always passes both filters");
}

/// Leader-count range `[N - (D + 1), N - D]` needed for the strong
/// structural controllability of a clique chain with diameter `D > 2`.
pub fn clique_chain_leader_bounds(spec: &CliqueChainSpec) -> Result<(usize, usize)> {
    let d = spec.diameter();
    if d <= 2 {
        return Err(Error::DiameterTooSmall { d });
    }
    let n = spec.num_nodes();
    Ok((n - (d + 1), n - d))
}

/// Result of the eccentricity capacity check `N <= 1 + sum e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EccentricitySlack {
    pub satisfied: bool,
    /// `1 + sum of leader eccentricities - N`; nonnegative whenever a
    /// full PMI sequence exists for these leaders.
    pub slack: i64,
}

pub fn eccentricity_bound_check(g: &Graph, leaders: &LeaderSet) -> Result<EccentricitySlack> {
    let mut total = 1i64;
    for l in leaders.iter() {
        total += g.eccentricity(l)? as i64;
    }
    let slack = total - g.num_nodes() as i64;
    Ok(EccentricitySlack {
        satisfied: slack >= 0,
        slack,
    })
}

/// The explicit `N - D` leader set that gives a clique chain a full PMI
/// sequence: keep one node from the first clique as a leader, save one
/// canonical node from each later clique (they sit at distinct distances
/// 1..D from it), and promote everything else.
pub fn clique_chain_pmi_leaders(spec: &CliqueChainSpec) -> LeaderSet {
    let n = spec.num_nodes();
    let offsets = clique_chain_offsets(spec);
    let saved: Vec<usize> = offsets[1..spec.sizes().len()].to_vec();
    let leaders: Vec<usize> = (0..n).filter(|u| !saved.contains(u)).collect();
    LeaderSet::new(leaders, n).expect("chain leader set is nonempty and in range")
}

fn all_rows_distinct(dl: &crate::ssc::DLMatrix) -> bool {
    let mut rows: Vec<&[usize]> = dl.rows().iter().map(|r| r.as_slice()).collect();
    rows.sort_unstable();
    rows.windows(2).all(|w| w[0] != w[1])
}

/// Advance `subset` to the next `k`-combination of `0..n` in
/// lexicographic order; `false` when exhausted.
fn advance_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

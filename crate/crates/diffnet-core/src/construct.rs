//! Generators for the extremal families and the searches over them:
//! clique chains, the leader-minimal graph `M` and its densified
//! variant `M̄`, node-trimming to arbitrary sizes, the expected
//! distance-to-leader table with its full PMI certificate, and the
//! exhaustive optimal clique-chain search.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::jacobi_eigenvalues_in_place;
use crate::rng::Rng;
use crate::ssc::{DLMatrix, LeaderSet, PMISequence};

/// Composition `(n_1, ..., n_{D+1})` of a clique chain: `D+1` cliques of
/// the given sizes, consecutive cliques completely joined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueChainSpec {
    sizes: Vec<usize>,
}

impl CliqueChainSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::TooFewCliques);
        }
        if sizes.contains(&0) {
            return Err(Error::EmptyClique);
        }
        Ok(CliqueChainSpec { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_nodes(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn diameter(&self) -> usize {
        self.sizes.len() - 1
    }
}

/// Starting node id of each clique (one extra trailing entry = `N`).
pub(crate) fn clique_chain_offsets(spec: &CliqueChainSpec) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(spec.sizes().len() + 1);
    let mut acc = 0;
    for &s in spec.sizes() {
        offsets.push(acc);
        acc += s;
    }
    offsets.push(acc);
    offsets
}

/// Build the clique chain for `spec`: nodes are numbered consecutively
/// clique by clique; vertices within a clique are pairwise adjacent and
/// vertices of consecutive cliques are completely joined.
pub fn clique_chain(spec: &CliqueChainSpec) -> Graph {
    let sizes = spec.sizes();
    let n = spec.num_nodes();
    let offsets = clique_chain_offsets(spec);
    let mut g = Graph::empty(n);
    for c in 0..sizes.len() {
        let (lo, hi) = (offsets[c], offsets[c + 1]);
        for u in lo..hi {
            for v in (u + 1)..hi {
                g.add_edge(u, v).expect("in-range");
            }
        }
        if c + 1 < sizes.len() {
            let (nlo, nhi) = (offsets[c + 1], offsets[c + 2]);
            for u in lo..hi {
                for v in nlo..nhi {
                    g.add_edge(u, v).expect("in-range");
                }
            }
        }
    }
    g
}

/// Structural role of a node in the `M` / `M̄` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    /// Leader `i` (1-based).
    Leader(usize),
    /// The common neighbor joining the leader clique to the branches.
    Hub,
    /// Node `j` steps down branch `i` (both 1-based, `j <= D-1`).
    Branch { branch: usize, depth: usize },
}

impl NodeRole {
    /// Stable textual form used by file formats.
    pub fn label(&self) -> String {
        match self {
            NodeRole::Leader(i) => alloc::format!("l{i}"),
            NodeRole::Hub => String::from("x"),
            NodeRole::Branch { branch, depth } => alloc::format!("u{branch}_{depth}"),
        }
    }
}

/// Role tags for every node of an `M`-family graph, plus the `(k, D)`
/// parameters the graph was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGraphLabels {
    k: usize,
    d: usize,
    roles: Vec<NodeRole>,
}

impl MGraphLabels {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn role(&self, node: usize) -> NodeRole {
        self.roles[node]
    }

    pub fn roles(&self) -> &[NodeRole] {
        &self.roles
    }
}

/// A generated graph together with its leader set and node roles.
#[derive(Debug, Clone, PartialEq)]
pub struct MConstruction {
    pub graph: Graph,
    pub leaders: LeaderSet,
    pub labels: MGraphLabels,
}

/// Canonical id of branch node `(i, j)` (1-based): leaders occupy
/// `0..k`, the hub is `k`, and branch nodes follow layer by layer.
fn branch_id(k: usize, i: usize, j: usize) -> usize {
    k + 1 + (j - 1) * k + (i - 1)
}

/// Build the sparse leader-minimal graph with `k` leaders and leader
/// eccentricity `D`; it has `N = kD + 1` nodes and a full PMI sequence.
pub fn construct_m(k: usize, d: usize) -> Result<MConstruction> {
    m_family(k, d, false)
}

/// Build the densified variant: the maximal edge set that preserves all
/// distance-to-leader vectors of [`construct_m`]. Its diameter is
/// exactly `D`.
pub fn construct_mbar(k: usize, d: usize) -> Result<MConstruction> {
    m_family(k, d, true)
}

fn m_family(k: usize, d: usize, densify: bool) -> Result<MConstruction> {
    if k < 1 {
        return Err(Error::InvalidParameter("construction needs k >= 1"));
    }
    if d < 2 {
        return Err(Error::InvalidParameter("construction needs D >= 2"));
    }
    let n = k * d + 1;
    let hub = k;
    let mut g = Graph::empty(n);
    // Leaders form a clique.
    for a in 0..k {
        for b in (a + 1)..k {
            g.add_edge(a, b)?;
        }
    }
    // The hub joins every leader and the first node of every branch.
    for a in 0..k {
        g.add_edge(hub, a)?;
        g.add_edge(hub, branch_id(k, a + 1, 1))?;
    }
    // Branch i's first node is adjacent to leaders i..k (for i >= 2).
    for i in 2..=k {
        for p in i..=k {
            g.add_edge(branch_id(k, i, 1), p - 1)?;
        }
    }
    // Each branch is a path.
    for i in 1..=k {
        for j in 1..d.saturating_sub(1) {
            g.add_edge(branch_id(k, i, j), branch_id(k, i, j + 1))?;
        }
    }
    if densify {
        // Each layer becomes a clique.
        for j in 1..=(d - 1) {
            for a in 1..=k {
                for b in (a + 1)..=k {
                    g.add_edge(branch_id(k, a, j), branch_id(k, b, j))?;
                }
            }
        }
        for j in 2..=(d - 1) {
            // Every layer-j node sees branch 1's previous node.
            for i in 1..=k {
                g.add_edge(branch_id(k, i, j), branch_id(k, 1, j - 1))?;
            }
            // And node (i, j) sees (p, j-1) for p > i.
            for i in 2..=k {
                for p in (i + 1)..=k {
                    g.add_edge(branch_id(k, i, j), branch_id(k, p, j - 1))?;
                }
            }
        }
    }
    let mut roles = Vec::with_capacity(n);
    for i in 1..=k {
        roles.push(NodeRole::Leader(i));
    }
    roles.push(NodeRole::Hub);
    for j in 1..=(d - 1) {
        for i in 1..=k {
            roles.push(NodeRole::Branch {
                branch: i,
                depth: j,
            });
        }
    }
    debug_assert_eq!(roles.len(), n);
    Ok(MConstruction {
        graph: g,
        leaders: LeaderSet::new((0..k).collect(), n)?,
        labels: MGraphLabels { k, d, roles },
    })
}

/// Delete nodes from an untrimmed `M̄` until `n_a` remain, preserving
/// every surviving distance-to-leader vector and the diameter `D`.
///
/// Deletion proceeds layer by layer from the deepest: first branch 1,
/// then branches `k, k-1, ..., 3`; branch 2 is never touched, which is
/// what keeps the diameter at `D`. The target must keep
/// `k = ceil((n_a - 1) / D)` and satisfy `n_a > k(D-1) + 1`.
pub fn trim_to_n(mbar: &MConstruction, n_a: usize) -> Result<MConstruction> {
    let k = mbar.labels.k;
    let d = mbar.labels.d;
    let n = k * d + 1;
    if mbar.graph.num_nodes() != n {
        return Err(Error::InvalidParameter(
            "trim expects an untrimmed construction",
        ));
    }
    let needed_k = if n_a >= 2 { (n_a - 2) / d + 1 } else { 0 };
    if n_a > n || n_a <= k * (d - 1) + 1 || needed_k != k {
        return Err(Error::InfeasibleTarget { requested: n_a });
    }
    let mut delete_order = Vec::new();
    for j in (1..=(d - 1)).rev() {
        delete_order.push(branch_id(k, 1, j));
        for i in (3..=k).rev() {
            delete_order.push(branch_id(k, i, j));
        }
    }
    let to_delete = n - n_a;
    let mut deleted = vec![false; n];
    for &node in delete_order.iter().take(to_delete) {
        deleted[node] = true;
    }
    let mut remap = vec![usize::MAX; n];
    let mut roles = Vec::with_capacity(n_a);
    let mut next = 0;
    for node in 0..n {
        if !deleted[node] {
            remap[node] = next;
            roles.push(mbar.labels.roles[node]);
            next += 1;
        }
    }
    let mut g = Graph::empty(n_a);
    for (u, v) in mbar.graph.edges() {
        if !deleted[u] && !deleted[v] {
            g.add_edge(remap[u], remap[v])?;
        }
    }
    Ok(MConstruction {
        graph: g,
        leaders: LeaderSet::new((0..k).collect(), n_a)?,
        labels: MGraphLabels { k, d, roles },
    })
}

/// Node ids of the canonical full-PMI ordering: leaders, hub, then each
/// layer as branches `2, 3, ..., k` followed by branch 1.
fn pmi_node_order(k: usize, d: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(k * d + 1);
    order.extend(0..k);
    order.push(k);
    for j in 1..=(d - 1) {
        for i in 2..=k {
            order.push(branch_id(k, i, j));
        }
        order.push(branch_id(k, 1, j));
    }
    order
}

/// The distance-to-leader vectors of the `M` family, emitted directly
/// from the closed form, with rows in the canonical full-PMI order.
///
/// Row blocks: an identity-like leader block (0 on the diagonal, 1
/// elsewhere), the all-ones hub row, then for each depth `j` the rows
/// `(j+1, ..., j+1, j, ..., j)` with the step after position `i-1`,
/// closing with the all-`D` row.
pub fn expected_dl_vectors(k: usize, d: usize) -> Result<DLMatrix> {
    if k < 1 {
        return Err(Error::InvalidParameter("expected vectors need k >= 1"));
    }
    if d < 2 {
        return Err(Error::InvalidParameter("expected vectors need D >= 2"));
    }
    let n = k * d + 1;
    let mut rows = Vec::with_capacity(n);
    for i in 0..k {
        let mut row = vec![1usize; k];
        row[i] = 0;
        rows.push(row);
    }
    rows.push(vec![1usize; k]);
    for j in 1..=(d - 1) {
        for i in 2..=k {
            let mut row = vec![j; k];
            for entry in row.iter_mut().take(i - 1) {
                *entry = j + 1;
            }
            rows.push(row);
        }
        rows.push(vec![j + 1; k]);
    }
    DLMatrix::from_rows(rows, LeaderSet::new((0..k).collect(), n)?)
}

/// The canonical full PMI sequence of the `M`/`M̄` family over the
/// canonical node ids, with the block-structure witnesses: leader `i`
/// and branch-`i` nodes witness coordinate `i-1`; the hub witnesses
/// coordinate 0.
pub fn full_pmi_certificate(k: usize, d: usize) -> Result<PMISequence> {
    if k < 1 || d < 2 {
        return Err(Error::InvalidParameter("certificate needs k >= 1, D >= 2"));
    }
    let order = pmi_node_order(k, d);
    let mut witness = Vec::with_capacity(order.len());
    witness.extend(0..k);
    witness.push(0);
    for _j in 1..=(d - 1) {
        witness.extend(1..k);
        witness.push(0);
    }
    Ok(PMISequence { order, witness })
}

/// Exact unit-weight Kirchhoff index of a clique chain, through the
/// clique-quotient spectrum.
///
/// The partition into cliques is equitable: vectors supported inside
/// clique `i` and summing to zero are Laplacian eigenvectors with value
/// `deg_i + 1` (multiplicity `n_i - 1`), and the remaining `D+1`
/// eigenvalues are those of the symmetrized tridiagonal quotient. This
/// is the same spectrum the dense eigen route would produce, at
/// `O(D^3)` instead of `O(N^3)` per chain, which is what makes the
/// exhaustive composition search cheap.
pub fn clique_chain_kirchhoff(spec: &CliqueChainSpec) -> f64 {
    let mut quotient = vec![0.0; spec.sizes().len() * spec.sizes().len()];
    let mut eig = Vec::new();
    chain_kf_quotient(spec.sizes(), &mut quotient, &mut eig)
}

fn chain_kf_quotient(sizes: &[usize], quotient: &mut Vec<f64>, eig: &mut Vec<f64>) -> f64 {
    let m = sizes.len();
    let n: usize = sizes.iter().sum();
    let mut recip_sum = 0.0;
    for i in 0..m {
        let left = if i > 0 { sizes[i - 1] } else { 0 };
        let right = if i + 1 < m { sizes[i + 1] } else { 0 };
        let deg = left + sizes[i] - 1 + right;
        recip_sum += (sizes[i] - 1) as f64 / (deg + 1) as f64;
    }
    quotient.clear();
    quotient.resize(m * m, 0.0);
    for i in 0..m {
        let left = if i > 0 { sizes[i - 1] } else { 0 };
        let right = if i + 1 < m { sizes[i + 1] } else { 0 };
        quotient[i * m + i] = (left + right) as f64;
        if i + 1 < m {
            let off = -libm::sqrt((sizes[i] * sizes[i + 1]) as f64);
            quotient[i * m + i + 1] = off;
            quotient[(i + 1) * m + i] = off;
        }
    }
    jacobi_eigenvalues_in_place(quotient, m, eig);
    // The smallest quotient eigenvalue is the structural zero.
    for &lam in eig.iter().skip(1) {
        recip_sum += 1.0 / lam;
    }
    n as f64 * recip_sum
}

/// Number of candidate compositions `(1, n_2, ..., n_D, 1)` summing to
/// `n`: `C(n-3, D-2)`.
pub fn compositions_count(n: usize, d: usize) -> u128 {
    if d < 2 || n < d + 1 {
        return 0;
    }
    binomial(n as u128 - 3, d as u128 - 2)
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Guard on the exhaustive composition search.
pub const MAX_SEARCH_CANDIDATES: u128 = 5_000_000;

/// Exhaustively search the clique chains `(1, n_2, ..., n_D, 1)` with
/// `N` nodes for the minimum unit-weight Kirchhoff index.
///
/// Compositions are enumerated in lexicographic order of
/// `(n_2, ..., n_D)` and the first minimum is kept, so ties (in
/// particular mirror-image chains, which are isomorphic) resolve to the
/// lexicographically smallest composition. A relative tolerance guards
/// the comparison so floating-point jitter between isomorphic chains
/// cannot override that rule. The reported index is then recomputed on
/// the winning chain through the dense eigen route.
pub fn optimal_clique_chain_search(n: usize, d: usize) -> Result<(CliqueChainSpec, f64)> {
    if d < 2 || n < d + 1 {
        return Err(Error::InfeasibleNDCombination { n, d });
    }
    let candidates = compositions_count(n, d);
    if candidates > MAX_SEARCH_CANDIDATES {
        return Err(Error::SearchSpaceTooLarge { candidates });
    }
    let inner = d - 1;
    let total = n - 2;
    let mut sizes = vec![1usize; d + 1];

    let mut quotient = Vec::new();
    let mut eig = Vec::new();
    let mut best: Option<(Vec<usize>, f64)> = None;

    // Odometer over compositions of `total` into `inner` positive parts,
    // lexicographic in (n_2, ..., n_D).
    let mut parts = vec![1usize; inner];
    parts[inner - 1] = total - (inner - 1);
    loop {
        sizes[1..=inner].copy_from_slice(&parts);
        let kf = chain_kf_quotient(&sizes, &mut quotient, &mut eig);
        let improves = match &best {
            None => true,
            Some((_, best_kf)) => kf < best_kf * (1.0 - 1e-9),
        };
        if improves {
            best = Some((sizes.clone(), kf));
        }
        // Advance: find the rightmost position (before the last) that can
        // take one unit from the tail.
        let mut i = inner - 1;
        loop {
            if i == 0 {
                let (sizes, _) = best.expect("at least one composition");
                let spec = CliqueChainSpec::new(sizes)?;
                let g = clique_chain(&spec);
                let unit = crate::graph::EdgeWeights::uniform(&g, 1.0)?;
                let kf = crate::spectral::kirchhoff_eigen(&g, &unit)?.kf;
                return Ok((spec, kf));
            }
            i -= 1;
            let tail_sum: usize = parts[i + 1..].iter().sum();
            if tail_sum > inner - 1 - i {
                parts[i] += 1;
                let remaining = total - parts[..=i].iter().sum::<usize>();
                for p in parts[i + 1..].iter_mut() {
                    *p = 1;
                }
                let last = parts.len() - 1;
                parts[last] = remaining - (last - i - 1);
                break;
            }
        }
    }
}

/// Random connected graph: a random spanning tree plus each extra pair
/// independently with probability `extra_edge_prob`.
pub fn random_connected(n: usize, extra_edge_prob: f64, rng: &mut Rng) -> Graph {
    assert!(n >= 1);
    let mut g = Graph::empty(n);
    for v in 1..n {
        let u = (rng.next_u64() % v as u64) as usize;
        g.add_edge(u, v).expect("in-range");
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) && rng.next_f64() < extra_edge_prob {
                g.add_edge(u, v).expect("in-range");
            }
        }
    }
    g
}

/// All connected graphs on `n` nodes, one representative per
/// isomorphism class.
///
/// Built level by level: every connected graph on `m` nodes arises from
/// a connected graph on `m-1` nodes by attaching one node with a
/// nonempty neighborhood (every connected graph has a non-cut vertex),
/// and duplicates are removed by a canonical form (minimum edge
/// bitstring over the permutations respecting a 1-WL-stable coloring).
pub fn enumerate_connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=9).contains(&n),
        "enumeration is exponential; capped at 9 nodes"
    );
    let mut level: Vec<Vec<u16>> = vec![vec![0u16]];
    for m in 2..=n {
        let mut seen: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for parent in &level {
            for subset in 1u16..(1 << (m - 1)) {
                let mut adj = parent.clone();
                for (v, mask) in adj.iter_mut().enumerate() {
                    if subset & (1 << v) != 0 {
                        *mask |= 1 << (m - 1);
                    }
                }
                adj.push(subset);
                let key = canonical_key(&adj);
                seen.entry(key).or_insert(adj);
            }
        }
        level = seen.into_values().collect();
    }
    level
        .into_iter()
        .map(|adj| {
            let mut edges = Vec::new();
            for (u, mask) in adj.iter().enumerate() {
                for v in (u + 1)..adj.len() {
                    if mask & (1 << v) != 0 {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(adj.len(), &edges).expect("valid edges")
        })
        .collect()
}

/// Canonical form of a small graph given as adjacency bitmasks: the
/// minimum packed upper-triangle bitstring over all vertex orderings
/// compatible with the stable 1-WL coloring.
fn canonical_key(adj: &[u16]) -> u64 {
    let n = adj.len();
    // 1-WL refinement starting from degrees. New color ids are the rank
    // of each signature in sorted order, which keeps the coloring
    // invariant under isomorphism.
    let mut colors: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for u in 0..n {
            let mut nbr: Vec<usize> = (0..n)
                .filter(|&v| adj[u] & (1 << v) != 0)
                .map(|v| colors[v])
                .collect();
            nbr.sort_unstable();
            sigs.push((colors[u], nbr));
        }
        let mut sorted = sigs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let old_count = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colors = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("signature present"))
            .collect();
        if sorted.len() == old_count {
            break;
        }
    }
    // Group nodes by color; canonical positions are blocks in color order.
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (u, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(u);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_classes(adj, &classes, 0, &mut assignment, &mut best);
    best
}

fn permute_classes(
    adj: &[u16],
    classes: &[Vec<usize>],
    idx: usize,
    assignment: &mut Vec<usize>,
    best: &mut u64,
) {
    if idx == classes.len() {
        let n = adj.len();
        let mut key: u64 = 0;
        let mut bit = 0;
        for p in 0..n {
            for q in (p + 1)..n {
                if adj[assignment[p]] & (1 << assignment[q]) != 0 {
                    key |= 1 << bit;
                }
                bit += 1;
            }
        }
        if key < *best {
            *best = key;
        }
        return;
    }
    let class = &classes[idx];
    let mut members = class.clone();
    permute_in_place(&mut members, 0, &mut |perm| {
        let len_before = assignment.len();
        assignment.extend_from_slice(perm);
        permute_classes(adj, classes, idx + 1, assignment, best);
        assignment.truncate(len_before);
    });
}

fn permute_in_place(items: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute_in_place(items, start + 1, f);
        items.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, EdgeWeights};
    use crate::spectral::kirchhoff_eigen;
    use crate::ssc::{dl_matrix, longest_pmi, validate_pmi, PmiMode};

    fn spec(sizes: &[usize]) -> CliqueChainSpec {
        CliqueChainSpec::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            CliqueChainSpec::new(vec![3]).unwrap_err(),
            Error::TooFewCliques
        );
        assert_eq!(
            CliqueChainSpec::new(vec![1, 0, 1]).unwrap_err(),
            Error::EmptyClique
        );
        let s = spec(&[1, 2, 2, 1]);
        assert_eq!(s.num_nodes(), 6);
        assert_eq!(s.diameter(), 3);
    }

    #[test]
    fn six_node_chain_matches_explicit_edge_list() {
        // G_3(1,2,2,1): node 0 | nodes 1,2 | nodes 3,4 | node 5.
        let g = clique_chain(&spec(&[1, 2, 2, 1]));
        let explicit = Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert_eq!(g, explicit);
        assert_eq!(g.diameter().unwrap(), 3);
    }

    #[test]
    fn unit_cliques_give_a_path() {
        let g = clique_chain(&spec(&[1, 1, 1, 1]));
        assert_eq!(g, path_graph(4));
    }

    #[test]
    fn chain_diameter_is_d() {
        for sizes in [&[2usize, 3, 1][..], &[1, 4, 4, 1], &[3, 1, 2, 1, 5]] {
            let s = spec(sizes);
            assert_eq!(clique_chain(&s).diameter().unwrap(), s.diameter());
        }
    }

    #[test]
    fn m_graph_has_kd_plus_1_nodes() {
        let m = construct_m(4, 5).unwrap();
        assert_eq!(m.graph.num_nodes(), 21);
        assert_eq!(m.leaders.len(), 4);
        assert_eq!(m.labels.role(4), NodeRole::Hub);
        assert!(m.graph.is_connected());
    }

    #[test]
    fn m_with_one_leader_is_a_path() {
        for d in 2..6 {
            let m = construct_m(1, d).unwrap();
            assert_eq!(m.graph, path_graph(d + 1));
        }
    }

    #[test]
    fn mbar_4_5_edge_count() {
        let mbar = construct_mbar(4, 5).unwrap();
        assert_eq!(mbar.graph.num_edges(), 74);
    }

    #[test]
    fn mbar_preserves_dl_vectors_of_m() {
        for (k, d) in [(2, 3), (3, 4), (4, 5), (5, 2)] {
            let m = construct_m(k, d).unwrap();
            let mbar = construct_mbar(k, d).unwrap();
            let dm = dl_matrix(&m.graph, &m.leaders).unwrap();
            let dbar = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
            assert_eq!(dm, dbar, "k={k} d={d}");
        }
    }

    #[test]
    fn dl_vectors_match_expected_table() {
        for (k, d) in [(2, 3), (4, 5), (1, 4)] {
            let m = construct_m(k, d).unwrap();
            let dl = dl_matrix(&m.graph, &m.leaders).unwrap();
            let expected = expected_dl_vectors(k, d).unwrap();
            let order = pmi_node_order(k, d);
            for (pos, &node) in order.iter().enumerate() {
                assert_eq!(dl.row(node), expected.row(pos), "k={k} d={d} pos={pos}");
            }
        }
    }

    #[test]
    fn expected_vectors_single_leader() {
        let dl = expected_dl_vectors(1, 4).unwrap();
        let rows: Vec<usize> = (0..5).map(|i| dl.row(i)[0]).collect();
        assert_eq!(rows, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn leader_row_of_expected_vectors() {
        // First coordinate down the sequence for (4, 5):
        // 0, then 1 x4, then per layer j: (j+1) x4 ... ending at 5 x4.
        let dl = expected_dl_vectors(4, 5).unwrap();
        let first: Vec<usize> = (0..21).map(|i| dl.row(i)[0]).collect();
        assert_eq!(
            first,
            vec![0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5]
        );
    }

    #[test]
    fn certificate_validates_on_mbar() {
        let mbar = construct_mbar(4, 5).unwrap();
        let dl = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
        let cert = full_pmi_certificate(4, 5).unwrap();
        assert_eq!(cert.len(), 21);
        assert_eq!(validate_pmi(&cert, &dl), Ok(true));
    }

    #[test]
    fn mbar_diameter_is_d() {
        for (k, d) in [(2, 3), (3, 4), (4, 5), (2, 6)] {
            let mbar = construct_mbar(k, d).unwrap();
            assert_eq!(mbar.graph.diameter().unwrap(), d, "k={k} d={d}");
        }
    }

    #[test]
    fn mbar_is_subgraph_of_enclosing_chain() {
        // Canonical identification: leader clique plus hub maps onto the
        // first clique (size k+1); layer j maps onto clique j+1.
        for (k, d) in [(3, 5), (2, 3), (4, 4)] {
            let mbar = construct_mbar(k, d).unwrap();
            let mut sizes = vec![k + 1];
            sizes.extend(core::iter::repeat_n(k, d - 1));
            let chain_spec = spec(&sizes);
            let chain = clique_chain(&chain_spec);
            let map = |node: usize| -> usize {
                match mbar.labels.role(node) {
                    NodeRole::Leader(i) => i - 1,
                    NodeRole::Hub => k,
                    NodeRole::Branch { branch, depth } => (k + 1) + (depth - 1) * k + (branch - 1),
                }
            };
            for (u, v) in mbar.graph.edges() {
                assert!(
                    chain.has_edge(map(u), map(v)),
                    "edge ({u},{v}) of mbar({k},{d}) missing in chain"
                );
            }
        }
    }

    #[test]
    fn trim_identity() {
        let mbar = construct_mbar(3, 4).unwrap();
        let trimmed = trim_to_n(&mbar, 13).unwrap();
        assert_eq!(trimmed.graph, mbar.graph);
    }

    #[test]
    fn trim_deletes_deepest_layer_first() {
        let mbar = construct_mbar(4, 5).unwrap();
        let trimmed = trim_to_n(&mbar, 20).unwrap();
        assert_eq!(trimmed.graph.num_nodes(), 20);
        // u_{1,4} is gone; every other role survives.
        assert!(!trimmed.labels.roles().contains(&NodeRole::Branch {
            branch: 1,
            depth: 4
        }));
        assert_eq!(trimmed.graph.diameter().unwrap(), 5);
        let dl = dl_matrix(&trimmed.graph, &trimmed.leaders).unwrap();
        let seq = longest_pmi(&dl, PmiMode::Exact).unwrap();
        assert_eq!(seq.len(), 20);
    }

    #[test]
    fn trim_two_nodes() {
        let mbar = construct_mbar(3, 4).unwrap();
        let trimmed = trim_to_n(&mbar, 11).unwrap();
        let roles = trimmed.labels.roles();
        assert!(!roles.contains(&NodeRole::Branch {
            branch: 1,
            depth: 3
        }));
        assert!(!roles.contains(&NodeRole::Branch {
            branch: 3,
            depth: 3
        }));
        assert!(roles.contains(&NodeRole::Branch {
            branch: 2,
            depth: 3
        }));
        let dl = dl_matrix(&trimmed.graph, &trimmed.leaders).unwrap();
        let seq = longest_pmi(&dl, PmiMode::Exact).unwrap();
        assert_eq!(seq.len(), 11);
    }

    #[test]
    fn trim_preserves_surviving_dl_vectors() {
        let mbar = construct_mbar(4, 5).unwrap();
        let full_dl = dl_matrix(&mbar.graph, &mbar.leaders).unwrap();
        let trimmed = trim_to_n(&mbar, 19).unwrap();
        let dl = dl_matrix(&trimmed.graph, &trimmed.leaders).unwrap();
        // Match survivors by role.
        for new_id in 0..19 {
            let role = trimmed.labels.role(new_id);
            let old_id = (0..21).find(|&i| mbar.labels.role(i) == role).unwrap();
            assert_eq!(dl.row(new_id), full_dl.row(old_id), "role {role:?}");
        }
    }

    #[test]
    fn trim_rejects_infeasible_targets() {
        let mbar = construct_mbar(3, 5).unwrap();
        // 16 -> 13 would change k = ceil((13-1)/5) = 3 ... but violates
        // n_a > k(D-1)+1 = 13.
        assert_eq!(
            trim_to_n(&mbar, 13).unwrap_err(),
            Error::InfeasibleTarget { requested: 13 }
        );
        assert_eq!(
            trim_to_n(&mbar, 17).unwrap_err(),
            Error::InfeasibleTarget { requested: 17 }
        );
        let ok = trim_to_n(&mbar, 14).unwrap();
        assert_eq!(ok.graph.num_nodes(), 14);
    }

    #[test]
    fn quotient_kf_matches_eigen_route() {
        for sizes in [
            &[1usize, 2, 2, 1][..],
            &[1, 2, 3, 1],
            &[4, 3, 3, 3, 3],
            &[2, 5],
            &[1, 1, 1, 1, 1],
        ] {
            let s = spec(sizes);
            let fast = clique_chain_kirchhoff(&s);
            let g = clique_chain(&s);
            let w = EdgeWeights::uniform(&g, 1.0).unwrap();
            let slow = kirchhoff_eigen(&g, &w).unwrap().kf;
            assert!(
                (fast - slow).abs() <= 1e-8 * slow.abs(),
                "{sizes:?}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn closed_form_matches_eigen_route_on_family() {
        for (k, d) in [(2usize, 3usize), (3, 5), (1, 4)] {
            let mut sizes = vec![k + 1];
            sizes.extend(core::iter::repeat_n(k, d - 1));
            let s = spec(&sizes);
            let g = clique_chain(&s);
            let w = EdgeWeights::uniform(&g, 1.0).unwrap();
            let eigen = kirchhoff_eigen(&g, &w).unwrap().kf;
            let closed = crate::spectral::clique_chain_kf_closed_form(k, d).unwrap();
            assert!(
                (closed - eigen).abs() <= 1e-6 * eigen.abs(),
                "k={k} d={d}: {closed} vs {eigen}"
            );
        }
    }

    #[test]
    fn composition_count_examples() {
        assert_eq!(compositions_count(7, 3), 4);
        assert_eq!(compositions_count(50, 7), 1_533_939);
        assert_eq!(compositions_count(5, 4), 1);
        assert_eq!(compositions_count(4, 4), 0);
    }

    #[test]
    fn search_seven_nodes_diameter_three() {
        let (best, kf) = optimal_clique_chain_search(7, 3).unwrap();
        assert_eq!(best.sizes(), &[1, 2, 3, 1]);
        assert!((kf - 10.5).abs() < 0.01, "kf = {kf}");
    }

    #[test]
    fn search_sixteen_nodes_diameter_five() {
        let (best, kf) = optimal_clique_chain_search(16, 5).unwrap();
        assert_eq!(best.sizes(), &[1, 3, 4, 4, 3, 1]);
        assert!((kf - 38.73).abs() < 0.01, "kf = {kf}");
    }

    #[test]
    fn search_degenerate_path() {
        let (best, kf) = optimal_clique_chain_search(6, 5).unwrap();
        assert_eq!(best.sizes(), &[1, 1, 1, 1, 1, 1]);
        // Path resistance sum (N^3 - N) / 6.
        assert!((kf - 35.0).abs() < 1e-9);
    }

    #[test]
    fn search_rejects_bad_input() {
        assert_eq!(
            optimal_clique_chain_search(3, 3).unwrap_err(),
            Error::InfeasibleNDCombination { n: 3, d: 3 }
        );
        assert!(matches!(
            optimal_clique_chain_search(200, 30).unwrap_err(),
            Error::SearchSpaceTooLarge { .. }
        ));
    }

    #[test]
    fn random_connected_is_connected_and_deterministic() {
        let mut rng_a = Rng::seed_from_u64(5);
        let mut rng_b = Rng::seed_from_u64(5);
        for n in [1usize, 2, 8, 20] {
            let a = random_connected(n, 0.3, &mut rng_a);
            let b = random_connected(n, 0.3, &mut rng_b);
            assert!(a.is_connected());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn enumeration_counts_match_oeis() {
        // Connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112.
        let expect = [1usize, 1, 2, 6, 21, 112];
        for (n, &count) in (1..=6).zip(expect.iter()) {
            assert_eq!(enumerate_connected_graphs(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn enumeration_n7_count() {
        assert_eq!(enumerate_connected_graphs(7).len(), 853);
    }
}

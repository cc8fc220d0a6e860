//! Strong structural controllability machinery: distance-to-leader
//! vectors, PMI sequences (certified lower bound on the dimension of the
//! strong structurally controllable subspace), maximal leader-invariant
//! external equitable partitions (upper bound), and a randomized
//! controllability-matrix rank probe.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::singular_values_of_columns;
use crate::rng::Rng;

/// Default node-expansion budget for the exact PMI search.
pub const DEFAULT_PMI_BUDGET: u64 = 10_000_000;

/// Ordered set of distinct leader (input) nodes. The order is
/// semantically significant: it fixes the component order of every
/// distance-to-leader vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderSet {
    leaders: Vec<usize>,
}

impl LeaderSet {
    pub fn new(leaders: Vec<usize>, num_nodes: usize) -> Result<Self> {
        if leaders.is_empty() {
            return Err(Error::BadLeaderSet);
        }
        for (i, &l) in leaders.iter().enumerate() {
            if l >= num_nodes {
                return Err(Error::OutOfRangeNode { node: l, num_nodes });
            }
            if leaders[..i].contains(&l) {
                return Err(Error::BadLeaderSet);
            }
        }
        Ok(LeaderSet { leaders })
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.leaders
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.leaders.iter().copied()
    }

    pub fn get(&self, j: usize) -> usize {
        self.leaders[j]
    }

    pub fn contains(&self, node: usize) -> bool {
        self.leaders.contains(&node)
    }
}

/// Distance-to-leader matrix: row `i` is the vector of hop distances
/// from node `i` to each leader, in leader order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DLMatrix {
    rows: Vec<Vec<usize>>,
    leaders: LeaderSet,
}

impl DLMatrix {
    /// Wrap precomputed rows, checking the structural invariant that
    /// leader `j`'s row is zero at column `j`.
    pub fn from_rows(rows: Vec<Vec<usize>>, leaders: LeaderSet) -> Result<Self> {
        let k = leaders.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::IndexMismatch);
        }
        for (j, l) in leaders.iter().enumerate() {
            if l >= rows.len() || rows[l][j] != 0 {
                return Err(Error::IndexMismatch);
            }
        }
        Ok(DLMatrix { rows, leaders })
    }

    pub fn num_nodes(&self) -> usize {
        self.rows.len()
    }

    pub fn num_leaders(&self) -> usize {
        self.leaders.len()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn leaders(&self) -> &LeaderSet {
        &self.leaders
    }
}

/// Distance-to-leader matrix of `g` for the given leaders.
pub fn dl_matrix(g: &Graph, leaders: &LeaderSet) -> Result<DLMatrix> {
    let n = g.num_nodes();
    let k = leaders.len();
    let mut rows = vec![vec![0usize; k]; n];
    for (j, l) in leaders.iter().enumerate() {
        let dist = g.bfs_distances(l)?;
        for (i, d) in dist.into_iter().enumerate() {
            rows[i][j] = d;
        }
    }
    DLMatrix::from_rows(rows, leaders.clone())
}

/// A (prefix of a) PMI ordering: node ids plus, for each position, the
/// witness coordinate whose value every later vector must exceed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMISequence {
    pub order: Vec<usize>,
    pub witness: Vec<usize>,
}

impl PMISequence {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Check a PMI sequence against a DL matrix: position `i` with witness
/// `a = witness[i]` requires `S[order[i]][a] < S[order[j]][a]` for every
/// later position `j`.
///
/// Structural problems (lengths, ranges, duplicate nodes) are errors;
/// a violated inequality yields `Ok(false)`.
pub fn validate_pmi(seq: &PMISequence, dl: &DLMatrix) -> Result<bool> {
    let n = dl.num_nodes();
    let k = dl.num_leaders();
    if seq.order.len() != seq.witness.len() || seq.order.len() > n {
        return Err(Error::IndexMismatch);
    }
    let mut seen = vec![false; n];
    for (&node, &w) in seq.order.iter().zip(seq.witness.iter()) {
        if node >= n || w >= k {
            return Err(Error::IndexMismatch);
        }
        if seen[node] {
            return Err(Error::IndexMismatch);
        }
        seen[node] = true;
    }
    for i in 0..seq.order.len() {
        let a = seq.witness[i];
        let pivot = dl.row(seq.order[i])[a];
        for j in (i + 1)..seq.order.len() {
            if dl.row(seq.order[j])[a] <= pivot {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Search mode for [`longest_pmi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmiMode {
    /// Depth-first search with memoization; returns a maximum-length
    /// sequence.
    Exact,
    /// Cheap sound heuristic; returns a valid, possibly shorter sequence.
    Greedy,
}

/// Longest PMI sequence with the default exact-search budget.
pub fn longest_pmi(dl: &DLMatrix, mode: PmiMode) -> Result<PMISequence> {
    longest_pmi_budgeted(dl, mode, DEFAULT_PMI_BUDGET)
}

/// Longest PMI sequence with an explicit node-expansion budget for the
/// exact mode.
pub fn longest_pmi_budgeted(dl: &DLMatrix, mode: PmiMode, budget: u64) -> Result<PMISequence> {
    match mode {
        PmiMode::Exact => exact_pmi(dl, budget),
        PmiMode::Greedy => Ok(greedy_pmi(dl)),
    }
}

/// State of the exact search: per leader, the largest value already
/// committed as a witness (-1 when the leader is unused). A node is
/// placeable iff it strictly exceeds every committed threshold, which
/// also makes every already-placed node automatically infeasible, so
/// the maximum extension length depends on the thresholds alone. That
/// is what makes memoization on the threshold vector sound.
struct ExactCtx<'a> {
    vecs: Vec<&'a [usize]>,
    reps: Vec<usize>,
    k: usize,
    maxval: Vec<i64>,
    memo: BTreeMap<Vec<i64>, u32>,
    expansions: u64,
    budget: u64,
}

fn feasible(vec: &[usize], t: &[i64]) -> bool {
    vec.iter()
        .zip(t.iter())
        .all(|(&v, &ta)| ta < 0 || v as i64 > ta)
}

impl<'a> ExactCtx<'a> {
    /// Admissible bound on how many more nodes can be placed from state
    /// `t`: each placement strictly raises exactly one threshold, and
    /// coordinate `a` can rise at most to the largest value present.
    fn upper_bound(&self, t: &[i64]) -> u32 {
        let mut total = 0i64;
        for (m, ta) in self.maxval.iter().zip(t.iter()) {
            total += (m - ta).max(0);
        }
        total as u32
    }

    fn best(&mut self, t: &Vec<i64>) -> Result<u32> {
        if let Some(&v) = self.memo.get(t) {
            return Ok(v);
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::BudgetExceeded);
        }
        let mut best = 0u32;
        for vi in 0..self.vecs.len() {
            if !feasible(self.vecs[vi], t) {
                continue;
            }
            for b in 0..self.k {
                let mut t2 = t.clone();
                t2[b] = self.vecs[vi][b] as i64;
                if self.upper_bound(&t2) < best {
                    continue;
                }
                let v = 1 + self.best(&t2)?;
                if v > best {
                    best = v;
                }
            }
        }
        self.memo.insert(t.clone(), best);
        Ok(best)
    }
}

fn exact_pmi(dl: &DLMatrix, budget: u64) -> Result<PMISequence> {
    let k = dl.num_leaders();
    // Nodes sharing a DL vector can never both appear in a PMI sequence,
    // so the search runs over distinct vectors; the smallest node id
    // represents each vector.
    let mut distinct: BTreeMap<&[usize], usize> = BTreeMap::new();
    for (node, row) in dl.rows().iter().enumerate() {
        distinct.entry(row.as_slice()).or_insert(node);
    }
    let vecs: Vec<&[usize]> = distinct.keys().copied().collect();
    let reps: Vec<usize> = distinct.values().copied().collect();
    let mut maxval = vec![-1i64; k];
    for v in &vecs {
        for a in 0..k {
            maxval[a] = maxval[a].max(v[a] as i64);
        }
    }
    let mut ctx = ExactCtx {
        vecs,
        reps,
        k,
        maxval,
        memo: BTreeMap::new(),
        expansions: 0,
        budget,
    };
    let root = vec![-1i64; k];
    let total = ctx.best(&root)?;

    // Reconstruct one optimal sequence deterministically: at each state
    // take the lexicographically first (vector, witness) that preserves
    // the memoized value.
    let mut order = Vec::with_capacity(total as usize);
    let mut witness = Vec::with_capacity(total as usize);
    let mut t = root;
    let mut remaining = total;
    while remaining > 0 {
        let mut advanced = false;
        'pick: for vi in 0..ctx.vecs.len() {
            if !feasible(ctx.vecs[vi], &t) {
                continue;
            }
            for b in 0..ctx.k {
                let mut t2 = t.clone();
                t2[b] = ctx.vecs[vi][b] as i64;
                let child = match ctx.memo.get(&t2) {
                    Some(&v) => v,
                    None => ctx.best(&t2)?,
                };
                if 1 + child == remaining {
                    order.push(ctx.reps[vi]);
                    witness.push(b);
                    t = t2;
                    remaining -= 1;
                    advanced = true;
                    break 'pick;
                }
            }
        }
        debug_assert!(advanced, "reconstruction must follow the memo");
        if !advanced {
            break;
        }
    }
    Ok(PMISequence { order, witness })
}

/// Greedy mode: repeatedly append the feasible node with the
/// lexicographically smallest DL vector (ties by node id); the witness
/// is the coordinate with the smallest value (ties by index).
fn greedy_pmi(dl: &DLMatrix) -> PMISequence {
    let n = dl.num_nodes();
    let k = dl.num_leaders();
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.sort_by(|&a, &b| dl.row(a).cmp(dl.row(b)).then(a.cmp(&b)));
    let mut placed = vec![false; n];
    let mut t = vec![-1i64; k];
    let mut order = Vec::new();
    let mut witness = Vec::new();
    loop {
        let mut pick = None;
        for &node in &nodes {
            if !placed[node] && feasible(dl.row(node), &t) {
                pick = Some(node);
                break;
            }
        }
        let Some(node) = pick else { break };
        let row = dl.row(node);
        let mut b = 0;
        for a in 1..k {
            if row[a] < row[b] {
                b = a;
            }
        }
        t[b] = row[b] as i64;
        placed[node] = true;
        order.push(node);
        witness.push(b);
    }
    PMISequence { order, witness }
}

/// Partition of the node set into ordered cells. Cells are kept in
/// canonical order (sorted by smallest member) with sorted members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalize and wrap cells; callers must supply disjoint cells
    /// covering the node set.
    pub fn new(mut cells: Vec<Vec<usize>>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.retain(|c| !c.is_empty());
        cells.sort_by_key(|c| c[0]);
        Partition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn all_singletons(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Check both LIEEP conditions: every leader alone in its cell, and
    /// node-to-cell degrees constant within each cell toward every other
    /// cell. Also verifies that the cells partition `0..g.num_nodes()`.
    pub fn is_lieep(&self, g: &Graph, leaders: &LeaderSet) -> bool {
        let n = g.num_nodes();
        let mut owner = vec![usize::MAX; n];
        for (ci, cell) in self.cells.iter().enumerate() {
            for &u in cell {
                if u >= n || owner[u] != usize::MAX {
                    return false;
                }
                owner[u] = ci;
            }
        }
        if owner.contains(&usize::MAX) {
            return false;
        }
        for l in leaders.iter() {
            if self.cells[owner[l]].len() != 1 {
                return false;
            }
        }
        for cell in &self.cells {
            if cell.len() < 2 {
                continue;
            }
            let sig0 = cell_degree_signature(g, &owner, cell[0]);
            for &u in &cell[1..] {
                if cell_degree_signature(g, &owner, u) != sig0 {
                    return false;
                }
            }
        }
        true
    }
}

fn cell_degree_signature(g: &Graph, owner: &[usize], u: usize) -> BTreeMap<usize, usize> {
    let own = owner[u];
    let mut sig = BTreeMap::new();
    for &v in g.neighbors(u) {
        if owner[v] != own {
            *sig.entry(owner[v]).or_insert(0) += 1;
        }
    }
    sig
}

/// Maximal (coarsest) leader-invariant external equitable partition.
///
/// Starts from leader singletons plus one cell of all followers and
/// repeatedly splits cells whose members disagree on their node-to-cell
/// degree signature toward the other cells, renumbering cells
/// canonically each round so signatures are stable. The fixed point is
/// the unique maximal LIEEP; the split order cannot change it.
pub fn maximal_lieep(g: &Graph, leaders: &LeaderSet) -> Partition {
    let n = g.num_nodes();
    for l in leaders.iter() {
        assert!(l < n, "leader {l} out of range");
    }
    let mut cells: Vec<Vec<usize>> = leaders.iter().map(|l| vec![l]).collect();
    let followers: Vec<usize> = (0..n).filter(|u| !leaders.contains(*u)).collect();
    if !followers.is_empty() {
        cells.push(followers);
    }
    let mut part = Partition::new(cells);
    loop {
        let mut owner = vec![0usize; n];
        for (ci, cell) in part.cells.iter().enumerate() {
            for &u in cell {
                owner[u] = ci;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::new();
        let mut changed = false;
        for cell in &part.cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<usize>> = BTreeMap::new();
            for &u in cell {
                let sig: Vec<(usize, usize)> =
                    cell_degree_signature(g, &owner, u).into_iter().collect();
                groups.entry(sig).or_default().push(u);
            }
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups.into_values());
        }
        part = Partition::new(next);
        if !changed {
            return part;
        }
    }
}

/// Randomized estimate of the dimension of the strong structurally
/// controllable subspace: the minimum numerical rank of the
/// controllability matrix `[B, -LB, (-L)^2 B, ...]` over `trials`
/// independent uniform weight draws from `[w_min, w_max]`.
///
/// The deterministic all-`w_min` draw is always evaluated in addition,
/// because uniform weights are a known rank-degenerate case on
/// symmetric topologies. The return value is a probabilistic estimate:
/// only a full PMI sequence proves strong structural controllability,
/// and the true minimum over all weightings may be lower than any
/// sampled rank.
pub fn ssc_rank_oracle(
    g: &Graph,
    leaders: &LeaderSet,
    trials: usize,
    w_min: f64,
    w_max: f64,
    seed: u64,
) -> Result<usize> {
    if trials < 1 {
        return Err(Error::InvalidParameter("rank oracle needs trials >= 1"));
    }
    if !(w_min > 0.0 && w_min <= w_max) {
        return Err(Error::NonpositiveRange);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut weights = vec![w_min; edges.len()];
    let mut scratch = RankScratch::new(g.num_nodes(), leaders.len());
    let mut min_rank = g.num_nodes();
    // Trial 0 is the deterministic all-w_min draw.
    for trial in 0..=trials {
        if trial > 0 {
            let mut rng = Rng::derive(seed, trial as u64);
            for w in weights.iter_mut() {
                *w = rng.uniform(w_min, w_max);
            }
        }
        let rank = controllability_rank(&edges, &weights, leaders, &mut scratch);
        min_rank = min_rank.min(rank);
    }
    Ok(min_rank)
}

/// Reusable buffers for [`controllability_rank`]; the oracle evaluates
/// many draws on the same shape.
struct RankScratch {
    n: usize,
    k: usize,
    /// Current power block `(-L)^p B`, flattened as `k` vectors of
    /// length `n`.
    block: Vec<f64>,
    next: Vec<f64>,
    /// Rows of the (column-normalized) controllability matrix; the SVD
    /// runs on these since a matrix and its transpose share singular
    /// values, and `n` vectors orthogonalize much faster than `n * k`.
    rows: Vec<Vec<f64>>,
}

impl RankScratch {
    fn new(n: usize, k: usize) -> Self {
        RankScratch {
            n,
            k,
            block: vec![0.0; n * k],
            next: vec![0.0; n],
            rows: (0..n).map(|_| vec![0.0; n * k]).collect(),
        }
    }
}

/// Numerical rank of the controllability matrix for one weight draw.
/// Columns are normalized first so the huge magnitude spread of high
/// Laplacian powers cannot mask genuinely independent directions;
/// column scaling leaves the rank unchanged.
fn controllability_rank(
    edges: &[(usize, usize)],
    weights: &[f64],
    leaders: &LeaderSet,
    s: &mut RankScratch,
) -> usize {
    let (n, k) = (s.n, s.k);
    s.block.fill(0.0);
    for (j, l) in leaders.iter().enumerate() {
        s.block[j * n + l] = 1.0;
    }
    for power in 0..n {
        for j in 0..k {
            let col = power * k + j;
            let v = &s.block[j * n..(j + 1) * n];
            let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
            let inv = if norm > 0.0 { 1.0 / norm } else { 0.0 };
            for (row, value) in s.rows.iter_mut().zip(v.iter()) {
                row[col] = value * inv;
            }
        }
        if power + 1 == n {
            break;
        }
        for j in 0..k {
            let v = &mut s.block[j * n..(j + 1) * n];
            s.next.fill(0.0);
            for (&(a, b), &w) in edges.iter().zip(weights.iter()) {
                // y = -L x accumulated edge by edge.
                let diff = v[a] - v[b];
                s.next[a] -= w * diff;
                s.next[b] += w * diff;
            }
            v.copy_from_slice(&s.next);
        }
    }
    let sv = singular_values_of_columns(&mut s.rows);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    let cut = 1e-9 * smax * n as f64;
    sv.iter().filter(|&&s| s > cut).count()
}

//! Kirchhoff index computation and the analytic bounds around it.
//!
//! `K_f(G, w) = N * sum(1 / lambda_i)` over the positive eigenvalues of
//! the weighted Laplacian. Two independent routes are provided as mutual
//! oracles: the eigenvalue route and an effective-resistance route built
//! on grounded-Laplacian inversion. The bounds are pure arithmetic in
//! `(k, D)` for the dense leader-minimal family with `N = kD + 1` nodes;
//! they never construct the graph.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeWeights, Graph};

/// Relative threshold below which an eigenvalue counts as zero.
const ZERO_EIG_REL: f64 = 1e-9;

/// Which route produced a [`KirchhoffResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KirchhoffMethod {
    Eigen,
    Resistance,
}

/// Kirchhoff index together with the spectrum that produced it.
///
/// `eigenvalues` holds the positive Laplacian eigenvalues (ascending)
/// for the eigen route and is empty for the resistance route, which by
/// design never looks at the spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct KirchhoffResult {
    pub kf: f64,
    pub eigenvalues: Vec<f64>,
    pub method: KirchhoffMethod,
}

/// Kirchhoff index from the Laplacian spectrum.
///
/// The single structural zero eigenvalue is excluded by the relative
/// magnitude threshold; a second eigenvalue under the threshold means
/// the graph is disconnected.
pub fn kirchhoff_eigen(g: &Graph, w: &EdgeWeights) -> Result<KirchhoffResult> {
    let n = g.num_nodes();
    if n < 2 {
        return Err(Error::InvalidParameter("kirchhoff needs at least 2 nodes"));
    }
    let l = g.laplacian(w)?;
    let eig = l.symmetric_eigenvalues();
    let max_abs = eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = ZERO_EIG_REL * max_abs;
    let positive: Vec<f64> = eig.into_iter().filter(|&x| x.abs() >= cut).collect();
    if positive.len() != n - 1 {
        return Err(Error::Disconnected);
    }
    let kf = n as f64 * positive.iter().map(|x| 1.0 / x).sum::<f64>();
    Ok(KirchhoffResult {
        kf,
        eigenvalues: positive,
        method: KirchhoffMethod::Eigen,
    })
}

/// Kirchhoff index as the sum of pairwise effective resistances.
///
/// Grounds node 0, inverts the reduced Laplacian by Cholesky, and sums
/// `R(u,v) = M_uu + M_vv - 2 M_uv` over all pairs. Independent of the
/// eigen route; the two must agree to everyday floating-point accuracy.
pub fn kirchhoff_resistance(g: &Graph, w: &EdgeWeights) -> Result<KirchhoffResult> {
    let n = g.num_nodes();
    if n < 2 {
        return Err(Error::InvalidParameter("kirchhoff needs at least 2 nodes"));
    }
    g.ensure_connected()?;
    let l = g.laplacian(w)?;
    // Reduced Laplacian with row/column 0 removed.
    let mut m = crate::matrix::SquareMatrix::zeros(n - 1);
    for i in 1..n {
        for j in 1..n {
            m.set(i - 1, j - 1, l.get(i, j));
        }
    }
    let inv = m.spd_inverse().ok_or(Error::Disconnected)?;
    let mut kf = 0.0;
    // Pairs involving the grounded node: R(0, v) = M_vv.
    for v in 0..(n - 1) {
        kf += inv.get(v, v);
    }
    for u in 0..(n - 1) {
        for v in (u + 1)..(n - 1) {
            kf += inv.get(u, u) + inv.get(v, v) - 2.0 * inv.get(u, v);
        }
    }
    Ok(KirchhoffResult {
        kf,
        eigenvalues: Vec::new(),
        method: KirchhoffMethod::Resistance,
    })
}

/// Worst-case Kirchhoff index over box-constrained weights.
///
/// The adversary's optimum is to put `w_min` on every edge, so this is
/// the unit-weight index divided by `w_min`; no adversarial weighting is
/// ever assembled.
pub fn worst_case_kirchhoff(g: &Graph, w_min: f64) -> Result<f64> {
    if !(w_min > 0.0) {
        return Err(Error::NonpositiveWmin);
    }
    let unit = EdgeWeights::uniform(g, 1.0)?;
    Ok(kirchhoff_eigen(g, &unit)?.kf / w_min)
}

/// Lower bound on `K_f` of the dense leader-minimal graph from its
/// enclosing clique chain: `D^3/6 + (k-1) D^2 / 3 + (k-2) D / 3`.
pub fn kf_lower_bound_subchain(k: usize, d: usize) -> Result<f64> {
    if k <= 2 {
        return Err(Error::KTooSmall { k });
    }
    if d < 1 {
        return Err(Error::InvalidParameter("subchain bound needs D >= 1"));
    }
    let (k, d) = (k as f64, d as f64);
    Ok(d * d * d / 6.0 + (k - 1.0) * d * d / 3.0 + (k - 2.0) * d / 3.0)
}

/// Average degree of the dense leader-minimal graph with parameters
/// `(k, D)`: `(k^2 (2D - 1) + k) / (kD + 1)`.
pub fn mbar_average_degree(k: usize, d: usize) -> Result<f64> {
    if k < 1 || d < 1 {
        return Err(Error::InvalidParameter(
            "average degree needs k >= 1, D >= 1",
        ));
    }
    let (kf, df) = (k as f64, d as f64);
    Ok((kf * kf * (2.0 * df - 1.0) + kf) / (kf * df + 1.0))
}

/// Degree-based lower bound `(N-1)^2 / deg_av`, which simplifies to
/// `D^2 k (Dk + 1) / (2Dk - k + 1)`.
pub fn kf_lower_bound_degree(k: usize, d: usize) -> Result<f64> {
    if k < 1 || d < 1 {
        return Err(Error::InvalidParameter("degree bound needs k >= 1, D >= 1"));
    }
    let (kf, df) = (k as f64, d as f64);
    Ok(df * df * kf * (df * kf + 1.0) / (2.0 * df * kf - kf + 1.0))
}

/// Distance-sum upper bound
/// `k C(D,2) [1/2 + k + (2D-1)k/6] + D C(k+1,2)`.
pub fn kf_upper_bound_distance(k: usize, d: usize) -> Result<f64> {
    if k < 1 || d < 2 {
        return Err(Error::InvalidParameter(
            "distance bound needs k >= 1, D >= 2",
        ));
    }
    let (kf, df) = (k as f64, d as f64);
    let choose_d2 = df * (df - 1.0) / 2.0;
    let choose_k1_2 = (kf + 1.0) * kf / 2.0;
    Ok(kf * choose_d2 * (0.5 + kf + (2.0 * df - 1.0) * kf / 6.0) + df * choose_k1_2)
}

/// Closed-form unit-weight Kirchhoff index of the clique chain
/// `G_{D-1}(k+1, k, ..., k)` (D cliques, `N = kD + 1` nodes).
///
/// This is the full polynomial; dropping its lower-order terms gives
/// [`kf_lower_bound_subchain`]. The two are deliberately separate
/// operations.
pub fn clique_chain_kf_closed_form(k: usize, d: usize) -> Result<f64> {
    if k < 1 || d < 2 {
        return Err(Error::InvalidParameter("closed form needs k >= 1, D >= 2"));
    }
    let (k, d) = (k as f64, d as f64);
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k2 * k2;
    let c3 = 1.0 / 6.0;
    let c2 = (k2 - k + 1.5) / (3.0 * k);
    let c1 = (12.0 * k4 - (15.0 * k3 + 75.0 * k2 + 55.0 * k + 11.0))
        / (6.0 * k * (3.0 * k + 1.0) * (2.0 * k + 1.0))
        + 2.0 / 3.0;
    let c0 = (10.0 * k3 + 18.0 * k2 + 13.0 * k + 3.0)
        / (2.0 * k * (3.0 * k + 1.0) * (2.0 * k + 1.0))
        - 0.5;
    Ok(c3 * d * d * d + c2 * d * d + c1 * d + c0)
}

/// The three analytic bounds next to an exact value, for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub lb_subchain: f64,
    pub lb_degree: f64,
    pub ub_distance: f64,
    pub kf_exact: f64,
}

impl BoundsReport {
    /// Assemble the report for parameters `(k, D)` with a separately
    /// computed exact value.
    pub fn new(k: usize, d: usize, kf_exact: f64) -> Result<Self> {
        Ok(BoundsReport {
            lb_subchain: kf_lower_bound_subchain(k, d)?,
            lb_degree: kf_lower_bound_degree(k, d)?,
            ub_distance: kf_upper_bound_distance(k, d)?,
            kf_exact,
        })
    }

    /// `max(lb_subchain, lb_degree) < kf_exact < ub_distance`.
    pub fn sandwich_holds(&self) -> bool {
        self.lb_subchain.max(self.lb_degree) < self.kf_exact && self.kf_exact < self.ub_distance
    }
}

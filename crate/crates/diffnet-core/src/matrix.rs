//! Dense symmetric matrices and the small linear-algebra kernels the
//! analyses need: Jacobi eigenvalues, Cholesky-based SPD inversion, and
//! one-sided Jacobi singular values. Everything here targets desk-scale
//! orders (N up to a few hundred).

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Build from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![0.0; self.n];
        for (i, slot) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = 0.0;
            for j in 0..self.n {
                acc += row[j] * v[j];
            }
            *slot = acc;
        }
        out
    }

    /// Eigenvalues of a symmetric matrix, ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        debug_assert!(self.is_symmetric(1e-9));
        let mut a = self.data.clone();
        let mut eig = Vec::new();
        jacobi_eigenvalues_in_place(&mut a, self.n, &mut eig);
        eig
    }

    /// Inverse of a symmetric positive-definite matrix via Cholesky.
    /// Returns `None` when a pivot collapses (matrix not PD).
    pub fn spd_inverse(&self) -> Option<SquareMatrix> {
        let n = self.n;
        let mut l = self.data.clone();
        // In-place lower Cholesky factor.
        let scale: f64 = (0..n).map(|i| self.get(i, i).abs()).fold(0.0, f64::max);
        let tiny = 1e-14 * scale.max(1e-300);
        for j in 0..n {
            let mut d = l[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d <= tiny {
                return None;
            }
            let djj = sqrt(d);
            l[j * n + j] = djj;
            for i in (j + 1)..n {
                let mut v = l[i * n + j];
                for k in 0..j {
                    v -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = v / djj;
            }
        }
        // Solve L L^T X = I column by column.
        let mut inv = SquareMatrix::zeros(n);
        let mut y = vec![0.0; n];
        for col in 0..n {
            for i in 0..n {
                let mut v = if i == col { 1.0 } else { 0.0 };
                for k in 0..i {
                    v -= l[i * n + k] * y[k];
                }
                y[i] = v / l[i * n + i];
            }
            for i in (0..n).rev() {
                let mut v = y[i];
                for k in (i + 1)..n {
                    v -= l[k * n + i] * inv.get(k, col);
                }
                inv.set(i, col, v / l[i * n + i]);
            }
        }
        Some(inv)
    }
}

const MAX_JACOBI_SWEEPS: usize = 100;

/// Cyclic Jacobi eigenvalue iteration on a symmetric matrix stored
/// row-major in `a`; eigenvalues are written to `eig`, ascending.
///
/// Exposed at the buffer level so tight loops (the clique-chain search)
/// can reuse allocations.
pub(crate) fn jacobi_eigenvalues_in_place(a: &mut [f64], n: usize, eig: &mut Vec<f64>) {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        eig.clear();
        return;
    }
    let frob_sq: f64 = a.iter().map(|x| x * x).sum();
    let stop = 1e-28 * frob_sq.max(1e-300);
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                let v = a[p * n + q];
                off_sq += 2.0 * v * v;
            }
        }
        if off_sq <= stop {
            break;
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = c * arp - s * arq;
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = s * arp + c * arq;
                    a[q * n + r] = a[r * n + q];
                }
            }
        }
    }
    eig.clear();
    eig.extend((0..n).map(|i| a[i * n + i]));
    eig.sort_by(|x, y| x.total_cmp(y));
}

/// Singular values (descending) of the matrix whose columns are given,
/// via one-sided Jacobi orthogonalization, in place.
///
/// An eigen-solve of the Gram matrix would not do here: squaring pushes
/// genuinely zero singular values up to ~sqrt(eps), past rank-decision
/// thresholds.
pub fn singular_values_of_columns(cols: &mut [Vec<f64>]) -> Vec<f64> {
    let m = cols.len();
    const TOL: f64 = 1e-14;
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..m {
            for j in (i + 1)..m {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for (x, y) in cols[i].iter().zip(cols[j].iter()) {
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if alpha < 1e-280 || beta < 1e-280 {
                    continue;
                }
                if gamma.abs() <= TOL * sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                let (head, tail) = cols.split_at_mut(j);
                let ci = &mut head[i];
                let cj = &mut tail[0];
                for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
                    let xi = *x;
                    let yj = *y;
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| sqrt(c.iter().map(|x| x * x).sum::<f64>()))
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

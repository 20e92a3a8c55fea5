//! Oracles shared by the integration tests. They deliberately avoid the
//! library's eigensolver: eigenvalues come from inertia counts and
//! bisection, determinants from cofactor-free elimination in exact
//! arithmetic where possible.

#![allow(dead_code, clippy::needless_range_loop)]

use kcenter_core::linalg::SymMatrix;
use kcenter_core::Graph;

pub fn dense(a: &SymMatrix<f64>) -> Vec<Vec<f64>> {
    let n = a.n();
    (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect()
}

/// Number of eigenvalues strictly below `x`, from the signs of the pivots
/// of `A − xI` (Sylvester's law of inertia).
pub fn count_below(a: &[Vec<f64>], x: f64) -> usize {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let scale = a.iter().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
    let mut negatives = 0;
    for k in 0..n {
        let mut piv = m[k][k];
        if piv.abs() < 1e-300 {
            piv = -1e-18 * scale;
        }
        if piv < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f != 0.0 {
                for j in k + 1..n {
                    m[i][j] -= f * m[k][j];
                }
            }
        }
    }
    negatives
}

/// The `j`-th smallest eigenvalue (1-based) by bisection on the inertia count.
pub fn eigenvalue(a: &[Vec<f64>], j: usize) -> f64 {
    let r = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, v)| v.abs()).sum::<f64>() + row[i].abs()
        })
        .fold(0.0f64, f64::max);
    let (mut lo, mut hi) = (-r - 1.0, r + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if count_below(a, mid) >= j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn all_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    (1..=a.len()).map(|j| eigenvalue(a, j)).collect()
}

/// Laplacian of `g` plus `eps` on the listed (1-based) nodes.
pub fn grounded(g: &Graph, ports: &[usize], eps: f64) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut l = vec![vec![0.0; n]; n];
    for (u, v) in g.edges() {
        l[u - 1][v - 1] -= 1.0;
        l[v - 1][u - 1] -= 1.0;
        l[u - 1][u - 1] += 1.0;
        l[v - 1][v - 1] += 1.0;
    }
    for &p in ports {
        l[p - 1][p - 1] += eps;
    }
    l
}

/// Determinant by elimination with partial pivoting.
pub fn det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    d
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Solves `Ax = b` by elimination with partial pivoting.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &v)| r.iter().copied().chain([v]).collect()).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
        m.swap(p, k);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..=n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

/// Unit eigenvector of the simple `j`-th eigenvalue by inverse iteration.
pub fn eigenvector(a: &[Vec<f64>], j: usize) -> Vec<f64> {
    let n = a.len();
    let shift = eigenvalue(a, j) + 1e-10;
    let shifted: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(c, &v)| if c == i { v - shift } else { v }).collect())
        .collect();
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    for _ in 0..4 {
        x = solve(&shifted, &x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

//! Symmetric eigenvalues by Householder tridiagonalization and Sturm-count
//! bisection. Bisection is unconditionally convergent, which matters here:
//! reflection products have exactly degenerate spectra that can stall
//! shifted-QL iterations.

/// Reduce a symmetric matrix (row-major, n x n) to tridiagonal form and
/// return (diagonal, off-diagonal). The input is consumed as workspace.
pub fn sym_tridiagonalize(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let idx = |i: usize, j: usize| i * n + j;
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in (k + 1)..n {
            norm2 += a[idx(i, k)] * a[idx(i, k)];
        }
        let x0 = a[idx(k + 1, k)];
        let norm = norm2.sqrt();
        if norm < 1e-300 {
            off[k] = 0.0;
            continue;
        }
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        // v = x - alpha e1, H = I - 2 v v^T / (v^T v)
        let mut vtv = 0.0;
        for i in (k + 1)..n {
            v[i] = a[idx(i, k)];
        }
        v[k + 1] -= alpha;
        for i in (k + 1)..n {
            vtv += v[i] * v[i];
        }
        if vtv < 1e-300 {
            off[k] = alpha;
            continue;
        }
        // w = A v (restricted to the trailing block), then rank-2 update
        let beta = 2.0 / vtv;
        for i in (k + 1)..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += a[idx(i, j)] * v[j];
            }
            w[i] = beta * s;
        }
        let mut kappa = 0.0;
        for i in (k + 1)..n {
            kappa += v[i] * w[i];
        }
        kappa *= 0.5 * beta;
        for i in (k + 1)..n {
            w[i] -= kappa * v[i];
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[idx(i, j)] -= v[i] * w[j] + w[i] * v[j];
            }
        }
        off[k] = alpha;
        a[idx(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            a[idx(i, k)] = 0.0;
        }
    }
    if n >= 2 {
        off[n - 2] = a[idx(n - 1, n - 2)];
    }
    let diag = (0..n).map(|i| a[idx(i, i)]).collect();
    (diag, off)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below x.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let off2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - off2 / d;
        if d == 0.0 {
            d = -1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending, by bisection.
pub fn tridiag_eigenvalues(diag: &[f64], off: &[f64], tol: f64) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i == 0 { 0.0 } else { off[i - 1].abs() }
            + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    lo -= tol;
    hi += tol;
    (0..n)
        .map(|j| {
            let (mut a, mut b) = (lo, hi);
            while b - a > tol {
                let m = 0.5 * (a + b);
                if sturm_count(diag, off, m) <= j {
                    a = m;
                } else {
                    b = m;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Eigenvalues of a dense symmetric matrix (row-major), ascending.
pub fn symmetric_eigenvalues(a: Vec<f64>, n: usize, tol: f64) -> Vec<f64> {
    let (diag, off) = sym_tridiagonalize(a, n);
    tridiag_eigenvalues(&diag, &off, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let n = 4;
        let mut a = vec![0.0; n * n];
        for (i, v) in [3.0, -1.0, 2.0, 0.5].iter().enumerate() {
            a[i * n + i] = *v;
        }
        let e = symmetric_eigenvalues(a, n, 1e-13);
        let want = [-1.0, 0.5, 2.0, 3.0];
        for (x, y) in e.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn two_by_two() {
        // [[2, 1], [1, 2]]: eigenvalues 1 and 3
        let a = vec![2.0, 1.0, 1.0, 2.0];
        let e = symmetric_eigenvalues(a, 2, 1e-13);
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12, "{e:?}");
    }

    #[test]
    fn householder_reflection_spectrum() {
        // I - 2 u u^T: eigenvalues {-1, 1 x (n-1)} with exact degeneracy
        let n = 6;
        let u = [0.3, -0.5, 0.2, 0.7, -0.1, 0.33];
        let nrm: f64 = u.iter().map(|x| x * x).sum::<f64>();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = if i == j { 1.0 } else { 0.0 } - 2.0 * u[i] * u[j] / nrm;
            }
        }
        let e = symmetric_eigenvalues(a, n, 1e-13);
        assert!((e[0] + 1.0).abs() < 1e-10, "{e:?}");
        for v in &e[1..] {
            assert!((v - 1.0).abs() < 1e-10, "{e:?}");
        }
    }

    #[test]
    fn matches_characteristic_polynomial_small() {
        // 3x3 with known spectrum: A = Q D Q^T built from a rotation
        let (c, s) = (0.8f64, 0.6f64);
        let d = [1.0f64, 2.0, 5.0];
        // rotation in (0,1) plane then (1,2) plane
        let q = [
            [c, -s, 0.0],
            [s * c, c * c, -s],
            [s * s, c * s, c],
        ];
        let mut a = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    a[i][j] += q[i][k] * d[k] * q[j][k];
                }
            }
        }
        let flat: Vec<f64> = a.iter().flatten().copied().collect();
        let e = symmetric_eigenvalues(flat, 3, 1e-13);
        // trace and determinant invariants
        let tr: f64 = e.iter().sum();
        assert!((tr - (a[0][0] + a[1][1] + a[2][2])).abs() < 1e-10);
        let det_e: f64 = e.iter().product();
        let det_a = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        assert!((det_e - det_a).abs() < 1e-9, "{det_e} vs {det_a}");
    }

    #[test]
    fn random_symmetric_sturm_consistency() {
        // eigenvalue count below any threshold equals the Sturm count
        let n = 8;
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = next();
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let e = symmetric_eigenvalues(a.clone(), n, 1e-13);
        let (diag, off) = sym_tridiagonalize(a, n);
        for &x in &[-1.0, -0.3, 0.0, 0.4, 1.2] {
            let cnt = sturm_count(&diag, &off, x);
            let direct = e.iter().filter(|&&v| v < x).count();
            assert_eq!(cnt, direct, "at {x}: {e:?}");
        }
    }
}

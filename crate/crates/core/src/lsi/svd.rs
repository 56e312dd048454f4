//! Dense SVD by one-sided (Hestenes) Jacobi rotations.

use nalgebra::{DMatrix, DVector};

/// Thin SVD `a = u * diag(s) * vᵀ` with singular values sorted
/// nonincreasing. `u` is `m × r`, `v` is `n × r` with `r = min(m, n)`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DMatrix<f64>,
    pub s: DVector<f64>,
    pub v: DMatrix<f64>,
}

const MAX_SWEEPS: usize = 100;

pub fn jacobi_svd(a: &DMatrix<f64>) -> Svd {
    if a.nrows() < a.ncols() {
        let t = jacobi_svd(&a.transpose());
        return Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        };
    }
    let (m, n) = a.shape();
    let mut u = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    let (up, uq) = (u[(i, p)], u[(i, q)]);
                    alpha += up * up;
                    beta += uq * uq;
                    gamma += up * uq;
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (up, uq) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                }
                for i in 0..n {
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<(f64, usize)> = (0..n).map(|j| (u.column(j).norm(), j)).collect();
    sigma.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));

    let mut out_u = DMatrix::<f64>::zeros(m, n);
    let mut out_v = DMatrix::<f64>::zeros(n, n);
    let mut out_s = DVector::<f64>::zeros(n);
    for (dst, &(s, src)) in sigma.iter().enumerate() {
        out_s[dst] = s;
        out_v.set_column(dst, &v.column(src));
        if s > 0.0 {
            out_u.set_column(dst, &(u.column(src) / s));
        }
    }
    Svd {
        u: out_u,
        s: out_s,
        v: out_v,
    }
}

impl Svd {
    /// Number of singular values above the usual rank tolerance.
    pub fn rank(&self) -> usize {
        let tol = self.tolerance();
        self.s.iter().filter(|&&s| s > tol).count()
    }

    pub fn tolerance(&self) -> f64 {
        let max = self.s.iter().copied().fold(0.0, f64::max);
        let dim = self.u.nrows().max(self.v.nrows()) as f64;
        max * dim * f64::EPSILON * 16.0
    }
}

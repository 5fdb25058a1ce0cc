//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::{c, Scalar};

pub type CMat = DMatrix<Scalar>;
pub type CVec = DVector<Scalar>;
pub type Mat3 = Matrix3<Scalar>;
pub type Vec3 = Vector3<Scalar>;

/// Index subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Determinant by cofactor expansion for tiny matrices, LU otherwise.
pub fn det(m: &CMat) -> Scalar {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    match n {
        0 => c(1.0),
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        3 => {
            m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
                - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
                + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
        }
        _ => m.clone().lu().determinant(),
    }
}

/// k-th compound: matrix of all k×k minors, rows and columns indexed by
/// increasing index tuples in lexicographic order.
pub fn compound(m: &CMat, k: usize) -> CMat {
    let rows = subsets(m.nrows(), k);
    let cols = subsets(m.ncols(), k);
    CMat::from_fn(rows.len(), cols.len(), |i, j| {
        let sub = CMat::from_fn(k, k, |a, b| m[(rows[i][a], cols[j][b])]);
        det(&sub)
    })
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn norm1(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse by LU with partial pivoting, plus the 1-norm condition estimate
/// `‖A‖₁‖A⁻¹‖₁` (infinite when LU breaks down).
pub fn inverse_with_cond(m: &CMat) -> (Option<CMat>, f64) {
    match m.clone().lu().try_inverse() {
        Some(inv) => {
            let cond = norm1(m) * norm1(&inv);
            if cond.is_finite() {
                (Some(inv), cond)
            } else {
                (None, f64::INFINITY)
            }
        }
        None => (None, f64::INFINITY),
    }
}

/// Inverse if the condition estimate is below `cutoff`.
pub fn inverse(m: &CMat, cutoff: f64) -> Option<CMat> {
    match inverse_with_cond(m) {
        (Some(inv), cond) if cond < cutoff => Some(inv),
        _ => None,
    }
}

/// Thin singular value decomposition `A = U Σ Vᴴ` with singular values in
/// descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub values: Vec<f64>,
    /// Left singular vectors as columns (`m × n`); columns belonging to zero
    /// singular values are zero.
    pub u: CMat,
    /// Right singular vectors as columns (`n × n`, unitary).
    pub v: CMat,
}

/// One-sided Jacobi SVD.
///
/// Used instead of the bidiagonal QR in `nalgebra`, which returns wrong
/// factors for some rank-deficient inputs (a rank-2 symmetric 6×6 matrix
/// is a reproducible case).
pub fn svd(m: &CMat) -> Svd {
    let (rows, n) = m.shape();
    let mut a = m.clone();
    let mut v = CMat::identity(n, n);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = a.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: Scalar = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut a, &mut v] {
                    for r in 0..mat.nrows() {
                        let xp = mat[(r, p)];
                        let xq = mat[(r, q)] * phase.conj();
                        mat[(r, p)] = xp * cs - xq * sn;
                        mat[(r, q)] = xp * sn + xq * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let big = norms.iter().copied().fold(0.0, f64::max);
    let mut u = CMat::zeros(rows, n);
    let mut vs = CMat::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        if norms[j] > 0.0 && norms[j] > 1e-300 * big.max(1.0) {
            u.set_column(k, &(a.column(j) / c(norms[j])));
        }
        vs.set_column(k, &v.column(j));
    }
    Svd {
        values: order.iter().map(|&j| norms[j]).collect(),
        u,
        v: vs,
    }
}

/// Singular values (descending) and matching right singular vectors.
pub fn svd_right(m: &CMat) -> (Vec<f64>, Vec<CVec>) {
    let s = svd(m);
    let vecs = (0..s.v.ncols()).map(|j| s.v.column(j).into_owned()).collect();
    (s.values, vecs)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    svd(m).values
}

/// Orthonormal basis of the orthogonal complement (Hermitian inner product)
/// of the span of `vectors` in `C^n`.
pub fn complement_basis(vectors: &[CVec], n: usize) -> Vec<CVec> {
    let mut basis: Vec<CVec> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let p = b.dotc(&w);
            w -= b * p;
        }
        let nrm = w.norm();
        if nrm > 1e-12 {
            basis.push(w / c(nrm));
        }
    }
    let start = basis.len();
    for i in 0..n {
        let mut w = CVec::zeros(n);
        w[i] = c(1.0);
        for b in &basis {
            let p = b.dotc(&w);
            w -= b * p;
        }
        let nrm = w.norm();
        if nrm > 1e-8 {
            basis.push(w / c(nrm));
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(start)
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
///
/// The Schur iteration is bounded; on stagnation (seen with highly
/// degenerate spectra) a scrambled unitary similarity plus an eps-level
/// perturbation is retried. `None` if every retry stalls.
pub fn eigenvalues(m: &CMat) -> Option<Vec<Scalar>> {
    let n = m.nrows();
    if let Some(s) = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 2000) {
        return Some(diag(&s.unpack().1));
    }
    let scale = max_abs(m).max(f64::MIN_POSITIVE);
    for attempt in 1..=8u32 {
        let d = CMat::from_fn(n, n, |i, j| {
            let t = (attempt as f64) * 0.7390851 + (i * 7 + j * 13) as f64 * 0.6180339;
            Scalar::new(t.sin(), t.cos())
        });
        let q = d.qr().q();
        let eps = scale * 1e-15 * attempt as f64;
        let pert = CMat::from_fn(n, n, |i, j| if i == j { c(0.0) } else { c(eps * (((i + 2 * j) % 5) as f64 - 2.0)) });
        let rotated = q.adjoint() * (m + pert) * &q;
        if let Some(s) = nalgebra::Schur::try_new(rotated, f64::EPSILON, 4000) {
            return Some(diag(&s.unpack().1));
        }
    }
    None
}

fn diag(t: &CMat) -> Vec<Scalar> {
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn lstsq(a: &CMat, b: &CVec) -> CVec {
    let s = svd(a);
    let smax = s.values.first().copied().unwrap_or(0.0);
    let mut x = CVec::zeros(a.ncols());
    for (k, &sigma) in s.values.iter().enumerate() {
        if sigma > smax * 1e-14 {
            let coef = s.u.column(k).dotc(b) / sigma;
            x += s.v.column(k) * coef;
        }
    }
    x
}

/// Cross-product matrix: `cross(v) x = v × x`.
pub fn cross(v: &Vec3) -> Mat3 {
    let z = c(0.0);
    Mat3::new(z, -v[2], v[1], v[2], z, -v[0], -v[1], v[0], z)
}

/// Vector of an antisymmetric 3×3 matrix, inverse of [`cross`].
pub fn uncross(m: &Mat3) -> Vec3 {
    Vec3::new(
        (m[(2, 1)] - m[(1, 2)]) * 0.5,
        (m[(0, 2)] - m[(2, 0)]) * 0.5,
        (m[(1, 0)] - m[(0, 1)]) * 0.5,
    )
}

pub fn to_dyn3(m: &Mat3) -> CMat {
    CMat::from_fn(3, 3, |i, j| m[(i, j)])
}

pub fn from_dyn3(m: &CMat) -> Mat3 {
    Mat3::from_fn(|i, j| m[(i, j)])
}

/// Inverse and condition estimate for a 3×3 block.
pub fn inverse3_with_cond(m: &Mat3) -> (Option<Mat3>, f64) {
    let (inv, cond) = inverse_with_cond(&to_dyn3(m));
    (inv.map(|i| from_dyn3(&i)), cond)
}

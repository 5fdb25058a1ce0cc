//! Media obeying the quadratic equation `Mᵀ·M = α e_N⌊I^(2)ᵀ`
//! (in matrix form `Mᵀ G M = α G`).
//!
//! In 3D blocks the equation reads `ᾱᵀμ̄⁻¹` and `β̄ᵀε̄′` antisymmetric and
//! `ᾱᵀβ̄ + μ̄⁻ᵀε̄′ = −α I`. Exactly one member of each pair `(ᾱ, μ̄⁻¹)` and
//! `(ε̄′, β̄)` is invertible. With `ᾱ`, `β̄` invertible the medium is a
//! P-medium `M = M P^(2)`; with `μ̄⁻¹`, `ε̄′` invertible it is a Q-medium
//! `M_g = M Q^(2)`. The two mixed choices lead to contradictions.

use crate::dyadics::{compound, lift_matrix, Dyadic, P_MAP, Q_MAP};
use crate::error::{Error, Result};
use crate::linalg::{self, uncross, CMat, Mat3, Vec3};
use crate::media::{split_3d, Medium};
use crate::tol::{self, Tolerances};
use crate::{c, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticKind {
    PMedium,
    QMedium,
}

/// Which block of each pair passed the invertibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertiblePair {
    /// `ᾱ` and `β̄` (P-medium).
    AlphaBeta,
    /// `μ̄⁻¹` and `ε̄′` (Q-medium).
    MuInvEps,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticClassification {
    pub kind: QuadraticKind,
    /// `P` (one-forms → one-forms) or `Q` (one-forms → vectors), normalized
    /// so that its first significant entry (row-major) is `+1`.
    pub recovered: Dyadic,
    /// `M` in `M P^(2)` or `M Q^(2)`.
    pub scale: Scalar,
    pub invertible_pair: InvertiblePair,
    pub alpha: Scalar,
    /// The root `A` of `A² + αA + p·w = 0` selecting the uniaxial form of `X̄`.
    pub a_root: Scalar,
    /// Relative defect of `X̄ = A I + w p / A`.
    pub x_residual: f64,
    /// Relative defect of `α = −det X̄ / A²`.
    pub scale_relation_residual: f64,
    /// Relative reconstruction residual.
    pub residual: f64,
    /// Condition estimates of `ᾱ, ε̄′, μ̄⁻¹, β̄`.
    pub conditions: [f64; 4],
    pub warnings: Vec<String>,
}

fn embed(top: &Mat3) -> CMat {
    let mut m = CMat::zeros(4, 4);
    m.view_mut((0, 0), (3, 3)).copy_from(top);
    m
}

fn outer4(u: (&Vec3, Scalar), v: (&Vec3, Scalar)) -> CMat {
    let uu = [u.0[0], u.0[1], u.0[2], u.1];
    let vv = [v.0[0], v.0[1], v.0[2], v.1];
    CMat::from_fn(4, 4, |i, j| uu[i] * vv[j])
}

/// Root of `A² + αA + p·w = 0` that best fits `X = A I + w pᵀ / A`.
fn uniaxial_root(x: &Mat3, p: &Vec3, w: &Vec3, alpha: Scalar) -> Result<(Scalar, f64)> {
    let pw = p.dot(w);
    let (r1, r2) = super::condition::quadratic_roots(c(1.0), alpha, pw);
    let scale = x.norm().max(tol::ABS);
    let mut best: Option<(Scalar, f64)> = None;
    for a in [r1, r2] {
        if a.norm() <= tol::ABS * scale {
            continue;
        }
        let res = (x - Mat3::identity() * a - w * p.transpose() / a).norm() / scale;
        if best.is_none_or(|(_, r)| res < r) {
            best = Some((a, res));
        }
    }
    best.ok_or_else(|| Error::Impasse("both roots of the uniaxial parameter vanish".into()))
}

/// Divides by the first entry above the relative threshold; returns the
/// normalized matrix and the divisor.
fn normalize(r: &CMat) -> (CMat, Scalar) {
    let big = linalg::max_abs(r);
    for i in 0..r.nrows() {
        for j in 0..r.ncols() {
            if r[(i, j)].norm() > 1e-6 * big {
                let s = r[(i, j)];
                return (r / s, s);
            }
        }
    }
    (r.clone(), c(1.0))
}

/// Classifies a medium satisfying the quadratic equation and recovers its
/// generator. `alpha` defaults to `tr(Mᵀ G M G)/6`.
pub fn classify_quadratic_medium(
    medium: &Medium,
    alpha: Option<Scalar>,
    tols: &Tolerances,
) -> Result<QuadraticClassification> {
    let g = lift_matrix();
    let m = medium.m().matrix();
    let mnorm = linalg::frobenius(m);
    if mnorm == 0.0 {
        return Err(Error::DegenerateAxion);
    }
    let mtgm = m.transpose() * &g * m;
    let alpha = alpha.unwrap_or_else(|| (&mtgm * &g).trace() / 6.0);
    let quad_res = linalg::frobenius(&(&mtgm - &g * alpha)) / (mnorm * mnorm);
    if quad_res > 1e-8 {
        return Err(Error::NotQuadratic { residual: quad_res });
    }
    let axion_part = CMat::identity(6, 6) * (m.trace() / 6.0);
    if linalg::frobenius(&(m - axion_part)) <= tol::REL * mnorm {
        return Err(Error::DegenerateAxion);
    }
    if alpha.norm() <= tol::REL * mnorm * mnorm {
        return Err(Error::Invalid("α must be nonzero".into()));
    }

    let s = split_3d(medium);
    let cond = |x: &Mat3| linalg::inverse3_with_cond(x).1;
    let conds = [cond(&s.alpha_d), cond(&s.eps_prime), cond(&s.mu_inv), cond(&s.beta_d)];
    let inv = conds.map(|k| k < tols.invertible_cond);
    let [a_inv, e_inv, m_inv, b_inv] = inv;
    if a_inv == m_inv {
        return Err(Error::Impasse(format!(
            "{} of ᾱ, μ̄⁻¹ is invertible (conditions {:.3e}, {:.3e})",
            if a_inv { "each" } else { "neither" },
            conds[0],
            conds[2]
        )));
    }
    if e_inv == b_inv {
        return Err(Error::Impasse(format!(
            "{} of ε̄′, β̄ is invertible (conditions {:.3e}, {:.3e})",
            if e_inv { "each" } else { "neither" },
            conds[1],
            conds[3]
        )));
    }
    let pair = match (a_inv, b_inv) {
        (true, true) => InvertiblePair::AlphaBeta,
        (false, false) => InvertiblePair::MuInvEps,
        (true, false) => return Err(Error::Impasse("ᾱ and ε̄′ invertible leads to a contradiction".into())),
        (false, true) => return Err(Error::Impasse("μ̄⁻¹ and β̄ invertible leads to a contradiction".into())),
    };
    let mut warnings = Vec::new();
    let used: &[(usize, &str)] = match pair {
        InvertiblePair::AlphaBeta => &[(0, "ᾱ"), (3, "β̄")],
        InvertiblePair::MuInvEps => &[(2, "μ̄⁻¹"), (1, "ε̄′")],
    };
    for &(i, name) in used {
        if conds[i] > tol::WARN_COND {
            warnings.push(format!(
                "ill-conditioned classification: {name} has condition estimate {:.3e}",
                conds[i]
            ));
        }
    }

    let (a, e, mi, b) = (s.alpha_d, s.eps_prime, s.mu_inv, s.beta_d);
    let p = uncross(&(a.transpose() * mi));
    let w = uncross(&(b.transpose() * e));
    let (kind, x, raw, scale, a_root, x_residual) = match pair {
        InvertiblePair::AlphaBeta => {
            let x = a.transpose() * b;
            let (ar, xres) = uniaxial_root(&x, &p, &w, alpha)?;
            let det_x = x.determinant();
            let det_b = b.determinant();
            let pm = embed(&(b * det_x)) - outer4((&(b * w), det_b), (&p, ar)) * ar;
            let m0 = c(1.0) / (ar * ar * det_x * det_b);
            (QuadraticKind::PMedium, x, pm, m0, ar, xres)
        }
        InvertiblePair::MuInvEps => {
            let x = mi.transpose() * e;
            let (ar, xres) = uniaxial_root(&x, &p, &w, alpha)?;
            let y = mi.try_inverse().ok_or_else(|| Error::Singular("μ̄⁻¹ block".into()))?;
            let det_y = y.determinant();
            let qm = embed(&(y.transpose() * x)) - outer4((&(y.transpose() * w), -ar * ar * det_y), (&p, -ar)) / ar;
            let m0 = -c(1.0) / (ar * ar * det_y);
            (QuadraticKind::QMedium, x, qm, m0, ar, xres)
        }
    };
    let scale_relation_residual = (alpha + x.determinant() / (a_root * a_root)).norm() / alpha.norm();

    let (recovered_m, k) = normalize(&raw);
    let scale = scale * k * k;
    let (tags, target) = match kind {
        QuadraticKind::PMedium => (P_MAP, m.clone()),
        QuadraticKind::QMedium => (Q_MAP, medium.mg().matrix().clone()),
    };
    let recovered = Dyadic::new(tags.0, tags.1, recovered_m)?;
    let rebuilt = compound(&recovered, 2)?.matrix() * scale;
    let residual = linalg::max_abs(&(&rebuilt - &target)) / linalg::max_abs(&target);
    Ok(QuadraticClassification {
        kind,
        recovered,
        scale,
        invertible_pair: pair,
        alpha,
        a_root,
        x_residual,
        scale_relation_residual,
        residual,
        conditions: conds,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rnd(rng: &mut ChaCha8Rng) -> CMat {
        CMat::from_fn(4, 4, |_, _| c(rng.random_range(-1.0..1.0)))
    }

    fn same_up_to_scale(x: &CMat, y: &CMat) -> f64 {
        let (nx, _) = normalize(x);
        let (ny, _) = normalize(y);
        linalg::max_abs(&(nx - ny))
    }

    #[test]
    fn recovers_p_and_q_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..10 {
            let p0 = rnd(&mut rng);
            let med = Medium::p_medium(c(0.9), &Dyadic::new(P_MAP.0, P_MAP.1, p0.clone()).unwrap()).unwrap();
            let r = classify_quadratic_medium(&med, None, &Tolerances::default()).unwrap();
            assert_eq!(r.kind, QuadraticKind::PMedium);
            assert!(r.residual < 1e-8, "{}", r.residual);
            assert!(same_up_to_scale(r.recovered.matrix(), &p0) < 1e-7);
            assert!(r.x_residual < 1e-8 && r.scale_relation_residual < 1e-8);

            let q0 = rnd(&mut rng);
            let med = Medium::q_medium(c(0.8), &Dyadic::new(Q_MAP.0, Q_MAP.1, q0.clone()).unwrap()).unwrap();
            let r = classify_quadratic_medium(&med, None, &Tolerances::default()).unwrap();
            assert_eq!(r.kind, QuadraticKind::QMedium);
            assert!(r.residual < 1e-8, "{}", r.residual);
            assert!(same_up_to_scale(r.recovered.matrix(), &q0) < 1e-7);
        }
    }

    #[test]
    fn rejects_axion_and_non_quadratic() {
        let t = Tolerances::default();
        assert!(matches!(
            classify_quadratic_medium(&Medium::axion(c(1.3)), None, &t),
            Err(Error::DegenerateAxion)
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let m = CMat::from_fn(6, 6, |_, _| c(rng.random_range(-1.0..1.0)));
        let med = Medium::from_m(Dyadic::new(crate::dyadics::MEDIUM.0, crate::dyadics::MEDIUM.1, m).unwrap()).unwrap();
        assert!(matches!(
            classify_quadratic_medium(&med, None, &t),
            Err(Error::NotQuadratic { .. })
        ));
    }
}

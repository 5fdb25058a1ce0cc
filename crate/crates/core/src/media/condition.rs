//! The decomposability condition
//! `α e_N⌊I^(2)ᵀ + β(M_g + M_gᵀ) + γ M_gᵀ·M_g = A B + B A`
//! and its detector.

use std::collections::BTreeMap;

use crate::dyadics::{compound, lift_matrix, Dyadic, MODIFIED, P_MAP, Q_MAP};
use crate::error::{Error, Result};
use crate::exterior::KVector;
use crate::linalg::{self, CMat, CVec};
use crate::media::{Medium, Provenance};
use crate::{c, Scalar};

/// Scalars and bivectors satisfying the condition, plus the Frobenius norm
/// of the remaining defect.
#[derive(Debug, Clone, PartialEq)]
pub struct Dc1Witness {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub a: KVector,
    pub b: KVector,
    pub residual: f64,
}

/// `α G + β(M_g + M_gᵀ) + γ M_gᵀ G M_g`; the dot in `M_gᵀ·M_g` lowers the
/// middle bivector index through `G`.
fn left_side(mg: &CMat, alpha: Scalar, beta: Scalar, gamma: Scalar) -> CMat {
    let g = lift_matrix();
    let mut s = &g * alpha + (mg + mg.transpose()) * beta;
    if gamma != c(0.0) {
        s += mg.transpose() * &g * mg * gamma;
    }
    s
}

fn dyad_sym(a: &KVector, b: &KVector) -> CMat {
    let (a, b) = (a.to_column(), b.to_column());
    &a * b.transpose() + &b * a.transpose()
}

/// Frobenius norm of the defect of the condition for `w` on `M_g`.
pub fn dc1_residual(mg: &Dyadic, w: &Dc1Witness) -> Result<f64> {
    mg.expect_spaces(MODIFIED, "modified medium dyadic")?;
    for x in [&w.a, &w.b] {
        if x.grade() != 2 {
            return Err(Error::GradeMismatch { expected: 2, found: x.grade() });
        }
    }
    let s = left_side(mg.matrix(), w.alpha, w.beta, w.gamma) - dyad_sym(&w.a, &w.b);
    Ok(linalg::frobenius(&s))
}

/// The QDCM/PDCM flavour of the linear map `D ↦ B − ½(D·D)C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcmKind {
    Qdcm,
    Pdcm,
}

/// Matrix `L` with `B = L D + ½(D·D) C`.
fn b_operator(kind: DcmKind, m: Scalar, generator: &Dyadic) -> Result<CMat> {
    match kind {
        DcmKind::Qdcm => {
            generator.expect_spaces(Q_MAP, "Q")?;
            Ok(compound(generator, 2)?.matrix().transpose() * lift_matrix() * m)
        }
        DcmKind::Pdcm => {
            generator.expect_spaces(P_MAP, "P")?;
            Ok(compound(generator, 2)?.matrix().transpose() * m)
        }
    }
}

fn class_params(medium: &Medium) -> Result<(DcmKind, Scalar, Scalar, Dyadic, KVector, KVector)> {
    let z = KVector::zero(2);
    match medium.provenance() {
        Provenance::Qdcm { alpha, m, q, d, c, .. } => Ok((DcmKind::Qdcm, *alpha, *m, q.clone(), d.clone(), c.clone())),
        Provenance::Pdcm { alpha, m, p, d, c, .. } => Ok((DcmKind::Pdcm, *alpha, *m, p.clone(), d.clone(), c.clone())),
        Provenance::QMedium { m, q } => Ok((DcmKind::Qdcm, c(0.0), *m, q.clone(), z.clone(), z)),
        Provenance::PMedium { m, p } => Ok((DcmKind::Pdcm, c(0.0), *m, p.clone(), z.clone(), z)),
        _ => Err(Error::MissingProvenance("QDCM, PDCM, Q or P construction parameters")),
    }
}

/// Wave-selecting bivectors `(A, B)` of a constructed medium.
///
/// For QDCM/PDCM, `A = C` and `B = L D + ½(D·D) C` with `L = M Q^(2)ᵀ·`
/// (resp. `M P^(2)ᵀ`); for SDCM they are the construction bivectors.
pub fn bivectors_ab(medium: &Medium) -> Result<(KVector, KVector)> {
    if let Provenance::Sdcm { a, b, .. } = medium.provenance() {
        return Ok((a.clone(), b.clone()));
    }
    let (kind, _, m, gen, d, cc) = class_params(medium)?;
    let l = b_operator(kind, m, &gen)?;
    let half_dd = d.dot(&d)? * 0.5;
    let b = &l * d.to_column() + cc.to_column() * half_dd;
    Ok((cc, KVector::from_column(2, &b)?))
}

/// Witness of the condition implied by the construction parameters.
///
/// QDCM/PDCM give `γ = 1`, `β = −α₀`, `α = α₀² − κ` with `κ = M² det Q`
/// (resp. `M² det P`). SDCM gives `γ = 0`, `β = 1`, `α = −2α₀` and the pair
/// `(A, 2B)`.
pub fn dc1_witness(medium: &Medium) -> Result<Dc1Witness> {
    let mut w = match medium.provenance() {
        Provenance::Sdcm { alpha, a, b, .. } => Dc1Witness {
            alpha: -*alpha * 2.0,
            beta: c(1.0),
            gamma: c(0.0),
            a: a.clone(),
            b: b * c(2.0),
            residual: 0.0,
        },
        _ => {
            let (_, alpha0, m, gen, _, _) = class_params(medium)?;
            let (a, b) = bivectors_ab(medium)?;
            let kappa = m * m * linalg::det(gen.matrix());
            Dc1Witness {
                alpha: alpha0 * alpha0 - kappa,
                beta: -alpha0,
                gamma: c(1.0),
                a,
                b,
                residual: 0.0,
            }
        }
    };
    w.residual = dc1_residual(medium.mg(), &w)?;
    Ok(w)
}

/// All `D` reproducing `B` through `B = L D + ½(D·D) A`.
///
/// Writing `D = u − t v` with `u = L⁻¹B`, `v = L⁻¹A` and `t = ½ D·D` gives
/// `½(v·v) t² − (u·v + 1) t + ½(u·u) = 0`; each root yields one `D`.
pub fn solve_d_from_ab(kind: DcmKind, m: Scalar, generator: &Dyadic, a: &KVector, b: &KVector) -> Result<Vec<KVector>> {
    for x in [a, b] {
        if x.grade() != 2 {
            return Err(Error::GradeMismatch { expected: 2, found: x.grade() });
        }
    }
    let l = b_operator(kind, m, generator)?;
    let linv = linalg::inverse(&l, crate::tol::INVERTIBLE_COND)
        .ok_or_else(|| Error::Singular("the map D ↦ B is not invertible".into()))?;
    let u = KVector::from_column(2, &(&linv * b.to_column()))?;
    let v = KVector::from_column(2, &(&linv * a.to_column()))?;
    let qa = v.dot(&v)? * 0.5;
    let qb = -(u.dot(&v)? + 1.0);
    let qc = u.dot(&u)? * 0.5;
    let scale = qa.norm().max(qb.norm()).max(qc.norm());
    let ts: Vec<Scalar> = if qa.norm() <= 1e-14 * scale {
        if qb.norm() <= 1e-14 * scale {
            return Err(Error::Singular("quadratic for ½(D·D) degenerates".into()));
        }
        vec![-qc / qb]
    } else {
        let (r1, r2) = quadratic_roots(qa, qb, qc);
        vec![r1, r2]
    };
    Ok(ts.into_iter().map(|t| &u - &(&v * t)).collect())
}

/// Roots of `a t² + b t + c` (`a ≠ 0`) without cancellation.
pub(crate) fn quadratic_roots(a: Scalar, b: Scalar, c0: Scalar) -> (Scalar, Scalar) {
    let disc = (b * b - a * c0 * 4.0).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() == 0.0 {
        return (c(0.0), c(0.0));
    }
    (q / a, c0 / q)
}

/// Splits a symmetric matrix of rank ≤ 2 into `A Bᵀ + B Aᵀ`.
///
/// On an orthonormal basis `U` of the range, `S = U C Uᵀ` with a 2×2
/// symmetric `C`; factoring the binary quadratic form of `C` into two
/// linear factors gives the pair. The result is unique up to swapping and
/// `(A, B) → (kA, B/k)`.
pub fn factor_rank2(s: &CMat) -> Result<(KVector, KVector)> {
    if s.shape() != (6, 6) {
        return Err(Error::Invalid("rank-2 factorization expects a 6×6 matrix".into()));
    }
    let d = linalg::svd(s);
    let u = d.u.columns(0, 2).into_owned();
    let cm = u.adjoint() * s * u.map(|z| z.conj());
    let (c11, c12, c22) = (cm[(0, 0)], (cm[(0, 1)] + cm[(1, 0)]) * 0.5, cm[(1, 1)]);
    let big = c11.norm().max(c12.norm()).max(c22.norm());
    let tiny = 1e-14 * big;
    let (a2, b2) = if big == 0.0 {
        (CVec::zeros(2), CVec::zeros(2))
    } else if c11.norm() >= c22.norm() && c11.norm() > tiny {
        // c11 x² + 2 c12 xy + c22 y² = c11 (x − t1 y)(x − t2 y)
        let (t1, t2) = quadratic_roots(c11, c12 * 2.0, c22);
        (
            CVec::from_vec(vec![c(1.0), -t1]),
            CVec::from_vec(vec![c(1.0), -t2]) * (c11 * 0.5),
        )
    } else if c22.norm() > tiny {
        let (s1, s2) = quadratic_roots(c22, c12 * 2.0, c11);
        (
            CVec::from_vec(vec![-s1, c(1.0)]),
            CVec::from_vec(vec![-s2, c(1.0)]) * (c22 * 0.5),
        )
    } else {
        (CVec::from_vec(vec![c(1.0), c(0.0)]), CVec::from_vec(vec![c(0.0), c12]))
    };
    // balance the norms of the two factors
    let (na, nb) = (a2.norm(), b2.norm());
    let k = if na > 0.0 && nb > 0.0 { (nb / na).sqrt() } else { 1.0 };
    let (a2, b2) = (a2 * c(k), b2 / c(k));
    let a = KVector::new(2, (&u * a2).iter().copied().collect())?;
    let b = KVector::new(2, (&u * b2).iter().copied().collect())?;
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectOptions {
    /// Grid points of the coarse `β` scan.
    pub grid: usize,
    /// Acceptance: `σ₃² + … + σ₆² ≤ accept · ‖S‖²`.
    pub accept: f64,
    /// Number of scan minima refined.
    pub candidates: usize,
    pub search_gamma1: bool,
    pub search_gamma0: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            grid: 601,
            accept: 1e-8,
            candidates: 4,
            search_gamma1: true,
            search_gamma0: true,
        }
    }
}

/// Mean and spread of the tightest cluster of four values among six.
fn tightest_quadruple(ev: &[Scalar]) -> (f64, Scalar) {
    let mut best = (f64::INFINITY, c(0.0));
    for sub in linalg::subsets(ev.len(), 4) {
        let mean: Scalar = sub.iter().map(|&i| ev[i]).sum::<Scalar>() / 4.0;
        let spread = sub.iter().map(|&i| (ev[i] - mean).norm()).fold(0.0, f64::max);
        if spread < best.0 {
            best = (spread, mean);
        }
    }
    best
}

fn tail_ratio(s: &CMat) -> f64 {
    let sv = linalg::singular_values(s);
    let total: f64 = sv.iter().map(|x| x * x).sum();
    if total == 0.0 {
        return 0.0;
    }
    sv[2..].iter().map(|x| x * x).sum::<f64>() / total
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Nelder–Mead on a small real parameter vector.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, iters: usize) -> Vec<f64> {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = (0..=n)
        .map(|i| {
            let mut x = x0.to_vec();
            if i > 0 {
                x[i - 1] += step;
            }
            let v = f(&x);
            (x, v)
        })
        .collect();
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        // collapsed simplex: no further progress at this step size
        if simplex[n].1 - simplex[0].1 <= 1e-9 * simplex[0].1 + 1e-26 {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|k| simplex[..n].iter().map(|p| p.0[k]).sum::<f64>() / n as f64).collect();
        let lerp = |t: f64| -> Vec<f64> { (0..n).map(|k| centroid[k] + t * (simplex[n].0[k] - centroid[k])).collect() };
        let xr = lerp(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = lerp(-2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let xc = lerp(0.5);
            let fc = f(&xc);
            if fc < simplex[n].1 {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    p.0 = (0..n).map(|k| best[k] + 0.5 * (p.0[k] - best[k])).collect();
                    p.1 = f(&p.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0).0
}

fn witness_from(mg: &CMat, alpha: Scalar, beta: Scalar, gamma: Scalar, accept: f64) -> Option<Dc1Witness> {
    let s = left_side(mg, alpha, beta, gamma);
    if tail_ratio(&s) > accept {
        return None;
    }
    let (a, b) = factor_rank2(&s).ok()?;
    let residual = linalg::frobenius(&(&s - dyad_sym(&a, &b)));
    Some(Dc1Witness { alpha, beta, gamma, a, b, residual })
}

/// Searches for witnesses of the condition on `M_g`.
///
/// For `γ = 1`, `S G = α I + β H + K` with `H = (M_g + M_gᵀ)G` and
/// `K = M_gᵀ G M_g G`; `S` has rank ≤ 2 exactly when `βH + K` has a
/// fourfold eigenvalue `−α`. The detector scans real `β`, refines the
/// tightest four-eigenvalue cluster, and polishes `(α, β)` over the complex
/// plane on the singular-value tail. For `γ = 0` the cluster is read off
/// `H` directly.
///
/// An empty result means no witness was found by this search; it does not
/// show that the medium is not decomposable.
pub fn detect_dcm(mg: &Dyadic, opts: &DetectOptions) -> Result<Vec<Dc1Witness>> {
    mg.expect_spaces(MODIFIED, "modified medium dyadic")?;
    let mgm = mg.matrix();
    let g = lift_matrix();
    let h = (mgm + mgm.transpose()) * &g;
    let mut found = Vec::new();

    if opts.search_gamma0 {
        if let Some(ev) = linalg::eigenvalues(&h) {
            let (_, mean) = tightest_quadruple(&ev);
            if let Some(w) = polish(mgm, -mean, c(1.0), c(0.0), opts.accept, false) {
                found.push(w);
            }
        }
    }

    if opts.search_gamma1 {
        let k = mgm.transpose() * &g * mgm * &g;
        let nrm = linalg::frobenius(mgm).max(1e-300);
        let ax = ((&g * mgm).trace() / 6.0).re;
        let span = 2.0 * nrm;
        let (lo, hi) = (-ax - span, -ax + span);
        let n = opts.grid.max(3);
        let spread_at = |beta: f64| {
            linalg::eigenvalues(&(&h * c(beta) + &k))
                .map_or((f64::INFINITY, c(0.0)), |ev| tightest_quadruple(&ev))
        };
        let betas: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let costs: Vec<f64> = betas.iter().map(|&b| spread_at(b).0).collect();
        // local minima of the scan, best first
        let mut minima: Vec<usize> = (0..n)
            .filter(|&i| (i == 0 || costs[i] <= costs[i - 1]) && (i == n - 1 || costs[i] <= costs[i + 1]))
            .collect();
        minima.sort_by(|&i, &j| costs[i].total_cmp(&costs[j]));
        for &i in minima.iter().take(opts.candidates) {
            let (a, b) = (betas[i.saturating_sub(1)], betas[(i + 1).min(n - 1)]);
            let beta = golden_min(|x| spread_at(x).0, a, b, 90);
            let (_, mean) = spread_at(beta);
            if let Some(w) = polish(mgm, -mean, c(beta), c(1.0), opts.accept, true) {
                found.push(w);
            }
        }
    }

    // drop duplicates found from neighbouring minima
    let mut unique: BTreeMap<(i8, i64, i64), Dc1Witness> = BTreeMap::new();
    let scale = linalg::frobenius(mgm).max(1.0);
    // a vanishing tail ratio alone also admits γ = 1 points running off to
    // infinity along a γ = 0 witness; demand a small absolute residual too
    let limit = |w: &Dc1Witness| accept_limit(w.gamma, scale, opts.accept);
    for w in found.into_iter().filter(|w| w.residual <= limit(w)) {
        let key = (
            w.gamma.re as i8,
            (w.beta.re / scale * 1e6).round() as i64,
            (w.beta.im / scale * 1e6).round() as i64,
        );
        let keep = unique.get(&key).is_none_or(|old| w.residual < old.residual);
        if keep {
            unique.insert(key, w);
        }
    }
    let mut out: Vec<Dc1Witness> = unique.into_values().collect();
    out.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    Ok(out)
}

/// Largest residual accepted at the natural size of `S`, `‖M_g‖` for
/// `γ = 0` and `‖M_g‖²` for `γ = 1`.
fn accept_limit(gamma: Scalar, scale: f64, accept: f64) -> f64 {
    let size = if gamma == c(0.0) { scale } else { scale * scale };
    accept.sqrt() * size
}

/// Accepts `(α, β)` directly or after a Nelder–Mead polish of the
/// singular-value tail.
fn polish(mg: &CMat, alpha: Scalar, beta: Scalar, gamma: Scalar, accept: f64, free_beta: bool) -> Option<Dc1Witness> {
    let tail = |al: Scalar, be: Scalar| tail_ratio(&left_side(mg, al, be, gamma));
    if tail(alpha, beta) <= accept * 1e-6 {
        return witness_from(mg, alpha, beta, gamma, accept);
    }
    let scale = linalg::frobenius(mg).max(1e-12);
    let a_scale = if gamma == c(0.0) { scale } else { scale * scale };
    let unpack = |x: &[f64]| -> (Scalar, Scalar) {
        let al = Scalar::new(x[0], x[1]) * a_scale;
        let be = if free_beta { Scalar::new(x[2], x[3]) * scale } else { beta };
        (al, be)
    };
    let mut x0 = vec![alpha.re / a_scale, alpha.im / a_scale];
    if free_beta {
        x0.extend([beta.re / scale, beta.im / scale]);
    }
    let f = |x: &[f64]| {
        let (al, be) = unpack(x);
        tail(al, be)
    };
    let mut x = x0;
    let mut step = 1e-3;
    let mut last = f(&x);
    for _ in 0..4 {
        x = nelder_mead(&f, &x, step, 400);
        let now = f(&x);
        // stuck on a plateau: finer restarts will not reach a witness
        if now > 0.99 * last && now > accept {
            break;
        }
        last = now;
        step *= 1e-2;
    }
    let (al, be) = unpack(&x);
    witness_from(mg, al, be, gamma, accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadics::{Q_MAP, BO_MAP};
    use crate::media::{construct_pdcm, construct_qdcm, construct_sdcm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rnd_mat(rng: &mut ChaCha8Rng, r: usize, cc: usize) -> CMat {
        CMat::from_fn(r, cc, |_, _| c(rng.random_range(-1.0..1.0)))
    }
    fn rnd_biv(rng: &mut ChaCha8Rng) -> KVector {
        KVector::from_column(2, &rnd_mat(rng, 6, 1)).unwrap()
    }

    #[test]
    fn axion_witness_pattern() {
        let med = Medium::axion(c(0.6));
        let w = Dc1Witness {
            alpha: c(-1.2),
            beta: c(1.0),
            gamma: c(0.0),
            a: KVector::zero(2),
            b: KVector::zero(2),
            residual: 0.0,
        };
        assert!(dc1_residual(med.mg(), &w).unwrap() < 1e-15);
    }

    #[test]
    fn random_medium_random_witness_is_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mg = Dyadic::new(MODIFIED.0, MODIFIED.1, rnd_mat(&mut rng, 6, 6)).unwrap();
        let w = Dc1Witness {
            alpha: c(0.3),
            beta: c(-0.2),
            gamma: c(1.0),
            a: rnd_biv(&mut rng),
            b: rnd_biv(&mut rng),
            residual: 0.0,
        };
        assert!(dc1_residual(&mg, &w).unwrap() > 1e-3);
    }

    #[test]
    fn constructed_witnesses_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let q = Dyadic::new(Q_MAP.0, Q_MAP.1, rnd_mat(&mut rng, 4, 4)).unwrap();
            let p = Dyadic::new(P_MAP.0, P_MAP.1, rnd_mat(&mut rng, 4, 4)).unwrap();
            let (d, cc) = (rnd_biv(&mut rng), rnd_biv(&mut rng));
            let (al, m) = (c(rng.random_range(-1.0..1.0)), c(rng.random_range(0.2..1.5)));
            for med in [
                construct_qdcm(al, m, &q, &d, &cc).unwrap(),
                construct_pdcm(al, m, &p, &d, &cc).unwrap(),
            ] {
                assert!(dc1_witness(&med).unwrap().residual < 1e-9);
            }
            let mut bo = rnd_mat(&mut rng, 4, 4);
            let tr = bo.trace();
            bo[(3, 3)] -= tr;
            let bo = Dyadic::new(BO_MAP.0, BO_MAP.1, bo).unwrap();
            let med = construct_sdcm(al, &bo, &d, &cc).unwrap();
            assert!(dc1_witness(&med).unwrap().residual < 1e-9);
        }
    }

    #[test]
    fn bivectors_collapse_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = Dyadic::new(Q_MAP.0, Q_MAP.1, rnd_mat(&mut rng, 4, 4)).unwrap();
        let d = rnd_biv(&mut rng);
        let cc = rnd_biv(&mut rng);
        let med = construct_qdcm(c(0.1), c(0.9), &q, &KVector::zero(2), &cc).unwrap();
        let (a, b) = bivectors_ab(&med).unwrap();
        assert_eq!(a, cc);
        assert!(b.is_zero(0.0));
        let med = construct_qdcm(c(0.1), c(0.9), &q, &d, &KVector::zero(2)).unwrap();
        let (_, b) = bivectors_ab(&med).unwrap();
        let want = compound(&q, 2).unwrap().matrix().transpose() * lift_matrix() * d.to_column() * c(0.9);
        assert!((b.to_column() - want).norm() < 1e-14);
        assert!(matches!(bivectors_ab(&Medium::axion(c(1.0))), Err(Error::MissingProvenance(_))));
    }

    #[test]
    fn solve_d_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for kind in [DcmKind::Qdcm, DcmKind::Pdcm] {
            let tags = if kind == DcmKind::Qdcm { Q_MAP } else { P_MAP };
            let gen = Dyadic::new(tags.0, tags.1, rnd_mat(&mut rng, 4, 4)).unwrap();
            let (d, a) = (rnd_biv(&mut rng), rnd_biv(&mut rng));
            let m = c(0.8);
            let l = b_operator(kind, m, &gen).unwrap();
            let b = KVector::from_column(2, &(&l * d.to_column() + a.to_column() * (d.dot(&d).unwrap() * 0.5))).unwrap();
            let sols = solve_d_from_ab(kind, m, &gen, &a, &b).unwrap();
            assert_eq!(sols.len(), 2);
            assert!(sols.iter().any(|s| (s - &d).norm() < 1e-9));
            for s in &sols {
                let fwd = &l * s.to_column() + a.to_column() * (s.dot(s).unwrap() * 0.5);
                assert!((fwd - b.to_column()).norm() < 1e-9);
            }
            let only = solve_d_from_ab(kind, m, &gen, &KVector::zero(2), &b).unwrap();
            assert_eq!(only.len(), 1);
            let zero_b = solve_d_from_ab(kind, m, &gen, &a, &KVector::zero(2)).unwrap();
            assert!(zero_b.iter().any(|s| s.norm() < 1e-12));
        }
    }

    #[test]
    fn rank2_factorization_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (a, b) = (rnd_biv(&mut rng), rnd_biv(&mut rng));
            let s = dyad_sym(&a, &b);
            let (x, y) = factor_rank2(&s).unwrap();
            let e = linalg::frobenius(&(dyad_sym(&x, &y) - &s));
            assert!(e < 1e-12, "{e}");
        }
        // a sum of two squares needs complex factors
        let e12 = KVector::e(1).wedge(&KVector::e(2)).unwrap();
        let a = rnd_biv(&mut rng);
        let s = dyad_sym(&a, &a) + dyad_sym(&e12, &e12);
        let (x, y) = factor_rank2(&s).unwrap();
        assert!(linalg::frobenius(&(dyad_sym(&x, &y) - &s)) < 1e-12);
    }

    #[test]
    fn detector_finds_constructed_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let q = Dyadic::new(Q_MAP.0, Q_MAP.1, rnd_mat(&mut rng, 4, 4)).unwrap();
        let (d, cc) = (rnd_biv(&mut rng), rnd_biv(&mut rng));
        let med = construct_qdcm(c(0.4), c(1.1), &q, &d, &cc).unwrap();
        let ws = detect_dcm(med.mg(), &DetectOptions::default()).unwrap();
        assert!(ws.iter().any(|w| w.gamma == c(1.0) && w.residual < 1e-8));
        let mut bo = rnd_mat(&mut rng, 4, 4);
        let tr = bo.trace();
        bo[(0, 0)] -= tr;
        let bo = Dyadic::new(BO_MAP.0, BO_MAP.1, bo).unwrap();
        let med = construct_sdcm(c(0.2), &bo, &d, &cc).unwrap();
        let ws = detect_dcm(med.mg(), &DetectOptions::default()).unwrap();
        assert!(ws.iter().any(|w| w.gamma == c(0.0) && w.residual < 1e-8));
    }

    #[test]
    fn detector_rejects_gamma_one_points_at_infinity() {
        let mut s = crate::sample::Sampler::new(12);
        s.qdcm().unwrap();
        let med = s.sdcm().unwrap();
        let ws = detect_dcm(med.mg(), &DetectOptions::default()).unwrap();
        assert!(!ws.is_empty());
        for w in &ws {
            assert!(w.residual < 1e-8, "{w:?}");
        }
    }
}

//! Plane-wave dispersion and the A/B-wave decomposition.
//!
//! For a plane wave `Φ = ν∧φ` the potential obeys `D(ν)|φ = 0` with the
//! dispersion dyadic `D(ν) = νν⌋⌋M_g`. Its third compound is proportional
//! to `(e_N⌊ν)(e_N⌊ν)`; the proportionality factor `Δ(ν)` is a homogeneous
//! quartic in `ν`, and for the decomposable classes it factors into two
//! quadratics whose roots carry A-waves and B-waves respectively.

mod planewave;

pub use planewave::{classify_wave, solve_plane_wave, Fields3d, PlaneWave, WaveClass, WaveTag};

use crate::dyadics::{self, lift_matrix, Dyadic};
use crate::error::{Error, Result};
use crate::exterior::{antisymmetric_matrix, lift_en, KForm};
use crate::linalg::{self, CMat, CVec};
use crate::media::{Medium, Provenance};
use crate::{c, Scalar};

/// Exponents `(a, b, c, d)` of the 35 quartic monomials `ν₁^a ν₂^b ν₃^c ν₄^d`,
/// in descending lexicographic order (`ν₁⁴` first, `ν₄⁴` last).
pub fn quartic_monomials() -> &'static [[u8; 4]; 35] {
    static MONOMIALS: std::sync::OnceLock<[[u8; 4]; 35]> = std::sync::OnceLock::new();
    MONOMIALS.get_or_init(|| {
        let mut out = [[0u8; 4]; 35];
        let mut n = 0;
        for a in (0..=4u8).rev() {
            for b in (0..=4 - a).rev() {
                for cc in (0..=4 - a - b).rev() {
                    out[n] = [a, b, cc, 4 - a - b - cc];
                    n += 1;
                }
            }
        }
        out
    })
}

fn monomial_index(e: [u8; 4]) -> usize {
    quartic_monomials().iter().position(|&m| m == e).expect("degree-4 exponent")
}

fn monomial_value(e: &[u8; 4], nu: &[Scalar]) -> Scalar {
    e.iter().zip(nu).map(|(&k, x)| x.powu(k as u32)).product()
}

/// Quadratic form `q(ν) = ν|S|ν` on one-forms with symmetric `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    s: CMat,
}

impl QuadraticForm {
    /// Symmetric part of a 4×4 matrix.
    pub fn from_matrix(m: &CMat) -> Result<Self> {
        if m.shape() != (4, 4) {
            return Err(Error::Invalid(format!("quadratic form needs a 4x4 matrix, got {:?}", m.shape())));
        }
        if m.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::NonFinite("quadratic form"));
        }
        Ok(QuadraticForm {
            s: (m + m.transpose()) * c(0.5),
        })
    }

    pub fn zero() -> Self {
        QuadraticForm { s: CMat::zeros(4, 4) }
    }

    pub fn matrix(&self) -> &CMat {
        &self.s
    }

    pub fn eval(&self, nu: &KForm) -> Scalar {
        let v = nu.to_column();
        (v.transpose() * &self.s * &v)[(0, 0)]
    }

    pub fn norm(&self) -> f64 {
        linalg::frobenius(&self.s)
    }

    /// Coefficients over the 10 quadratic monomials, keyed by exponent.
    fn terms(&self) -> Vec<([u8; 4], Scalar)> {
        let mut out = Vec::with_capacity(10);
        for i in 0..4 {
            for j in i..4 {
                let mut e = [0u8; 4];
                e[i] += 1;
                e[j] += 1;
                let k = if i == j { self.s[(i, i)] } else { self.s[(i, j)] * 2.0 };
                out.push((e, k));
            }
        }
        out
    }

    /// The quartic `q₁ q₂`.
    pub fn product(&self, other: &QuadraticForm) -> QuarticForm {
        let mut coeffs = vec![c(0.0); 35];
        for (e1, k1) in self.terms() {
            for (e2, k2) in other.terms() {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                coeffs[monomial_index(e)] += k1 * k2;
            }
        }
        QuarticForm { coeffs, fit_residual: 0.0 }
    }
}

/// Homogeneous quartic in `ν`, coefficients ordered as [`quartic_monomials`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticForm {
    pub coeffs: Vec<Scalar>,
    /// Relative residual of the interpolating fit (zero for exact products).
    pub fit_residual: f64,
}

impl QuarticForm {
    pub fn eval(&self, nu: &KForm) -> Scalar {
        quartic_monomials()
            .iter()
            .zip(&self.coeffs)
            .map(|(e, k)| k * monomial_value(e, nu.coords()))
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }
}

/// `M_g` with its axion part `(tr M / 6) e_N⌊I^(2)ᵀ` removed.
fn mg_without_axion(medium: &Medium) -> Dyadic {
    let g = lift_matrix();
    let axion = medium.m().trace() / 6.0;
    let mg = medium.mg().matrix() - g * axion;
    Dyadic::new(dyadics::MODIFIED.0, dyadics::MODIFIED.1, mg).expect("finite medium")
}

/// Dispersion dyadic `D(ν) = νν⌋⌋M_g` (one-forms → vectors), axion removed.
pub fn dispersion_dyadic(medium: &Medium, nu: &KForm) -> Result<Dyadic> {
    dyadics::double_contract_nu(&mg_without_axion(medium), nu)
}

/// Scalar dispersion function `Δ(ν)`, defined by
/// `D^(3)(ν) = Δ(ν) (e_N⌊ν)(e_N⌊ν)` and read off the diagonal entry with
/// the largest denominator.
pub fn dispersion_scalar(medium: &Medium, nu: &KForm) -> Result<Scalar> {
    let (c3, t) = third_compound_and_trivector(medium, nu)?;
    let k = (0..4)
        .max_by(|&i, &j| t[i].norm().total_cmp(&t[j].norm()))
        .expect("four entries");
    if t[k].norm() == 0.0 {
        return Err(Error::Invalid("dispersion needs a nonzero wave one-form".into()));
    }
    Ok(c3[(k, k)] / (t[k] * t[k]))
}

/// `D^(3)(ν)` and the coordinates of `e_N⌊ν`.
pub(crate) fn third_compound_and_trivector(medium: &Medium, nu: &KForm) -> Result<(CMat, Vec<Scalar>)> {
    if nu.grade() != 1 {
        return Err(Error::GradeMismatch { expected: 1, found: nu.grade() });
    }
    let d = dispersion_dyadic(medium, nu)?;
    let c3 = linalg::compound(d.matrix(), 3);
    Ok((c3, lift_en(nu).coords().to_vec()))
}

/// Nonzero lattice points of `{-2..2}⁴` with positive first nonzero entry.
fn fit_points() -> Vec<[f64; 4]> {
    let mut out = Vec::new();
    for a in -2..=2i32 {
        for b in -2..=2i32 {
            for cc in -2..=2i32 {
                for d in -2..=2i32 {
                    let p = [a, b, cc, d];
                    if p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                        out.push(p.map(f64::from));
                    }
                }
            }
        }
    }
    out
}

/// Interpolates the quartic `Δ(ν)` from 312 integer lattice samples.
///
/// Fails with [`Error::FitResidual`] when the least-squares residual
/// exceeds `1e-8` of the largest sample, which would mean `Δ` is not a
/// homogeneous quartic.
pub fn quartic_coefficients(medium: &Medium) -> Result<QuarticForm> {
    let points = fit_points();
    let mut a = CMat::zeros(points.len(), 35);
    let mut y = CVec::zeros(points.len());
    for (r, p) in points.iter().enumerate() {
        let nu = KForm::from_real(1, p)?;
        y[r] = dispersion_scalar(medium, &nu)?;
        let coords: Vec<Scalar> = p.iter().map(|&x| c(x)).collect();
        for (k, e) in quartic_monomials().iter().enumerate() {
            a[(r, k)] = monomial_value(e, &coords);
        }
    }
    let ymax = y.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if ymax == 0.0 {
        return Ok(QuarticForm {
            coeffs: vec![c(0.0); 35],
            fit_residual: 0.0,
        });
    }
    let x = linalg::lstsq(&a, &y);
    let resid = (&a * &x - &y).iter().map(|v| v.norm()).fold(0.0, f64::max) / ymax;
    let limit = 1e-8;
    if resid > limit {
        return Err(Error::FitResidual { residual: resid, limit });
    }
    Ok(QuarticForm {
        coeffs: x.iter().copied().collect(),
        fit_residual: resid,
    })
}

/// The two quadratic factors of the dispersion quartic predicted by the
/// construction, ordered `(A-wave factor, B-wave factor)`:
///
/// * QDCM: `Q` and `M Q − Ĉ Q⁻¹ D̂`;
/// * PDCM: `Ĉ P⁻¹` and `D̂ P`;
/// * SDCM: `B_o Â` and `B_o B̂`;
///
/// where `X̂` is the antisymmetric 4×4 matrix `X^{ij}` of a bivector. Q-media
/// give `(Q, Q)`; P-media and pure axion media have no dispersion
/// constraint and give two zero forms.
pub fn predicted_factors(medium: &Medium) -> Result<(QuadraticForm, QuadraticForm)> {
    match medium.provenance() {
        Provenance::Qdcm { m, q, d, c: cc, singular, .. } => {
            let qm = q.matrix();
            let qinv = invert(qm, *singular, "Q")?;
            let second = qm * *m - antisymmetric_matrix(cc)? * qinv * antisymmetric_matrix(d)?;
            Ok((QuadraticForm::from_matrix(qm)?, QuadraticForm::from_matrix(&second)?))
        }
        Provenance::Pdcm { p, d, c: cc, singular, .. } => {
            let pm = p.matrix();
            let pinv = invert(pm, *singular, "P")?;
            let first = antisymmetric_matrix(cc)? * pinv;
            let second = antisymmetric_matrix(d)? * pm;
            Ok((QuadraticForm::from_matrix(&first)?, QuadraticForm::from_matrix(&second)?))
        }
        Provenance::Sdcm { bo, a, b, .. } => {
            let first = bo.matrix() * antisymmetric_matrix(a)?;
            let second = bo.matrix() * antisymmetric_matrix(b)?;
            Ok((QuadraticForm::from_matrix(&first)?, QuadraticForm::from_matrix(&second)?))
        }
        Provenance::QMedium { q, .. } => {
            let f = QuadraticForm::from_matrix(q.matrix())?;
            Ok((f.clone(), f))
        }
        Provenance::PMedium { .. } | Provenance::Axion { .. } => Ok((QuadraticForm::zero(), QuadraticForm::zero())),
        Provenance::Raw => Err(Error::MissingProvenance("predicted dispersion factors")),
    }
}

fn invert(m: &CMat, singular: bool, name: &str) -> Result<CMat> {
    if singular {
        return Err(Error::Singular(format!("{name} (required by the second dispersion factor)")));
    }
    linalg::inverse(m, crate::tol::INVERTIBLE_COND).ok_or_else(|| Error::Singular(name.to_string()))
}

/// Outcome of comparing a quartic with a product of two quadratics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorCheck {
    /// `quartic ≈ scale · q₁q₂`.
    pub scale: Scalar,
    /// Largest coefficient deviation relative to the largest coefficient of
    /// either side.
    pub max_rel_err: f64,
}

/// Compares `quartic` against `scale · q₁q₂`, with `scale` taken from the
/// largest-magnitude monomial of the product.
pub fn factor_check(quartic: &QuarticForm, q1: &QuadraticForm, q2: &QuadraticForm) -> Result<FactorCheck> {
    let prod = q1.product(q2);
    let pmax = prod.max_abs();
    let qmax = quartic.max_abs();
    if pmax == 0.0 {
        if qmax == 0.0 {
            return Ok(FactorCheck {
                scale: c(0.0),
                max_rel_err: 0.0,
            });
        }
        return Err(Error::FactorMismatch(
            "predicted factors vanish identically but the quartic does not".into(),
        ));
    }
    let k = (0..35)
        .max_by(|&i, &j| prod.coeffs[i].norm().total_cmp(&prod.coeffs[j].norm()))
        .expect("35 coefficients");
    let scale = quartic.coeffs[k] / prod.coeffs[k];
    let norm = qmax.max(scale.norm() * pmax);
    let max_rel_err = if norm == 0.0 {
        0.0
    } else {
        quartic
            .coeffs
            .iter()
            .zip(&prod.coeffs)
            .map(|(a, b)| (a - b * scale).norm())
            .fold(0.0, f64::max)
            / norm
    };
    Ok(FactorCheck { scale, max_rel_err })
}

/// Free component tried first when sampling roots, then the fallbacks.
const FREE_ORDER: [usize; 3] = [3, 2, 1];

/// Points on the cone `q(ν) = 0` over a fixed direction.
///
/// The three given values fill the other components in increasing index
/// order and the free component (`ν₄`, falling back to `ν₃` then `ν₂` when
/// its quadratic coefficient vanishes) is solved for. Returns up to two
/// roots.
pub fn roots_along_direction(q: &QuadraticForm, fixed: [Scalar; 3]) -> Result<Vec<KForm>> {
    let s = q.matrix();
    let scale = q.norm().max(f64::MIN_POSITIVE);
    for &f in &FREE_ORDER {
        let nu = with_free(fixed, f, c(0.0));
        let a = s[(f, f)];
        let b = (0..4).filter(|&i| i != f).map(|i| s[(i, f)] * nu[i] * 2.0).sum::<Scalar>();
        let c0 = (nu.transpose() * s * &nu)[(0, 0)];
        if a.norm() <= 1e-12 * scale {
            continue;
        }
        let (r1, r2) = crate::media::quadratic_roots(a, b, c0);
        return [r1, r2].into_iter().map(|r| root_form(q, fixed, f, r)).collect();
    }
    // every candidate leading coefficient vanished: linear in ν₄
    let f = FREE_ORDER[0];
    let nu = with_free(fixed, f, c(0.0));
    let b = (0..4).filter(|&i| i != f).map(|i| s[(i, f)] * nu[i] * 2.0).sum::<Scalar>();
    let c0 = (nu.transpose() * s * &nu)[(0, 0)];
    if b.norm() <= 1e-12 * scale * nu.norm().max(1.0) {
        return Err(Error::DegenerateDirection);
    }
    Ok(vec![root_form(q, fixed, f, -c0 / b)?])
}

fn with_free(fixed: [Scalar; 3], free: usize, value: Scalar) -> CVec {
    let mut it = fixed.into_iter();
    CVec::from_fn(4, |i, _| if i == free { value } else { it.next().expect("three fixed values") })
}

fn root_form(q: &QuadraticForm, fixed: [Scalar; 3], free: usize, value: Scalar) -> Result<KForm> {
    let v = with_free(fixed, free, value);
    let nu = KForm::new(1, v.iter().copied().collect())?;
    let defect = q.eval(&nu).norm();
    let bound = 1e-9 * q.norm() * v.norm_squared();
    if defect > bound {
        return Err(Error::Inconsistent(format!("root defect {defect:e} exceeds {bound:e}")));
    }
    Ok(nu)
}

/// Roots of the full quartic `Δ` with `ν₄` free and `ν₁..ν₃` fixed,
/// refined by Newton steps on the univariate polynomial.
pub fn quartic_roots_along_direction(quartic: &QuarticForm, fixed: [Scalar; 3]) -> Result<Vec<KForm>> {
    let mut poly = [c(0.0); 5];
    for (e, k) in quartic_monomials().iter().zip(&quartic.coeffs) {
        let w: Scalar = (0..3).map(|i| fixed[i].powu(e[i] as u32)).product();
        poly[e[3] as usize] += k * w;
    }
    let pmax = poly.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if pmax == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    let deg = (0..5).rev().find(|&d| poly[d].norm() > 1e-12 * pmax).expect("nonzero polynomial");
    if deg == 0 {
        return Ok(Vec::new());
    }
    let mut companion = CMat::zeros(deg, deg);
    for j in 0..deg {
        companion[(0, j)] = -poly[deg - 1 - j] / poly[deg];
        if j + 1 < deg {
            companion[(j + 1, j)] = c(1.0);
        }
    }
    let roots = linalg::eigenvalues(&companion)
        .ok_or_else(|| Error::Inconsistent("companion eigenvalues did not converge".into()))?;
    let eval = |x: Scalar| {
        let mut p = c(0.0);
        let mut dp = c(0.0);
        for d in (0..=deg).rev() {
            dp = dp * x + p;
            p = p * x + poly[d];
        }
        (p, dp)
    };
    roots
        .into_iter()
        .map(|mut x| {
            for _ in 0..8 {
                let (p, dp) = eval(x);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                x -= step;
                if step.norm() <= 1e-16 * x.norm().max(1.0) {
                    break;
                }
            }
            KForm::new(1, vec![fixed[0], fixed[1], fixed[2], x])
        })
        .collect()
}

/// Quartic, predicted factors and their comparison for one medium.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionReport {
    pub quartic: QuarticForm,
    /// `(A-wave factor, B-wave factor)` when the construction is known.
    pub factors: Option<(QuadraticForm, QuadraticForm)>,
    pub check: Option<FactorCheck>,
    pub warnings: Vec<String>,
}

/// Runs the full dispersion analysis: fit, prediction and comparison.
pub fn dispersion_report(medium: &Medium) -> Result<DispersionReport> {
    let quartic = quartic_coefficients(medium)?;
    let mut warnings = Vec::new();
    if quartic.is_zero() {
        warnings.push("no dispersion constraint: the quartic vanishes identically".to_string());
    }
    let (factors, check) = match predicted_factors(medium) {
        Ok((q1, q2)) => {
            let check = factor_check(&quartic, &q1, &q2)?;
            (Some((q1, q2)), Some(check))
        }
        Err(Error::MissingProvenance(_)) => {
            warnings.push("medium has no construction provenance; factors not predicted".to_string());
            (None, None)
        }
        Err(e) => return Err(e),
    };
    Ok(DispersionReport {
        quartic,
        factors,
        check,
        warnings,
    })
}

//! Three-dimensional views of a medium.
//!
//! With `e4`/`ε4` as the temporal direction, a field two-form splits as
//! `Φ = B + E∧ε4` and an excitation two-form as `Ψ = D − H∧ε4`. Spatial
//! two-forms and vectors are written in the `(23, 31, 12)` and `(1, 2, 3)`
//! coordinates, so that `e123⌊` and `ε123⌊` act as identities on coordinate
//! arrays. The medium dyadic then becomes the block map
//!
//! ```text
//! D = ᾱ B + ε̄′ E
//! H = μ̄⁻¹ B + β̄ E
//! ```
//!
//! and the Gibbsian form is `D = ε E + ξ H`, `B = ζ E + μ H`.

use crate::dyadics::{Dyadic, BO_MAP};
use crate::error::{Error, Result};
use crate::exterior::KVector;
use crate::linalg::{self, cross, CMat, Mat3, Vec3};
use crate::media::{construct_sdcm, Dc1Witness, Medium};
use crate::{c, tol, Scalar};

/// `(B, E) ↦ Φ` as (slot, source, sign): `Φ12 = B3`, `Φ13 = −B2`,
/// `Φ23 = B1`, `Φ14 = E1`, `Φ24 = E2`, `Φ34 = E3`.
const FIELD: [(usize, usize, f64); 6] = [(0, 2, 1.0), (1, 1, -1.0), (3, 0, 1.0), (2, 3, 1.0), (4, 4, 1.0), (5, 5, 1.0)];
/// `(D, H) ↦ Ψ`: as above with `Ψ14 = −H1`, `Ψ24 = −H2`, `Ψ34 = −H3`.
const EXCITATION: [(usize, usize, f64); 6] =
    [(0, 2, 1.0), (1, 1, -1.0), (3, 0, 1.0), (2, 3, -1.0), (4, 4, -1.0), (5, 5, -1.0)];

fn signed_permutation(table: &[(usize, usize, f64); 6]) -> CMat {
    let mut t = CMat::zeros(6, 6);
    for &(row, col, s) in table {
        t[(row, col)] = c(s);
    }
    t
}

/// Spatial part `X_s` of a bivector `X = e123⌊X_s + x∧e4`, as a one-form
/// coordinate array.
#[cfg(test)]
pub(crate) fn spatial_part(x: &KVector) -> Vec3 {
    let k = x.coords();
    Vec3::new(k[3], -k[1], k[0])
}

/// Temporal part `x` of `X = e123⌊X_s + x∧e4`.
#[cfg(test)]
pub(crate) fn temporal_part(x: &KVector) -> Vec3 {
    let k = x.coords();
    Vec3::new(k[2], k[4], k[5])
}

/// Bivector `e123⌊form + vector∧e4`.
pub(crate) fn bivector_from_parts(form: &Vec3, vector: &Vec3) -> KVector {
    KVector::new(2, vec![form[2], -form[1], vector[0], form[0], vector[1], vector[2]])
        .expect("six finite coordinates")
}

/// The four 3×3 blocks of a medium dyadic.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeDSplit {
    pub alpha_d: Mat3,
    pub eps_prime: Mat3,
    pub mu_inv: Mat3,
    pub beta_d: Mat3,
}

impl ThreeDSplit {
    pub fn zero() -> Self {
        ThreeDSplit {
            alpha_d: Mat3::zeros(),
            eps_prime: Mat3::zeros(),
            mu_inv: Mat3::zeros(),
            beta_d: Mat3::zeros(),
        }
    }

    /// `[[ᾱ, ε̄′], [μ̄⁻¹, β̄]]` acting on `(B, E)`.
    pub fn block(&self) -> CMat {
        let mut m = CMat::zeros(6, 6);
        for (blk, r0, c0) in [
            (&self.alpha_d, 0, 0),
            (&self.eps_prime, 0, 3),
            (&self.mu_inv, 3, 0),
            (&self.beta_d, 3, 3),
        ] {
            m.view_mut((r0, c0), (3, 3)).copy_from(blk);
        }
        m
    }

    pub fn from_block(m: &CMat) -> Self {
        let blk = |r0, c0| Mat3::from_fn(|i, j| m[(r0 + i, c0 + j)]);
        ThreeDSplit {
            alpha_d: blk(0, 0),
            eps_prime: blk(0, 3),
            mu_inv: blk(3, 0),
            beta_d: blk(3, 3),
        }
    }

    pub fn max_abs_diff(&self, other: &ThreeDSplit) -> f64 {
        linalg::max_abs(&(self.block() - other.block()))
    }
}

/// Blocks of `M` in the `(B, E) → (D, H)` form.
pub fn split_3d(medium: &Medium) -> ThreeDSplit {
    let tp = signed_permutation(&FIELD);
    let ts = signed_permutation(&EXCITATION);
    ThreeDSplit::from_block(&(ts.transpose() * medium.m().matrix() * tp))
}

/// Inverse of [`split_3d`].
pub fn join_3d(split: &ThreeDSplit) -> Medium {
    let tp = signed_permutation(&FIELD);
    let ts = signed_permutation(&EXCITATION);
    let m = ts * split.block() * tp.transpose();
    Medium::from_m(Dyadic::from_parts(crate::dyadics::MEDIUM.0, crate::dyadics::MEDIUM.1, m))
        .expect("tags are those of a medium dyadic")
}

/// Classical `ε, ξ, ζ, μ` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsianMedium {
    pub eps_g: Mat3,
    pub xi_g: Mat3,
    pub zeta_g: Mat3,
    pub mu_g: Mat3,
}

impl GibbsianMedium {
    pub fn max_abs_diff(&self, other: &GibbsianMedium) -> f64 {
        [
            (self.eps_g - other.eps_g),
            (self.xi_g - other.xi_g),
            (self.zeta_g - other.zeta_g),
            (self.mu_g - other.mu_g),
        ]
        .iter()
        .flat_map(|m| m.iter().map(|z| z.norm()))
        .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        [self.eps_g, self.xi_g, self.zeta_g, self.mu_g]
            .iter()
            .flat_map(|m| m.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }
}

fn invert_block(m: &Mat3, name: &str) -> Result<Mat3> {
    match linalg::inverse3_with_cond(m) {
        (Some(inv), cond) if cond < tol::INVERTIBLE_COND => Ok(inv),
        (_, cond) => Err(Error::Singular(format!("{name} block (condition estimate {cond:.3e})"))),
    }
}

/// `μ = (μ̄⁻¹)⁻¹`, `ζ = −μ β̄`, `ξ = ᾱ μ`, `ε = ε̄′ − ᾱ μ β̄`.
pub fn gibbsian_from_4d(medium: &Medium) -> Result<GibbsianMedium> {
    let s = split_3d(medium);
    let mu = invert_block(&s.mu_inv, "μ̄⁻¹")?;
    Ok(GibbsianMedium {
        eps_g: s.eps_prime - s.alpha_d * mu * s.beta_d,
        xi_g: s.alpha_d * mu,
        zeta_g: -(mu * s.beta_d),
        mu_g: mu,
    })
}

/// `ᾱ = ξ μ⁻¹`, `ε̄′ = ε − ξ μ⁻¹ ζ`, `μ̄⁻¹ = μ⁻¹`, `β̄ = −μ⁻¹ ζ`.
pub fn fourd_from_gibbsian(g: &GibbsianMedium) -> Result<Medium> {
    let mi = invert_block(&g.mu_g, "μ_g")?;
    let split = ThreeDSplit {
        alpha_d: g.xi_g * mi,
        eps_prime: g.eps_g - g.xi_g * mi * g.zeta_g,
        mu_inv: mi,
        beta_d: -(mi * g.zeta_g),
    };
    Ok(join_3d(&split))
}

/// Uniaxial medium with its TE/TM contrast `ε_t μ_z − μ_t ε_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Uniaxial {
    pub gibbsian: GibbsianMedium,
    pub eps_t: Scalar,
    pub eps_z: Scalar,
    pub mu_t: Scalar,
    pub mu_z: Scalar,
    pub contrast: Scalar,
    /// Zero contrast: plane waves still split into TE and TM parts, but not
    /// uniquely.
    pub degenerate: bool,
}

/// `ε = diag(ε_t, ε_t, ε_z)`, `μ = diag(μ_t, μ_t, μ_z)`, `ξ = ζ = 0`.
pub fn uniaxial_gibbsian(eps_t: Scalar, eps_z: Scalar, mu_t: Scalar, mu_z: Scalar) -> Uniaxial {
    let z = c(0.0);
    let diag = |t: Scalar, zz: Scalar| Mat3::new(t, z, z, z, t, z, z, z, zz);
    let contrast = eps_t * mu_z - mu_t * eps_z;
    let scale = (eps_t * mu_z).norm().max((mu_t * eps_z).norm());
    Uniaxial {
        gibbsian: GibbsianMedium {
            eps_g: diag(eps_t, eps_z),
            xi_g: Mat3::zeros(),
            zeta_g: Mat3::zeros(),
            mu_g: diag(mu_t, mu_z),
        },
        eps_t,
        eps_z,
        mu_t,
        mu_z,
        contrast,
        degenerate: contrast.norm() <= (tol::REL * scale).max(tol::ABS),
    }
}

impl Uniaxial {
    pub fn medium(&self) -> Result<Medium> {
        fourd_from_gibbsian(&self.gibbsian)
    }

    /// Witness `γ = 1`, `β = 0`, `α = ε_t/μ_t`, `A = e3∧e4`,
    /// `B = (ε_t μ_z − μ_t ε_z)/(μ_t μ_z) e1∧e2`. `A|Φ = E3` and
    /// `B|Φ ∝ B3`, so A-waves are TE and B-waves TM with respect to `u_z`.
    pub fn witness(&self) -> Result<Dc1Witness> {
        if self.mu_t.norm() == 0.0 || self.mu_z.norm() == 0.0 {
            return Err(Error::Singular("μ_t or μ_z vanishes".into()));
        }
        let mut e34 = vec![c(0.0); 6];
        e34[5] = c(1.0);
        let mut e12 = vec![c(0.0); 6];
        e12[0] = self.contrast / (self.mu_t * self.mu_z);
        let mut w = Dc1Witness {
            alpha: self.eps_t / self.mu_t,
            beta: c(0.0),
            gamma: c(1.0),
            a: KVector::new(2, e34)?,
            b: KVector::new(2, e12)?,
            residual: 0.0,
        };
        w.residual = crate::media::dc1_residual(self.medium()?.mg(), &w)?;
        Ok(w)
    }
}

/// Spatial parameters of an SDCM:
/// `B_o = C_s + e4 γ_s + c_s ε4 − e4 ε4 tr C_s`,
/// `A = e123⌊α_s + a_s∧e4`, `B = e123⌊β_s + b_s∧e4`.
#[derive(Debug, Clone, PartialEq)]
pub struct SdcmSpatial {
    pub alpha: Scalar,
    pub cs: Mat3,
    pub gamma_s: Vec3,
    pub c_s: Vec3,
    pub a_s: Vec3,
    pub b_s: Vec3,
    pub alpha_s: Vec3,
    pub beta_s: Vec3,
}

impl SdcmSpatial {
    /// Parameters of the magnetoelectric-free SDCM: `α = 0`, `C_s = 0`,
    /// `b_s = λ a_s`, `β_s = −λ α_s`.
    pub fn gyrotropic(lambda: Scalar, a_s: Vec3, alpha_s: Vec3, gamma_s: Vec3, c_s: Vec3) -> Self {
        SdcmSpatial {
            alpha: c(0.0),
            cs: Mat3::zeros(),
            gamma_s,
            c_s,
            a_s,
            b_s: a_s * lambda,
            alpha_s,
            beta_s: -alpha_s * lambda,
        }
    }

    /// `B_o` as a 4×4 vector map.
    pub fn bo(&self) -> Dyadic {
        let mut m = CMat::zeros(4, 4);
        m.view_mut((0, 0), (3, 3)).copy_from(&self.cs);
        for i in 0..3 {
            m[(3, i)] = self.gamma_s[i];
            m[(i, 3)] = self.c_s[i];
        }
        m[(3, 3)] = -self.cs.trace();
        Dyadic::from_parts(BO_MAP.0, BO_MAP.1, m)
    }

    pub fn a(&self) -> KVector {
        bivector_from_parts(&self.alpha_s, &self.a_s)
    }

    pub fn b(&self) -> KVector {
        bivector_from_parts(&self.beta_s, &self.b_s)
    }

    pub fn medium(&self) -> Result<Medium> {
        construct_sdcm(self.alpha, &self.bo(), &self.a(), &self.b())
    }
}

/// Closed-form 3D blocks of an SDCM:
///
/// ```text
/// ᾱ    =  α I + (tr C_s I − C_s) + a_s β_s + b_s α_s
/// ε̄′   = −K(γ_s) + a_s b_s + b_s a_s
/// μ̄⁻¹  = −K(c_s) − (α_s β_s + β_s α_s)
/// β̄    = −α I − (C_sᵀ − tr C_s I) − (α_s b_s + β_s a_s)
/// ```
///
/// with `K(v) x = v × x`.
pub fn sdcm_3d_components(p: &SdcmSpatial) -> ThreeDSplit {
    let id = Mat3::identity();
    let tr = p.cs.trace();
    let outer = |x: &Vec3, y: &Vec3| x * y.transpose();
    ThreeDSplit {
        alpha_d: id * p.alpha + (id * tr - p.cs) + outer(&p.a_s, &p.beta_s) + outer(&p.b_s, &p.alpha_s),
        eps_prime: -cross(&p.gamma_s) + outer(&p.a_s, &p.b_s) + outer(&p.b_s, &p.a_s),
        mu_inv: -cross(&p.c_s) - (outer(&p.alpha_s, &p.beta_s) + outer(&p.beta_s, &p.alpha_s)),
        beta_d: -id * p.alpha - (p.cs.transpose() - id * tr) - (outer(&p.alpha_s, &p.b_s) + outer(&p.beta_s, &p.a_s)),
    }
}

/// Gibbsian matrices of the magnetoelectric-free SDCM:
///
/// ```text
/// μ_g = (c_s c_s + 2λ(c_s|α_s) K(α_s)) / (2λ (c_s|α_s)²)
/// ε_g = 2λ a_s a_s − K(γ_s)
/// ```
pub fn sdcm_gyrotropic_example(
    lambda: Scalar,
    a_s: Vec3,
    alpha_s: Vec3,
    gamma_s: Vec3,
    c_s: Vec3,
) -> Result<GibbsianMedium> {
    let ca = c_s.dot(&alpha_s);
    let scale = c_s.norm() * alpha_s.norm();
    if ca.norm() <= (tol::REL * scale).max(tol::ABS) {
        return Err(Error::Singular("c_s|α_s vanishes; μ_g is undefined".into()));
    }
    if lambda.norm() == 0.0 {
        return Err(Error::Singular("λ vanishes; μ_g is undefined".into()));
    }
    let two_l = lambda * 2.0;
    let mu_g = (c_s * c_s.transpose() + cross(&alpha_s) * (two_l * ca)) / (two_l * ca * ca);
    let eps_g = a_s * a_s.transpose() * two_l - cross(&gamma_s);
    Ok(GibbsianMedium {
        eps_g,
        xi_g: Mat3::zeros(),
        zeta_g: Mat3::zeros(),
        mu_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadics::{P_MAP};
    use crate::media::construct_pdcm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rv(rng: &mut ChaCha8Rng) -> Vec3 {
        Vec3::from_fn(|_, _| c(rng.random_range(-1.0..1.0)))
    }
    fn rm(rng: &mut ChaCha8Rng) -> Mat3 {
        Mat3::from_fn(|_, _| c(rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn axion_blocks() {
        let s = split_3d(&Medium::axion(c(0.7)));
        assert_eq!(s.alpha_d, Mat3::identity() * c(0.7));
        assert_eq!(s.beta_d, Mat3::identity() * c(-0.7));
        assert_eq!(s.eps_prime, Mat3::zeros());
        assert_eq!(s.mu_inv, Mat3::zeros());
    }

    #[test]
    fn split_join_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let m = CMat::from_fn(6, 6, |_, _| c(rng.random_range(-1.0..1.0)));
        let med = Medium::from_m(Dyadic::from_parts(crate::dyadics::MEDIUM.0, crate::dyadics::MEDIUM.1, m)).unwrap();
        assert_eq!(join_3d(&split_3d(&med)).m(), med.m());
    }

    #[test]
    fn vacuum_gibbsian_round_trip() {
        let g = GibbsianMedium {
            eps_g: Mat3::identity(),
            xi_g: Mat3::zeros(),
            zeta_g: Mat3::zeros(),
            mu_g: Mat3::identity(),
        };
        let back = gibbsian_from_4d(&fourd_from_gibbsian(&g).unwrap()).unwrap();
        assert!(back.max_abs_diff(&g) < 1e-15);
        let singular = GibbsianMedium { mu_g: Mat3::zeros(), ..g };
        assert!(matches!(fourd_from_gibbsian(&singular), Err(Error::Singular(_))));
    }

    #[test]
    fn uniaxial_cases() {
        let u = uniaxial_gibbsian(c(2.0), c(5.0), c(3.0), c(7.0));
        assert_eq!(u.contrast, c(-1.0));
        assert!(!u.degenerate);
        let back = gibbsian_from_4d(&u.medium().unwrap()).unwrap();
        assert!(back.max_abs_diff(&u.gibbsian) < 1e-10);
        assert!(u.witness().unwrap().residual < 1e-12);
        assert!(uniaxial_gibbsian(c(1.0), c(2.0), c(2.0), c(4.0)).degenerate);
        let vac = uniaxial_gibbsian(c(1.0), c(1.0), c(1.0), c(1.0));
        assert_eq!(vac.gibbsian.eps_g, Mat3::identity());
    }

    fn cofactor(x: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            x[(r0, c0)] * x[(r1, c1)] - x[(r0, c1)] * x[(r1, c0)]
        })
    }

    #[test]
    fn pdcm_blocks_match_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pm = CMat::from_fn(4, 4, |_, _| c(rng.random_range(-1.0..1.0)));
        let p = Dyadic::new(P_MAP.0, P_MAP.1, pm.clone()).unwrap();
        let d = KVector::from_real(2, &[0.3, -0.2, 0.9, 0.1, 0.5, -0.7]).unwrap();
        let cc = KVector::from_real(2, &[-0.4, 0.6, 0.2, 0.8, -0.1, 0.3]).unwrap();
        let (al, m) = (c(0.6), c(1.3));
        let s = split_3d(&construct_pdcm(al, m, &p, &d, &cc).unwrap());
        let ps = Mat3::from_fn(|i, j| pm[(i, j)]);
        let pi = Vec3::new(pm[(0, 3)], pm[(1, 3)], pm[(2, 3)]);
        let prow = Vec3::new(pm[(3, 0)], pm[(3, 1)], pm[(3, 2)]);
        let p0 = pm[(3, 3)];
        let (d3, dsp) = (temporal_part(&d), spatial_part(&d));
        let (c3, csp) = (temporal_part(&cc), spatial_part(&cc));
        let id = Mat3::identity();
        let want = ThreeDSplit {
            alpha_d: cofactor(&ps) * m + id * al + d3 * csp.transpose(),
            eps_prime: -(cross(&pi) * ps) * m + d3 * c3.transpose(),
            mu_inv: -(ps * cross(&prow)) * m - dsp * csp.transpose(),
            beta_d: (pi * prow.transpose() - ps * p0) * m - id * al - dsp * c3.transpose(),
        };
        assert!(s.max_abs_diff(&want) < 1e-13, "{}", s.max_abs_diff(&want));
    }

    #[test]
    fn sdcm_closed_forms_match_4d_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = SdcmSpatial {
            alpha: c(0.4),
            cs: rm(&mut rng),
            gamma_s: rv(&mut rng),
            c_s: rv(&mut rng),
            a_s: rv(&mut rng),
            b_s: rv(&mut rng),
            alpha_s: rv(&mut rng),
            beta_s: rv(&mut rng),
        };
        let via4 = split_3d(&p.medium().unwrap());
        assert!(sdcm_3d_components(&p).max_abs_diff(&via4) < 1e-13);
        let sym = via4.eps_prime + via4.eps_prime.transpose();
        let two_dyads = (p.a_s * p.b_s.transpose() + p.b_s * p.a_s.transpose()) * c(2.0);
        assert!((sym - two_dyads).norm() < 1e-13);
        let zero = SdcmSpatial {
            alpha: c(0.0),
            cs: Mat3::zeros(),
            gamma_s: Vec3::zeros(),
            c_s: Vec3::zeros(),
            a_s: Vec3::zeros(),
            b_s: Vec3::zeros(),
            alpha_s: Vec3::zeros(),
            beta_s: Vec3::zeros(),
        };
        assert_eq!(sdcm_3d_components(&zero), ThreeDSplit::zero());
    }

    #[test]
    fn gyrotropic_formulas_match_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (a, al, g, cs) = (rv(&mut rng), rv(&mut rng), rv(&mut rng), rv(&mut rng));
        let lambda = c(0.8);
        let closed = sdcm_gyrotropic_example(lambda, a, al, g, cs).unwrap();
        let med = SdcmSpatial::gyrotropic(lambda, a, al, g, cs).medium().unwrap();
        let pipe = gibbsian_from_4d(&med).unwrap();
        assert!(closed.max_abs_diff(&pipe) < 1e-9);
        assert!(pipe.xi_g.norm() < 1e-12 && pipe.zeta_g.norm() < 1e-12);
        let no_gamma = sdcm_gyrotropic_example(lambda, a, al, Vec3::zeros(), cs).unwrap();
        assert!((no_gamma.eps_g - a * a.transpose() * c(1.6)).norm() < 1e-15);
        let perp = Vec3::new(al[1], -al[0], c(0.0));
        assert!(sdcm_gyrotropic_example(lambda, a, al, g, perp).is_err());
    }
}

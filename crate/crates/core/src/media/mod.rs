//! Constitutive media and the decomposable classes.
//!
//! A [`Medium`] stores both the medium dyadic `M` (two-forms → two-forms) and
//! its lift `M_g = e_N⌊M` (two-forms → bivectors); they are kept in sync by
//! construction. The three decomposable classes are
//!
//! * QDCM: `M_g = α e_N⌊I^(2)ᵀ + M Q^(2) + D C`,
//! * PDCM: `M_g = α e_N⌊I^(2)ᵀ + M e_N⌊P^(2) + D C`,
//! * SDCM: `M_g = α e_N⌊I^(2)ᵀ + e_N⌊(I∧∧B_o)ᵀ + A B + B A`,
//!
//! where `D C` denotes the bivector dyad mapping `Φ ↦ D (C|Φ)`.

mod condition;
mod quadratic;
mod threed;

pub use condition::{
    bivectors_ab, dc1_residual, dc1_witness, detect_dcm, factor_rank2, solve_d_from_ab, Dc1Witness,
    DcmKind, DetectOptions,
};
pub(crate) use condition::quadratic_roots;
pub use quadratic::{classify_quadratic_medium, InvertiblePair, QuadraticClassification, QuadraticKind};
pub use threed::{
    fourd_from_gibbsian, gibbsian_from_4d, join_3d, sdcm_3d_components, sdcm_gyrotropic_example, split_3d,
    uniaxial_gibbsian, GibbsianMedium, SdcmSpatial, ThreeDSplit, Uniaxial,
};

use crate::dyadics::{self, bivector_dyad, compound, Dyadic, BO_MAP, MEDIUM, MODIFIED, P_MAP, Q_MAP};
use crate::error::{Error, Result};
use crate::exterior::KVector;
use crate::linalg::{self, CMat};
use crate::{tol, Scalar};

/// How a medium was built, with the parameters needed by the class-specific
/// formulas (witness bivectors, predicted dispersion factors).
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Qdcm {
        alpha: Scalar,
        m: Scalar,
        q: Dyadic,
        d: KVector,
        c: KVector,
        /// `Q` failed the invertibility criterion.
        singular: bool,
    },
    Pdcm {
        alpha: Scalar,
        m: Scalar,
        p: Dyadic,
        d: KVector,
        c: KVector,
        singular: bool,
    },
    Sdcm {
        alpha: Scalar,
        bo: Dyadic,
        a: KVector,
        b: KVector,
    },
    QMedium {
        m: Scalar,
        q: Dyadic,
    },
    PMedium {
        m: Scalar,
        p: Dyadic,
    },
    Axion {
        alpha: Scalar,
    },
    Raw,
}

impl Provenance {
    pub fn class_name(&self) -> &'static str {
        match self {
            Provenance::Qdcm { .. } => "QDCM",
            Provenance::Pdcm { .. } => "PDCM",
            Provenance::Sdcm { .. } => "SDCM",
            Provenance::QMedium { .. } => "Q",
            Provenance::PMedium { .. } => "P",
            Provenance::Axion { .. } => "axion",
            Provenance::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    m: Dyadic,
    mg: Dyadic,
    provenance: Provenance,
}

impl Medium {
    /// Medium from its dyadic `M` (two-forms → two-forms).
    pub fn from_m(m: Dyadic) -> Result<Self> {
        m.expect_spaces(MEDIUM, "medium dyadic")?;
        let mg = dyadics::lift_dyadic().compose(&m)?;
        Ok(Medium {
            m,
            mg,
            provenance: Provenance::Raw,
        })
    }

    /// Medium from its modified dyadic `M_g` (two-forms → bivectors).
    pub fn from_mg(mg: Dyadic) -> Result<Self> {
        mg.expect_spaces(MODIFIED, "modified medium dyadic")?;
        let m = dyadics::unlift_dyadic().compose(&mg)?;
        Ok(Medium {
            m,
            mg,
            provenance: Provenance::Raw,
        })
    }

    fn with_provenance(mg: CMat, provenance: Provenance) -> Self {
        let g = dyadics::lift_matrix();
        let m = &g * &mg;
        Medium {
            m: Dyadic::from_parts(MEDIUM.0, MEDIUM.1, m),
            mg: Dyadic::from_parts(MODIFIED.0, MODIFIED.1, mg),
            provenance,
        }
    }

    pub fn m(&self) -> &Dyadic {
        &self.m
    }

    pub fn mg(&self) -> &Dyadic {
        &self.mg
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Same medium with provenance dropped.
    pub fn into_raw(self) -> Medium {
        Medium {
            provenance: Provenance::Raw,
            ..self
        }
    }

    /// Pure axion medium `M = α I`.
    pub fn axion(alpha: Scalar) -> Medium {
        Self::with_provenance(dyadics::lift_matrix() * alpha, Provenance::Axion { alpha })
    }

    /// Q-medium, `M_g = M Q^(2)`.
    pub fn q_medium(m: Scalar, q: &Dyadic) -> Result<Medium> {
        q.expect_spaces(Q_MAP, "Q")?;
        let q2 = compound(q, 2)?;
        Ok(Self::with_provenance(
            q2.matrix() * m,
            Provenance::QMedium { m, q: q.clone() },
        ))
    }

    /// P-medium, `M = M P^(2)`.
    pub fn p_medium(m: Scalar, p: &Dyadic) -> Result<Medium> {
        p.expect_spaces(P_MAP, "P")?;
        let p2 = compound(p, 2)?;
        Ok(Self::with_provenance(
            dyadics::lift_matrix() * p2.matrix() * m,
            Provenance::PMedium { m, p: p.clone() },
        ))
    }

    /// Adds `α I` to `M`; class parameters absorb the change where they can.
    pub fn plus_axion(&self, alpha: Scalar) -> Medium {
        let mg = self.mg.matrix() + dyadics::lift_matrix() * alpha;
        let provenance = match self.provenance.clone() {
            Provenance::Qdcm { alpha: a0, m, q, d, c, singular } => Provenance::Qdcm {
                alpha: a0 + alpha,
                m,
                q,
                d,
                c,
                singular,
            },
            Provenance::Pdcm { alpha: a0, m, p, d, c, singular } => Provenance::Pdcm {
                alpha: a0 + alpha,
                m,
                p,
                d,
                c,
                singular,
            },
            Provenance::Sdcm { alpha: a0, bo, a, b } => Provenance::Sdcm { alpha: a0 + alpha, bo, a, b },
            Provenance::Axion { alpha: a0 } => Provenance::Axion { alpha: a0 + alpha },
            _ => Provenance::Raw,
        };
        Self::with_provenance(mg, provenance)
    }
}

fn check_bivector(x: &KVector, name: &'static str) -> Result<()> {
    if x.grade() != 2 {
        return Err(Error::Invalid(format!("{name} must be a bivector, got grade {}", x.grade())));
    }
    Ok(())
}

fn is_singular(d: &Dyadic) -> bool {
    linalg::inverse(d.matrix(), tol::INVERTIBLE_COND).is_none()
}

/// QDCM with axion `α`, scale `M`, generator `Q` (one-forms → vectors) and
/// bivectors `D`, `C`.
pub fn construct_qdcm(alpha: Scalar, m: Scalar, q: &Dyadic, d: &KVector, c: &KVector) -> Result<Medium> {
    q.expect_spaces(Q_MAP, "Q")?;
    check_bivector(d, "D")?;
    check_bivector(c, "C")?;
    let mg = dyadics::lift_matrix() * alpha + compound(q, 2)?.matrix() * m + bivector_dyad(d, c)?.matrix();
    Ok(Medium::with_provenance(
        mg,
        Provenance::Qdcm {
            alpha,
            m,
            q: q.clone(),
            d: d.clone(),
            c: c.clone(),
            singular: is_singular(q),
        },
    ))
}

/// PDCM with axion `α`, scale `M`, generator `P` (one-forms → one-forms) and
/// bivectors `D`, `C`.
pub fn construct_pdcm(alpha: Scalar, m: Scalar, p: &Dyadic, d: &KVector, c: &KVector) -> Result<Medium> {
    p.expect_spaces(P_MAP, "P")?;
    check_bivector(d, "D")?;
    check_bivector(c, "C")?;
    let g = dyadics::lift_matrix();
    let mg = &g * alpha + &g * compound(p, 2)?.matrix() * m + bivector_dyad(d, c)?.matrix();
    Ok(Medium::with_provenance(
        mg,
        Provenance::Pdcm {
            alpha,
            m,
            p: p.clone(),
            d: d.clone(),
            c: c.clone(),
            singular: is_singular(p),
        },
    ))
}

/// SDCM with axion `α`, trace-free `B_o` (vectors → vectors) and bivectors
/// `A`, `B`.
pub fn construct_sdcm(alpha: Scalar, bo: &Dyadic, a: &KVector, b: &KVector) -> Result<Medium> {
    bo.expect_spaces(BO_MAP, "B_o")?;
    check_bivector(a, "A")?;
    check_bivector(b, "B")?;
    let skew = dyadics::antisym_from_traceless(bo)?;
    let mg = dyadics::lift_matrix() * alpha
        + skew.matrix()
        + bivector_dyad(a, b)?.matrix()
        + bivector_dyad(b, a)?.matrix();
    Ok(Medium::with_provenance(
        mg,
        Provenance::Sdcm {
            alpha,
            bo: bo.clone(),
            a: a.clone(),
            b: b.clone(),
        },
    ))
}

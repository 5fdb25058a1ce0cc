//! Plane-wave fields on the dispersion surface and their A/B character.

use crate::error::{Error, Result};
use crate::exterior::{pair, KForm, KVector};
use crate::linalg::{self, CMat, CVec};
use crate::media::Medium;
use crate::tol::Tolerances;
use crate::Scalar;

use super::dispersion_dyadic;

/// Plane-wave solution: `Φ = ν∧φ` and `Ψ = M|Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    pub nu: KForm,
    /// Potential one-form `φ`, coordinate-orthogonal to `ν`.
    pub phi: KForm,
    /// Field two-form `Φ`.
    pub field: KForm,
    /// Excitation two-form `Ψ`.
    pub excitation: KForm,
    /// `σ_min/σ_max` of `D(ν)` restricted to the complement of `ν`.
    pub dispersion_defect: f64,
}

/// Gibbsian field vectors of a plane wave, in `(1, 2, 3)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fields3d {
    pub b: [Scalar; 3],
    pub e: [Scalar; 3],
    pub d: [Scalar; 3],
    pub h: [Scalar; 3],
}

impl PlaneWave {
    /// `Φ = B + E∧ε4` and `Ψ = D − H∧ε4` read off in coordinates.
    pub fn fields_3d(&self) -> Fields3d {
        let f = self.field.coords();
        let x = self.excitation.coords();
        Fields3d {
            b: [f[3], -f[1], f[0]],
            e: [f[2], f[4], f[5]],
            d: [x[3], -x[1], x[0]],
            h: [-x[2], -x[4], -x[5]],
        }
    }

    /// `[|Φ·Φ|, |Φ·Ψ|, |Ψ·Ψ|]`, each divided by the product of the norms.
    pub fn orthogonality(&self) -> [f64; 3] {
        let rel = |a: &KForm, b: &KForm| {
            let n = a.norm() * b.norm();
            if n == 0.0 {
                0.0
            } else {
                a.dot(b).expect("two-forms").norm() / n
            }
        };
        [
            rel(&self.field, &self.field),
            rel(&self.field, &self.excitation),
            rel(&self.excitation, &self.excitation),
        ]
    }
}

/// Solves `D(ν)|φ = 0` on a dispersion root.
///
/// The gauge is fixed by taking `φ` orthogonal to `ν` in coordinates, so
/// `φ` is the smallest right singular vector of `D(ν)` restricted to that
/// complement. `Φ` does not depend on the gauge.
pub fn solve_plane_wave(medium: &Medium, nu: &KForm, tols: &Tolerances) -> Result<PlaneWave> {
    if nu.grade() != 1 {
        return Err(Error::GradeMismatch { expected: 1, found: nu.grade() });
    }
    let nu_col = CVec::from_column_slice(nu.coords());
    if nu_col.norm() == 0.0 {
        return Err(Error::Invalid("wave one-form is zero".into()));
    }
    let d = dispersion_dyadic(medium, nu)?;
    let basis = linalg::complement_basis(std::slice::from_ref(&nu_col), 4);
    let b = CMat::from_columns(&basis);
    let restricted = d.matrix() * &b;
    let svd = linalg::svd(&restricted);
    let smax = svd.values[0];
    if smax <= 1e-14 * linalg::frobenius(medium.mg().matrix()) * nu_col.norm_squared() {
        return Err(Error::DegenerateWave(
            "dispersion dyadic vanishes; every potential solves".into(),
        ));
    }
    let defect = svd.values[2] / smax;
    if defect > tols.dispersion {
        return Err(Error::DispersionNotSatisfied(defect));
    }
    let phi_col = &b * svd.v.column(2);
    let phi = KForm::new(1, phi_col.iter().copied().collect())?;
    let field = nu.wedge(&phi)?;
    if field.norm() <= 1e-12 * nu_col.norm() {
        return Err(Error::DegenerateWave("null space lies along the wave one-form".into()));
    }
    let excitation = medium.m().apply(&field)?;
    Ok(PlaneWave {
        nu: nu.clone(),
        phi,
        field,
        excitation,
        dispersion_defect: defect,
    })
}

/// Which selector bivectors the field annihilates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveTag {
    AWave,
    BWave,
    Both,
    Neither,
}

impl WaveTag {
    pub fn as_str(self) -> &'static str {
        match self {
            WaveTag::AWave => "A",
            WaveTag::BWave => "B",
            WaveTag::Both => "both",
            WaveTag::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveClass {
    pub tag: WaveTag,
    /// `|A|Φ| / (‖A‖‖Φ‖)`.
    pub residual_a: f64,
    /// `|B|Φ| / (‖B‖‖Φ‖)`.
    pub residual_b: f64,
}

/// A-wave when `A|Φ = 0`, B-wave when `B|Φ = 0`, thresholded at `tol`.
pub fn classify_wave(wave: &PlaneWave, a: &KVector, b: &KVector, tol: f64) -> Result<WaveClass> {
    let residual = |x: &KVector| -> Result<f64> {
        let n = x.norm() * wave.field.norm();
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok(pair(&wave.field, x)?.norm() / n)
    };
    if wave.field.norm() == 0.0 {
        return Err(Error::DegenerateWave("field two-form is zero".into()));
    }
    let residual_a = residual(a)?;
    let residual_b = residual(b)?;
    let tag = match (residual_a <= tol, residual_b <= tol) {
        (true, true) => WaveTag::Both,
        (true, false) => WaveTag::AWave,
        (false, true) => WaveTag::BWave,
        (false, false) => WaveTag::Neither,
    };
    Ok(WaveClass {
        tag,
        residual_a,
        residual_b,
    })
}

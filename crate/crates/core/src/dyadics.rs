//! Linear maps between graded spaces.
//!
//! A [`Dyadic`] carries the space it acts on and the space it maps into, and
//! a dense matrix in the fixed bases of [`crate::exterior`]. Because the
//! duality pairing is the identity in dual bases, transposition is plain
//! matrix transposition with both families swapped to their duals, and
//! "symmetric"/"antisymmetric" statements about two-form→bivector maps are
//! literal matrix (anti)symmetry.
//!
//! Naming follows the usual space notation: a medium dyadic `M` maps
//! two-forms to two-forms; the modified medium dyadic `M_g = e_N⌊M` maps
//! two-forms to bivectors; `Q` maps one-forms to vectors; `P` maps one-forms
//! to one-forms; `B_o` maps vectors to vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{self, dim, Family, KForm, KVector, Multi, Side};
use crate::linalg::{self, CMat};
use crate::{c, tol, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceTag {
    pub family: Family,
    pub grade: usize,
}

impl SpaceTag {
    pub const fn vectors(grade: usize) -> Self {
        SpaceTag {
            family: Family::Vector,
            grade,
        }
    }

    pub const fn forms(grade: usize) -> Self {
        SpaceTag {
            family: Family::Form,
            grade,
        }
    }

    pub fn dual(self) -> Self {
        SpaceTag {
            family: self.family.dual(),
            grade: self.grade,
        }
    }

    pub fn dim(self) -> usize {
        dim(self.grade)
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.family {
            Family::Vector => "E",
            Family::Form => "F",
        };
        write!(f, "{k}{}", self.grade)
    }
}

/// Two-forms → two-forms (medium dyadic `M`).
pub const MEDIUM: (SpaceTag, SpaceTag) = (SpaceTag::forms(2), SpaceTag::forms(2));
/// Two-forms → bivectors (modified medium dyadic `M_g`).
pub const MODIFIED: (SpaceTag, SpaceTag) = (SpaceTag::forms(2), SpaceTag::vectors(2));
/// One-forms → vectors (`Q`, and the dispersion dyadic `D(ν)`).
pub const Q_MAP: (SpaceTag, SpaceTag) = (SpaceTag::forms(1), SpaceTag::vectors(1));
/// One-forms → one-forms (`P`).
pub const P_MAP: (SpaceTag, SpaceTag) = (SpaceTag::forms(1), SpaceTag::forms(1));
/// Vectors → vectors (`B_o`).
pub const BO_MAP: (SpaceTag, SpaceTag) = (SpaceTag::vectors(1), SpaceTag::vectors(1));

#[derive(Debug, Clone, PartialEq)]
pub struct Dyadic {
    domain: SpaceTag,
    codomain: SpaceTag,
    matrix: CMat,
}

impl Dyadic {
    pub fn new(domain: SpaceTag, codomain: SpaceTag, matrix: CMat) -> Result<Self> {
        for g in [domain.grade, codomain.grade] {
            if g > 4 {
                return Err(Error::GradeOutOfRange(g));
            }
        }
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(Error::SpaceMismatch(format!(
                "matrix {}x{} does not fit {domain} -> {codomain}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("dyadic matrix"));
        }
        Ok(Dyadic {
            domain,
            codomain,
            matrix,
        })
    }

    pub(crate) fn from_parts(domain: SpaceTag, codomain: SpaceTag, matrix: CMat) -> Self {
        debug_assert_eq!(matrix.shape(), (codomain.dim(), domain.dim()));
        Dyadic {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn from_real(domain: SpaceTag, codomain: SpaceTag, rows: &[&[f64]]) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        let m = CMat::from_fn(nr, nc, |i, j| c(rows[i][j]));
        Self::new(domain, codomain, m)
    }

    pub fn identity(space: SpaceTag) -> Self {
        Self::from_parts(space, space, CMat::identity(space.dim(), space.dim()))
    }

    pub fn zero(domain: SpaceTag, codomain: SpaceTag) -> Self {
        Self::from_parts(domain, codomain, CMat::zeros(codomain.dim(), domain.dim()))
    }

    pub fn domain(&self) -> SpaceTag {
        self.domain
    }

    pub fn codomain(&self) -> SpaceTag {
        self.codomain
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    /// `d | x`.
    pub fn apply<S: Side, T: Side>(&self, x: &Multi<S>) -> Result<Multi<T>> {
        if S::FAMILY != self.domain.family || x.grade() != self.domain.grade {
            return Err(Error::SpaceMismatch(format!(
                "cannot apply {} -> {} to a grade-{} {:?}",
                self.domain,
                self.codomain,
                x.grade(),
                S::FAMILY
            )));
        }
        if T::FAMILY != self.codomain.family {
            return Err(Error::SpaceMismatch(format!(
                "result of {} -> {} is not a {:?}",
                self.domain,
                self.codomain,
                T::FAMILY
            )));
        }
        Multi::from_column(self.codomain.grade, &(&self.matrix * x.to_column()))
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Dyadic) -> Result<Dyadic> {
        if inner.codomain != self.domain {
            return Err(Error::SpaceMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        Ok(Self::from_parts(inner.domain, self.codomain, &self.matrix * &inner.matrix))
    }

    /// Transpose with respect to the duality pairing: `(a | d x) = (dᵀ a | x)`.
    pub fn transpose(&self) -> Dyadic {
        Self::from_parts(self.codomain.dual(), self.domain.dual(), self.matrix.transpose())
    }

    pub fn add(&self, other: &Dyadic) -> Result<Dyadic> {
        self.check_same(other, "add")?;
        Ok(Self::from_parts(self.domain, self.codomain, &self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &Dyadic) -> Result<Dyadic> {
        self.check_same(other, "subtract")?;
        Ok(Self::from_parts(self.domain, self.codomain, &self.matrix - &other.matrix))
    }

    pub fn scale(&self, k: Scalar) -> Dyadic {
        Self::from_parts(self.domain, self.codomain, &self.matrix * k)
    }

    fn check_same(&self, other: &Dyadic, what: &str) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch(format!(
                "cannot {what} {} -> {} and {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    pub fn trace(&self) -> Scalar {
        self.matrix.trace()
    }

    pub fn spaces(&self) -> (SpaceTag, SpaceTag) {
        (self.domain, self.codomain)
    }

    /// Error unless the dyadic maps `spaces.0` into `spaces.1`.
    pub fn expect_spaces(&self, spaces: (SpaceTag, SpaceTag), what: &str) -> Result<()> {
        if self.spaces() != spaces {
            return Err(Error::SpaceMismatch(format!(
                "{what} must map {} -> {}, got {} -> {}",
                spaces.0, spaces.1, self.domain, self.codomain
            )));
        }
        Ok(())
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(&self.matrix)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        linalg::max_abs(&(&self.matrix - self.matrix.transpose())) <= tol
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        linalg::max_abs(&(&self.matrix + self.matrix.transpose())) <= tol
    }
}

/// Matrix of the quadrivector lift on two-forms (the complement-sign table).
///
/// Symmetric, involutive, eigenvalues `{+1,+1,+1,−1,−1,−1}`; it is also the
/// Gram matrix of the two-form dot product.
pub fn lift_matrix() -> CMat {
    let mut g = CMat::zeros(6, 6);
    for i in 0..6 {
        let (j, s) = exterior::complement_sign(i);
        g[(j, i)] = c(s);
    }
    g
}

/// `e_N⌊` as a dyadic from two-forms to bivectors.
pub fn lift_dyadic() -> Dyadic {
    Dyadic::from_parts(SpaceTag::forms(2), SpaceTag::vectors(2), lift_matrix())
}

/// `ε_N⌊` as a dyadic from bivectors to two-forms.
pub fn unlift_dyadic() -> Dyadic {
    Dyadic::from_parts(SpaceTag::vectors(2), SpaceTag::forms(2), lift_matrix())
}

/// `e_N⌊I^(2)ᵀ`, the modified dyadic of the unit axion medium.
pub fn axion_unit() -> Dyadic {
    lift_dyadic()
}

/// Bivector dyad `A B`, mapping a two-form `Φ` to `A (B|Φ)`.
pub fn bivector_dyad(a: &KVector, b: &KVector) -> Result<Dyadic> {
    for g in [a.grade(), b.grade()] {
        if g != 2 {
            return Err(Error::GradeMismatch { expected: 2, found: g });
        }
    }
    Ok(Dyadic::from_parts(
        MODIFIED.0,
        MODIFIED.1,
        a.to_column() * b.to_column().transpose(),
    ))
}

/// k-th compound of a dyadic acting on grade-1 spaces; `compound(Q, 2)` is
/// the double-wedge square `Q^(2) = ½ Q∧∧Q`.
pub fn compound(d: &Dyadic, k: usize) -> Result<Dyadic> {
    if d.domain.grade != 1 || d.codomain.grade != 1 {
        return Err(Error::SpaceMismatch(format!(
            "compound needs a grade-1 dyadic, got {} -> {}",
            d.domain, d.codomain
        )));
    }
    if !(2..=4).contains(&k) {
        return Err(Error::GradeOutOfRange(k));
    }
    let tag = |t: SpaceTag| SpaceTag {
        family: t.family,
        grade: k,
    };
    Ok(Dyadic::from_parts(
        tag(d.domain),
        tag(d.codomain),
        linalg::compound(&d.matrix, k),
    ))
}

/// Action of `I∧∧B_o` on bivectors: `a∧b ↦ (B_o a)∧b + a∧(B_o b)`.
pub fn derivation_matrix(bo: &Dyadic) -> Result<CMat> {
    if bo.domain != SpaceTag::vectors(1) || bo.codomain != SpaceTag::vectors(1) {
        return Err(Error::SpaceMismatch(format!(
            "B_o must map vectors to vectors, got {} -> {}",
            bo.domain, bo.codomain
        )));
    }
    let mut der = CMat::zeros(6, 6);
    for (col, &(i, j)) in exterior::TWO_INDEX.iter().enumerate() {
        let ei = KVector::e(i + 1);
        let ej = KVector::e(j + 1);
        let bi: KVector = bo.apply(&ei)?;
        let bj: KVector = bo.apply(&ej)?;
        let x = &bi.wedge(&ej)? + &ei.wedge(&bj)?;
        for (row, z) in x.coords().iter().enumerate() {
            der[(row, col)] = *z;
        }
    }
    Ok(der)
}

/// Antisymmetric two-form→bivector dyadic `e_N⌊(I∧∧B_o)ᵀ` from a trace-free `B_o`.
pub fn antisym_from_traceless(bo: &Dyadic) -> Result<Dyadic> {
    let tr = bo.trace();
    if tr.norm() > (tol::REL * bo.frobenius()).max(tol::ABS) {
        return Err(Error::NonzeroTrace(tr));
    }
    let der = derivation_matrix(bo)?;
    Ok(Dyadic::from_parts(
        MODIFIED.0,
        MODIFIED.1,
        lift_matrix() * der.transpose(),
    ))
}

/// Principal, skewon and axion parts of a medium dyadic.
#[derive(Debug, Clone, PartialEq)]
pub struct HoParts {
    pub principal: Dyadic,
    pub skewon: Dyadic,
    pub axion_scalar: Scalar,
}

impl HoParts {
    /// `principal + skewon + axion·I`.
    pub fn reconstruct(&self) -> Dyadic {
        let axion = Dyadic::identity(SpaceTag::forms(2)).scale(self.axion_scalar);
        Dyadic::from_parts(
            MEDIUM.0,
            MEDIUM.1,
            self.principal.matrix() + self.skewon.matrix() + axion.matrix(),
        )
    }
}

/// Unique split into trace-free principal part (symmetric after lifting),
/// skewon part (antisymmetric after lifting) and an axion multiple of the
/// identity.
pub fn ho_decompose(m: &Dyadic) -> Result<HoParts> {
    if (m.domain, m.codomain) != MEDIUM {
        return Err(Error::SpaceMismatch(format!(
            "expected a two-form medium dyadic, got {} -> {}",
            m.domain, m.codomain
        )));
    }
    let g = lift_matrix();
    let axion = m.trace() / 6.0;
    let mg = &g * m.matrix();
    let skew_g = (&mg - mg.transpose()) * c(0.5);
    let skewon = &g * skew_g;
    let principal = m.matrix() - &skewon - CMat::identity(6, 6) * axion;
    Ok(HoParts {
        principal: Dyadic::from_parts(MEDIUM.0, MEDIUM.1, principal),
        skewon: Dyadic::from_parts(MEDIUM.0, MEDIUM.1, skewon),
        axion_scalar: axion,
    })
}

/// Dispersion dyadic `D(ν) = νν⌋⌋M_g`, acting as `D(ν)|φ = ν⌋(M_g|(ν∧φ))`.
pub fn double_contract_nu(mg: &Dyadic, nu: &KForm) -> Result<Dyadic> {
    if (mg.domain, mg.codomain) != MODIFIED {
        return Err(Error::SpaceMismatch(format!(
            "expected a two-form -> bivector dyadic, got {} -> {}",
            mg.domain, mg.codomain
        )));
    }
    if nu.grade() != 1 {
        return Err(Error::GradeMismatch { expected: 1, found: nu.grade() });
    }
    // ν⌋X = Wᵀ X, since (φ | ν⌋X) = (ν∧φ | X).
    let w = nu.wedge_matrix(1)?;
    let d = w.transpose() * mg.matrix() * w;
    Ok(Dyadic::from_parts(SpaceTag::forms(1), SpaceTag::vectors(1), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{contract, ContractSide};

    fn q_like(rows: [[f64; 4]; 4]) -> Dyadic {
        let r: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        Dyadic::from_real(SpaceTag::forms(1), SpaceTag::vectors(1), &r).unwrap()
    }

    #[test]
    fn lift_matrix_signature() {
        let g = lift_matrix();
        assert_eq!(&g * &g, CMat::identity(6, 6));
        assert_eq!(g, g.transpose());
        let real = nalgebra::DMatrix::from_fn(6, 6, |i, j| g[(i, j)].re);
        let mut ev: Vec<f64> = real.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let want = [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_applies_and_transpose_is_involutive() {
        let phi = KForm::from_real(2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let out: KForm = Dyadic::identity(SpaceTag::forms(2)).apply(&phi).unwrap();
        assert_eq!(out, phi);
        let mg = Dyadic::new(
            MODIFIED.0,
            MODIFIED.1,
            CMat::from_fn(6, 6, |i, j| c((i * 7 + j * 3) as f64 % 5.0 - 2.0)),
        )
        .unwrap();
        assert_eq!(mg.transpose().transpose(), mg);
        assert_eq!(mg.transpose().domain(), SpaceTag::forms(2));
    }

    #[test]
    fn tag_mismatch_errors() {
        let id2 = Dyadic::identity(SpaceTag::forms(2));
        let q = Dyadic::identity(SpaceTag::vectors(1));
        assert!(id2.compose(&q).is_err());
        assert!(id2.add(&lift_dyadic()).is_err());
        let nu = KForm::eps(1);
        assert!(id2.apply::<_, KFormSide>(&nu).is_err());
        assert!(compound(&id2, 2).is_err());
        assert!(compound(&q, 5).is_err());
    }

    type KFormSide = crate::exterior::Forms;

    #[test]
    fn compose_lift_with_medium_is_sign_table_times_matrix() {
        let m = Dyadic::new(
            MEDIUM.0,
            MEDIUM.1,
            CMat::from_fn(6, 6, |i, j| c(((i + 1) * (j + 2)) as f64 % 7.0)),
        )
        .unwrap();
        let mg = lift_dyadic().compose(&m).unwrap();
        // explicit product with the complement-sign table
        let mut want = CMat::zeros(6, 6);
        for r in 0..6 {
            for col in 0..6 {
                for k in 0..6 {
                    let (j, s) = exterior::complement_sign(k);
                    if j == r {
                        want[(r, col)] += m.matrix()[(k, col)] * s;
                    }
                }
            }
        }
        assert_eq!(mg.matrix(), &want);
        assert_eq!((mg.domain(), mg.codomain()), MODIFIED);
    }

    #[test]
    fn compound_identity_and_diagonal() {
        let id = Dyadic::identity(SpaceTag::vectors(1));
        assert_eq!(compound(&id, 2).unwrap().matrix(), &CMat::identity(6, 6));
        let d = q_like([[2.0, 0.0, 0.0, 0.0], [0.0, 3.0, 0.0, 0.0], [0.0, 0.0, 5.0, 0.0], [0.0, 0.0, 0.0, 7.0]]);
        let c2 = compound(&d, 2).unwrap();
        let diag: Vec<f64> = (0..6).map(|i| c2.matrix()[(i, i)].re).collect();
        assert_eq!(diag, vec![6.0, 10.0, 14.0, 15.0, 21.0, 35.0]);
    }

    #[test]
    fn zero_bo_gives_zero_antisymmetric_part() {
        let bo = Dyadic::zero(SpaceTag::vectors(1), SpaceTag::vectors(1));
        let a = antisym_from_traceless(&bo).unwrap();
        assert!(a.matrix().iter().all(|z| *z == c(0.0)));
    }

    #[test]
    fn single_traceless_dyad_is_antisymmetric_and_matches_brute_force() {
        // B_o = e1 ε2 : x ↦ e1 (ε2|x)
        let mut m = CMat::zeros(4, 4);
        m[(0, 1)] = c(1.0);
        let bo = Dyadic::new(SpaceTag::vectors(1), SpaceTag::vectors(1), m).unwrap();
        let a = antisym_from_traceless(&bo).unwrap();
        assert!(a.is_antisymmetric(0.0));
        // brute force: (I∧∧B_o)ᵀ acts on two-forms by Φ ↦ Φ∘(I∧∧B_o); evaluate on basis pairs
        let der = derivation_matrix(&bo).unwrap();
        for col in 0..6 {
            let mut phi = KForm::zero(2);
            let mut coords = phi.coords().to_vec();
            coords[col] = c(1.0);
            phi = KForm::new(2, coords).unwrap();
            // (I∧∧B_o)ᵀ|Φ has pairing with X equal to Φ|(I∧∧B_o)|X
            let mut transformed = vec![c(0.0); 6];
            for (row, t) in transformed.iter_mut().enumerate() {
                let mut x = KVector::zero(2).coords().to_vec();
                x[row] = c(1.0);
                let xv = KVector::new(2, x).unwrap();
                let dx = KVector::from_column(2, &(&der * xv.to_column())).unwrap();
                *t = crate::exterior::pair(&phi, &dx).unwrap();
            }
            let lifted = exterior::lift_en(&KForm::new(2, transformed).unwrap());
            for row in 0..6 {
                assert_eq!(a.matrix()[(row, col)], lifted.coords()[row]);
            }
        }
    }

    #[test]
    fn nonzero_trace_is_rejected() {
        let bo = Dyadic::identity(SpaceTag::vectors(1));
        match antisym_from_traceless(&bo) {
            Err(Error::NonzeroTrace(t)) => assert_eq!(t, c(4.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pure_axion_decomposes_to_axion_only() {
        let m = Dyadic::identity(SpaceTag::forms(2)).scale(c(2.5));
        let parts = ho_decompose(&m).unwrap();
        assert_eq!(parts.axion_scalar, c(2.5));
        assert!(parts.principal.frobenius() < 1e-15);
        assert!(parts.skewon.frobenius() < 1e-15);
    }

    #[test]
    fn axion_has_no_dispersion_dyadic() {
        let nu = KForm::from_real(1, &[0.3, -1.0, 2.0, 0.5]).unwrap();
        let d = double_contract_nu(&axion_unit(), &nu).unwrap();
        assert!(d.frobenius() < 1e-14);
        let zero = KForm::zero(1);
        let mg = Dyadic::new(MODIFIED.0, MODIFIED.1, CMat::from_fn(6, 6, |i, j| c((i + 2 * j) as f64))).unwrap();
        assert!(double_contract_nu(&mg, &zero).unwrap().frobenius() == 0.0);
    }

    #[test]
    fn dispersion_dyadic_matches_stated_action() {
        let mg = Dyadic::new(
            MODIFIED.0,
            MODIFIED.1,
            CMat::from_fn(6, 6, |i, j| c(((3 * i + 5 * j) % 7) as f64 - 3.0)),
        )
        .unwrap();
        let nu = KForm::from_real(1, &[1.0, -0.5, 0.25, 2.0]).unwrap();
        let phi = KForm::from_real(1, &[0.1, 0.7, -1.3, 0.4]).unwrap();
        let d = double_contract_nu(&mg, &nu).unwrap();
        let via: KVector = d.apply(&phi).unwrap();
        let x: KVector = mg.apply(&nu.wedge(&phi).unwrap()).unwrap();
        let direct = contract(&nu, &x, ContractSide::Left).unwrap();
        assert!((&via - &direct).norm() < 1e-13);
        // ν on the left annihilates
        let left = crate::exterior::pair(&nu, &via).unwrap();
        assert!(left.norm() < 1e-13);
    }
}

//! Exterior algebra over a four-dimensional space and its dual.
//!
//! Multivectors (`KVector`) and multiforms (`KForm`) of grade `k` are stored
//! as `C(4, k)` coordinates in the basis of strictly increasing index tuples,
//! ordered lexicographically. For grade 2 this is
//! `[(1,2), (1,3), (1,4), (2,3), (2,4), (3,4)]`.
//!
//! Indices are 0-based in the API (`0` is `e1`/`ε1`), except for the
//! [`KVector::e`] and [`KForm::eps`] helpers, which follow the 1-based
//! notation `e1..e4`.
//!
//! Conventions (all signs derive from permutation parity relative to
//! `(1,2,3,4)`):
//!
//! * pairing: `ε_I | e_J = δ_IJ` on basis blades;
//! * left contraction `a⌋x`: `(b | a⌋x) = (a∧b | x)`, so
//!   `ν⌋(a∧b) = (ν|a) b − (ν|b) a`;
//! * right contraction `x⌊a`: `(b | x⌊a) = (b∧a | x)`;
//! * quadrivector lift `e_N⌊Φ` is the right contraction of `e_N = e1234`.

use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::{c, Scalar};

/// Basis blades per grade as index bitmasks, in coordinate order.
const BLADES: [&[u8]; 5] = [
    &[0b0000],
    &[0b0001, 0b0010, 0b0100, 0b1000],
    &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100],
    &[0b0111, 0b1011, 0b1101, 0b1110],
    &[0b1111],
];

/// Two-index ordering of the 6-dimensional bivector/two-form coordinates
/// (0-based).
pub const TWO_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Number of coordinates of a grade-`k` element, `C(4, k)`.
pub fn dim(grade: usize) -> usize {
    BLADES[grade].len()
}

/// Bitmasks of the basis blades of `grade`, in coordinate order.
pub fn blades(grade: usize) -> &'static [u8] {
    BLADES[grade]
}

fn slot(mask: u8) -> usize {
    let grade = mask.count_ones() as usize;
    BLADES[grade]
        .iter()
        .position(|&m| m == mask)
        .expect("every 4-bit mask is a basis blade")
}

/// Sign of `ε_A ∧ ε_B` relative to `ε_{A∪B}`; zero when the masks overlap.
pub fn blade_sign(a: u8, b: u8) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0;
    for i in 0..4 {
        if a & (1 << i) != 0 {
            // count indices of b below i
            swaps += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the quadrivector lift of a grade-2 basis element: `e_N⌊ε_ij = s·e_kl`.
///
/// Returns the complement slot and its sign. The table is
/// `(1,2)→+(3,4), (1,3)→−(2,4), (1,4)→+(2,3), (2,3)→+(1,4), (2,4)→−(1,3), (3,4)→+(1,2)`.
pub fn complement_sign(two_index_slot: usize) -> (usize, f64) {
    let mask = BLADES[2][two_index_slot];
    let comp = 0b1111 ^ mask;
    (slot(comp), f64::from(blade_sign(comp, mask)))
}

/// Marker for the two families of graded spaces.
pub trait Side: Copy + Clone + std::fmt::Debug + PartialEq + 'static {
    type Dual: Side<Dual = Self>;
    const FAMILY: Family;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Vector,
    Form,
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::Vector => Family::Form,
            Family::Form => Family::Vector,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vectors;
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forms;

impl Side for Vectors {
    type Dual = Forms;
    const FAMILY: Family = Family::Vector;
}
impl Side for Forms {
    type Dual = Vectors;
    const FAMILY: Family = Family::Form;
}

/// A homogeneous element of the exterior algebra on one side of the duality.
#[derive(Debug, Clone, PartialEq)]
pub struct Multi<S: Side> {
    grade: usize,
    coords: Vec<Scalar>,
    side: PhantomData<S>,
}

/// k-vector (`e_i`, bivectors, trivectors, the quadrivector `e_N`).
pub type KVector = Multi<Vectors>;
/// k-form (one-forms `ν`, two-forms `Φ`, `Ψ`, the four-form `ε_N`).
pub type KForm = Multi<Forms>;

impl<S: Side> Multi<S> {
    pub fn new(grade: usize, coords: Vec<Scalar>) -> Result<Self> {
        if grade > 4 {
            return Err(Error::GradeOutOfRange(grade));
        }
        if coords.len() != dim(grade) {
            return Err(Error::CoordinateCount {
                grade,
                expected: dim(grade),
                found: coords.len(),
            });
        }
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("multivector coordinates"));
        }
        Ok(Multi {
            grade,
            coords,
            side: PhantomData,
        })
    }

    pub fn from_real(grade: usize, coords: &[f64]) -> Result<Self> {
        Self::new(grade, coords.iter().map(|&x| c(x)).collect())
    }

    pub(crate) fn from_vec_unchecked(grade: usize, coords: Vec<Scalar>) -> Self {
        debug_assert_eq!(coords.len(), dim(grade));
        Multi {
            grade,
            coords,
            side: PhantomData,
        }
    }

    pub fn zero(grade: usize) -> Self {
        Self::from_vec_unchecked(grade, vec![Scalar::new(0.0, 0.0); dim(grade)])
    }

    /// Basis blade from 0-based increasing indices.
    pub fn basis(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid("basis indices must be strictly increasing".into()));
            }
        }
        for &i in indices {
            if i > 3 {
                return Err(Error::Invalid(format!("basis index {i} out of range")));
            }
            mask |= 1 << i;
        }
        let mut out = Self::zero(indices.len());
        out.coords[slot(mask)] = c(1.0);
        Ok(out)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn family(&self) -> Family {
        S::FAMILY
    }

    /// Euclidean (Hermitian) norm of the coordinate array.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coords.iter().all(|z| z.norm() <= tol)
    }

    pub fn to_column(&self) -> DMatrix<Scalar> {
        DMatrix::from_column_slice(self.coords.len(), 1, &self.coords)
    }

    pub fn from_column(grade: usize, col: &DMatrix<Scalar>) -> Result<Self> {
        Self::new(grade, col.iter().copied().collect())
    }

    /// Antisymmetric product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let grade = self.grade + other.grade;
        if grade > 4 {
            return Err(Error::GradeOverflow(self.grade, other.grade));
        }
        let mut out = Self::zero(grade);
        for (i, &a) in BLADES[self.grade].iter().enumerate() {
            let x = self.coords[i];
            if x == c(0.0) {
                continue;
            }
            for (j, &b) in BLADES[other.grade].iter().enumerate() {
                let s = blade_sign(a, b);
                if s != 0 {
                    out.coords[slot(a | b)] += x * other.coords[j] * f64::from(s);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ self ∧ y` from grade `k` to grade `self.grade + k`.
    pub fn wedge_matrix(&self, k: usize) -> Result<DMatrix<Scalar>> {
        if self.grade + k > 4 {
            return Err(Error::GradeOverflow(self.grade, k));
        }
        let out_grade = self.grade + k;
        let mut m = DMatrix::zeros(dim(out_grade), dim(k));
        for (j, &b) in BLADES[k].iter().enumerate() {
            for (i, &a) in BLADES[self.grade].iter().enumerate() {
                let s = blade_sign(a, b);
                if s != 0 {
                    m[(slot(a | b), j)] += self.coords[i] * f64::from(s);
                }
            }
        }
        Ok(m)
    }

    /// Symmetric neutral dot product of two grade-2 elements,
    /// `Φ·Ψ = Φ | (e_N⌊Ψ)` (and `A·B = A | (ε_N⌊B)` for bivectors).
    pub fn dot(&self, other: &Self) -> Result<Scalar> {
        for g in [self.grade, other.grade] {
            if g != 2 {
                return Err(Error::GradeMismatch { expected: 2, found: g });
            }
        }
        Ok((0..6)
            .map(|i| {
                let (j, s) = complement_sign(i);
                self.coords[i] * other.coords[j] * s
            })
            .sum())
    }
}

impl KVector {
    /// Basis vector `e_i`, 1-based.
    pub fn e(i: usize) -> Self {
        assert!((1..=4).contains(&i), "e(i) expects 1..=4");
        Self::basis(&[i - 1]).expect("valid basis index")
    }

    /// Quadrivector `e_N = e1∧e2∧e3∧e4`.
    pub fn e_n() -> Self {
        Self::from_vec_unchecked(4, vec![c(1.0)])
    }
}

impl KForm {
    /// Basis one-form `ε_i`, 1-based.
    pub fn eps(i: usize) -> Self {
        assert!((1..=4).contains(&i), "eps(i) expects 1..=4");
        Self::basis(&[i - 1]).expect("valid basis index")
    }

    /// Four-form `ε_N`, with `ε_N | e_N = 1`.
    pub fn eps_n() -> Self {
        Self::from_vec_unchecked(4, vec![c(1.0)])
    }
}

impl<S: Side> Add for &Multi<S> {
    type Output = Multi<S>;
    fn add(self, rhs: Self) -> Multi<S> {
        assert_eq!(self.grade, rhs.grade, "adding elements of different grade");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        Multi::from_vec_unchecked(self.grade, coords)
    }
}

impl<S: Side> Sub for &Multi<S> {
    type Output = Multi<S>;
    fn sub(self, rhs: Self) -> Multi<S> {
        assert_eq!(self.grade, rhs.grade, "subtracting elements of different grade");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        Multi::from_vec_unchecked(self.grade, coords)
    }
}

impl<S: Side> Neg for &Multi<S> {
    type Output = Multi<S>;
    fn neg(self) -> Multi<S> {
        Multi::from_vec_unchecked(self.grade, self.coords.iter().map(|a| -a).collect())
    }
}

impl<S: Side> Mul<Scalar> for &Multi<S> {
    type Output = Multi<S>;
    fn mul(self, k: Scalar) -> Multi<S> {
        Multi::from_vec_unchecked(self.grade, self.coords.iter().map(|a| a * k).collect())
    }
}

/// Duality product `a | x` of a k-form with a k-vector.
pub fn pair(a: &KForm, x: &KVector) -> Result<Scalar> {
    if a.grade != x.grade {
        return Err(Error::GradeMismatch {
            expected: a.grade,
            found: x.grade,
        });
    }
    Ok(a.coords.iter().zip(&x.coords).map(|(p, q)| p * q).sum())
}

/// Which side the contracting element sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractSide {
    /// `a⌋x`
    Left,
    /// `x⌊a`
    Right,
}

/// Interior product of a grade-`j` element of the dual family into a
/// grade-`k` element, `j ≤ k`. Works on either side of the duality.
pub fn contract<S: Side>(a: &Multi<S::Dual>, x: &Multi<S>, side: ContractSide) -> Result<Multi<S>> {
    if a.grade > x.grade {
        return Err(Error::ContractionGrade {
            form: a.grade,
            target: x.grade,
        });
    }
    let mut out = Multi::<S>::zero(x.grade - a.grade);
    for (i, &am) in BLADES[a.grade].iter().enumerate() {
        if a.coords[i] == c(0.0) {
            continue;
        }
        for (j, &xm) in BLADES[x.grade].iter().enumerate() {
            if xm & am != am {
                continue;
            }
            let rest = xm ^ am;
            let s = match side {
                ContractSide::Left => blade_sign(am, rest),
                ContractSide::Right => blade_sign(rest, am),
            };
            out.coords[slot(rest)] += a.coords[i] * x.coords[j] * f64::from(s);
        }
    }
    Ok(out)
}

/// Quadrivector lift `e_N⌊Φ` of a k-form to a (4−k)-vector.
pub fn lift_en(phi: &KForm) -> KVector {
    contract(phi, &KVector::e_n(), ContractSide::Right).expect("grade ≤ 4")
}

/// Inverse of [`lift_en`] on two-forms: `ε_N⌊X` for a bivector `X`.
///
/// For grade 2 the lift is an involution in coordinates, so this is also
/// the lowering map of the bivector dot product.
pub fn unlift(x: &KVector) -> KForm {
    contract(x, &KForm::eps_n(), ContractSide::Right).expect("grade ≤ 4")
}

/// 4×4 antisymmetric coordinate matrix `X^{ij}` of a grade-2 element.
pub fn antisymmetric_matrix<S: Side>(x: &Multi<S>) -> Result<DMatrix<Scalar>> {
    if x.grade != 2 {
        return Err(Error::GradeMismatch { expected: 2, found: x.grade });
    }
    let mut m = DMatrix::zeros(4, 4);
    for (n, &(i, j)) in TWO_INDEX.iter().enumerate() {
        m[(i, j)] = x.coords[n];
        m[(j, i)] = -x.coords[n];
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form1(v: [f64; 4]) -> KForm {
        KForm::from_real(1, &v).unwrap()
    }
    fn vec1(v: [f64; 4]) -> KVector {
        KVector::from_real(1, &v).unwrap()
    }

    #[test]
    fn e1_wedge_e2_is_basis_bivector() {
        let b = KVector::e(1).wedge(&KVector::e(2)).unwrap();
        assert_eq!(b.coords()[0], c(1.0));
        assert!(b.coords()[1..].iter().all(|z| *z == c(0.0)));
    }

    #[test]
    fn wedge_with_self_vanishes() {
        let nu = form1([0.3, -1.2, 2.0, 0.7]);
        assert!(nu.wedge(&nu).unwrap().is_zero(1e-15));
    }

    #[test]
    fn grade_overflow_is_rejected() {
        let b = KForm::eps(1).wedge(&KForm::eps(2)).unwrap();
        let t = b.wedge(&KForm::eps(3)).unwrap();
        assert!(matches!(t.wedge(&b), Err(Error::GradeOverflow(3, 2))));
    }

    #[test]
    fn coordinate_count_and_finiteness_checked() {
        assert!(KForm::from_real(2, &[1.0; 5]).is_err());
        assert!(matches!(
            KForm::from_real(1, &[1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn pair_on_basis() {
        let f = KForm::eps(1).wedge(&KForm::eps(2)).unwrap();
        let e12 = KVector::e(1).wedge(&KVector::e(2)).unwrap();
        let e34 = KVector::e(3).wedge(&KVector::e(4)).unwrap();
        assert_eq!(pair(&f, &e12).unwrap(), c(1.0));
        assert_eq!(pair(&f, &e34).unwrap(), c(0.0));
        assert!(pair(&KForm::eps(1), &e12).is_err());
    }

    #[test]
    fn contraction_convention_anchors() {
        let e12 = KVector::e(1).wedge(&KVector::e(2)).unwrap();
        let r = contract(&KForm::eps(1), &e12, ContractSide::Left).unwrap();
        assert_eq!(r, KVector::e(2));
        let r = contract(&KForm::eps(3), &e12, ContractSide::Left).unwrap();
        assert!(r.is_zero(0.0));
        let three = KForm::eps(1).wedge(&KForm::eps(2)).unwrap().wedge(&KForm::eps(3)).unwrap();
        let bad = contract(&three, &e12, ContractSide::Left);
        assert!(matches!(bad, Err(Error::ContractionGrade { .. })));
    }

    #[test]
    fn lift_sign_table() {
        let expect = [(0, 5, 1.0), (1, 4, -1.0), (2, 3, 1.0), (3, 2, 1.0), (4, 1, -1.0), (5, 0, 1.0)];
        for (i, j, s) in expect {
            assert_eq!(complement_sign(i), (j, s));
            let mut phi = KForm::zero(2);
            phi.coords[i] = c(1.0);
            let lifted = lift_en(&phi);
            assert_eq!(lifted.coords()[j], c(s));
            assert_eq!(unlift(&lifted), phi);
        }
    }

    #[test]
    fn one_form_lift_is_signed_complement() {
        let nu = form1([1.0, 2.0, 3.0, 4.0]);
        let t = lift_en(&nu);
        let want = [4.0, -3.0, 2.0, -1.0];
        for (z, w) in t.coords().iter().zip(want) {
            assert_eq!(*z, c(w));
        }
    }

    #[test]
    fn dot_values() {
        let e = |i, j| KForm::eps(i).wedge(&KForm::eps(j)).unwrap();
        assert_eq!(e(1, 2).dot(&e(3, 4)).unwrap(), c(1.0));
        let phi = KForm::from_real(2, &[0.5, -1.0, 2.0, 0.25, 3.0, -0.75]).unwrap();
        let p = |k: usize| phi.coords()[k];
        let expect = (p(0) * p(5) - p(1) * p(4) + p(2) * p(3)) * 2.0;
        assert!((phi.dot(&phi).unwrap() - expect).norm() < 1e-14);
        let nu = form1([1.0, -2.0, 0.5, 3.0]);
        let ph = form1([0.2, 0.1, -0.7, 1.1]);
        let simple = nu.wedge(&ph).unwrap();
        assert!(simple.dot(&simple).unwrap().norm() < 1e-14);
        // cross-check against the four-form route e_N | (Φ∧Φ)
        let four = phi.wedge(&phi).unwrap();
        assert!((pair(&four, &KVector::e_n()).unwrap() - phi.dot(&phi).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn wedge_matrix_matches_wedge() {
        let nu = form1([0.4, 1.0, -2.0, 0.1]);
        let phi = form1([1.5, 0.0, 0.3, -0.9]);
        let w = nu.wedge_matrix(1).unwrap();
        let direct = nu.wedge(&phi).unwrap();
        let via = KForm::from_column(2, &(w * phi.to_column())).unwrap();
        assert_eq!(direct, via);
        let x = vec1([0.0, 1.0, 2.0, 3.0]);
        assert_eq!(x.family(), Family::Vector);
    }
}

//! Property tests for the algebraic and physical invariants.

use dcmedia::dyadics::{compound, ho_decompose, lift_matrix, Dyadic, BO_MAP, MEDIUM};
use dcmedia::exterior::{contract, pair, ContractSide, KForm, KVector};
use dcmedia::linalg::{self, CMat};
use dcmedia::media::{
    dc1_residual, dc1_witness, fourd_from_gibbsian, gibbsian_from_4d, join_3d, split_3d, GibbsianMedium,
};
use dcmedia::sample::Sampler;
use dcmedia::tol::Tolerances;
use dcmedia::waves::{
    classify_wave, dispersion_dyadic, dispersion_scalar, factor_check, quartic_coefficients,
    quartic_roots_along_direction, solve_plane_wave, QuadraticForm, WaveTag,
};
use dcmedia::{c, Medium, Scalar};
use proptest::prelude::*;

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n)
}

fn form(grade: usize, x: &[f64]) -> KForm {
    KForm::from_real(grade, x).unwrap()
}

fn vector(grade: usize, x: &[f64]) -> KVector {
    KVector::from_real(grade, x).unwrap()
}

fn max_diff(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn dim(grade: usize) -> usize {
    [1, 4, 6, 4, 1][grade]
}

fn graded_pair() -> impl Strategy<Value = (usize, usize, Vec<f64>, Vec<f64>)> {
    (0usize..=4)
        .prop_flat_map(|j| (Just(j), 0..=(4 - j)))
        .prop_flat_map(|(j, k)| (Just(j), Just(k), coords(dim(j)), coords(dim(k))))
}

/// Two one-forms spanning `Φ`, read off by contracting with basis vectors.
fn factor_simple(phi: &KForm) -> (KForm, KForm) {
    let rows: Vec<KForm> = (1..=4)
        .map(|i| contract(&KVector::e(i), phi, ContractSide::Left).unwrap())
        .collect();
    let mut best = (0.0, 0, 1);
    for i in 0..4 {
        for j in i + 1..4 {
            let n = rows[i].wedge(&rows[j]).unwrap().norm();
            if n > best.0 {
                best = (n, i, j);
            }
        }
    }
    (rows[best.1].clone(), rows[best.2].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_graded_anticommutative((j, k, x, y) in graded_pair()) {
        let (x, y) = (form(j, &x), form(k, &y));
        let sign = if (j * k) % 2 == 0 { 1.0 } else { -1.0 };
        let xy = x.wedge(&y).unwrap();
        let yx: Vec<Scalar> = y.wedge(&x).unwrap().coords().iter().map(|z| z * sign).collect();
        prop_assert!(max_diff(xy.coords(), &yx) <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn wedge_is_bilinear(a in coords(4), b in coords(4), y in coords(6), s in -2.0f64..2.0) {
        let (a, b, y) = (vector(1, &a), vector(1, &b), vector(2, &y));
        let lhs = (&a + &(&b * c(s))).wedge(&y).unwrap();
        let rhs = &a.wedge(&y).unwrap() + &(&b.wedge(&y).unwrap() * c(s));
        prop_assert!(max_diff(lhs.coords(), rhs.coords()) < 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn contraction_is_dual_to_wedge(nu in coords(4), phi in coords(4), x in coords(6)) {
        let (nu, phi, x) = (form(1, &nu), form(1, &phi), vector(2, &x));
        let lhs = pair(&phi, &contract(&nu, &x, ContractSide::Left).unwrap()).unwrap();
        let rhs = pair(&nu.wedge(&phi).unwrap(), &x).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + nu.norm() * phi.norm() * x.norm()));
        let twice = contract(&nu, &contract(&nu, &x, ContractSide::Left).unwrap(), ContractSide::Left).unwrap();
        prop_assert!(twice.norm() < 1e-12 * (1.0 + nu.norm() * nu.norm() * x.norm()));
    }

    #[test]
    fn dot_is_symmetric_with_pfaffian_square(p in coords(6), q in coords(6)) {
        let (phi, psi) = (form(2, &p), form(2, &q));
        prop_assert!((phi.dot(&psi).unwrap() - psi.dot(&phi).unwrap()).norm() < 1e-12 * (1.0 + phi.norm() * psi.norm()));
        let expected = 2.0 * (p[0] * p[5] - p[1] * p[4] + p[2] * p[3]);
        prop_assert!((phi.dot(&phi).unwrap() - c(expected)).norm() < 1e-12 * (1.0 + phi.norm() * phi.norm()));
    }

    #[test]
    fn simple_two_forms_are_null_and_factor(nu in coords(4), phi in coords(4)) {
        let (nu, phi) = (form(1, &nu), form(1, &phi));
        let simple = nu.wedge(&phi).unwrap();
        prop_assume!(simple.norm() > 1e-3);
        prop_assert!(simple.dot(&simple).unwrap().norm() < 1e-12 * (1.0 + simple.norm() * simple.norm()));
        let (a, b) = factor_simple(&simple);
        let rebuilt = a.wedge(&b).unwrap();
        // a∧b = k Φ for some scalar k
        let k: Scalar = rebuilt.coords().iter().zip(simple.coords()).map(|(x, y)| x * y.conj()).sum::<Scalar>()
            / (simple.norm() * simple.norm());
        let scaled: Vec<Scalar> = simple.coords().iter().map(|z| z * k).collect();
        prop_assert!(max_diff(rebuilt.coords(), &scaled) < 1e-9 * rebuilt.norm());
    }

    #[test]
    fn non_null_two_forms_do_not_factor(p in coords(6)) {
        let phi = form(2, &p);
        let square = phi.dot(&phi).unwrap().norm();
        prop_assume!(square > 1e-2 * phi.norm() * phi.norm());
        let (a, b) = factor_simple(&phi);
        let rebuilt = a.wedge(&b).unwrap();
        let cos = pair(&rebuilt, &KVector::new(2, phi.coords().iter().map(|z| z.conj()).collect()).unwrap())
            .unwrap()
            .norm()
            / (rebuilt.norm() * phi.norm());
        prop_assert!(cos < 1.0 - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compound_is_multiplicative(seed in any::<u64>(), k in 2usize..=3) {
        let mut s = Sampler::complex(seed);
        let (a, b) = (s.matrix(4, 4), s.matrix(4, 4));
        let (ca, cb) = (linalg::compound(&a, k), linalg::compound(&b, k));
        let lhs = linalg::compound(&(&a * &b), k);
        let rhs = &ca * &cb;
        prop_assert!(linalg::max_abs(&(lhs - rhs)) < 1e-12 * (1.0 + linalg::max_abs(&ca) * linalg::max_abs(&cb)));
    }

    #[test]
    fn transpose_moves_across_the_pairing(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let d = Dyadic::new(BO_MAP.0, BO_MAP.1, s.matrix(4, 4)).unwrap();
        let (a, x) = (s.one_form(), KVector::new(1, s.one_form().coords().to_vec()).unwrap());
        let dx: KVector = d.apply(&x).unwrap();
        let dta: KForm = d.transpose().apply(&a).unwrap();
        prop_assert!((pair(&a, &dx).unwrap() - pair(&dta, &x).unwrap()).norm() < 1e-12 * (1.0 + a.norm() * x.norm() * d.frobenius()));
        prop_assert_eq!(d.transpose().transpose(), d);
    }

    #[test]
    fn ho_parts_obey_their_contracts(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let med = s.raw();
        let m = med.m();
        let parts = ho_decompose(m).unwrap();
        let scale = 1.0 + linalg::max_abs(m.matrix());
        prop_assert!(linalg::max_abs(&(parts.reconstruct().matrix() - m.matrix())) < 1e-12 * scale);
        prop_assert!(parts.principal.trace().norm() < 1e-12 * scale);
        prop_assert!(parts.skewon.trace().norm() < 1e-12 * scale);
        let g = lift_matrix();
        let (pg, sg) = (&g * parts.principal.matrix(), &g * parts.skewon.matrix());
        prop_assert!(linalg::max_abs(&(&pg - pg.transpose())) < 1e-12 * scale);
        prop_assert!(linalg::max_abs(&(&sg + sg.transpose())) < 1e-12 * scale);
        // uniqueness: splitting the parts again returns them unchanged
        let again = ho_decompose(&parts.principal).unwrap();
        prop_assert!(linalg::max_abs(&(again.principal.matrix() - parts.principal.matrix())) < 1e-12 * scale);
        prop_assert!(again.axion_scalar.norm() < 1e-12 * scale);
    }

    #[test]
    fn dispersion_dyadic_has_nu_in_both_null_spaces(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let (med, nu) = (s.raw(), s.one_form());
        let d = dispersion_dyadic(&med, &nu).unwrap();
        let v = nu.to_column();
        let scale = 1.0 + linalg::frobenius(d.matrix()) * v.norm();
        prop_assert!((d.matrix() * &v).norm() < 1e-12 * scale);
        prop_assert!((v.transpose() * d.matrix()).norm() < 1e-12 * scale);
    }

    #[test]
    fn axion_leaves_dispersion_unchanged(seed in any::<u64>(), alpha in -5.0f64..5.0) {
        let mut s = Sampler::complex(seed);
        let (med, nu) = (s.raw(), s.one_form());
        let shifted = med.plus_axion(c(alpha));
        let (d0, d1) = (dispersion_scalar(&med, &nu).unwrap(), dispersion_scalar(&shifted, &nu).unwrap());
        prop_assert!((d0 - d1).norm() <= 1e-10 * d0.norm().max(1e-300));
    }

    #[test]
    fn sign_flip_of_the_medium_keeps_the_zero_set(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let med = s.raw();
        let flipped = Medium::from_m(med.m().scale(c(-1.0))).unwrap();
        let nu = s.one_form();
        let (d0, d1) = (dispersion_scalar(&med, &nu).unwrap(), dispersion_scalar(&flipped, &nu).unwrap());
        // Δ is cubic in M
        prop_assert!((d0 + d1).norm() <= 1e-10 * d0.norm().max(1e-300));
    }

    #[test]
    fn products_of_quadratics_pass_the_factor_check(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let q1 = QuadraticForm::from_matrix(&s.matrix(4, 4)).unwrap();
        let q2 = QuadraticForm::from_matrix(&s.matrix(4, 4)).unwrap();
        let k = s.nonzero();
        let mut quartic = q1.product(&q2);
        for z in quartic.coeffs.iter_mut() {
            *z *= k;
        }
        let check = factor_check(&quartic, &q1, &q2).unwrap();
        prop_assert!(check.max_rel_err < 1e-9);
        prop_assert!((check.scale - k).norm() < 1e-9 * k.norm());
    }

    #[test]
    fn constructed_media_satisfy_their_witness(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        for med in [s.qdcm().unwrap(), s.pdcm().unwrap(), s.sdcm().unwrap()] {
            let w = dc1_witness(&med).unwrap();
            prop_assert!(w.residual < 1e-9, "{} residual {:e}", med.provenance().class_name(), w.residual);
            prop_assert_eq!(dc1_residual(med.mg(), &w).unwrap(), w.residual);
        }
    }

    #[test]
    fn three_d_and_gibbsian_round_trips(seed in any::<u64>()) {
        let mut s = Sampler::complex(seed);
        let m3 = |s: &mut Sampler| dcmedia::linalg::Mat3::from_fn(|_, _| s.scalar());
        let g = GibbsianMedium {
            eps_g: m3(&mut s),
            xi_g: m3(&mut s),
            zeta_g: m3(&mut s),
            mu_g: m3(&mut s) + dcmedia::linalg::Mat3::identity() * c(3.0),
        };
        let med = fourd_from_gibbsian(&g).unwrap();
        let joined = join_3d(&split_3d(&med));
        prop_assert_eq!(joined.m(), med.m());
        let back = gibbsian_from_4d(&med).unwrap();
        prop_assert!(back.max_abs_diff(&g) < 1e-10 * g.max_abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plane_waves_satisfy_orthogonality(seed in any::<u64>()) {
        let tols = Tolerances::default();
        let mut s = Sampler::complex(seed);
        let med = s.raw();
        let quartic = quartic_coefficients(&med).unwrap();
        for nu in quartic_roots_along_direction(&quartic, s.vector3()).unwrap() {
            let wave = solve_plane_wave(&med, &nu, &tols).unwrap();
            for r in wave.orthogonality() {
                prop_assert!(r < 1e-9, "{:e}", r);
            }
            // ν∧Φ = 0 and ν∧Ψ ≈ 0 (Ψ is closed on the dispersion surface)
            let scale = nu.norm() * wave.field.norm();
            prop_assert!(nu.wedge(&wave.field).unwrap().norm() < 1e-12 * scale);
            let scale = nu.norm() * wave.excitation.norm();
            prop_assert!(nu.wedge(&wave.excitation).unwrap().norm() < 1e-8 * scale);
        }
    }

    #[test]
    fn wave_tags_follow_their_residuals(seed in any::<u64>()) {
        let tols = Tolerances::default();
        let mut s = Sampler::complex(seed);
        let med = s.raw();
        let quartic = quartic_coefficients(&med).unwrap();
        let (a, b) = (s.bivector(), s.bivector());
        for nu in quartic_roots_along_direction(&quartic, s.vector3()).unwrap() {
            let wave = solve_plane_wave(&med, &nu, &tols).unwrap();
            // the lift of Φ is annihilated by Φ itself
            let own = dcmedia::exterior::lift_en(&wave.field);
            let cls = classify_wave(&wave, &own, &b, tols.classification).unwrap();
            prop_assert_eq!(cls.tag, WaveTag::AWave);
            let cls = classify_wave(&wave, &a, &b, tols.classification).unwrap();
            let expected = match (cls.residual_a < tols.classification, cls.residual_b < tols.classification) {
                (true, true) => WaveTag::Both,
                (true, false) => WaveTag::AWave,
                (false, true) => WaveTag::BWave,
                (false, false) => WaveTag::Neither,
            };
            prop_assert_eq!(cls.tag, expected);
            let cls = classify_wave(&wave, &own, &own, tols.classification).unwrap();
            prop_assert_eq!(cls.tag, WaveTag::Both);
        }
    }
}

#[test]
fn medium_dyadic_spaces_are_enforced() {
    let bad = Dyadic::new(BO_MAP.0, BO_MAP.1, CMat::identity(4, 4)).unwrap();
    assert!(ho_decompose(&bad).is_err());
    assert!(compound(&Dyadic::identity(MEDIUM.0), 2).is_err());
}

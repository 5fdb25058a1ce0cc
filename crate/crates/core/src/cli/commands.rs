//! Result sections of the individual commands.

use serde_json::Value;

use super::document::{Kind, MediumDocument, Parameters};
use super::json::{self, complex, matrix, matrix3, multi, object, real};
use super::{Command, Failure, Options};
use crate::dyadics::{ho_decompose, lift_matrix};
use crate::error::Error;
use crate::exterior::{KForm, KVector};
use crate::linalg;
use crate::media::{
    bivectors_ab, classify_quadratic_medium, dc1_witness, detect_dcm, gibbsian_from_4d, split_3d, Dc1Witness,
    DetectOptions, InvertiblePair, Medium, QuadraticKind,
};
use crate::sample::Sampler;
use crate::waves::{
    classify_wave, dispersion_report, predicted_factors, quartic_coefficients, quartic_monomials,
    quartic_roots_along_direction, roots_along_direction, solve_plane_wave, PlaneWave, QuadraticForm,
};

type Out = Result<Value, Failure>;

pub(super) fn dispatch(cmd: Command, doc: &MediumDocument, opts: &Options, warnings: &mut Vec<String>) -> Out {
    let medium = doc.medium()?;
    match cmd {
        Command::Build => build(doc, &medium),
        Command::HoDecompose => ho(&medium),
        Command::DetectDcm => detect(doc, &medium, opts, warnings),
        Command::Dispersion => dispersion(&medium, warnings),
        Command::Planewave => planewave(doc, &medium, opts, warnings),
        Command::Convert => convert(doc, &medium, opts),
        Command::ClassifyQuadratic => classify(&medium, opts, warnings),
    }
}

fn witness(w: &Dc1Witness) -> Value {
    object(vec![
        ("alpha", complex(w.alpha)),
        ("beta", complex(w.beta)),
        ("gamma", complex(w.gamma)),
        ("a", multi(&w.a)),
        ("b", multi(&w.b)),
        ("residual", real(w.residual)),
    ])
}

/// Witness implied by the document's construction parameters, if any.
fn known_witness(doc: &MediumDocument, medium: &Medium) -> Option<Dc1Witness> {
    match doc.uniaxial() {
        Some(u) => u.witness().ok(),
        None => dc1_witness(medium).ok(),
    }
}

fn build(doc: &MediumDocument, medium: &Medium) -> Out {
    let mut entries = vec![
        ("class", Value::String(medium.provenance().class_name().into())),
        ("medium", doc.to_value()),
        ("m", matrix(medium.m().matrix())),
        ("mg", matrix(medium.mg().matrix())),
    ];
    if let Some(w) = known_witness(doc, medium) {
        entries.push(("witness", witness(&w)));
    }
    Ok(object(entries))
}

fn ho(medium: &Medium) -> Out {
    let parts = ho_decompose(medium.m())?;
    let g = lift_matrix();
    let m = medium.m().matrix();
    let scale = linalg::frobenius(m).max(f64::MIN_POSITIVE);
    let rec = linalg::frobenius(&(parts.reconstruct().matrix() - m)) / scale;
    let p = &g * parts.principal.matrix();
    let s = &g * parts.skewon.matrix();
    Ok(object(vec![
        ("principal", matrix(parts.principal.matrix())),
        ("skewon", matrix(parts.skewon.matrix())),
        ("axion", complex(parts.axion_scalar)),
        ("reconstruction_residual", real(rec)),
        ("principal_trace", complex(parts.principal.trace())),
        ("skewon_trace", complex(parts.skewon.trace())),
        ("principal_symmetry_defect", real(linalg::frobenius(&(&p - p.transpose())) / scale)),
        ("skewon_antisymmetry_defect", real(linalg::frobenius(&(&s + s.transpose())) / scale)),
    ]))
}

fn detect(doc: &MediumDocument, medium: &Medium, opts: &Options, warnings: &mut Vec<String>) -> Out {
    let det = DetectOptions {
        accept: opts.detect_accept(),
        ..DetectOptions::default()
    };
    let found = detect_dcm(medium.mg(), &det)?;
    let mut notes = vec![Value::String(
        "a witness shows the decomposition condition holds; the condition is sufficient, necessity is open".into(),
    )];
    if found.is_empty() {
        warnings.push("no witness found within the acceptance threshold".into());
    }
    if let Some(u) = doc.uniaxial() {
        notes.push(Value::String(
            "uniaxial medium: A = e3^e4 selects TE waves (u_z.E = 0) and B ~ e1^e2 selects TM waves (u_z.H = 0)"
                .into(),
        ));
        if u.degenerate {
            warnings.push("eps_t mu_z = mu_t eps_z: the TE/TM decomposition is not unique".into());
        }
    }
    let mut entries = vec![
        ("witnesses", Value::Array(found.iter().map(witness).collect())),
        ("notes", Value::Array(notes)),
    ];
    if let Some(w) = known_witness(doc, medium) {
        entries.push(("constructed_witness", witness(&w)));
    }
    Ok(object(entries))
}

fn quadratic(q: &QuadraticForm) -> Value {
    matrix(q.matrix())
}

fn dispersion(medium: &Medium, warnings: &mut Vec<String>) -> Out {
    let r = dispersion_report(medium)?;
    warnings.extend(r.warnings.iter().cloned());
    let monomials = quartic_monomials()
        .iter()
        .map(|e| Value::Array(e.iter().map(|&k| Value::from(k)).collect()))
        .collect();
    let mut entries = vec![
        ("monomials", Value::Array(monomials)),
        ("quartic", json::complex_list(&r.quartic.coeffs)),
        ("fit_residual", real(r.quartic.fit_residual)),
    ];
    if let Some((a, b)) = &r.factors {
        entries.push(("factors", object(vec![("a_wave", quadratic(a)), ("b_wave", quadratic(b))])));
    }
    if let Some(ch) = r.check {
        entries.push((
            "factor_check",
            object(vec![("scale", complex(ch.scale)), ("max_rel_err", real(ch.max_rel_err))]),
        ));
    }
    Ok(object(entries))
}

/// Selector bivectors used to classify waves, if the medium provides them.
fn selectors(doc: &MediumDocument, medium: &Medium) -> Option<(KVector, KVector)> {
    match doc.uniaxial() {
        Some(u) => u.witness().ok().map(|w| (w.a, w.b)),
        None => bivectors_ab(medium).ok(),
    }
}

fn wave_entry(
    wave: &PlaneWave,
    direction: usize,
    factor: Option<&str>,
    ab: &Option<(KVector, KVector)>,
    tol: f64,
    uniaxial: bool,
) -> Result<Value, Error> {
    let mut entries = vec![
        ("direction", Value::from(direction)),
        ("factor", factor.map_or(Value::Null, |f| Value::String(f.into()))),
        ("nu", multi(&wave.nu)),
        ("phi", multi(&wave.phi)),
        ("field", multi(&wave.field)),
        ("excitation", multi(&wave.excitation)),
        ("dispersion_defect", real(wave.dispersion_defect)),
        ("orthogonality", Value::Array(wave.orthogonality().iter().map(|&x| real(x)).collect())),
    ];
    if let Some((a, b)) = ab {
        let cls = classify_wave(wave, a, b, tol)?;
        entries.push((
            "class",
            object(vec![
                ("tag", Value::String(cls.tag.as_str().into())),
                ("residual_a", real(cls.residual_a)),
                ("residual_b", real(cls.residual_b)),
            ]),
        ));
    }
    if uniaxial {
        let f = wave.fields_3d();
        let rel = |v: [crate::Scalar; 3]| {
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n == 0.0 {
                0.0
            } else {
                v[2].norm() / n
            }
        };
        entries.push(("uz_e", real(rel(f.e))));
        entries.push(("uz_h", real(rel(f.h))));
    }
    Ok(object(entries))
}

fn planewave(doc: &MediumDocument, medium: &Medium, opts: &Options, warnings: &mut Vec<String>) -> Out {
    let tols = opts.tolerances();
    let mut sampler = Sampler::new(opts.seed);
    let ab = selectors(doc, medium);
    if ab.is_none() {
        warnings.push("no selector bivectors known for this medium; waves are not classified".into());
    }
    let factors = predicted_factors(medium).ok().filter(|(a, b)| a.norm() > 0.0 && b.norm() > 0.0);
    let quartic = if factors.is_none() {
        let q = quartic_coefficients(medium)?;
        if q.is_zero() {
            warnings.push("no dispersion constraint: every wave one-form is admissible".into());
            return Ok(object(vec![("waves", Value::Array(Vec::new()))]));
        }
        Some(q)
    } else {
        None
    };
    let mut waves = Vec::new();
    for dir in 0..opts.directions {
        let spatial = sampler.vector3();
        let mut roots: Vec<(Option<&str>, KForm)> = Vec::new();
        let sampled = match (&factors, &quartic) {
            (Some((qa, qb)), _) => roots_along_direction(qa, spatial)
                .map(|r| roots.extend(r.into_iter().map(|nu| (Some("A"), nu))))
                .and_then(|_| roots_along_direction(qb, spatial))
                .map(|r| roots.extend(r.into_iter().map(|nu| (Some("B"), nu)))),
            (None, Some(q)) => {
                quartic_roots_along_direction(q, spatial).map(|r| roots.extend(r.into_iter().map(|nu| (None, nu))))
            }
            (None, None) => unreachable!("either factors or a quartic is present"),
        };
        if let Err(e) = sampled {
            warnings.push(format!("direction {dir}: {e}"));
        }
        for (factor, nu) in roots {
            match solve_plane_wave(medium, &nu, &tols) {
                Ok(w) => waves.push(wave_entry(&w, dir, factor, &ab, tols.classification, doc.uniaxial().is_some())?),
                Err(e) => warnings.push(format!("direction {dir}: {e}")),
            }
        }
    }
    Ok(object(vec![("waves", Value::Array(waves))]))
}

fn convert(doc: &MediumDocument, medium: &Medium, opts: &Options) -> Out {
    let s = split_3d(medium);
    let split = object(vec![
        ("alpha_d", matrix3(&s.alpha_d)),
        ("eps_prime", matrix3(&s.eps_prime)),
        ("mu_inv", matrix3(&s.mu_inv)),
        ("beta_d", matrix3(&s.beta_d)),
    ]);
    let (target, round_trip) = match opts.to {
        Kind::Raw6x6 => {
            let t = MediumDocument {
                parameters: Parameters::Raw6x6 { m: medium.m().matrix().clone() },
                metadata: doc.metadata.clone(),
            };
            (t, 0.0)
        }
        Kind::Gibbsian => {
            let g = gibbsian_from_4d(medium)?;
            let back = crate::media::fourd_from_gibbsian(&g)?;
            let err = linalg::max_abs(&(back.m().matrix() - medium.m().matrix()));
            let t = MediumDocument {
                parameters: Parameters::Gibbsian(g),
                metadata: doc.metadata.clone(),
            };
            (t, err)
        }
        other => {
            return Err(Failure::validation(format!(
                "convert supports --to raw6x6 or gibbsian, not {}",
                other.name()
            )))
        }
    };
    Ok(object(vec![
        ("document", target.to_value()),
        ("split", split),
        ("round_trip_error", real(round_trip)),
    ]))
}

fn classify(medium: &Medium, opts: &Options, warnings: &mut Vec<String>) -> Out {
    let r = classify_quadratic_medium(medium, None, &opts.tolerances())?;
    warnings.extend(r.warnings.iter().cloned());
    let kind = match r.kind {
        QuadraticKind::PMedium => "P-medium",
        QuadraticKind::QMedium => "Q-medium",
    };
    let pair = match r.invertible_pair {
        InvertiblePair::AlphaBeta => "alpha_beta",
        InvertiblePair::MuInvEps => "mu_inv_eps",
    };
    Ok(object(vec![
        ("kind", Value::String(kind.into())),
        ("recovered", matrix(r.recovered.matrix())),
        ("scale", complex(r.scale)),
        ("invertible_pair", Value::String(pair.into())),
        ("alpha", complex(r.alpha)),
        ("a_root", complex(r.a_root)),
        ("x_residual", real(r.x_residual)),
        ("scale_relation_residual", real(r.scale_relation_residual)),
        ("residual", real(r.residual)),
        ("conditions", Value::Array(r.conditions.iter().map(|&x| real(x)).collect())),
    ]))
}

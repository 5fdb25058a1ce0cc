//! Medium documents: the JSON description of a medium by kind and
//! parameters.

use serde_json::{Map, Value};

use super::json::{self, parse_complex, parse_list, parse_matrix, parse_matrix3};
use crate::dyadics::{Dyadic, BO_MAP, MEDIUM, P_MAP, Q_MAP};
use crate::error::{Error, Result};
use crate::exterior::KVector;
use crate::linalg::{CMat, Mat3};
use crate::media::{
    construct_pdcm, construct_qdcm, construct_sdcm, fourd_from_gibbsian, uniaxial_gibbsian, GibbsianMedium, Medium,
    Uniaxial,
};
use crate::sample::Sampler;
use crate::Scalar;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Raw6x6,
    Qdcm,
    Pdcm,
    Sdcm,
    QMedium,
    PMedium,
    Gibbsian,
    Uniaxial,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Raw6x6,
        Kind::Qdcm,
        Kind::Pdcm,
        Kind::Sdcm,
        Kind::QMedium,
        Kind::PMedium,
        Kind::Gibbsian,
        Kind::Uniaxial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Raw6x6 => "raw6x6",
            Kind::Qdcm => "qdcm",
            Kind::Pdcm => "pdcm",
            Kind::Sdcm => "sdcm",
            Kind::QMedium => "q_medium",
            Kind::PMedium => "p_medium",
            Kind::Gibbsian => "gibbsian",
            Kind::Uniaxial => "uniaxial",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown medium kind '{s}'")))
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Kind::Raw6x6 => &["m"],
            Kind::Qdcm => &["alpha", "c", "d", "m", "q"],
            Kind::Pdcm => &["alpha", "c", "d", "m", "p"],
            Kind::Sdcm => &["a", "alpha", "b", "bo"],
            Kind::QMedium => &["m", "q"],
            Kind::PMedium => &["m", "p"],
            Kind::Gibbsian => &["eps", "mu", "xi", "zeta"],
            Kind::Uniaxial => &["eps_t", "eps_z", "mu_t", "mu_z"],
        }
    }
}

/// Typed parameters of a medium document.
#[derive(Debug, Clone, PartialEq)]
pub enum Parameters {
    Raw6x6 { m: CMat },
    Qdcm { alpha: Scalar, m: Scalar, q: CMat, d: Vec<Scalar>, c: Vec<Scalar> },
    Pdcm { alpha: Scalar, m: Scalar, p: CMat, d: Vec<Scalar>, c: Vec<Scalar> },
    Sdcm { alpha: Scalar, bo: CMat, a: Vec<Scalar>, b: Vec<Scalar> },
    QMedium { m: Scalar, q: CMat },
    PMedium { m: Scalar, p: CMat },
    Gibbsian(GibbsianMedium),
    Uniaxial { eps_t: Scalar, eps_z: Scalar, mu_t: Scalar, mu_z: Scalar },
}

impl Parameters {
    pub fn kind(&self) -> Kind {
        match self {
            Parameters::Raw6x6 { .. } => Kind::Raw6x6,
            Parameters::Qdcm { .. } => Kind::Qdcm,
            Parameters::Pdcm { .. } => Kind::Pdcm,
            Parameters::Sdcm { .. } => Kind::Sdcm,
            Parameters::QMedium { .. } => Kind::QMedium,
            Parameters::PMedium { .. } => Kind::PMedium,
            Parameters::Gibbsian(_) => Kind::Gibbsian,
            Parameters::Uniaxial { .. } => Kind::Uniaxial,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediumDocument {
    pub parameters: Parameters,
    pub metadata: Value,
}

fn biv(x: &[Scalar]) -> Result<KVector> {
    KVector::new(2, x.to_vec())
}

impl MediumDocument {
    pub fn new(parameters: Parameters) -> Self {
        MediumDocument {
            parameters,
            metadata: Value::Object(Map::new()),
        }
    }

    pub fn kind(&self) -> Kind {
        self.parameters.kind()
    }

    /// Parses and validates a document value.
    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Invalid("medium document must be a JSON object".into()))?;
        for key in obj.keys() {
            if !["schema_version", "kind", "parameters", "metadata"].contains(&key.as_str()) {
                return Err(Error::Invalid(format!("unknown top-level field '{key}'")));
            }
        }
        match obj.get("schema_version").and_then(Value::as_str) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(Error::Invalid(format!("unsupported schema_version '{other}'"))),
            None => return Err(Error::Invalid("missing string field 'schema_version'".into())),
        }
        let kind = Kind::parse(
            obj.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Invalid("missing string field 'kind'".into()))?,
        )?;
        let p = obj
            .get("parameters")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Invalid("missing object field 'parameters'".into()))?;
        for key in p.keys() {
            if !kind.keys().contains(&key.as_str()) {
                return Err(Error::Invalid(format!("unknown parameter '{key}' for kind {}", kind.name())));
            }
        }
        let get = |k: &str| {
            p.get(k)
                .ok_or_else(|| Error::Invalid(format!("missing parameter '{k}' for kind {}", kind.name())))
        };
        let scalar = |k: &str| parse_complex(get(k)?, k);
        let list = |k: &str, n| parse_list(get(k)?, n, k);
        let mat = |k: &str, n| parse_matrix(get(k)?, n, n, k);
        let mat3 = |k: &str| parse_matrix3(get(k)?, k);
        let parameters = match kind {
            Kind::Raw6x6 => Parameters::Raw6x6 { m: mat("m", 6)? },
            Kind::Qdcm => Parameters::Qdcm {
                alpha: scalar("alpha")?,
                m: scalar("m")?,
                q: mat("q", 4)?,
                d: list("d", 6)?,
                c: list("c", 6)?,
            },
            Kind::Pdcm => Parameters::Pdcm {
                alpha: scalar("alpha")?,
                m: scalar("m")?,
                p: mat("p", 4)?,
                d: list("d", 6)?,
                c: list("c", 6)?,
            },
            Kind::Sdcm => Parameters::Sdcm {
                alpha: scalar("alpha")?,
                bo: mat("bo", 4)?,
                a: list("a", 6)?,
                b: list("b", 6)?,
            },
            Kind::QMedium => Parameters::QMedium {
                m: scalar("m")?,
                q: mat("q", 4)?,
            },
            Kind::PMedium => Parameters::PMedium {
                m: scalar("m")?,
                p: mat("p", 4)?,
            },
            Kind::Gibbsian => Parameters::Gibbsian(GibbsianMedium {
                eps_g: mat3("eps")?,
                xi_g: mat3("xi")?,
                zeta_g: mat3("zeta")?,
                mu_g: mat3("mu")?,
            }),
            Kind::Uniaxial => Parameters::Uniaxial {
                eps_t: scalar("eps_t")?,
                eps_z: scalar("eps_z")?,
                mu_t: scalar("mu_t")?,
                mu_z: scalar("mu_z")?,
            },
        };
        let metadata = obj.get("metadata").cloned().unwrap_or_else(|| Value::Object(Map::new()));
        Ok(MediumDocument { parameters, metadata })
    }

    pub fn to_value(&self) -> Value {
        let j = json::complex;
        let l = |x: &[Scalar]| json::complex_list(x);
        let params = match &self.parameters {
            Parameters::Raw6x6 { m } => vec![("m", json::matrix(m))],
            Parameters::Qdcm { alpha, m, q, d, c } => vec![
                ("alpha", j(*alpha)),
                ("m", j(*m)),
                ("q", json::matrix(q)),
                ("d", l(d)),
                ("c", l(c)),
            ],
            Parameters::Pdcm { alpha, m, p, d, c } => vec![
                ("alpha", j(*alpha)),
                ("m", j(*m)),
                ("p", json::matrix(p)),
                ("d", l(d)),
                ("c", l(c)),
            ],
            Parameters::Sdcm { alpha, bo, a, b } => {
                vec![("alpha", j(*alpha)), ("bo", json::matrix(bo)), ("a", l(a)), ("b", l(b))]
            }
            Parameters::QMedium { m, q } => vec![("m", j(*m)), ("q", json::matrix(q))],
            Parameters::PMedium { m, p } => vec![("m", j(*m)), ("p", json::matrix(p))],
            Parameters::Gibbsian(g) => vec![
                ("eps", json::matrix3(&g.eps_g)),
                ("xi", json::matrix3(&g.xi_g)),
                ("zeta", json::matrix3(&g.zeta_g)),
                ("mu", json::matrix3(&g.mu_g)),
            ],
            Parameters::Uniaxial { eps_t, eps_z, mu_t, mu_z } => vec![
                ("eps_t", j(*eps_t)),
                ("eps_z", j(*eps_z)),
                ("mu_t", j(*mu_t)),
                ("mu_z", j(*mu_z)),
            ],
        };
        json::object(vec![
            ("schema_version", Value::String(SCHEMA_VERSION.into())),
            ("kind", Value::String(self.kind().name().into())),
            ("parameters", json::object(params)),
            ("metadata", self.metadata.clone()),
        ])
    }

    /// Builds the medium, keeping construction provenance where the kind
    /// has one.
    pub fn medium(&self) -> Result<Medium> {
        match &self.parameters {
            Parameters::Raw6x6 { m } => Medium::from_m(Dyadic::new(MEDIUM.0, MEDIUM.1, m.clone())?),
            Parameters::Qdcm { alpha, m, q, d, c } => {
                construct_qdcm(*alpha, *m, &Dyadic::new(Q_MAP.0, Q_MAP.1, q.clone())?, &biv(d)?, &biv(c)?)
            }
            Parameters::Pdcm { alpha, m, p, d, c } => {
                construct_pdcm(*alpha, *m, &Dyadic::new(P_MAP.0, P_MAP.1, p.clone())?, &biv(d)?, &biv(c)?)
            }
            Parameters::Sdcm { alpha, bo, a, b } => {
                construct_sdcm(*alpha, &Dyadic::new(BO_MAP.0, BO_MAP.1, bo.clone())?, &biv(a)?, &biv(b)?)
            }
            Parameters::QMedium { m, q } => Medium::q_medium(*m, &Dyadic::new(Q_MAP.0, Q_MAP.1, q.clone())?),
            Parameters::PMedium { m, p } => Medium::p_medium(*m, &Dyadic::new(P_MAP.0, P_MAP.1, p.clone())?),
            Parameters::Gibbsian(g) => {
                check_finite3(g)?;
                fourd_from_gibbsian(g)
            }
            Parameters::Uniaxial { .. } => self.uniaxial().expect("uniaxial kind").medium(),
        }
    }

    pub fn uniaxial(&self) -> Option<Uniaxial> {
        match self.parameters {
            Parameters::Uniaxial { eps_t, eps_z, mu_t, mu_z } => Some(uniaxial_gibbsian(eps_t, eps_z, mu_t, mu_z)),
            _ => None,
        }
    }

    /// Random document of the given kind.
    pub fn random(kind: Kind, s: &mut Sampler) -> Self {
        let bv = |s: &mut Sampler| s.bivector().coords().to_vec();
        let parameters = match kind {
            Kind::Raw6x6 => Parameters::Raw6x6 { m: s.matrix(6, 6) },
            Kind::Qdcm => Parameters::Qdcm {
                alpha: s.scalar(),
                m: s.nonzero(),
                q: s.q().into_matrix(),
                d: bv(s),
                c: bv(s),
            },
            Kind::Pdcm => Parameters::Pdcm {
                alpha: s.scalar(),
                m: s.nonzero(),
                p: s.p().into_matrix(),
                d: bv(s),
                c: bv(s),
            },
            Kind::Sdcm => Parameters::Sdcm {
                alpha: s.scalar(),
                bo: s.bo().into_matrix(),
                a: bv(s),
                b: bv(s),
            },
            Kind::QMedium => Parameters::QMedium {
                m: s.nonzero(),
                q: s.q().into_matrix(),
            },
            Kind::PMedium => Parameters::PMedium {
                m: s.nonzero(),
                p: s.p().into_matrix(),
            },
            Kind::Gibbsian => {
                let mut m3 = || Mat3::from_fn(|_, _| s.scalar());
                let (eps_g, xi_g, zeta_g) = (m3(), m3(), m3());
                // keep μ comfortably invertible
                let mu_g = m3() + Mat3::identity() * crate::c(3.0);
                Parameters::Gibbsian(GibbsianMedium { eps_g, xi_g, zeta_g, mu_g })
            }
            Kind::Uniaxial => Parameters::Uniaxial {
                eps_t: s.nonzero(),
                eps_z: s.nonzero(),
                mu_t: s.nonzero(),
                mu_z: s.nonzero(),
            },
        };
        MediumDocument::new(parameters)
    }
}

fn check_finite3(g: &GibbsianMedium) -> Result<()> {
    let finite = [g.eps_g, g.xi_g, g.zeta_g, g.mu_g]
        .iter()
        .all(|m| m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    if finite {
        Ok(())
    } else {
        Err(Error::NonFinite("Gibbsian dyadics"))
    }
}

//! Seeded random instances for tests, examples and the CLI.
//!
//! Entries are uniform in `[-1, 1)`; complex instances draw both parts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadics::{Dyadic, BO_MAP, MEDIUM, P_MAP, Q_MAP};
use crate::error::Result;
use crate::exterior::{KForm, KVector};
use crate::linalg::CMat;
use crate::media::{construct_pdcm, construct_qdcm, construct_sdcm, Medium};
use crate::{c, Scalar};

/// Deterministic generator; the same seed reproduces the same instances.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    complex: bool,
}

impl Sampler {
    /// Real-valued instances.
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            complex: false,
        }
    }

    /// Complex-valued instances.
    pub fn complex(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            complex: true,
        }
    }

    pub fn real(&mut self) -> f64 {
        self.rng.random_range(-1.0..1.0)
    }

    pub fn scalar(&mut self) -> Scalar {
        let re = self.real();
        let im = if self.complex { self.real() } else { 0.0 };
        Scalar::new(re, im)
    }

    /// Scalar bounded away from zero (`0.5 ≤ |x| ≤ 1.5` in the real part).
    pub fn nonzero(&mut self) -> Scalar {
        let x = self.scalar();
        x + c(x.re.signum())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMat {
        CMat::from_fn(rows, cols, |_, _| self.scalar())
    }

    pub fn vector3(&mut self) -> [Scalar; 3] {
        [self.scalar(), self.scalar(), self.scalar()]
    }

    pub fn bivector(&mut self) -> KVector {
        KVector::new(2, (0..6).map(|_| self.scalar()).collect()).expect("six coordinates")
    }

    pub fn one_form(&mut self) -> KForm {
        KForm::new(1, (0..4).map(|_| self.scalar()).collect()).expect("four coordinates")
    }

    /// Generator `Q` (one-forms → vectors).
    pub fn q(&mut self) -> Dyadic {
        Dyadic::new(Q_MAP.0, Q_MAP.1, self.matrix(4, 4)).expect("finite")
    }

    /// Generator `P` (one-forms → one-forms).
    pub fn p(&mut self) -> Dyadic {
        Dyadic::new(P_MAP.0, P_MAP.1, self.matrix(4, 4)).expect("finite")
    }

    /// Trace-free `B_o` (vectors → vectors).
    pub fn bo(&mut self) -> Dyadic {
        let mut m = self.matrix(4, 4);
        let tr = m.trace() / 4.0;
        for i in 0..4 {
            m[(i, i)] -= tr;
        }
        Dyadic::new(BO_MAP.0, BO_MAP.1, m).expect("finite")
    }

    pub fn qdcm(&mut self) -> Result<Medium> {
        let (alpha, m, q) = (self.scalar(), self.nonzero(), self.q());
        let (d, cc) = (self.bivector(), self.bivector());
        construct_qdcm(alpha, m, &q, &d, &cc)
    }

    pub fn pdcm(&mut self) -> Result<Medium> {
        let (alpha, m, p) = (self.scalar(), self.nonzero(), self.p());
        let (d, cc) = (self.bivector(), self.bivector());
        construct_pdcm(alpha, m, &p, &d, &cc)
    }

    pub fn sdcm(&mut self) -> Result<Medium> {
        let (alpha, bo) = (self.scalar(), self.bo());
        let (a, b) = (self.bivector(), self.bivector());
        construct_sdcm(alpha, &bo, &a, &b)
    }

    /// Unstructured medium with a random `M`.
    pub fn raw(&mut self) -> Medium {
        let m = Dyadic::new(MEDIUM.0, MEDIUM.1, self.matrix(6, 6)).expect("finite");
        Medium::from_m(m).expect("medium spaces")
    }
}

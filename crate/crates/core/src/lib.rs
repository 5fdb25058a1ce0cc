//! Decomposable bi-anisotropic media in four-dimensional differential-form
//! representation.
//!
//! The crate is organised bottom-up:
//!
//! * [`exterior`]: fixed-basis exterior algebra over a 4D space and its dual;
//! * [`dyadics`]: linear maps between graded spaces, compounds, the
//!   principal/skewon/axion split and the dispersion dyadic;
//! * [`media`]: QDCM/PDCM/SDCM constructors, the decomposability condition
//!   and its detector, 3D and Gibbsian conversions, and the classifier for
//!   media obeying the quadratic dyadic equation;
//! * [`waves`]: dispersion quartics, their predicted quadratic factors,
//!   plane-wave solving and A/B-wave classification;
//! * [`cli`]: the JSON front end used by the `dcm` binary.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

pub mod cli;
pub mod dyadics;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod media;
pub mod sample;
pub mod tol;
pub mod waves;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type Scalar = num_complex::Complex64;

/// Real number as a [`Scalar`].
#[inline]
pub fn c(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

pub use dyadics::{Dyadic, HoParts, SpaceTag};
pub use exterior::{KForm, KVector};
pub use media::{Dc1Witness, GibbsianMedium, Medium, Provenance, ThreeDSplit};
pub use waves::{PlaneWave, QuadraticForm, QuarticForm, WaveClass, WaveTag};

//! Plane waves on the two dispersion factors of an SDCM: the first factor
//! carries A-waves, the second B-waves.

use dcmedia::media::bivectors_ab;
use dcmedia::sample::Sampler;
use dcmedia::tol::Tolerances;
use dcmedia::waves::{classify_wave, predicted_factors, roots_along_direction, solve_plane_wave};

fn main() -> dcmedia::Result<()> {
    let tols = Tolerances::default();
    let mut s = Sampler::new(9);
    let med = s.sdcm()?;
    let (a, b) = bivectors_ab(&med)?;
    let (qa, qb) = predicted_factors(&med)?;
    for (name, q) in [("A factor", qa), ("B factor", qb)] {
        for nu in roots_along_direction(&q, s.vector3())? {
            let wave = solve_plane_wave(&med, &nu, &tols)?;
            let class = classify_wave(&wave, &a, &b, tols.classification)?;
            let [ff, fp, pp] = wave.orthogonality();
            println!(
                "{name}: nu4 = {:+.4}{:+.4}i  tag {:7}  |A|Phi| {:.1e}  |B|Phi| {:.1e}  orthogonality {:.0e} {:.0e} {:.0e}",
                nu.coords()[3].re,
                nu.coords()[3].im,
                class.tag.as_str(),
                class.residual_a,
                class.residual_b,
                ff,
                fp,
                pp
            );
        }
    }
    Ok(())
}

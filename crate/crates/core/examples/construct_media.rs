//! QDCM, PDCM and SDCM constructors with the witnesses implied by their
//! parameters.

use dcmedia::media::{bivectors_ab, dc1_residual, dc1_witness, solve_d_from_ab, DcmKind, Provenance};
use dcmedia::sample::Sampler;

fn main() -> dcmedia::Result<()> {
    let mut s = Sampler::new(3);
    for med in [s.qdcm()?, s.pdcm()?, s.sdcm()?] {
        let w = dc1_witness(&med)?;
        println!(
            "{:5} alpha {:+.4} beta {:+.4} gamma {} residual {:.1e}",
            med.provenance().class_name(),
            w.alpha.re,
            w.beta.re,
            w.gamma.re,
            dc1_residual(med.mg(), &w)?
        );
    }

    // recover D from the selector bivectors of a QDCM
    let med = s.qdcm()?;
    let (a, b) = bivectors_ab(&med)?;
    if let Provenance::Qdcm { m, q, d, .. } = med.provenance() {
        let sols = solve_d_from_ab(DcmKind::Qdcm, *m, q, &a, &b)?;
        let best = sols.iter().map(|x| (x - d).norm()).fold(f64::INFINITY, f64::min);
        println!("QDCM: {} candidate D, closest to the constructed one at {best:.1e}", sols.len());
    }
    Ok(())
}

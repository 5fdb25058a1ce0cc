//! Searching a bare `M_g` for witnesses of the decomposability condition.

use dcmedia::media::{detect_dcm, DetectOptions};
use dcmedia::sample::Sampler;

fn main() -> dcmedia::Result<()> {
    let mut s = Sampler::new(12);
    let cases = [("QDCM", s.qdcm()?), ("SDCM", s.sdcm()?), ("random", s.raw())];
    for (name, med) in cases {
        let found = detect_dcm(med.mg(), &DetectOptions::default())?;
        if found.is_empty() {
            println!("{name}: no witness found under this search");
        }
        for w in found {
            println!(
                "{name}: gamma {} alpha {:+.5} beta {:+.5} residual {:.1e}",
                w.gamma.re, w.alpha.re, w.beta.re, w.residual
            );
        }
    }
    Ok(())
}

//! Interpolated dispersion quartics against the predicted quadratic
//! factors of each medium class.

use dcmedia::media::construct_sdcm;
use dcmedia::sample::Sampler;
use dcmedia::waves::{dispersion_report, factor_check, predicted_factors, quartic_coefficients};
use dcmedia::Medium;

fn main() -> dcmedia::Result<()> {
    let mut s = Sampler::complex(5);
    let a = s.bivector();
    let media = [
        ("QDCM", s.qdcm()?),
        ("PDCM", s.pdcm()?),
        ("SDCM", s.sdcm()?),
        ("Q-medium", Medium::q_medium(s.nonzero(), &s.q())?),
        ("doubly-skew", construct_sdcm(s.scalar(), &s.bo(), &a, &a)?),
    ];
    for (name, med) in media {
        let r = dispersion_report(&med)?;
        let check = r.check.expect("constructed media have factors");
        println!(
            "{name:12} fit residual {:.1e}  q1*q2 rel err {:.1e}  scale {:.4}",
            r.quartic.fit_residual, check.max_rel_err, check.scale
        );
    }
    // non-birefringence: a Q-medium quartic is the square of one factor
    let med = Medium::q_medium(s.nonzero(), &s.q())?;
    let (q, _) = predicted_factors(&med)?;
    let square = factor_check(&quartic_coefficients(&med)?, &q, &q)?;
    println!("Q-medium as a perfect square: rel err {:.1e}", square.max_rel_err);

    let r = dispersion_report(&Medium::axion(dcmedia::c(2.0)))?;
    println!("axion: {:?}", r.warnings);
    Ok(())
}

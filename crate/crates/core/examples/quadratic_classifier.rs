//! Recovering the generator of a medium obeying the quadratic equation.

use dcmedia::media::classify_quadratic_medium;
use dcmedia::sample::Sampler;
use dcmedia::tol::Tolerances;
use dcmedia::{c, Medium};

fn main() -> dcmedia::Result<()> {
    let tols = Tolerances::default();
    let mut s = Sampler::new(8);
    let media = [
        ("P-medium", Medium::p_medium(c(1.3), &s.p())?.into_raw()),
        ("Q-medium", Medium::q_medium(c(0.6), &s.q())?.into_raw()),
    ];
    for (name, med) in media {
        let r = classify_quadratic_medium(&med, None, &tols)?;
        println!(
            "{name}: classified {:?} via {:?}, scale {:.4}, alpha {:.4}, residual {:.1e}",
            r.kind, r.invertible_pair, r.scale.re, r.alpha.re, r.residual
        );
        println!("  block conditions {:?}", r.conditions);
    }
    match classify_quadratic_medium(&Medium::axion(c(1.0)), None, &tols) {
        Ok(_) => println!("axion: classified"),
        Err(e) => println!("axion: {e}"),
    }
    match classify_quadratic_medium(&s.raw(), None, &tols) {
        Ok(_) => println!("random: classified"),
        Err(e) => println!("random: {e}"),
    }
    Ok(())
}

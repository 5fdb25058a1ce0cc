//! TE/TM splitting in the uniaxial medium ε = diag(2, 2, 5), μ = diag(3, 3, 7).

use dcmedia::c;
use dcmedia::media::uniaxial_gibbsian;
use dcmedia::tol::Tolerances;
use dcmedia::waves::{quartic_coefficients, quartic_roots_along_direction, solve_plane_wave};

fn main() -> dcmedia::Result<()> {
    let uni = uniaxial_gibbsian(c(2.0), c(5.0), c(3.0), c(7.0));
    println!("contrast eps_t mu_z - mu_t eps_z = {}", uni.contrast.re);
    let med = uni.medium()?;
    let w = uni.witness()?;
    println!("witness alpha {} residual {:.1e}", w.alpha.re, w.residual);

    let quartic = quartic_coefficients(&med)?;
    let k = [c(0.6), c(0.0), c(0.8)];
    for nu in quartic_roots_along_direction(&quartic, k)? {
        let f = solve_plane_wave(&med, &nu, &Tolerances::default())?.fields_3d();
        let n = |v: [dcmedia::Scalar; 3]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (ez, hz) = (f.e[2].norm() / n(f.e), f.h[2].norm() / n(f.h));
        let mode = if ez < hz { "TE" } else { "TM" };
        println!("omega = {:+.6}: {mode}  |u_z.E| {ez:.1e}  |u_z.H| {hz:.1e}", nu.coords()[3].re);
    }
    // classical relations for comparison
    let (kt2, kz2) = (0.36, 0.64);
    println!("TE: omega^2 = {:.6}", (kt2 / 7.0 + kz2 / 3.0) / 2.0);
    println!("TM: omega^2 = {:.6}", (kt2 / 5.0 + kz2 / 2.0) / 3.0);

    let flat = uniaxial_gibbsian(c(1.0), c(2.0), c(2.0), c(4.0));
    println!("(1,2,2,4) degenerate: {}", flat.degenerate);
    Ok(())
}

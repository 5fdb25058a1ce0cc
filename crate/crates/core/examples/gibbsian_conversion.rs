//! 4D ↔ 3D ↔ Gibbsian conversions and the magnetoelectric-free SDCM.

use dcmedia::linalg::{Mat3, Vec3};
use dcmedia::media::{fourd_from_gibbsian, gibbsian_from_4d, join_3d, sdcm_gyrotropic_example, split_3d, GibbsianMedium, SdcmSpatial};
use dcmedia::sample::Sampler;
use dcmedia::c;

fn main() -> dcmedia::Result<()> {
    let mut s = Sampler::new(4);
    let mut m3 = || Mat3::from_fn(|_, _| s.scalar());
    let g = GibbsianMedium {
        eps_g: m3(),
        xi_g: m3(),
        zeta_g: m3(),
        mu_g: m3() + Mat3::identity() * c(3.0),
    };
    let med = fourd_from_gibbsian(&g)?;
    let split = split_3d(&med);
    println!("alpha block:\n{:.4}", split.alpha_d.map(|z| z.re));
    let back = gibbsian_from_4d(&join_3d(&split))?;
    println!("Gibbsian round trip error {:.1e}", back.max_abs_diff(&g));

    let v = |x: [f64; 3]| Vec3::new(c(x[0]), c(x[1]), c(x[2]));
    let (lambda, a_s, alpha_s, gamma_s, c_s) = (c(0.7), v([1.0, 0.2, 0.0]), v([0.3, 1.0, 0.5]), v([0.0, 0.4, -0.2]), v([1.0, -0.5, 0.8]));
    let closed = sdcm_gyrotropic_example(lambda, a_s, alpha_s, gamma_s, c_s)?;
    let pipeline = gibbsian_from_4d(&SdcmSpatial::gyrotropic(lambda, a_s, alpha_s, gamma_s, c_s).medium()?)?;
    println!("gyrotropic SDCM: closed form vs pipeline {:.1e}", closed.max_abs_diff(&pipeline));
    println!("  |xi_g| {:.1e}, |zeta_g| {:.1e}", pipeline.xi_g.norm(), pipeline.zeta_g.norm());
    println!("eps_g:\n{:.4}", closed.eps_g.map(|z| z.re));
    Ok(())
}

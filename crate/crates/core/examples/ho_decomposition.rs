//! Principal, skewon and axion parts of a medium dyadic, and how an SDCM
//! with `A·B = 0` maps onto them.

use dcmedia::dyadics::{antisym_from_traceless, ho_decompose, lift_matrix};
use dcmedia::linalg;
use dcmedia::media::construct_sdcm;
use dcmedia::sample::Sampler;
use dcmedia::{c, KVector};

fn main() -> dcmedia::Result<()> {
    let mut s = Sampler::new(7);
    let med = s.raw();
    let parts = ho_decompose(med.m())?;
    let recon = linalg::max_abs(&(parts.reconstruct().matrix() - med.m().matrix()));
    println!("random medium: axion {:.4}, reconstruction error {recon:.1e}", parts.axion_scalar.re);
    println!("  tr principal {:.1e}, tr skewon {:.1e}", parts.principal.trace().norm(), parts.skewon.trace().norm());

    // SDCM terms: α·I, the antisymmetric B_o term and the symmetric A,B term
    let (bo, a) = (s.bo(), s.bivector());
    let b0 = s.bivector();
    let k = a.dot(&b0)? / a.dot(&a)?;
    let b = KVector::new(2, b0.coords().iter().zip(a.coords()).map(|(y, x)| y - x * k).collect())?;
    let med = construct_sdcm(c(0.3), &bo, &a, &b)?;
    let parts = ho_decompose(med.m())?;
    let g = lift_matrix();
    let skewon = &g * antisym_from_traceless(&bo)?.matrix();
    let (ac, bc) = (a.to_column(), b.to_column());
    let principal = &g * (&ac * bc.transpose() + &bc * ac.transpose());
    println!("SDCM with A.B = {:.1e}:", a.dot(&b)?.norm());
    println!("  axion    {:.4} (constructed 0.3)", parts.axion_scalar.re);
    println!("  skewon    error {:.1e}", linalg::max_abs(&(parts.skewon.matrix() - skewon)));
    println!("  principal error {:.1e}", linalg::max_abs(&(parts.principal.matrix() - principal)));
    Ok(())
}

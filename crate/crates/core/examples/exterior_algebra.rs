//! Wedge, duality pairing, contraction, the quadrivector lift and the
//! (3,3) dot product on two-forms.

use dcmedia::exterior::{contract, lift_en, pair, unlift, ContractSide, KForm, KVector};

fn main() -> dcmedia::Result<()> {
    let e12 = KVector::e(1).wedge(&KVector::e(2))?;
    println!("e1^e2            = {:?}", re(e12.coords()));

    let nu = KForm::from_real(1, &[1.0, 2.0, 0.0, -1.0])?;
    let phi = KForm::from_real(1, &[0.0, 1.0, 3.0, 1.0])?;
    let field = nu.wedge(&phi)?;
    println!("nu^phi           = {:?}", re(field.coords()));
    println!("nu^nu            = {:?}", re(nu.wedge(&nu)?.coords()));

    // ν⌋(a∧b) = (ν|a) b − (ν|b) a
    let x = KVector::e(1).wedge(&KVector::e(3))?;
    let nx = contract(&nu, &x, ContractSide::Left)?;
    println!("nu _| (e1^e3)    = {:?}", re(nx.coords()));
    println!("phi|(nu_|X) = {:.3}, (nu^phi)|X = {:.3}", pair(&phi, &nx)?.re, pair(&field, &x)?.re);

    let lifted = lift_en(&KForm::eps(1).wedge(&KForm::eps(3))?);
    println!("e_N _ (eps1^eps3) = {:?}", re(lifted.coords()));
    println!("unlift round trip = {:?}", re(unlift(&lift_en(&field)).coords()));

    // simple two-forms are null under the dot product
    println!("(nu^phi).(nu^phi) = {:.3e}", field.dot(&field)?.norm());
    let generic = KForm::from_real(2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0])?;
    println!("(eps12+eps34)^2   = {:.3}", generic.dot(&generic)?.re);
    Ok(())
}

fn re(z: &[dcmedia::Scalar]) -> Vec<f64> {
    z.iter().map(|x| x.re).collect()
}

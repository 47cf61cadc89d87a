//! Fourier coefficients of the chain computed along the orbits of multiplication by `a`,
//! compared against the transform of the exact law.
//!
//! Run with `cargo run --example fourier_profile`.

use affine_mix::dist::{evolve_direct, fourier_profile, l2_dist_from_fourier, phi_bound_check, Budget, StepLaw};
use affine_mix::modfield::{PrimeModulus, Residue};

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::default();
    let p = PrimeModulus::new(1009)?;
    let a = Residue::new(11, p)?;
    let n = 8;

    let profile = fourier_profile(&mu, p, a, n)?;
    let law = evolve_direct(&mu, p, a, n, Residue::ZERO, &Budget::default())?;
    let direct = law.fourier_transform();
    let worst = (0..p.len()).map(|xi| (profile.value(xi) - direct[xi]).norm()).fold(0.0, f64::max);
    println!("max coefficient mismatch: {worst:.3e}");
    println!("sup over nonzero frequencies: {:.6}", profile.sup_nonzero());
    println!("p ||mu - u||^2 from Fourier: {:.6e}", l2_dist_from_fourier(&profile));
    println!("p ||mu - u||^2 from the law: {:.6e}", law.p_l2_sq());

    let bound = phi_bound_check(&mu, p)?;
    println!("|phi(t)| <= exp(-c_mu ||t/p||^2): {bound:?}");
    Ok(())
}

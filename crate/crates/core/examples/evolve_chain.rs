//! Exact law of the affine chain x -> a x + b over a small prime field.
//!
//! Run with `cargo run --example evolve_chain`.

use affine_mix::dist::{evolve_direct, l2_distance, total_variation, Budget, StepLaw};
use affine_mix::modfield::{PrimeModulus, Residue};

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::parse("0:1/2,1:1/2")?;
    let p = PrimeModulus::new(101)?;
    let a = Residue::new(3, p)?;
    let budget = Budget::default();

    println!("n,tv,p_l2sq,support");
    for n in 0..=12 {
        let d = evolve_direct(&mu, p, a, n, Residue::ZERO, &budget)?;
        let l2 = l2_distance(&d);
        println!("{n},{:.6},{:.6},{}", total_variation(&d), l2.p_l2_sq, d.support_size());
    }
    Ok(())
}

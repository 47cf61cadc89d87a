//! Growth of the support |S_n| and the diameter D_a(p), checked against 2 T_2(1) + 1.
//!
//! Run with `cargo run --release --example support_diameter`.

use affine_mix::dist::{mixing_time, support_evolution, Budget, MixingOptions, StepLaw};
use affine_mix::modfield::{PrimeModulus, Residue};

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::parse("0:1/2,1:1/2")?;
    let p = PrimeModulus::new(65_537)?;
    let budget = Budget::default();
    println!("a,diameter,t2,bound,holds");
    for a in [3u64, 5, 7, 257, 12_345] {
        let a = Residue::new(a, p)?;
        let trace = support_evolution(&mu, p, a, 200, &budget)?;
        let t2 = mixing_time(&mu, p, a, 2.0, 1.0, &MixingOptions::default())?.t_mix;
        match trace.diameter {
            Some(d) => println!("{a},{d},{t2},{},{}", 2 * t2 + 1, d <= 2 * t2 + 1),
            None => println!("{a},>200,{t2},{},unknown", 2 * t2 + 1),
        }
    }
    Ok(())
}

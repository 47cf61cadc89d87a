//! Mixing times in total variation and in l^2 for a handful of multipliers, with the
//! l^2 time divided by log p (log log p + log 1/delta) / H_2(mu).
//!
//! Run with `cargo run --release --example mixing_times`.

use affine_mix::dist::{ent_lower_bound, loglog_shape, mixing_time, MixingOptions, StepLaw};
use affine_mix::modfield::{mult_order, PrimeModulus, Residue};

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::default();
    let p = PrimeModulus::new(10_007)?;
    let opts = MixingOptions::default();
    let delta = 0.25;
    let (n_ent, bound) = ent_lower_bound(&mu, p, 1.0)?;
    println!("entropy bound: TV >= {bound:.4} for n <= {n_ent}");

    println!("a,order,t_tv,t_l2,fitted_constant");
    for a in [2u64, 3, 5, 10, 100, 5003] {
        let a = Residue::new(a, p)?;
        let tv = mixing_time(&mu, p, a, 1.0, delta, &opts)?;
        let l2 = mixing_time(&mu, p, a, 2.0, delta, &opts)?;
        let c = l2.t_mix as f64 / loglog_shape(&mu, p, delta);
        println!("{a},{},{},{},{c:.4}", mult_order(a, p)?, tv.t_mix, l2.t_mix);
    }
    Ok(())
}

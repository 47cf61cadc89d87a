//! The averaged-norm identity sum_a ||mu_a^(n)||^2 = E N_p(P1 - P2), checked exactly on a
//! small instance and by sampling on a larger one.
//!
//! Run with `cargo run --release --example identity_check`.

use affine_mix::chebotarev::{identity_check_exact, identity_check_mc};
use affine_mix::dist::{Budget, StepLaw};
use affine_mix::harness::SeededRng;
use affine_mix::modfield::PrimeModulus;

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::default();
    let budget = Budget::default();
    let exact = identity_check_exact(&mu, PrimeModulus::new(11)?, 5, &budget)?;
    println!("exact: lhs={:.12} rhs={:.12} passed={}", exact.lhs, exact.rhs, exact.passed);

    let mut rng = SeededRng::new(1);
    let mc = identity_check_mc(&mu, PrimeModulus::new(1009)?, 12, 5000, &mut rng, &budget)?;
    println!(
        "sampled: lhs={:.6} rhs={:.6} stderr={:.4} passed={}",
        mc.lhs,
        mc.rhs,
        mc.std_error.unwrap_or(f64::NAN),
        mc.passed
    );
    Ok(())
}

//! The multiplier a = 2 modulo a Mersenne prime: the support grows by at most a factor of
//! two per step, so the chain stays far from uniform well past log p / H(mu) steps.
//!
//! Run with `cargo run --release --example exceptional_multiplier`.

use affine_mix::dist::{support_evolution, total_variation, Budget, Evolver, StepLaw};
use affine_mix::modfield::{PrimeModulus, Residue};

fn main() -> affine_mix::Result<()> {
    let mu = StepLaw::default();
    let budget = Budget::default();
    for p in [8191u64, 131_071] {
        let p = PrimeModulus::new(p)?;
        let a = Residue::new(2, p)?;
        let n_late = (0.9 * (p.get() as f64).ln() / 2f64.ln()).floor() as u64;
        let trace = support_evolution(&mu, p, a, n_late, &budget)?;
        let doubling = trace.sizes.iter().enumerate().all(|(n, &s)| s as f64 <= 2f64.powi(n as i32 + 1));
        let mut ev = Evolver::new(&mu, p, a, Residue::ZERO, &budget)?;
        ev.advance_to(n_late);
        println!(
            "p={p} n={n_late} support={} doubling_bound={doubling} tv={:.4}",
            trace.sizes.last().copied().unwrap_or(0),
            total_variation(ev.current())
        );
    }
    Ok(())
}

//! Orbit energies sum [x0 a^i / p]^2 for multipliers of large order, with the smallest
//! constant that would have sufficed on each sampled case.
//!
//! Run with `cargo run --release --example konyagin`.

use affine_mix::dist::{konyagin_survey, OrderFloor};

fn main() -> affine_mix::Result<()> {
    let survey = konyagin_survey(10_000, 100_000, 20, 200.0, OrderFloor::LogSquared, 5)?;
    println!("p,a,order,m,energy,threshold");
    for c in &survey.cases {
        println!("{},{},{},{},{:.2},{:.5}", c.p, c.a, c.order_a, c.m, c.energy, c.threshold);
    }
    println!("violations: {}, best constant: {:.4}", survey.violations, survey.best_constant);
    Ok(())
}

//! Mahler measures: cyclotomic polynomials, the golden ratio, Lehmer's polynomial, and the
//! height bound for a random difference-walk polynomial.
//!
//! Run with `cargo run --example mahler_measure`.

use affine_mix::dist::StepLaw;
use affine_mix::harness::SeededRng;
use affine_mix::poly::{cyclotomic_poly, difference_walk_poly, mahler_measure, mahler_suite, ZPoly};

fn main() -> affine_mix::Result<()> {
    for k in [5u64, 12, 30] {
        println!("M(Phi_{k}) = {:.12}", mahler_measure(&cyclotomic_poly(k))?);
    }
    println!("M(x^2 - x - 1) = {:.12}", mahler_measure(&"-1,-1,1".parse::<ZPoly>()?)?);
    let lehmer: ZPoly = "1,1,0,-1,-1,-1,-1,-1,0,1,1".parse()?;
    println!("M(Lehmer) = {:.12}", mahler_measure(&lehmer)?);

    let mu = StepLaw::default();
    let n = 60;
    let walk = difference_walk_poly(&mu, n, &mut SeededRng::new(3));
    let report = mahler_suite(&[walk], &mu, n as u64, 1.0)?;
    println!(
        "walk of length {n}: M = {:.4}, 2 H sqrt(n) = {:.4}, within bound: {}",
        report.measure, report.height_bound, report.height_bound_ok
    );
    Ok(())
}

//! Log-weighted averages of N_p over a prime window: close to the number of irreducible
//! factors for polynomials without repeated roots.
//!
//! Run with `cargo run --release --example prime_average`.

use affine_mix::chebotarev::weighted_prime_average;
use affine_mix::poly::ZPoly;

fn main() -> affine_mix::Result<()> {
    let cases = [("x^2 + 1", "1,0,1"), ("x^3 - 2", "-2,0,0,1"), ("(x^2 + 1)(x^2 - 2)", "-2,0,-1,0,1")];
    for (name, coeffs) in cases {
        let q: ZPoly = coeffs.parse()?;
        let avg = weighted_prime_average(&q, 10_000, 200_000)?;
        println!("{name}: mean {:.4} over {} primes, histogram {:?}", avg.weighted_mean, avg.prime_count, avg.histogram);
    }
    Ok(())
}

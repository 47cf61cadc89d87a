//! Distinct roots modulo p, admissibility of roots as multipliers, and cyclotomic stripping.
//!
//! Run with `cargo run --example root_counting`.

use affine_mix::modfield::PrimeModulus;
use affine_mix::poly::{count_admissible_roots, count_roots_np, roots_mod_p, strip_cyclotomic, ZPoly};

fn main() -> affine_mix::Result<()> {
    let q: ZPoly = "-1,0,0,0,0,0,1".parse()?;
    for p in [7u64, 13, 29, 31] {
        let p = PrimeModulus::new(p)?;
        let rc = count_roots_np(&q, p)?;
        let adm = count_admissible_roots(&q, p, 2)?;
        println!("p={p} N_p={} roots={:?} admissible(n=2)={}", rc.count, roots_mod_p(&q, p)?, adm.count);
    }
    let s = strip_cyclotomic(&q)?;
    println!("x^6 - 1 = x^{} * {:?} * ({})", s.monomial_power, s.cyclotomic, s.reduced);
    let w: ZPoly = "0,0,-1,1,1,-1,1".parse()?;
    let s = strip_cyclotomic(&w)?;
    println!("{w} -> x^{} * {:?} * ({})", s.monomial_power, s.cyclotomic, s.reduced);
    Ok(())
}

//! Polynomial arithmetic over `F_p` and `Z`: root counting, cyclotomic stripping and Mahler measure.

pub mod cyclotomic;
pub mod fp;
pub mod mahler;
pub mod roots;
pub mod zpoly;

pub use cyclotomic::{cyclotomic_candidates, cyclotomic_poly, strip_cyclotomic, StrippedForm};
pub use fp::{fp_gcd, fp_mulmod, FpPoly};
pub use mahler::{l2_norm, mahler_measure, mahler_measure_detailed, mahler_suite, MahlerMeasure, MahlerSuiteReport};
pub use roots::{count_admissible_roots, count_roots_fp, count_roots_np, is_admissible, roots_mod_p, RootCount};
pub use zpoly::ZPoly;

use crate::dist::StepLaw;
use rand::Rng;

/// `P(x) = b_0 x^{n-1} + ... + b_{n-1}` with `b_0, b_1, ...` drawn from `mu` in that order,
/// so that `P(a) mod p` has the law of the chain after `n` steps.
pub fn random_walk_poly<R: Rng + ?Sized>(mu: &StepLaw, n: usize, rng: &mut R) -> ZPoly {
    let mut b: Vec<i64> = (0..n).map(|_| mu.sample(rng)).collect();
    b.reverse();
    ZPoly::from_i64(&b)
}

/// `P_1 - P_2` for independent walk polynomials of length `n`.
pub fn difference_walk_poly<R: Rng + ?Sized>(mu: &StepLaw, n: usize, rng: &mut R) -> ZPoly {
    let p1 = random_walk_poly(mu, n, rng);
    let p2 = random_walk_poly(mu, n, rng);
    p1.sub(&p2)
}

//! Modular arithmetic over word-sized primes.
//!
//! [`PrimeModulus`] and [`Residue`] are thin newtypes over `u64`. All arithmetic goes through
//! 128-bit intermediates when the modulus does not fit in 32 bits, so every operation is exact
//! for the full 64-bit range even though the chain engine only ever allocates vectors for
//! primes of a few million.

pub(crate) mod arith;
mod primality;
mod sieve;

pub use arith::{euler_phi, factorize, inv_mod, mul_mod, mult_order, pow_mod, add_mod, sub_mod};
pub use primality::is_prime;
pub use sieve::{primes_in_window, primes_up_to, MAX_WINDOW_SPAN};

use crate::error::{Error, Result};
use std::fmt;

/// A prime modulus `p`, validated by the deterministic primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    /// Wraps a value already known to be prime (for instance a sieve output).
    pub(crate) fn new_unchecked(p: u64) -> Self {
        debug_assert!(is_prime(p));
        PrimeModulus(p)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Length of distribution vectors over this field.
    #[allow(clippy::len_without_is_empty)]
    #[inline]
    pub fn len(self) -> usize {
        self.0 as usize
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> Residue {
        Residue((v as i128).rem_euclid(self.0 as i128) as u64)
    }

    #[inline]
    pub fn residue(self, v: u64) -> Residue {
        Residue(v % self.0)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_p`, stored as its representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Residue(u64);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    /// Builds a residue, rejecting values outside `[0, p)`.
    pub fn new(value: u64, m: PrimeModulus) -> Result<Self> {
        if value < m.get() {
            Ok(Residue(value))
        } else {
            Err(Error::Domain(format!("{value} is not a residue mod {m}")))
        }
    }

    #[inline]
    pub(crate) fn from_raw(value: u64) -> Self {
        Residue(value)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The signed fractional representative `[x/p]`, the unique real in `(-1/2, 1/2]` congruent
/// to `x/p` modulo 1.
pub fn frac_rep(x: Residue, m: PrimeModulus) -> f64 {
    let (x, p) = (x.0, m.get());
    // x/p <= 1/2  <=>  2x <= p
    if (x as u128) * 2 <= p as u128 {
        x as f64 / p as f64
    } else {
        -((p - x) as f64 / p as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn frac_rep_examples() {
        let p = pm(7);
        assert_eq!(frac_rep(Residue(0), p), 0.0);
        assert!((frac_rep(Residue(3), p) - 3.0 / 7.0).abs() < 1e-15);
        assert!((frac_rep(Residue(4), p) + 3.0 / 7.0).abs() < 1e-15);
        // p = 2 hits the closed end of the interval
        assert_eq!(frac_rep(Residue(1), pm(2)), 0.5);
    }

    #[test]
    fn frac_rep_is_odd_and_bounded() {
        for p in [3u64, 5, 11, 101, 8191] {
            let m = pm(p);
            for x in 1..p {
                let f = frac_rep(Residue(x), m);
                let g = frac_rep(Residue(p - x), m);
                assert!(f > -0.5 && f <= 0.5);
                assert!((f + g).abs() < 1e-15, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn modulus_rejects_composites() {
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(91).is_err());
        assert!(PrimeModulus::new(97).is_ok());
        assert!(Residue::new(97, pm(97)).is_err());
        assert_eq!(pm(7).reduce_i64(-1).value(), 6);
    }
}

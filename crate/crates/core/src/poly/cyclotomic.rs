//! Cyclotomic polynomials and the removal of cyclotomic and monomial factors.

use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::modfield::{factorize, PrimeModulus};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Largest `k` range scanned by [`strip_cyclotomic`] before reporting a resource error.
pub const MAX_CYCLOTOMIC_SCAN: u64 = 50_000_000;

/// `2^61 - 1`, the prime used to screen trial divisions before doing them exactly.
const SCREEN_PRIME: u64 = (1 << 61) - 1;

fn cache() -> &'static Mutex<HashMap<u64, ZPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact quotient by a monic divisor in `i128`; `None` on overflow.
fn div_monic_i128(f: &[i128], d: &[i128]) -> Option<Vec<i128>> {
    let dd = d.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![0i128; f.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in d.iter().enumerate() {
                r[k + j] = r[k + j].checked_sub(c.checked_mul(dj)?)?;
            }
        }
    }
    debug_assert!(r[..dd].iter().all(|&x| x == 0));
    Some(q)
}

/// `Phi_k` via `Phi_{nq}(x) = Phi_n(x^q) / Phi_n(x)` over the distinct primes of `k`, then
/// `Phi_k(x) = Phi_rad(k)(x^{k / rad(k)})`.
fn cyclotomic_i128(k: u64) -> Option<Vec<i128>> {
    let primes: Vec<u64> = factorize(k).into_iter().map(|(q, _)| q).collect();
    let rad: u64 = primes.iter().product();
    let mut f: Vec<i128> = vec![-1, 1];
    for &q in &primes {
        let q = q as usize;
        let mut lifted = vec![0i128; (f.len() - 1) * q + 1];
        for (i, &c) in f.iter().enumerate() {
            lifted[i * q] = c;
        }
        f = div_monic_i128(&lifted, &f)?;
    }
    let s = (k / rad) as usize;
    let mut out = vec![0i128; (f.len() - 1) * s + 1];
    for (i, &c) in f.iter().enumerate() {
        out[i * s] = c;
    }
    Some(out)
}

/// `(x^k - 1) / prod_{d | k, d < k} Phi_d` in exact integer arithmetic.
fn cyclotomic_bigint(k: u64) -> ZPoly {
    let mut f = ZPoly::monomial(k as usize).sub(&ZPoly::one());
    for d in 1..k {
        if k.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic_poly(d)).expect("cyclotomic divisor of x^k - 1");
        }
    }
    f
}

/// The `k`-th cyclotomic polynomial `Phi_k`, of degree `phi(k)`.
///
/// # Panics
/// Panics if `k = 0`.
pub fn cyclotomic_poly(k: u64) -> ZPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    if let Some(f) = cache().lock().expect("cyclotomic cache").get(&k) {
        return f.clone();
    }
    let f = match cyclotomic_i128(k) {
        Some(c) => ZPoly::new(c.into_iter().map(BigInt::from).collect()),
        None => cyclotomic_bigint(k),
    };
    cache().lock().expect("cyclotomic cache").insert(k, f.clone());
    f
}

/// `P = phi * reduced` where `phi` collects every monomial and cyclotomic factor.
#[derive(Debug, Clone, PartialEq)]
pub struct StrippedForm {
    pub phi: ZPoly,
    pub reduced: ZPoly,
    /// `(k, multiplicity)` for every `Phi_k` removed, ascending in `k`.
    pub cyclotomic: Vec<(u64, u32)>,
    /// Power of `x` removed.
    pub monomial_power: usize,
}

/// Euler's totient for every integer up to `n`.
fn totients_up_to(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Indices `k` with `phi(k) <= d`, found among `k <= 2 d^2 + 2` (enough since `phi(k) >= sqrt(k/2)`).
pub fn cyclotomic_candidates(d: usize) -> Result<Vec<u64>> {
    let bound = 2 * (d as u64).saturating_mul(d as u64) + 2;
    if bound > MAX_CYCLOTOMIC_SCAN {
        return Err(Error::Resource(format!("cyclotomic scan up to {bound} exceeds {MAX_CYCLOTOMIC_SCAN}")));
    }
    let phi = totients_up_to(bound as usize);
    Ok((1..=bound).filter(|&k| phi[k as usize] <= d as u64).collect())
}

/// Removes the largest power of `x` and every cyclotomic factor (with multiplicity) from `P`.
pub fn strip_cyclotomic(p: &ZPoly) -> Result<StrippedForm> {
    let deg = p.degree().ok_or_else(|| Error::Domain("cannot strip the zero polynomial".into()))?;
    let m = p.x_adic_valuation();
    let mut cur = ZPoly::new(p.coeffs()[m..].to_vec());
    let mut phi = ZPoly::monomial(m);
    let mut found = Vec::new();
    let screen = PrimeModulus::new(SCREEN_PRIME)?;
    for k in cyclotomic_candidates(deg - m)? {
        let ck = cyclotomic_poly(k);
        let dk = ck.degree().expect("nonzero");
        let mut mult = 0u32;
        while cur.degree().unwrap_or(0) >= dk && dk > 0 {
            if !cur.reduce_mod(screen).rem(&ck.reduce_mod(screen))?.is_zero() {
                break;
            }
            match cur.div_exact(&ck) {
                Some(q) => {
                    cur = q;
                    phi = phi.mul(&ck);
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            found.push((k, mult));
        }
    }
    debug_assert!(!cur.is_zero() && cur.coeffs().iter().any(|c| !c.is_zero()));
    Ok(StrippedForm { phi, reduced: cur, cyclotomic: found, monomial_power: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfield::euler_phi;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ZPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ZPoly::from_i64(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert_eq!(cyclotomic_poly(105).height(), BigInt::from(2));
        assert_eq!(cyclotomic_poly(105).coeffs()[7], BigInt::from(-2));
    }

    #[test]
    fn bigint_path_agrees() {
        for k in [1u64, 2, 9, 12, 30, 45, 64, 105] {
            assert_eq!(cyclotomic_bigint(k), cyclotomic_poly(k), "k={k}");
        }
    }

    #[test]
    fn divisor_degrees_sum_to_k() {
        for k in 1..=120u64 {
            let mut prod = ZPoly::one();
            let mut total = 0;
            for d in (1..=k).filter(|d| k % d == 0) {
                let c = cyclotomic_poly(d);
                assert_eq!(c.degree().unwrap() as u64, euler_phi(d));
                total += c.degree().unwrap() as u64;
                prod = prod.mul(&c);
            }
            assert_eq!(total, k);
            assert_eq!(prod, ZPoly::monomial(k as usize).sub(&ZPoly::one()));
        }
    }

    #[test]
    fn strip_examples() {
        let s = strip_cyclotomic(&ZPoly::monomial(3)).unwrap();
        assert_eq!((s.phi, s.reduced, s.monomial_power), (ZPoly::monomial(3), ZPoly::one(), 3));

        let cubic = ZPoly::from_i64(&[-2, 0, 0, 1]);
        let s = strip_cyclotomic(&cyclotomic_poly(5).mul(&cubic)).unwrap();
        assert_eq!(s.phi, cyclotomic_poly(5));
        assert_eq!(s.reduced, cubic);
        assert_eq!(s.cyclotomic, vec![(5, 1)]);

        let s = strip_cyclotomic(&cubic).unwrap();
        assert_eq!((s.phi, s.reduced), (ZPoly::one(), cubic));
        assert!(strip_cyclotomic(&ZPoly::zero()).is_err());
    }

    #[test]
    fn multiplicities() {
        let c1 = cyclotomic_poly(1);
        let c4 = cyclotomic_poly(4);
        let p = ZPoly::monomial(2).mul(&c1).mul(&c1).mul(&c4).mul(&ZPoly::from_i64(&[3, 1, 2]));
        let s = strip_cyclotomic(&p).unwrap();
        assert_eq!(s.cyclotomic, vec![(1, 2), (4, 1)]);
        assert_eq!(s.monomial_power, 2);
        assert_eq!(s.reduced, ZPoly::from_i64(&[3, 1, 2]));
        // -Phi_1 = 1 - x still contains Phi_1; the sign stays in the reduced part
        let s = strip_cyclotomic(&ZPoly::from_i64(&[1, -1])).unwrap();
        assert_eq!(s.reduced, ZPoly::from_i64(&[-1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn strip_reconstructs_and_is_idempotent(
            base in proptest::collection::vec(-3i64..=3, 1..8),
            ks in proptest::collection::vec(1u64..40, 0..4),
            m in 0usize..3,
        ) {
            let mut p = ZPoly::from_i64(&base);
            prop_assume!(!p.is_zero());
            for &k in &ks { p = p.mul(&cyclotomic_poly(k)); }
            p = p.mul(&ZPoly::monomial(m));
            let s = strip_cyclotomic(&p).unwrap();
            prop_assert_eq!(s.phi.mul(&s.reduced), p);
            let again = strip_cyclotomic(&s.reduced).unwrap();
            prop_assert_eq!(again.phi, ZPoly::one());
            prop_assert_eq!(again.reduced, s.reduced);
        }
    }
}

use super::PrimeModulus;
use crate::error::{Error, Result};

/// Largest `hi - lo` accepted by [`primes_in_window`].
pub const MAX_WINDOW_SPAN: u64 = 1 << 32;
/// Base primes are sieved up to `sqrt(hi)`; this keeps that table under ~100 MB.
const MAX_HI: u64 = 10_000_000_000_000_000;
const SEGMENT: usize = 1 << 18;

/// All primes `<= n` by a plain sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// The primes in `[lo, hi]`, ascending, by a segmented sieve.
pub fn primes_in_window(lo: u64, hi: u64) -> Result<Vec<PrimeModulus>> {
    if lo > hi {
        return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
    }
    if hi - lo > MAX_WINDOW_SPAN || hi > MAX_HI {
        return Err(Error::Resource(format!(
            "window [{lo}, {hi}] exceeds the sieve budget"
        )));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    let base = primes_up_to(isqrt(hi));
    let mut out = Vec::new();
    let mut seg = vec![true; SEGMENT];
    let mut start = lo;
    loop {
        let end = start.saturating_add(SEGMENT as u64 - 1).min(hi);
        let len = (end - start + 1) as usize;
        seg[..len].fill(true);
        for &q in &base {
            if q * q > end {
                break;
            }
            let first = (start.div_ceil(q) * q).max(q * q);
            let mut j = first;
            while j <= end {
                seg[(j - start) as usize] = false;
                j += q;
            }
        }
        out.extend(
            seg[..len]
                .iter()
                .enumerate()
                .filter(|(_, &is)| is)
                .map(|(i, _)| PrimeModulus::new_unchecked(start + i as u64)),
        );
        if end == hi {
            break;
        }
        start = end + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(lo: u64, hi: u64) -> Vec<u64> {
        primes_in_window(lo, hi).unwrap().into_iter().map(|p| p.get()).collect()
    }

    #[test]
    fn small_windows() {
        assert_eq!(window(2, 10), vec![2, 3, 5, 7]);
        assert_eq!(window(90, 100), vec![97]);
        assert_eq!(window(0, 1), Vec::<u64>::new());
        assert_eq!(window(8191, 8191), vec![8191]);
    }

    #[test]
    fn agrees_with_full_sieve() {
        let full = primes_up_to(1_000_000);
        for n in [2u64, 3, 100, 65_536, 262_144, 262_145, 1_000_000] {
            let expect: Vec<u64> = full.iter().copied().filter(|&q| q <= n).collect();
            assert_eq!(window(2, n), expect, "N={n}");
        }
        let count = full.iter().filter(|&&q| (10_000..=1_000_000).contains(&q)).count();
        assert_eq!(primes_in_window(10_000, 1_000_000).unwrap().len(), count);
    }

    #[test]
    fn oversized_window_is_a_resource_error() {
        assert!(matches!(primes_in_window(2, 1 << 40), Err(Error::Resource(_))));
        assert!(matches!(primes_in_window(10, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn high_window_matches_primality_test() {
        let lo = 1_000_000_000_000u64;
        let got = window(lo, lo + 2000);
        let expect: Vec<u64> = (lo..=lo + 2000).filter(|&n| super::super::is_prime(n)).collect();
        assert_eq!(got, expect);
    }
}

use super::{is_prime, PrimeModulus, Residue};
use crate::error::{Error, Result};

#[inline]
pub(crate) fn mulmod_u64(x: u64, y: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        (x * y) % p
    } else {
        ((x as u128 * y as u128) % p as u128) as u64
    }
}

#[inline]
pub(crate) fn powmod_u64(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    x %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, x, p);
        }
        x = mulmod_u64(x, x, p);
        e >>= 1;
    }
    acc
}

pub fn mul_mod(x: Residue, y: Residue, m: PrimeModulus) -> Residue {
    Residue::from_raw(mulmod_u64(x.value(), y.value(), m.get()))
}

pub fn add_mod(x: Residue, y: Residue, m: PrimeModulus) -> Residue {
    let s = x.value() as u128 + y.value() as u128;
    Residue::from_raw((s % m.get() as u128) as u64)
}

pub fn sub_mod(x: Residue, y: Residue, m: PrimeModulus) -> Residue {
    let p = m.get();
    Residue::from_raw(if x.value() >= y.value() { x.value() - y.value() } else { p - (y.value() - x.value()) })
}

/// `x^e mod p` by square-and-multiply.
pub fn pow_mod(x: Residue, e: u64, m: PrimeModulus) -> Residue {
    Residue::from_raw(powmod_u64(x.value(), e, m.get()))
}

/// Multiplicative inverse via Fermat's little theorem.
pub fn inv_mod(x: Residue, m: PrimeModulus) -> Result<Residue> {
    if x.is_zero() {
        return Err(Error::Domain("zero has no multiplicative inverse".into()));
    }
    Ok(pow_mod(x, m.get() - 2, m))
}

/// Least `k >= 1` with `a^k = 1 (mod p)`, found by descending through the divisors of `p - 1`.
pub fn mult_order(a: Residue, m: PrimeModulus) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::Domain("zero has no multiplicative order".into()));
    }
    let p = m.get();
    let mut order = p - 1;
    for (q, _) in factorize(p - 1) {
        while order.is_multiple_of(q) && powmod_u64(a.value(), order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
///
/// Trial division up to `10^6`, then Pollard-rho (Brent) on the cofactor.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut push = |q: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(q) {
            *n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    };
    push(2, &mut n);
    let mut q = 3u64;
    while q <= TRIAL_LIMIT && q * q <= n {
        push(q, &mut n);
        q += 2;
    }
    if n > 1 {
        let mut rest = Vec::new();
        split_large(n, &mut rest);
        rest.sort_unstable();
        let mut i = 0;
        while i < rest.len() {
            let mut j = i;
            while j < rest.len() && rest[j] == rest[i] {
                j += 1;
            }
            out.push((rest[i], (j - i) as u32));
            i = j;
        }
    }
    out
}

fn split_large(n: u64, acc: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        acc.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, acc);
    split_large(n / d, acc);
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns a nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut r, mut q) = (2u64, 2u64, 1u64, 1u64, 1u64);
        let mut ys = 0u64;
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mulmod_u64(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

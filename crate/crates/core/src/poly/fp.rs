//! Dense polynomials over `F_p`.

use crate::error::{Error, Result};
use crate::modfield::arith::{mulmod_u64, powmod_u64};
use crate::modfield::{PrimeModulus, Residue};
use std::fmt;

/// A polynomial over `F_p`, coefficients low degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: PrimeModulus,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from arbitrary `u64` coefficients, reducing them mod `p`.
    pub fn new(coeffs: Vec<u64>, p: PrimeModulus) -> Self {
        let pv = p.get();
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % pv).collect() };
        f.trim();
        f
    }

    pub fn from_residues(coeffs: &[Residue], p: PrimeModulus) -> Self {
        FpPoly::new(coeffs.iter().map(|c| c.value()).collect(), p)
    }

    /// Reduces signed coefficients mod `p`.
    pub fn from_i64(coeffs: &[i64], p: PrimeModulus) -> Self {
        FpPoly::new(coeffs.iter().map(|&c| p.reduce_i64(c).value()).collect(), p)
    }

    pub fn zero(p: PrimeModulus) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: PrimeModulus) -> Self {
        FpPoly::new(vec![1], p)
    }

    /// The monomial `x`.
    pub fn x(p: PrimeModulus) -> Self {
        FpPoly::new(vec![0, 1], p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let pv = self.p.get();
        let x = x % pv;
        self.coeffs.iter().rev().fold(0, |acc, &c| {
            let t = mulmod_u64(acc, x, pv) + c;
            if t >= pv { t - pv } else { t }
        })
    }

    fn check(&self, other: &FpPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Domain(format!("modulus mismatch: {} vs {}", self.p.get(), other.p.get())));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        let pv = self.p.get();
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| {
                let s = self.coeffs.get(i).copied().unwrap_or(0) as u128 + other.coeffs.get(i).copied().unwrap_or(0) as u128;
                (s % pv as u128) as u64
            })
            .collect();
        Ok(FpPoly::new(c, self.p))
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FpPoly {
        let pv = self.p.get();
        FpPoly::new(self.coeffs.iter().map(|&c| if c == 0 { 0 } else { pv - c }).collect(), self.p)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        let pv = self.p.get();
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                // each term is < p < 2^64, so u128 holds 2^64 of them
                acc[i + j] += mulmod_u64(x, y, pv) as u128;
            }
        }
        Ok(FpPoly::new(acc.into_iter().map(|v| (v % pv as u128) as u64).collect(), self.p))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let pv = self.p.get();
        FpPoly::new(self.coeffs.iter().map(|&x| mulmod_u64(x, c % pv, pv)).collect(), self.p)
    }

    /// Leading coefficient scaled to 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = powmod_u64(self.leading(), self.p.get() - 2, self.p.get());
        self.scale(inv)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let pv = self.p.get();
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let inv = powmod_u64(d.leading(), pv - 2, pv);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod_u64(r[k + dd], inv, pv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let t = mulmod_u64(c, dj, pv);
                let slot = &mut r[k + j];
                *slot = if *slot >= t { *slot - t } else { *slot + pv - t };
            }
        }
        r.truncate(dd);
        Ok((FpPoly::new(q, self.p), FpPoly::new(r, self.p)))
    }

    pub fn rem(&self, d: &FpPoly) -> Result<FpPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// `self^e mod q` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, q: &FpPoly) -> Result<FpPoly> {
        let mut base = self.rem(q)?;
        let mut acc = FpPoly::one(self.p).rem(q)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, q)?;
            }
            e >>= 1;
            if e > 0 {
                base = fp_mulmod(&base, &base, q)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "{} (mod {})", parts.join(","), self.p.get())
    }
}

/// `(a b) mod q`.
pub fn fp_mulmod(a: &FpPoly, b: &FpPoly, q: &FpPoly) -> Result<FpPoly> {
    a.mul(b)?.rem(q)
}

/// Monic greatest common divisor by the Euclidean algorithm.
pub fn fp_gcd(a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
    a.check(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

//! Integer polynomials with arbitrary-precision coefficients.

use super::fp::FpPoly;
use crate::error::{Error, Result};
use crate::modfield::PrimeModulus;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// An integer polynomial, coefficients low degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut f = ZPoly { coeffs };
        while f.coeffs.last().is_some_and(Zero::is_zero) {
            f.coeffs.pop();
        }
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::from_i64(&[1])
    }

    /// `x^m`.
    pub fn monomial(m: usize) -> Self {
        let mut c = vec![BigInt::zero(); m + 1];
        c[m] = BigInt::one();
        ZPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Number of trailing zero coefficients from the constant term up: the power of `x` dividing it.
    pub fn x_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        ZPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        ZPoly::new(out)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ZPoly>) -> ZPoly {
        factors.into_iter().fold(ZPoly::one(), |acc, f| acc.mul(f))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.coeffs.len() <= dd {
            return None;
        }
        let lead = d.leading()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        if r[..dd].iter().all(Zero::is_zero) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Reduction mod `p`.
    pub fn reduce_mod(&self, p: PrimeModulus) -> FpPoly {
        let pb = BigInt::from(p.get());
        FpPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
                .collect(),
            p,
        )
    }

    /// Coefficients as `f64`, for numerical root finding.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for ZPoly {
    /// The comma-separated text format, low degree first (`0` for the zero polynomial).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ZPoly {
    type Err = Error;

    /// Parses comma-separated integer coefficients, low degree first: `-2,0,0,1` is `x^3 - 2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{}' in polynomial '{s}'", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZPoly::new(coeffs))
    }
}

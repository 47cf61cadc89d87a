//! Arithmetic averages of root counts: prime-window averages of `N_p` and the identity
//! `sum_a ||mu_a^(n)||_2^2 = E N_p(P_1 - P_2)`.

mod identity;
mod scan;

pub use identity::{identity_check_exact, identity_check_mc, IdentityMethod, IdentityReport, EXACT_ENUMERATION_LIMIT};
pub use scan::{
    exceptional_prime_scan, random_poly_irreducibility_proxy, ExceptionalRow, ExceptionalScan, FlagThreshold,
    IrreducibilityProxy, ProxyTrial,
};

use crate::error::{Error, Result};
use crate::harness::output::fmt_g12;
use crate::modfield::primes_in_window;
use crate::poly::{count_roots_np, ZPoly};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Exact CSV header of a prime-window average.
pub const PRIME_AVERAGE_HEADER: &str = "p,logp,Np,excluded";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeRow {
    pub p: u64,
    pub logp: f64,
    /// `N_p(Q)`, or `p` for an excluded prime.
    pub np: u64,
    /// `Q` vanishes mod `p`.
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeWindowAverage {
    pub lo: u64,
    pub hi: u64,
    pub polynomial: String,
    /// `sum N_p log p / sum log p` over the primes that are not excluded.
    pub weighted_mean: f64,
    /// Every prime of the window, excluded ones included.
    pub prime_count: usize,
    /// Number of non-excluded primes with each value of `N_p`.
    pub histogram: BTreeMap<u64, u64>,
    pub excluded: Vec<u64>,
    #[serde(skip)]
    pub rows: Vec<PrimeRow>,
}

impl PrimeWindowAverage {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.rows.len() + 1));
        out.push_str(PRIME_AVERAGE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.p, fmt_g12(r.logp), r.np, r.excluded);
        }
        out
    }

    /// The `{weighted_mean, prime_count, histogram}` object.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "weighted_mean": self.weighted_mean,
            "prime_count": self.prime_count,
            "histogram": self.histogram,
        })
    }
}

/// The integer window `[ceil(e^X), floor((1 + kappa) e^X)]`.
pub fn window_from_x_kappa(x: f64, kappa: f64) -> Result<(u64, u64)> {
    if !(x > 0.0 && kappa > 0.0) {
        return Err(Error::Domain(format!("need X > 0 and kappa > 0, got X = {x}, kappa = {kappa}")));
    }
    let lo = x.exp().ceil();
    let hi = ((1.0 + kappa) * x.exp()).floor();
    if hi >= u64::MAX as f64 {
        return Err(Error::Resource(format!("window end {hi} exceeds 64 bits")));
    }
    Ok((lo.max(2.0) as u64, hi as u64))
}

/// Log-weighted mean of `N_p(Q)` over the primes of `[lo, hi]`.
pub fn weighted_prime_average(q: &ZPoly, lo: u64, hi: u64) -> Result<PrimeWindowAverage> {
    if !(2 <= lo && lo < hi) {
        return Err(Error::Domain(format!("window must satisfy 2 <= lo < hi, got [{lo}, {hi}]")));
    }
    if q.is_zero() {
        return Err(Error::Domain("the zero polynomial vanishes at every prime".into()));
    }
    let primes = primes_in_window(lo, hi)?;
    let rows = primes
        .par_iter()
        .map(|&p| {
            let rc = count_roots_np(q, p)?;
            Ok(PrimeRow { p: p.get(), logp: (p.get() as f64).ln(), np: rc.count, excluded: rc.vanishing })
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut num, mut den) = (0.0, 0.0);
    let mut histogram = BTreeMap::new();
    let mut excluded = Vec::new();
    for r in &rows {
        if r.excluded {
            excluded.push(r.p);
            continue;
        }
        num += r.np as f64 * r.logp;
        den += r.logp;
        *histogram.entry(r.np).or_insert(0) += 1;
    }
    Ok(PrimeWindowAverage {
        lo,
        hi,
        polynomial: q.to_string(),
        weighted_mean: if den > 0.0 { num / den } else { f64::NAN },
        prime_count: rows.len(),
        histogram,
        excluded,
        rows,
    })
}

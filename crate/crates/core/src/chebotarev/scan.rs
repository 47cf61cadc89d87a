//! Sampled experiments over prime windows: irreducibility of random difference polynomials
//! and primes where typical multipliers mix slowly.

use super::weighted_prime_average;
use crate::dist::{l2_dist_from_fourier, profile_from_char_fn, Budget, CharFn, StepLaw};
use crate::error::{Error, Result};
use crate::harness::SeededRng;
use crate::modfield::{primes_in_window, PrimeModulus, Residue};
use crate::poly::{difference_walk_poly, strip_cyclotomic, ZPoly};
use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProxyTrial {
    pub polynomial: String,
    pub reduced_degree: usize,
    /// Prime-window mean of `N_p` of the stripped polynomial; `None` when it is constant.
    pub weighted_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrreducibilityProxy {
    pub trials: Vec<ProxyTrial>,
    /// Trials whose mean lies in `[0.8, 1.2]`.
    pub near_one: usize,
}

/// Samples difference-walk polynomials, strips their cyclotomic and monomial parts and
/// averages `N_p` of what remains over `[lo, hi]`. An irreducible remainder averages near 1.
pub fn random_poly_irreducibility_proxy(
    mu: &StepLaw,
    n: usize,
    lo: u64,
    hi: u64,
    trials: usize,
    seed: u64,
) -> Result<IrreducibilityProxy> {
    let mut rng = SeededRng::new(seed).labelled("irreducibility", &[]);
    let polys: Vec<ZPoly> = (0..trials)
        .map(|_| loop {
            let q = difference_walk_poly(mu, n, &mut rng);
            if !q.is_zero() {
                break q;
            }
        })
        .collect();
    let mut out = Vec::with_capacity(trials);
    for q in polys {
        out.push(proxy_trial(&q, lo, hi)?);
    }
    let near_one = out.iter().filter(|t| t.weighted_mean.is_some_and(|m| (0.8..=1.2).contains(&m))).count();
    Ok(IrreducibilityProxy { trials: out, near_one })
}

/// One trial of the proxy on a given polynomial (used for controls such as `x^3 - 2`).
pub fn proxy_trial(q: &ZPoly, lo: u64, hi: u64) -> Result<ProxyTrial> {
    let stripped = strip_cyclotomic(q)?;
    let reduced_degree = stripped.reduced.degree().unwrap_or(0);
    let weighted_mean = if reduced_degree == 0 {
        None
    } else {
        Some(weighted_prime_average(&stripped.reduced, lo, hi)?.weighted_mean)
    };
    Ok(ProxyTrial { polynomial: q.to_string(), reduced_degree, weighted_mean })
}

/// How the exceptional-prime threshold scales with `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagThreshold {
    Fixed(f64),
    /// `c sqrt(log p) / log log p`.
    LogShape(f64),
}

impl FlagThreshold {
    pub fn at(&self, p: PrimeModulus) -> f64 {
        match *self {
            FlagThreshold::Fixed(t) => t,
            FlagThreshold::LogShape(c) => {
                let lp = (p.get() as f64).ln();
                c * lp.sqrt() / lp.ln()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionalRow {
    pub p: u64,
    pub n: u64,
    /// Mean over the sampled `a` of `p ||mu_a^(n)||_2^2`.
    pub mean_p_norm_sq: f64,
    pub threshold: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionalScan {
    pub rows: Vec<ExceptionalRow>,
    /// `sum_{flagged} log p / sum log p`.
    pub flagged_weighted_fraction: f64,
}

/// For each prime, the sampled-multiplier mean of `p ||mu_a^(n)||_2^2` at
/// `n = floor(2 log p / H_2(mu))`, flagged against `threshold`.
#[allow(clippy::too_many_arguments)]
pub fn exceptional_prime_scan(
    mu: &StepLaw,
    lo: u64,
    hi: u64,
    prime_sample: Option<usize>,
    a_sample: usize,
    threshold: FlagThreshold,
    seed: u64,
    budget: &Budget,
) -> Result<ExceptionalScan> {
    if a_sample == 0 {
        return Err(Error::Domain("empty multiplier sample".into()));
    }
    let root = SeededRng::new(seed);
    let mut primes = primes_in_window(lo, hi)?;
    if let Some(k) = prime_sample.filter(|&k| k < primes.len()) {
        let mut picked = index::sample(&mut root.labelled("primes", &[]), primes.len(), k).into_vec();
        picked.sort_unstable();
        primes = picked.into_iter().map(|i| primes[i]).collect();
    }
    let h2 = -mu.norm_sq().ln();
    let rows = primes
        .par_iter()
        .map(|&p| {
            let pv = p.get();
            let n = (2.0 * (pv as f64).ln() / h2).floor() as u64;
            budget.check_n(n)?;
            let phi = CharFn::new(mu, p, budget)?;
            let k = a_sample.min(pv as usize - 1);
            let picks = index::sample(&mut root.labelled("multipliers", &[pv]), pv as usize - 1, k);
            let mut total = 0.0;
            for i in picks.iter() {
                let prof = profile_from_char_fn(&phi, Residue::new(i as u64 + 1, p)?, n)?;
                total += 1.0 + l2_dist_from_fourier(&prof);
            }
            let mean = total / k as f64;
            let t = threshold.at(p);
            Ok(ExceptionalRow { p: pv, n, mean_p_norm_sq: mean, threshold: t, flagged: mean > t })
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut flagged, mut all) = (0.0, 0.0);
    for r in &rows {
        let w = (r.p as f64).ln();
        all += w;
        if r.flagged {
            flagged += w;
        }
    }
    Ok(ExceptionalScan { rows, flagged_weighted_fraction: if all > 0.0 { flagged / all } else { 0.0 } })
}

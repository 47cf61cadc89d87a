//! The root-counting identity `sum_{a in F_p} ||mu_a^(n)||_2^2 = E N_p(P_1 - P_2)`.

use crate::dist::{difference_law, l2_dist_from_fourier, profile_from_char_fn, Budget, CharFn, Evolver, StepLaw};
use crate::error::{Error, Result};
use crate::modfield::{PrimeModulus, Residue};
use crate::poly::{count_roots_np, difference_walk_poly, ZPoly};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `|Supp mu|^(2n)` accepted by the exact check.
pub const EXACT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Tolerance of the exact identity.
pub const EXACT_TOL: f64 = 1e-10;

/// Standard errors allowed between the sides of the sampled identity.
pub const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityMethod {
    ExactEnumeration,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub p: u64,
    pub n: u64,
    /// `sum_a ||mu_a^(n)||_2^2`.
    pub lhs: f64,
    /// `E N_p(P)`, exact or estimated.
    pub rhs: f64,
    pub method: IdentityMethod,
    pub discrepancy: f64,
    /// Standard error of `rhs` (Monte Carlo only).
    pub std_error: Option<f64>,
    pub samples: Option<u64>,
    pub passed: bool,
}

/// `||mu_0^(n)||_2^2`: with `a = 0` the chain forgets everything but its last increment.
fn zero_multiplier_norm(mu: &StepLaw, p: PrimeModulus, n: u64) -> f64 {
    if n == 0 {
        1.0
    } else {
        mu.reduce_mod(p).iter().map(|&(_, w)| w * w).sum()
    }
}

/// Exact check: the left side from the evolved laws for every `a` in `F_p` (including 0),
/// the right side by enumerating every coefficient vector of `P_1 - P_2`, whose entries are
/// independent with the difference law.
pub fn identity_check_exact(mu: &StepLaw, p: PrimeModulus, n: u64, budget: &Budget) -> Result<IdentityReport> {
    budget.check_p(p)?;
    let s = mu.support_size() as u64;
    let pairs = s.checked_pow(2 * n as u32).filter(|&v| v <= EXACT_ENUMERATION_LIMIT && n <= 32);
    if pairs.is_none() {
        return Err(Error::Resource(format!(
            "|Supp mu|^(2n) = {s}^{} exceeds the enumeration limit {EXACT_ENUMERATION_LIMIT}",
            2 * n
        )));
    }
    let mut lhs = 0.0;
    for a in 0..p.get() {
        let mut ev = Evolver::new_unchecked(mu, p, Residue::new(a, p)?, Residue::ZERO);
        ev.advance_to(n);
        lhs += ev.current().norm_sq();
    }

    let nu = difference_law(mu);
    let atoms = nu.atoms();
    let mut rhs = 0.0;
    let mut idx = vec![0usize; n as usize];
    loop {
        let (mut prob, mut coeffs) = (1.0, Vec::with_capacity(n as usize));
        for &i in &idx {
            prob *= atoms[i].1;
            coeffs.push(atoms[i].0);
        }
        rhs += prob * count_roots_np(&ZPoly::from_i64(&coeffs), p)?.count as f64;
        // odometer over atom indices
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < atoms.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    let discrepancy = (lhs - rhs).abs();
    Ok(IdentityReport {
        p: p.get(),
        n,
        lhs,
        rhs,
        method: IdentityMethod::ExactEnumeration,
        discrepancy,
        std_error: None,
        samples: None,
        passed: discrepancy <= EXACT_TOL,
    })
}

/// Sampled check: the left side exactly through Fourier profiles, the right side as the mean
/// of `N_p` over sampled difference polynomials. Fails when the sides differ by more than four
/// standard errors.
pub fn identity_check_mc<R: Rng + ?Sized>(
    mu: &StepLaw,
    p: PrimeModulus,
    n: u64,
    samples: u64,
    rng: &mut R,
    budget: &Budget,
) -> Result<IdentityReport> {
    if samples == 0 {
        return Err(Error::Domain("empty sample".into()));
    }
    budget.check_n(n)?;
    let phi = CharFn::new(mu, p, budget)?;
    let nonzero: Vec<f64> = (1..p.get())
        .into_par_iter()
        .map(|a| Ok((1.0 + l2_dist_from_fourier(&profile_from_char_fn(&phi, Residue::new(a, p)?, n)?)) / p.get() as f64))
        .collect::<Result<Vec<_>>>()?;
    let lhs = zero_multiplier_norm(mu, p, n) + nonzero.iter().sum::<f64>();

    let polys: Vec<ZPoly> = (0..samples).map(|_| difference_walk_poly(mu, n as usize, rng)).collect();
    let counts = polys
        .par_iter()
        .map(|q| Ok(count_roots_np(q, p)?.count as f64))
        .collect::<Result<Vec<_>>>()?;
    let k = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / k;
    let var = if counts.len() > 1 { counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
    let se = (var / k).sqrt();
    let discrepancy = (lhs - mean).abs();
    Ok(IdentityReport {
        p: p.get(),
        n,
        lhs,
        rhs: mean,
        method: IdentityMethod::MonteCarlo,
        discrepancy,
        std_error: Some(se),
        samples: Some(samples),
        passed: discrepancy <= MC_SIGMAS * se + 1e-9,
    })
}

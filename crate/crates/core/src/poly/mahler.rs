//! Mahler measure by simultaneous root finding.

use super::cyclotomic::strip_cyclotomic;
use super::zpoly::ZPoly;
use crate::dist::StepLaw;
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use std::f64::consts::TAU;

const MAX_ABERTH_ITERATIONS: usize = 1000;
const NEWTON_POLISH_STEPS: usize = 10;

/// A Mahler measure with the roots it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct MahlerMeasure {
    pub value: f64,
    /// Approximate roots of the polynomial with its `x^m` factor removed.
    pub roots: Vec<Complex64>,
    /// Residual-based bound on `|log M - log M_computed|`.
    pub log_error_bound: f64,
    pub iterations: usize,
}

/// `p(z) / p'(z)` computed stably: directly when `|z| <= 1`, through the reversed polynomial
/// evaluated at `1/z` otherwise. Returns `(ratio, |p(z)|-scale residual estimate)`.
fn newton_ratio(c: &[f64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut f, mut df) = (Complex64::new(c[n], 0.0), Complex64::new(0.0, 0.0));
        for &a in c[..n].iter().rev() {
            df = df * z + f;
            f = f * z + a;
        }
        f / df
    } else {
        // p(z) = z^n r(w), w = 1/z, r(w) = sum c_i w^(n-i)
        let w = z.inv();
        let (mut f, mut df) = (Complex64::new(c[0], 0.0), Complex64::new(0.0, 0.0));
        for &a in &c[1..] {
            df = df * w + f;
            f = f * w + a;
        }
        // p'(z)/p(z) = n/z - w^2 r'(w)/r(w)
        let logd = n as f64 * w - w * w * df / f;
        logd.inv()
    }
}

/// Roots by the Aberth–Ehrlich iteration followed by Newton polishing.
fn aberth(c: &[f64]) -> Result<(Vec<Complex64>, usize)> {
    let n = c.len() - 1;
    let lead = c[n].abs();
    // Fujiwara-style radius bound for the initial circle
    let radius = (0..n)
        .map(|i| (c[i].abs() / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4)).collect();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ABERTH_ITERATIONS {
        iterations += 1;
        let mut max_step = 0.0f64;
        for i in 0..n {
            let ratio = newton_ratio(c, z[i]);
            if !ratio.is_finite() {
                continue;
            }
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for _ in 0..NEWTON_POLISH_STEPS {
        for zi in z.iter_mut() {
            let step = newton_ratio(c, *zi);
            if step.is_finite() && step.norm() < 1e-6 * zi.norm().max(1.0) {
                *zi -= step;
            }
        }
    }
    if !converged && z.iter().any(|r| !r.is_finite()) {
        return Err(Error::Numeric(format!(
            "root finder did not converge for a degree-{n} polynomial after {iterations} iterations"
        )));
    }
    Ok((z, iterations))
}

/// `M(P) = |a_n| prod max(1, |alpha_i|)` over the complex roots of `P`.
pub fn mahler_measure(p: &ZPoly) -> Result<f64> {
    Ok(mahler_measure_detailed(p)?.value)
}

pub fn mahler_measure_detailed(p: &ZPoly) -> Result<MahlerMeasure> {
    if p.is_zero() {
        return Err(Error::Domain("Mahler measure of the zero polynomial".into()));
    }
    let m = p.x_adic_valuation();
    let c: Vec<f64> = p.coeffs()[m..].iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("coefficients exceed double precision range".into()));
    }
    let lead = c[c.len() - 1].abs();
    if c.len() == 1 {
        return Ok(MahlerMeasure { value: lead, roots: Vec::new(), log_error_bound: 0.0, iterations: 0 });
    }
    let (roots, iterations) = aberth(&c)?;
    let n = roots.len() as f64;
    let mut log_m = lead.ln();
    let mut err = 0.0;
    for &r in &roots {
        let mag = r.norm();
        if mag > 1.0 {
            log_m += mag.ln();
        }
        // a Newton step of size s leaves a root within n|s| of the iterate
        let radius = n * newton_ratio(&c, r).norm();
        if radius.is_finite() && (mag - 1.0).abs() <= radius || mag > 1.0 {
            err += (radius / mag.max(1e-300)).min(1.0);
        }
    }
    if !log_m.is_finite() {
        return Err(Error::Numeric(format!("non-finite Mahler measure after {iterations} iterations")));
    }
    Ok(MahlerMeasure { value: log_m.exp(), roots, log_error_bound: err, iterations })
}

/// Outcome of the Mahler-measure checks on one factored difference-walk polynomial.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MahlerSuiteReport {
    pub degree: usize,
    pub measure: f64,
    pub factor_measures: Vec<f64>,
    /// `|M(P) - prod M(P_i)| / M(P)`.
    pub multiplicativity_rel_err: f64,
    pub multiplicativity_ok: bool,
    /// `H = max |z|` over the support of the step law.
    pub height: u64,
    pub walk_length: u64,
    /// `2 H sqrt(n)`.
    pub height_bound: f64,
    pub height_bound_ok: bool,
    /// Factors that are not products of cyclotomics and monomials.
    pub noncyclotomic_factors: usize,
    /// Dobrowolski-type constant used for the factor-count ceiling.
    pub c: f64,
    /// `log M(P) (log n)^3 / c`, the ceiling on the number of non-cyclotomic irreducible factors.
    pub factor_ceiling: f64,
}

/// Relative tolerance for multiplicativity of the measure.
pub const MULTIPLICATIVITY_TOL: f64 = 1e-6;

/// Checks multiplicativity, `M(P) <= 2 H sqrt(n)` and reports the factor-count ceiling
/// for the product `P` of `factors`.
pub fn mahler_suite(factors: &[ZPoly], mu: &StepLaw, n: u64, c: f64) -> Result<MahlerSuiteReport> {
    if factors.is_empty() {
        return Err(Error::Domain("empty factor list".into()));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("constant c must be positive, got {c}")));
    }
    let product = ZPoly::product(factors);
    let measure = mahler_measure(&product)?;
    let factor_measures = factors.iter().map(mahler_measure).collect::<Result<Vec<_>>>()?;
    let prod_m: f64 = factor_measures.iter().product();
    let rel = (measure - prod_m).abs() / measure.max(f64::MIN_POSITIVE);
    let height = mu.height();
    let height_bound = 2.0 * height as f64 * (n as f64).sqrt();
    let mut noncyclotomic = 0;
    for f in factors {
        if f.degree().unwrap_or(0) > 0 {
            let s = strip_cyclotomic(f)?;
            if s.reduced.degree().unwrap_or(0) > 0 {
                noncyclotomic += 1;
            }
        }
    }
    let ln_n = (n.max(2) as f64).ln();
    Ok(MahlerSuiteReport {
        degree: product.degree().unwrap_or(0),
        measure,
        factor_measures,
        multiplicativity_rel_err: rel,
        multiplicativity_ok: rel <= MULTIPLICATIVITY_TOL,
        height,
        walk_length: n,
        height_bound,
        height_bound_ok: measure <= height_bound * (1.0 + 1e-9),
        noncyclotomic_factors: noncyclotomic,
        c,
        factor_ceiling: measure.ln().max(0.0) * ln_n.powi(3) / c,
    })
}

/// `sqrt(sum a_i^2)`, which dominates the Mahler measure (Landau's inequality).
pub fn l2_norm(p: &ZPoly) -> f64 {
    p.coeffs().iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY).powi(2)).sum::<f64>().sqrt()
}

//! Distinct roots of integer polynomials modulo a prime.

use super::fp::{fp_gcd, FpPoly};
use super::zpoly::ZPoly;
use crate::error::Result;
use crate::modfield::{euler_phi, mult_order, PrimeModulus, Residue};

/// `N_p(Q)` together with a flag for the convention `N_p(0) = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RootCount {
    pub count: u64,
    /// `Q` reduces to the zero polynomial mod `p`; `count` is then `p`.
    pub vanishing: bool,
}

/// `gcd(x^p - x, q)`, the product of the distinct linear factors of `q`.
pub fn split_part(q: &FpPoly) -> Result<FpPoly> {
    let p = q.modulus();
    let xp = FpPoly::x(p).pow_mod(p.get(), q)?;
    fp_gcd(&xp.sub(&FpPoly::x(p))?, q)
}

/// Number of distinct roots of `q` in `F_p`, as `deg gcd(x^p - x, q mod p)`.
pub fn count_roots_np(q: &ZPoly, p: PrimeModulus) -> Result<RootCount> {
    count_roots_fp(&q.reduce_mod(p))
}

pub fn count_roots_fp(q: &FpPoly) -> Result<RootCount> {
    if q.is_zero() {
        return Ok(RootCount { count: q.modulus().get(), vanishing: true });
    }
    if q.degree() == Some(0) {
        return Ok(RootCount { count: 0, vanishing: false });
    }
    let g = split_part(q)?;
    Ok(RootCount { count: g.degree().unwrap_or(0) as u64, vanishing: false })
}

/// Roots of a monic squarefree product of linear factors, by equal-degree splitting with
/// `gcd((x + s)^((p-1)/2) - 1, g)` for `s = 0, 1, 2, ...`.
fn split_linear(g: &FpPoly, out: &mut Vec<u64>) -> Result<()> {
    let p = g.modulus();
    let pv = p.get();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            // g = x + c
            out.push((pv - g.coeffs()[0]) % pv);
            return Ok(());
        }
        _ => {}
    }
    if pv == 2 {
        out.extend((0..2).filter(|&x| g.eval(x) == 0));
        return Ok(());
    }
    for s in 0..pv {
        let shifted = FpPoly::new(vec![s, 1], p);
        let h = shifted.pow_mod((pv - 1) / 2, g)?.sub(&FpPoly::one(p))?;
        let d = fp_gcd(&h, g)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (rest, _) = g.div_rem(&d)?;
            split_linear(&d, out)?;
            split_linear(&rest.monic(), out)?;
            return Ok(());
        }
    }
    unreachable!("distinct roots are always separated by some shift")
}

/// The distinct roots of `q` in `F_p`, ascending. Empty when `q` vanishes mod `p`.
pub fn roots_mod_p(q: &ZPoly, p: PrimeModulus) -> Result<Vec<u64>> {
    let qb = q.reduce_mod(p);
    if qb.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    split_linear(&split_part(&qb)?, &mut roots)?;
    roots.sort_unstable();
    Ok(roots)
}

/// Whether `a` is admissible at walk length `n`: nonzero with `phi(ord a) > 3n`.
pub fn is_admissible(a: Residue, p: PrimeModulus, n: u64) -> bool {
    match mult_order(a, p) {
        Ok(order) => euler_phi(order) as u128 > 3 * n as u128,
        Err(_) => false,
    }
}

/// Number of admissible roots of `q` mod `p`; the same vanishing convention as [`count_roots_np`]
/// (a vanishing `q` counts every admissible residue).
pub fn count_admissible_roots(q: &ZPoly, p: PrimeModulus, n: u64) -> Result<RootCount> {
    let qb = q.reduce_mod(p);
    if qb.is_zero() {
        let count = (1..p.get()).filter(|&a| is_admissible(Residue::new(a, p).expect("in range"), p, n)).count();
        return Ok(RootCount { count: count as u64, vanishing: true });
    }
    let roots = roots_mod_p(q, p)?;
    let count = roots.into_iter().filter(|&a| is_admissible(Residue::new(a, p).expect("in range"), p, n)).count();
    Ok(RootCount { count: count as u64, vanishing: false })
}

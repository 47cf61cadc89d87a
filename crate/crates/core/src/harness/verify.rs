//! The bundled invariant suite behind `verify`.
//!
//! Every check compares library output against an independent route (exhaustive
//! enumeration, a naive transform, a plain sieve, brute-force evaluation) or asserts a
//! structural inequality over randomized instances drawn from a fixed seed.

use crate::chebotarev::{identity_check_exact, weighted_prime_average};
use crate::dist::{
    difference_law, distance, ent_lower_bound, entropy_bundle, evolve_direct, fourier_profile, l2_dist_from_fourier,
    l2_lower_bound, mixing_time, normalized_distance, phi_bound_check, self_similarity_suite, support_evolution,
    total_variation, ASelection, Budget, Evolver, MixingOptions, NGrid, StepLaw, SweepConfig,
};
use crate::harness::SeededRng;
use crate::modfield::{
    euler_phi, factorize, frac_rep, is_prime, mul_mod, mult_order, pow_mod, primes_in_window, primes_up_to,
    PrimeModulus, Residue,
};
use crate::poly::{
    count_admissible_roots, count_roots_np, cyclotomic_poly, difference_walk_poly, fp_gcd, mahler_measure,
    strip_cyclotomic, ZPoly,
};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::Serialize;
use std::f64::consts::TAU;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(crate::Error::Parse(format!("unknown level '{other}' (use quick or full)"))),
        }
    }
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type CheckResult = std::result::Result<String, String>;
type CheckFn = fn(Level, &mut SeededRng) -> CheckResult;

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("verify uses primes")
}

fn res(x: u64, p: PrimeModulus) -> Residue {
    p.residue(x)
}

fn laws() -> Vec<StepLaw> {
    vec![
        StepLaw::uniform(&[0, 1]).expect("law"),
        StepLaw::default(),
        StepLaw::from_rational(&[(0, 1, 4), (1, 3, 4)]).expect("law"),
    ]
}

fn random_law(rng: &mut SeededRng) -> StepLaw {
    let k = rng.gen_range(2..=4);
    let mut values: Vec<i64> = (-3..=4).collect();
    values.shuffle(rng);
    let atoms: Vec<(i64, f64)> = values[..k].iter().map(|&v| (v, rng.gen_range(1..=5) as f64)).collect();
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    StepLaw::new(atoms.into_iter().map(|(v, w)| (v, w / total)).collect()).expect("random law")
}

fn random_prime(rng: &mut SeededRng, lo: u64, hi: u64) -> PrimeModulus {
    loop {
        let c = rng.gen_range(lo..=hi);
        if is_prime(c) {
            return pm(c);
        }
    }
}

fn random_nonzero(rng: &mut SeededRng, p: PrimeModulus) -> Residue {
    res(rng.gen_range(1..p.get()), p)
}

/// Law of `x_n` by walking every coefficient tuple.
fn enumerate_law(mu: &StepLaw, p: PrimeModulus, a: Residue, n: u64, x0: Residue) -> Vec<f64> {
    fn walk(atoms: &[(u64, f64)], p: u64, a: u64, depth: u64, x: u64, w: f64, out: &mut [f64]) {
        if depth == 0 {
            out[x as usize] += w;
            return;
        }
        for &(b, wb) in atoms {
            walk(atoms, p, a, depth - 1, (a * x + b) % p, w * wb, out);
        }
    }
    let atoms = mu.reduce_mod(p);
    let mut out = vec![0.0; p.len()];
    walk(&atoms, p.get(), a.value(), n, x0.value(), 1.0, &mut out);
    out
}

fn naive_dft(probs: &[f64]) -> Vec<Complex64> {
    let p = probs.len();
    (0..p)
        .map(|xi| {
            probs
                .iter()
                .enumerate()
                .map(|(x, &w)| Complex64::from_polar(w, TAU * ((xi * x) % p) as f64 / p as f64))
                .sum()
        })
        .collect()
}

fn check_mul_mod(level: Level, rng: &mut SeededRng) -> CheckResult {
    let primes = [11u64, 65_537, 4_294_967_311, (1 << 61) - 1, 18_446_744_073_709_551_557];
    let trials = level.pick(2_000, 50_000);
    for &p in &primes {
        let m = pm(p);
        for _ in 0..trials {
            let (x, y) = (rng.gen_range(0..p), rng.gen_range(0..p));
            let want = ((x as u128 * y as u128) % p as u128) as u64;
            let got = mul_mod(res(x, m), res(y, m), m).value();
            ensure(got == want, || format!("{x}*{y} mod {p}: {got} != {want}"))?;
        }
    }
    Ok(format!("{} products", trials * primes.len()))
}

fn check_orders(level: Level, _: &mut SeededRng) -> CheckResult {
    let mut count = 0;
    for p in primes_up_to(level.pick(300, 3000)) {
        let m = pm(p);
        for a in 1..p {
            let o = lib(mult_order(res(a, m), m))?;
            ensure((p - 1) % o == 0, || format!("ord({a}) = {o} does not divide {}", p - 1))?;
            ensure(pow_mod(res(a, m), o, m) == Residue::ONE, || format!("{a}^{o} != 1 mod {p}"))?;
            for (q, _) in factorize(o) {
                ensure(pow_mod(res(a, m), o / q, m) != Residue::ONE, || format!("ord({a}) mod {p} not minimal"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} orders"))
}

fn check_primality(level: Level, _: &mut SeededRng) -> CheckResult {
    let n = level.pick(100_000u64, 1_000_000);
    let sieve = primes_up_to(n);
    let mut flags = vec![false; n as usize + 1];
    for &p in &sieve {
        flags[p as usize] = true;
    }
    for k in 0..=n {
        ensure(is_prime(k) == flags[k as usize], || format!("is_prime({k}) disagrees with the sieve"))?;
    }
    let window: Vec<u64> = lib(primes_in_window(2, n))?.into_iter().map(PrimeModulus::get).collect();
    ensure(window == sieve, || "primes_in_window(2, N) differs from the sieve".into())?;
    let (lo, hi) = (level.pick(10_000u64, 10_000), n);
    let seg = lib(primes_in_window(lo, hi))?.len();
    let want = sieve.iter().filter(|&&p| p >= lo).count();
    ensure(seg == want, || format!("window [{lo}, {hi}] has {seg} primes, sieve says {want}"))?;
    Ok(format!("n <= {n}, {} primes", sieve.len()))
}

fn check_frac_rep(_: Level, _: &mut SeededRng) -> CheckResult {
    for p in [2u64, 3, 7, 101, 65_537] {
        let m = pm(p);
        for x in 0..p.min(5000) {
            let f = frac_rep(res(x, m), m);
            ensure(f > -0.5 && f <= 0.5, || format!("[{x}/{p}] = {f} outside (-1/2, 1/2]"))?;
            let g = frac_rep(res((p - x) % p, m), m);
            if x != 0 && 2 * x != p {
                ensure((f + g).abs() < 1e-15, || format!("[{x}/{p}] + [-{x}/{p}] = {}", f + g))?;
            }
        }
    }
    Ok("antisymmetric, in range".into())
}

fn check_oracle_equivalence(level: Level, _: &mut SeededRng) -> CheckResult {
    let pmax = level.pick(13, 31);
    let cap = level.pick(10_000u64, 1_000_000);
    let mut cases = 0;
    for p in primes_up_to(pmax) {
        let m = pm(p);
        for mu in laws() {
            let s = mu.support_size() as u64;
            for a in 1..p {
                let mut ev = lib(Evolver::new(&mu, m, res(a, m), Residue::ZERO, &Budget::default()))?;
                let mut n = 0u64;
                while s.pow(n as u32) <= cap {
                    let want = enumerate_law(&mu, m, res(a, m), n, Residue::ZERO);
                    let got = ev.current().probs();
                    let worst = got.iter().zip(&want).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    ensure(worst <= 1e-12, || format!("p={p} a={a} n={n} {mu}: max error {worst:e}"))?;
                    ev.step();
                    n += 1;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (p, a, n, mu) cases"))
}

fn check_conservation(level: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..level.pick(5, 30) {
        let mu = random_law(rng);
        let p = random_prime(rng, 50, 5000);
        let a = random_nonzero(rng, p);
        let n = rng.gen_range(0..level.pick(300, 3000));
        let d = lib(evolve_direct(&mu, p, a, n, random_nonzero(rng, p), &Budget::default()))?;
        let mass = d.total_mass();
        ensure((mass - 1.0).abs() <= 1e-9, || format!("p={} n={n}: mass {mass}", p.get()))?;
        ensure(d.probs().iter().all(|&w| w >= 0.0), || "negative probability".into())?;
    }
    Ok("mass 1 within 1e-9".into())
}

fn check_fourier(level: Level, rng: &mut SeededRng) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..level.pick(10, 50) {
        let mu = random_law(rng);
        let p = random_prime(rng, 3, level.pick(400, 2000));
        let a = random_nonzero(rng, p);
        let n = rng.gen_range(0..=200);
        let d = lib(evolve_direct(&mu, p, a, n, Residue::ZERO, &Budget::default()))?;
        let prof = lib(fourier_profile(&mu, p, a, n))?;
        let hat = naive_dft(d.probs());
        for (xi, h) in hat.iter().enumerate() {
            let e = (prof.value(xi) - h).norm();
            worst = worst.max(e);
            ensure(e <= 1e-8, || format!("p={} a={} n={n} xi={xi}: error {e:e}", p.get(), a.value()))?;
            ensure(prof.magnitude(xi) <= 1.0 + 1e-9, || "profile magnitude exceeds 1".into())?;
        }
        ensure((prof.value(0) - Complex64::new(1.0, 0.0)).norm() <= 1e-9, || "value[0] != 1".into())?;
        let parseval = l2_dist_from_fourier(&prof);
        let direct = d.p_l2_sq();
        ensure((parseval - direct).abs() <= 1e-8 * direct.max(1.0), || {
            format!("Parseval: {parseval} vs {direct} at p={} n={n}", p.get())
        })?;
    }
    Ok(format!("worst per-frequency error {worst:.2e}"))
}

fn check_entropies(_: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..50 {
        let mu = random_law(rng);
        let qs = [1.5, 2.0, 3.0, 8.0, f64::INFINITY];
        let b = lib(entropy_bundle(&mu, &qs))?;
        ensure(b.renyi2 <= b.shannon + 1e-12 && b.c_mu >= 0.0, || format!("{mu}: {b:?}"))?;
        let mut prev = b.shannon;
        for &(q, h) in &b.renyi_q {
            ensure(h <= prev + 1e-12 && h >= 0.0, || format!("{mu}: H_{q} = {h} above {prev}"))?;
            prev = h;
        }
        let nu = difference_law(&mu);
        for &(z, w) in nu.atoms() {
            ensure((nu.weight(-z) - w).abs() < 1e-15, || format!("{mu}: nu not symmetric at {z}"))?;
        }
        ensure((nu.weight(0) - mu.norm_sq()).abs() < 1e-12, || "nu(0) != ||mu||^2".into())?;
    }
    Ok("50 random laws".into())
}

fn check_distance_relations(level: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..level.pick(10, 60) {
        let mu = random_law(rng);
        let p = random_prime(rng, 5, 3000);
        let a = random_nonzero(rng, p);
        let mut ev = lib(Evolver::new(&mu, p, a, Residue::ZERO, &Budget::default()))?;
        let (mut prev_tv, mut prev_l2) = (f64::INFINITY, f64::INFINITY);
        for n in 0..level.pick(40, 200) {
            let d = ev.current();
            let qs = [1.0, 2.0, 4.0, f64::INFINITY];
            let norms: Vec<f64> = qs.iter().map(|&q| normalized_distance(d, q)).collect();
            ensure(norms.windows(2).all(|w| w[0] <= w[1] + 1e-12), || format!("norm ordering fails at n={n}: {norms:?}"))?;
            let l1 = 2.0 * total_variation(d);
            ensure(l1 * l1 <= d.p_l2_sq() + 1e-12, || format!("Cauchy-Schwarz fails at n={n}"))?;
            let (tv, l2) = (total_variation(d), d.p_l2_sq());
            ensure(tv <= prev_tv + 1e-12 && l2 <= prev_l2 + 1e-12, || {
                format!("distance increased at p={} a={} n={n}", p.get(), a.value())
            })?;
            ensure(l2_lower_bound(&mu, p, n) <= l2 + 1e-9, || format!("l2 lower bound exceeds exact at n={n}"))?;
            (prev_tv, prev_l2) = (tv, l2);
            ev.step();
        }
    }
    Ok("norm ordering, Cauchy-Schwarz, monotonicity, l2 floor".into())
}

fn check_mixing_times(level: Level, rng: &mut SeededRng) -> CheckResult {
    let mut cases = 0;
    for _ in 0..level.pick(6, 40) {
        let mu = random_law(rng);
        let p = random_prime(rng, 11, 1500);
        let a = random_nonzero(rng, p);
        if lib(mult_order(a, p))? < 3 {
            continue;
        }
        let delta: f64 = rng.gen_range(0.05..0.9);
        let opts = MixingOptions { ceiling: 200_000, ..MixingOptions::default() };
        let t_tv = lib(mixing_time(&mu, p, a, 1.0, delta, &opts))?;
        let t2 = lib(mixing_time(&mu, p, a, 2.0, delta, &opts))?;
        let t2sq = lib(mixing_time(&mu, p, a, 2.0, delta * delta, &opts))?;
        ensure(t_tv.t_mix <= t2.t_mix, || format!("T({delta}) > T_2({delta}) at p={}", p.get()))?;
        for q in [1.0, 2.0, 4.0, f64::INFINITY] {
            let tq = if q == 1.0 { t_tv.t_mix } else { lib(mixing_time(&mu, p, a, q, delta, &opts))?.t_mix };
            ensure(tq <= 2 * t2sq.t_mix, || format!("T_{q}({delta}) = {tq} > 2 T_2(delta^2) = {}", 2 * t2sq.t_mix))?;
        }
        let d = lib(evolve_direct(&mu, p, a, t2.t_mix, Residue::ZERO, &Budget::default()))?;
        let at = lib(distance(&d, 2.0))?;
        ensure(at <= delta + 1e-12, || "T_2 witness not within delta".into())?;
        cases += 1;
    }
    Ok(format!("{cases} instances"))
}

fn check_self_similarity(level: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..level.pick(8, 60) {
        let mu = random_law(rng);
        let p = random_prime(rng, 5, level.pick(800, 4000));
        let a = random_nonzero(rng, p);
        let (n, m, k) = (rng.gen_range(0..20), rng.gen_range(0..10), rng.gen_range(1..4));
        let rep = lib(self_similarity_suite(&mu, p, a, n, m, k, &Budget::default()))?;
        let failure = rep.failures().next().map(|f| format!("{} fails: {f:?}", f.name));
        if let Some(msg) = failure {
            return Err(format!("{msg} at p={} a={} n={n} m={m} k={k}", p.get(), a.value()));
        }
    }
    Ok("identity and decay inequalities".into())
}

fn check_phi_bound(level: Level, rng: &mut SeededRng) -> CheckResult {
    let mut worst = f64::INFINITY;
    for _ in 0..level.pick(10, 50) {
        let mu = random_law(rng);
        let p = random_prime(rng, 3, 3000);
        let r = lib(phi_bound_check(&mu, p))?;
        worst = worst.min(r.worst_slack);
        ensure(r.holds, || format!("{mu} p={}: slack {} at t={}", p.get(), r.worst_slack, r.worst_t))?;
    }
    Ok(format!("minimal slack {worst:.3e}"))
}

fn check_entropy_bound(level: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..level.pick(4, 20) {
        let mu = random_law(rng);
        let p = random_prime(rng, 10_000, level.pick(20_000, 200_000));
        let a = random_nonzero(rng, p);
        let theta = rng.gen_range(0.2..1.5);
        let (n, bound) = lib(ent_lower_bound(&mu, p, theta))?;
        let tv = total_variation(&lib(evolve_direct(&mu, p, a, n, Residue::ZERO, &Budget::default()))?);
        ensure(bound <= 1.0 && tv + 1e-12 >= bound, || format!("TV {tv} below bound {bound} at p={} n={n}", p.get()))?;
    }
    Ok("exact TV dominates the bound".into())
}

fn check_support(level: Level, rng: &mut SeededRng) -> CheckResult {
    for _ in 0..level.pick(10, 40) {
        let mu = random_law(rng);
        let p = random_prime(rng, 5, 3000);
        let a = random_nonzero(rng, p);
        let trace = lib(support_evolution(&mu, p, a, 10_000, &Budget::default()))?;
        let s = mu.support_size() as f64;
        for (n, &size) in trace.sizes.iter().enumerate() {
            ensure(size as f64 <= s.powi(n as i32), || format!("|S_{n}| = {size} > |Supp|^{n}"))?;
        }
        if let Some(d) = trace.diameter {
            let opts = MixingOptions { ceiling: 1_000_000, ..MixingOptions::default() };
            let t2 = lib(mixing_time(&mu, p, a, 2.0, 1.0, &opts))?.t_mix;
            ensure(d <= 2 * t2 + 1, || format!("D = {d} > 2 T_2(1) + 1 = {}", 2 * t2 + 1))?;
        }
    }
    for p in [8191u64, 131_071] {
        let trace = lib(support_evolution(&StepLaw::default(), pm(p), res(2, pm(p)), 40, &Budget::default()))?;
        for (n, &size) in trace.sizes.iter().enumerate() {
            ensure(size as u128 <= 1u128 << (n + 1), || format!("a = 2, p = {p}: |S_{n}| = {size}"))?;
        }
    }
    Ok("support growth, diameter bound".into())
}

fn check_sweep_determinism(level: Level, _: &mut SeededRng) -> CheckResult {
    let mut cfg = SweepConfig::new(StepLaw::uniform(&[0, 1]).expect("law"), 1000, level.pick(2000, 20_000));
    cfg.prime_sample = Some(level.pick(3, 6));
    cfg.a = ASelection::Sample(4);
    cfg.grid = NGrid::default();
    cfg.seed = 99;
    let one = lib(crate::dist::cutoff_sweep(&cfg))?.to_csv();
    cfg.workers = Some(1);
    let two = lib(crate::dist::cutoff_sweep(&cfg))?.to_csv();
    ensure(one == two, || "sweep CSV differs between runs".into())?;
    ensure(one.starts_with(crate::dist::sweep::SWEEP_HEADER), || "bad sweep header".into())?;
    Ok(format!("{} bytes identical", one.len()))
}

fn check_root_counts(level: Level, rng: &mut SeededRng) -> CheckResult {
    let primes = primes_up_to(1000);
    for _ in 0..level.pick(60, 400) {
        let p = pm(*primes.choose(rng).expect("primes"));
        let deg = rng.gen_range(1..=30);
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
        let q = ZPoly::from_i64(&c);
        let rc = lib(count_roots_np(&q, p))?;
        let qb = q.reduce_mod(p);
        if qb.is_zero() {
            ensure(rc.vanishing && rc.count == p.get(), || "vanishing convention".into())?;
            continue;
        }
        let brute = (0..p.get()).filter(|&x| qb.eval(x) == 0).count() as u64;
        ensure(rc.count == brute, || format!("N_{}({q}) = {} but {brute} roots", p.get(), rc.count))?;
        let adm = lib(count_admissible_roots(&q, p, rng.gen_range(0..10)))?.count;
        ensure(adm <= rc.count && rc.count <= q.degree().unwrap_or(0) as u64, || "0 <= adm <= N_p <= deg".into())?;
        let c2: Vec<i64> = (0..rng.gen_range(2..8)).map(|_| rng.gen_range(-5..=5)).collect();
        let q2 = ZPoly::from_i64(&c2);
        if q2.reduce_mod(p).is_zero() {
            continue;
        }
        let n2 = lib(count_roots_np(&q2, p))?.count;
        let n12 = lib(count_roots_np(&q.mul(&q2), p))?.count;
        ensure(n12 <= rc.count + n2, || "N_p not subadditive".into())?;
        if lib(fp_gcd(&qb, &q2.reduce_mod(p)))?.degree() == Some(0) {
            ensure(n12 == rc.count + n2, || "N_p not additive on coprime factors".into())?;
        }
    }
    Ok("exhaustive agreement, subadditivity, admissible bounds".into())
}

fn check_cyclotomics(level: Level, rng: &mut SeededRng) -> CheckResult {
    for k in 1..=level.pick(60u64, 300) {
        let mut total = 0;
        for d in (1..=k).filter(|d| k % d == 0) {
            total += cyclotomic_poly(d).degree().unwrap_or(0) as u64;
        }
        ensure(total == k, || format!("sum of deg Phi_d over d | {k} is {total}"))?;
        let xk = ZPoly::monomial(k as usize).sub(&ZPoly::one());
        ensure(xk.div_exact(&cyclotomic_poly(k)).is_some(), || format!("Phi_{k} does not divide x^{k} - 1"))?;
        ensure(cyclotomic_poly(k).degree() == Some(euler_phi(k) as usize), || format!("deg Phi_{k}"))?;
    }
    for _ in 0..level.pick(20, 100) {
        let base: Vec<i64> = (0..rng.gen_range(1..8)).map(|_| rng.gen_range(-3..=3)).collect();
        let mut p = ZPoly::from_i64(&base);
        if p.is_zero() {
            continue;
        }
        for _ in 0..rng.gen_range(0..4) {
            p = p.mul(&cyclotomic_poly(rng.gen_range(1..40)));
        }
        p = p.mul(&ZPoly::monomial(rng.gen_range(0..3)));
        let s = lib(strip_cyclotomic(&p))?;
        ensure(s.phi.mul(&s.reduced) == p, || format!("phi * reduced != {p}"))?;
        let again = lib(strip_cyclotomic(&s.reduced))?;
        ensure(again.phi == ZPoly::one(), || format!("re-stripping {} removed {}", s.reduced, again.phi))?;
        let m = lib(mahler_measure(&p))?;
        let mr = lib(mahler_measure(&s.reduced))?;
        ensure((m - mr).abs() <= 1e-6 * m, || format!("M(P) = {m} but M(reduced) = {mr} for {p}"))?;
    }
    Ok("cyclotomic degrees, divisibility, stripping".into())
}

fn check_mahler(level: Level, rng: &mut SeededRng) -> CheckResult {
    for k in 1..=30 {
        let m = lib(mahler_measure(&cyclotomic_poly(k)))?;
        ensure((m - 1.0).abs() <= 1e-8, || format!("M(Phi_{k}) = {m}"))?;
    }
    let golden = lib(mahler_measure(&ZPoly::from_i64(&[-1, -1, 1])))?;
    ensure((golden - 1.618_033_988_749_895).abs() <= 1e-8, || format!("M(x^2 - x - 1) = {golden}"))?;
    let mu = StepLaw::uniform(&[0, 1]).expect("law");
    for _ in 0..level.pick(15, 50) {
        let (na, nb) = (rng.gen_range(2..60), rng.gen_range(2..60));
        let a = difference_walk_poly(&mu, na, rng);
        let b = difference_walk_poly(&mu, nb, rng);
        if a.degree().unwrap_or(0) == 0 || b.degree().unwrap_or(0) == 0 {
            continue;
        }
        let prod = lib(mahler_measure(&a.mul(&b)))?;
        let sep = lib(mahler_measure(&a))? * lib(mahler_measure(&b))?;
        ensure((prod - sep).abs() <= 1e-6 * prod, || format!("M(ab) = {prod} vs M(a)M(b) = {sep}"))?;
    }
    for _ in 0..level.pick(20, 100) {
        let n = rng.gen_range(2..=200);
        let p = difference_walk_poly(&mu, n, rng);
        if p.is_zero() {
            continue;
        }
        let m = lib(mahler_measure(&p))?;
        let bound = 2.0 * mu.height() as f64 * (n as f64).sqrt();
        ensure(m <= bound, || format!("M = {m} > 2 H sqrt(n) = {bound} at n = {n}"))?;
    }
    Ok("cyclotomic measures, golden ratio, multiplicativity, height bound".into())
}

fn check_identity(level: Level, _: &mut SeededRng) -> CheckResult {
    let mut worst = 0.0f64;
    let mut count = 0;
    for p in [5u64, 7, 11, 31] {
        for mu in laws() {
            for n in 0..=level.pick(3, 5) {
                let r = lib(identity_check_exact(&mu, pm(p), n, &Budget::default()))?;
                worst = worst.max(r.discrepancy);
                ensure(r.passed, || format!("p={p} n={n} {mu}: lhs {} rhs {}", r.lhs, r.rhs))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, worst discrepancy {worst:.2e}"))
}

fn check_prime_averages(level: Level, _: &mut SeededRng) -> CheckResult {
    let hi = level.pick(100_000u64, 1_000_000);
    let lo = 10_000;
    let sieve = primes_up_to(hi).into_iter().filter(|&p| p >= lo).count();
    let a = ZPoly::from_i64(&[1, 0, 1]);
    let b = ZPoly::from_i64(&[-2, 0, 0, 1]);
    let ma = lib(weighted_prime_average(&a, lo, hi))?;
    let mb = lib(weighted_prime_average(&b, lo, hi))?;
    let mab = lib(weighted_prime_average(&a.mul(&b), lo, hi))?;
    ensure(ma.prime_count == sieve, || format!("prime_count {} vs sieve {sieve}", ma.prime_count))?;
    ensure((mab.weighted_mean - ma.weighted_mean - mb.weighted_mean).abs() <= 1e-12, || "means do not add".into())?;
    ensure((0.0..=2.0).contains(&ma.weighted_mean), || "mean outside [0, deg]".into())?;
    for (ks, m) in [(vec![3u64, 4], 2.0), (vec![1, 3, 4], 3.0), (vec![5, 8, 12], 3.0)] {
        let q = ZPoly::product(ks.iter().map(|&k| cyclotomic_poly(k)).collect::<Vec<_>>().iter());
        let avg = lib(weighted_prime_average(&q, lo, hi))?;
        ensure((avg.weighted_mean - m).abs() <= 0.1 * m, || format!("Phi product {ks:?}: mean {}", avg.weighted_mean))?;
    }
    let q = ZPoly::from_i64(&[6, 0, 12, 18]);
    let ex = lib(weighted_prime_average(&q, 2, 100))?;
    ensure(ex.excluded == vec![2, 3], || format!("excluded {:?}", ex.excluded))?;
    Ok(format!("window [{lo}, {hi}], {sieve} primes"))
}

fn check_streams(_: Level, _: &mut SeededRng) -> CheckResult {
    let root = SeededRng::new(0);
    let mut seen = std::collections::HashSet::new();
    for p in 0..64u64 {
        for a in 0..64u64 {
            let mut s = root.substream(&[p, a]);
            let prefix = [s.next_u64(), s.next_u64(), s.next_u64(), s.next_u64()];
            ensure(seen.insert(prefix), || format!("substream ({p}, {a}) repeats a prefix"))?;
        }
    }
    Ok("4096 distinct substream prefixes".into())
}

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("modfield", "mul_mod matches 128-bit multiply", check_mul_mod),
    ("modfield", "multiplicative orders", check_orders),
    ("modfield", "primality and sieving", check_primality),
    ("modfield", "fractional representative", check_frac_rep),
    ("dist", "evolution matches enumeration", check_oracle_equivalence),
    ("dist", "conservation of mass", check_conservation),
    ("dist", "Fourier profile and Parseval", check_fourier),
    ("dist", "entropies and difference law", check_entropies),
    ("dist", "distance relations", check_distance_relations),
    ("dist", "mixing-time comparisons", check_mixing_times),
    ("dist", "self-similarity suite", check_self_similarity),
    ("dist", "characteristic function bound", check_phi_bound),
    ("dist", "entropy lower bound", check_entropy_bound),
    ("dist", "support and diameter", check_support),
    ("dist", "sweep determinism", check_sweep_determinism),
    ("poly", "root counts", check_root_counts),
    ("poly", "cyclotomic stripping", check_cyclotomics),
    ("poly", "Mahler measure", check_mahler),
    ("chebotarev", "root-counting identity", check_identity),
    ("chebotarev", "prime-window averages", check_prime_averages),
    ("harness", "substream independence", check_streams),
];

/// Runs every check, each from its own seeded stream.
pub fn run_verify(level: Level) -> VerifyReport {
    let root = SeededRng::new(0x5eed);
    let checks = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &(module, name, f))| {
            let mut rng = root.substream(&[i as u64]);
            let (passed, detail) = match f(level, &mut rng) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            log::info!("{} {module}: {name}: {detail}", if passed { "PASS" } else { "FAIL" });
            CheckOutcome { module, name, passed, detail }
        })
        .collect();
    VerifyReport { level, checks }
}

//! End-to-end acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line per criterion
//! straight to the process stderr, so the lines show up even when output is captured.

use affine_mix::chebotarev::{identity_check_exact, weighted_prime_average};
use affine_mix::dist::{
    cutoff_sweep, ent_lower_bound, evolve_direct, fourier_profile, konyagin_survey, l2_distance, l2_lower_bound,
    mixing_time, phi_bound_check, self_similarity_suite, support_evolution, total_variation, ASelection, Budget,
    Evolver, MixingOptions, NGrid, OrderFloor, StepLaw, SweepConfig,
};
use affine_mix::harness::SeededRng;
use affine_mix::modfield::{frac_rep, mult_order, primes_up_to, PrimeModulus, Residue};
use affine_mix::poly::{cyclotomic_poly, difference_walk_poly, mahler_measure, ZPoly};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use std::io::Write;
use std::time::{Duration, Instant};

fn report(id: u32, title: &str, passed: bool, elapsed: Duration, detail: &str) -> bool {
    let tag = if passed { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] criterion {id}: {title} ({:.1}s) {detail}\n", elapsed.as_secs_f64());
    let _ = std::io::stderr().write_all(line.as_bytes());
    passed
}

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn res(a: u64, p: PrimeModulus) -> Residue {
    Residue::new(a, p).unwrap()
}

fn laws() -> Vec<StepLaw> {
    vec![
        StepLaw::uniform(&[0, 1]).unwrap(),
        StepLaw::uniform(&[-1, 0, 1]).unwrap(),
        StepLaw::new(vec![(0, 0.25), (1, 0.75)]).unwrap(),
    ]
}

fn shannon(mu: &StepLaw) -> f64 {
    -mu.atoms().iter().map(|(_, w)| w * w.ln()).sum::<f64>()
}

fn renyi2(mu: &StepLaw) -> f64 {
    -mu.atoms().iter().map(|(_, w)| w * w).sum::<f64>().ln()
}

/// Laws of `x_1, ..., x_depth` by walking every trajectory of the chain. Weights are
/// `numerator / denominator` per step, so each law is accumulated exactly in integers and
/// divided once at the end.
fn enumerate_trajectories(atoms: &[(i64, u128)], denom: u128, p: u64, a: u64, depth: usize) -> Vec<Vec<f64>> {
    fn walk(atoms: &[(i64, u128)], p: u64, a: u64, x: u64, w: u128, d: usize, counts: &mut [Vec<u128>]) {
        if d == counts.len() {
            return;
        }
        for &(b, wb) in atoms {
            let y = ((a * x) as i64 + b).rem_euclid(p as i64) as u64;
            counts[d][y as usize] += w * wb;
            walk(atoms, p, a, y, w * wb, d + 1, counts);
        }
    }
    let mut counts = vec![vec![0u128; p as usize]; depth + 1];
    counts[0][0] = 1;
    walk(atoms, p, a, 0, 1, 1, &mut counts);
    counts
        .iter()
        .enumerate()
        .map(|(n, row)| row.iter().map(|&c| c as f64 / (denom as f64).powi(n as i32)).collect())
        .collect()
}

#[test]
fn criterion_1_chain_matches_trajectory_enumeration() {
    let start = Instant::now();
    let budget = Budget::default();
    let mut worst = 0.0f64;
    let mut instances = 0usize;
    let exact: [(&[(i64, u128)], u128); 3] = [(&[(0, 1), (1, 1)], 2), (&[(-1, 1), (0, 1), (1, 1)], 3), (&[(0, 1), (1, 3)], 4)];
    for (mu, (atoms, denom)) in laws().into_iter().zip(exact) {
        let depth = (6.0 / (mu.support_size() as f64).log10()).floor() as usize;
        for p in primes_up_to(31) {
            for a in 1..p {
                let oracle = enumerate_trajectories(atoms, denom, p, a, depth);
                let m = pm(p);
                let mut ev = Evolver::new(&mu, m, res(a, m), Residue::ZERO, &budget).unwrap();
                for (n, expected) in oracle.iter().enumerate().skip(1) {
                    ev.advance_to(n as u64);
                    let direct = evolve_direct(&mu, m, res(a, m), n as u64, Residue::ZERO, &budget).unwrap();
                    assert_eq!(direct.probs(), ev.current().probs());
                    for (x, (&got, &want)) in direct.probs().iter().zip(expected).enumerate() {
                        let err = (got - want).abs();
                        assert!(err <= 1e-12, "p={p} a={a} n={n} x={x}: {got} vs {want}");
                        worst = worst.max(err);
                    }
                    instances += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = elapsed.as_secs() <= 60;
    let detail = format!("{instances} (mu, p, a, n) laws, worst entry error {worst:.1e}");
    assert!(report(1, "chain oracle equivalence", ok, elapsed, &detail));
}

#[test]
fn criterion_2_fourier_profile_consistency() {
    let start = Instant::now();
    let mut rng = SeededRng::new(2);
    let primes = primes_up_to(10_000);
    let budget = Budget::default();
    let (mut worst_fft, mut worst_dft, mut worst_parseval) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let p = pm(primes[rng.gen_range(1..primes.len())]);
        let a = res(rng.gen_range(1..p.get()), p);
        let n = rng.gen_range(1..=200);
        let mu = &laws()[rng.gen_range(0..3)];
        let profile = fourier_profile(mu, p, a, n).unwrap();
        let law = evolve_direct(mu, p, a, n, Residue::ZERO, &budget).unwrap();
        let fft = law.fourier_transform();
        for xi in 0..p.len() {
            worst_fft = worst_fft.max((profile.value(xi) - fft[xi]).norm());
        }
        // a naive transform at a handful of frequencies guards the FFT itself
        for _ in 0..8 {
            let xi = rng.gen_range(0..p.get());
            let naive: Complex64 = law
                .probs()
                .iter()
                .enumerate()
                .map(|(x, &w)| {
                    let t = 2.0 * std::f64::consts::PI * ((xi * x as u64) % p.get()) as f64 / p.get() as f64;
                    Complex64::from_polar(w, t)
                })
                .sum();
            worst_dft = worst_dft.max((profile.value(xi as usize) - naive).norm());
        }
        let energy: f64 = (0..p.len()).map(|xi| profile.abs_sq(xi)).sum();
        let mass = p.get() as f64 * law.probs().iter().map(|w| w * w).sum::<f64>();
        worst_parseval = worst_parseval.max((energy - mass).abs() / mass);
    }
    let elapsed = start.elapsed();
    let ok = worst_fft <= 1e-8 && worst_dft <= 1e-8 && worst_parseval <= 1e-8 && elapsed.as_secs() <= 120;
    let detail = format!("fft {worst_fft:.1e}, naive {worst_dft:.1e}, parseval {worst_parseval:.1e}");
    assert!(report(2, "fourier consistency", ok, elapsed, &detail));
}

/// `sum_a ||mu_a^(n)||^2` and `E #{a : P1(a) = P2(a)}` by brute force over coefficient pairs.
fn identity_by_brute_force(mu: &StepLaw, p: u64, n: usize) -> (f64, f64) {
    let s = mu.support_size();
    let total = s.pow(n as u32);
    let vectors: Vec<(Vec<i64>, f64)> = (0..total)
        .map(|mut code| {
            let mut coeffs = Vec::with_capacity(n);
            let mut w = 1.0;
            for _ in 0..n {
                let (b, wb) = mu.atoms()[code % s];
                coeffs.push(b);
                w *= wb;
                code /= s;
            }
            (coeffs, w)
        })
        .collect();
    let eval = |c: &[i64], a: u64| c.iter().fold(0i64, |acc, &b| (acc * a as i64 + b).rem_euclid(p as i64));
    let mut lhs = 0.0;
    for a in 0..p {
        let mut law = vec![0.0; p as usize];
        for (c, w) in &vectors {
            law[eval(c, a) as usize] += w;
        }
        lhs += law.iter().map(|w| w * w).sum::<f64>();
    }
    let mut rhs = 0.0;
    for (c1, w1) in &vectors {
        for (c2, w2) in &vectors {
            let hits = (0..p).filter(|&a| eval(c1, a) == eval(c2, a)).count();
            rhs += w1 * w2 * hits as f64;
        }
    }
    (lhs, rhs)
}

#[test]
fn criterion_3_identity_exact() {
    let start = Instant::now();
    let budget = Budget::default();
    let mut feasible = 0;
    let mut worst = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for mu in laws() {
        for p in [5u64, 7, 11, 31] {
            for n in 1..=5u64 {
                let rep = identity_check_exact(&mu, pm(p), n, &budget).unwrap();
                worst = worst.max(rep.discrepancy);
                feasible += 1;
                if p <= 11 && n <= 4 {
                    let (lhs, rhs) = identity_by_brute_force(&mu, p, n as usize);
                    worst_oracle = worst_oracle.max((lhs - rep.lhs).abs()).max((rhs - rep.rhs).abs());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = feasible >= 20 && worst <= 1e-10 && worst_oracle <= 1e-10 && elapsed.as_secs() <= 120;
    let detail = format!("{feasible} instances, discrepancy {worst:.1e}, brute-force oracle {worst_oracle:.1e}");
    assert!(report(3, "averaged-norm identity", ok, elapsed, &detail));
}

fn random_law(rng: &mut SeededRng) -> StepLaw {
    loop {
        let size = rng.gen_range(2..=4);
        let mut values: Vec<i64> = (-3..=3).collect();
        let mut atoms = Vec::new();
        for _ in 0..size {
            let v = values.swap_remove(rng.gen_range(0..values.len()));
            atoms.push((v, rng.gen_range(1..=6) as f64));
        }
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if let Ok(mu) = StepLaw::new(atoms.into_iter().map(|(v, w)| (v, w / total)).collect()) {
            return mu;
        }
    }
}

#[test]
fn criterion_4_inequality_suite() {
    let start = Instant::now();
    let budget = Budget::default();
    let opts = MixingOptions::default();
    let mut rng = SeededRng::new(4);
    let primes: Vec<u64> = primes_up_to(10_000).into_iter().filter(|&p| p >= 11).collect();
    let mut violations: Vec<String> = Vec::new();
    let mut tq_instances = 0;
    for instance in 0..200 {
        let p = pm(primes[rng.gen_range(0..primes.len())]);
        let a = res(rng.gen_range(1..p.get()), p);
        let mu = random_law(&mut rng);
        let n = rng.gen_range(1..=30);
        let m = rng.gen_range(1..=20);
        let k = rng.gen_range(1..=4);
        let tag = format!("#{instance} p={p} a={a} mu={mu}");

        let suite = self_similarity_suite(&mu, p, a, n, m, k, &budget).unwrap();
        for c in suite.failures() {
            violations.push(format!("{tag}: {} slack {}", c.name, c.worst_slack));
        }
        if !phi_bound_check(&mu, p).unwrap().holds {
            violations.push(format!("{tag}: claim0"));
        }

        let h2 = renyi2(&mu);
        let theta = (0.45 * (p.get() as f64).ln().sqrt()).min(1.0);
        let (n_ent, bound) = ent_lower_bound(&mu, p, theta).unwrap();
        let mut ev = Evolver::new(&mu, p, a, Residue::ZERO, &budget).unwrap();
        let (mut prev_tv, mut prev_l2) = (f64::INFINITY, f64::INFINITY);
        for step in 0..=40u64 {
            ev.advance_to(step);
            let d = ev.current();
            let tv = total_variation(d);
            let l2 = l2_distance(d).p_l2_sq;
            if (2.0 * tv).powi(2) > l2 * (1.0 + 1e-12) + 1e-15 {
                violations.push(format!("{tag} n={step}: cauchy-schwarz"));
            }
            if tv > prev_tv + 1e-12 || l2 > prev_l2 + 1e-12 {
                violations.push(format!("{tag} n={step}: monotonicity"));
            }
            let lb = (p.get() as f64 * (-(step as f64) * h2).exp() - 1.0).max(0.0);
            if (lb - l2_lower_bound(&mu, p, step)).abs() > 1e-9 * lb.max(1.0) || l2 < lb * (1.0 - 1e-12) {
                violations.push(format!("{tag} n={step}: l2 lower bound"));
            }
            if step == n_ent && tv < bound - 1e-12 {
                violations.push(format!("{tag}: ent-b tv {tv} < {bound}"));
            }
            (prev_tv, prev_l2) = (tv, l2);
        }
        if n_ent > 40 {
            let tv = total_variation(&evolve_direct(&mu, p, a, n_ent, Residue::ZERO, &budget).unwrap());
            if tv < bound - 1e-12 {
                violations.push(format!("{tag}: ent-b tv {tv} < {bound}"));
            }
        }

        // mixing times need enough orbit length to finish within the forward-scan ceiling
        if mult_order(a, p).unwrap() >= 30 {
            tq_instances += 1;
            for delta in [0.25, 0.5] {
                let t2_sq = mixing_time(&mu, p, a, 2.0, delta * delta, &opts).unwrap().t_mix;
                let t2 = mixing_time(&mu, p, a, 2.0, delta, &opts).unwrap().t_mix;
                let mut prev = 0;
                for q in [1.0, 2.0, 4.0, f64::INFINITY] {
                    let tq = mixing_time(&mu, p, a, q, delta, &opts).unwrap().t_mix;
                    if tq > 2 * t2_sq {
                        violations.push(format!("{tag} q={q} delta={delta}: tq {tq} > 2 * {t2_sq}"));
                    }
                    if q > 1.0 && tq < prev {
                        violations.push(format!("{tag} q={q} delta={delta}: T_q decreased"));
                    }
                    prev = tq;
                }
                let t_tv = mixing_time(&mu, p, a, 1.0, delta, &opts).unwrap().t_mix;
                if t_tv > t2 {
                    violations.push(format!("{tag} delta={delta}: T {t_tv} > T_2 {t2}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    for v in violations.iter().take(10) {
        let _ = writeln!(std::io::stderr(), "  violation: {v}");
    }
    let ok = violations.is_empty() && elapsed.as_secs() <= 300;
    let detail = format!("200 instances ({tq_instances} with mixing-time checks), {} violations", violations.len());
    assert!(report(4, "inequality suite", ok, elapsed, &detail));
}

fn cutoff_config(workers: Option<usize>) -> SweepConfig {
    let mut cfg = SweepConfig::new(StepLaw::uniform(&[0, 1]).unwrap(), 50_000, 100_000);
    cfg.prime_sample = Some(20);
    cfg.a = ASelection::Sample(30);
    cfg.grid = NGrid::parse_rules("0.5:H:floor,5:H2:ceil").unwrap();
    cfg.seed = 5;
    cfg.workers = workers;
    cfg
}

#[test]
fn criteria_5_6_11_cutoff_diameter_determinism() {
    let start = Instant::now();
    let cfg = cutoff_config(None);
    let mu = cfg.mu.clone();
    let outcome = cutoff_sweep(&cfg).unwrap();
    let (h, h2) = (shannon(&mu), renyi2(&mu));
    let mut cells = std::collections::BTreeMap::new();
    for r in &outcome.records {
        cells.entry((r.p, r.a)).or_insert_with(Vec::new).push(r);
    }
    let primes: std::collections::BTreeSet<u64> = cells.keys().map(|&(p, _)| p).collect();
    let mut good = 0;
    for (&(p, _), rows) in &cells {
        let lp = (p as f64).ln();
        let n_lo = (0.5 * lp / h).floor() as u64;
        let n_hi = (5.0 * lp / h2).ceil() as u64;
        let early = rows.iter().find(|r| r.n == n_lo).expect("early row");
        let late = rows.iter().find(|r| r.n == n_hi).expect("late row");
        if early.tv >= 0.9 && late.tv <= 0.1 {
            good += 1;
        }
    }
    let frac = good as f64 / cells.len().max(1) as f64;
    let shape_ok = primes.len() == 20 && cells.len() == 600 && outcome.failures.is_empty();
    let elapsed5 = start.elapsed();
    let ok5 = shape_ok && frac >= 0.9 && elapsed5.as_secs() <= 600;
    let detail = format!("{good}/{} (p, a) cells show the cut-off ({:.1}%)", cells.len(), 100.0 * frac);
    let pass5 = report(5, "cut-off profile", ok5, elapsed5, &detail);

    let start6 = Instant::now();
    let budget = Budget::default();
    let opts = MixingOptions::default();
    let keys: Vec<(u64, u64)> = cells.keys().copied().collect();
    let outcomes: Vec<Option<bool>> = keys
        .par_iter()
        .map(|&(p, a)| {
            let p = pm(p);
            let a = res(a, p);
            let d = support_evolution(&mu, p, a, 400, &budget).unwrap().diameter?;
            let t2 = mixing_time(&mu, p, a, 2.0, 1.0, &opts).unwrap().t_mix;
            Some(d <= 2 * t2 + 1)
        })
        .collect();
    let reached = outcomes.iter().flatten().count();
    let held = outcomes.iter().flatten().filter(|&&h| h).count();
    let ok6 = reached > 0 && held == reached;
    let pass6 = report(6, "diameter bound", ok6, start6.elapsed(), &format!("{held}/{reached} reached diameters"));

    let start11 = Instant::now();
    let first = outcome.to_csv();
    let again = cutoff_sweep(&cutoff_config(None)).unwrap().to_csv();
    let serial = cutoff_sweep(&cutoff_config(Some(1))).unwrap().to_csv();
    let ok11 = first == again && first == serial;
    let detail = format!("{} bytes, repeat and single-worker runs identical: {ok11}", first.len());
    let pass11 = report(11, "determinism", ok11, start11.elapsed(), &detail);

    assert!(pass5 && pass6 && pass11);
}

#[test]
fn criterion_7_exceptional_multiplier() {
    let start = Instant::now();
    let mu = StepLaw::uniform(&[-1, 0, 1]).unwrap();
    let budget = Budget::default();
    let mut ok = true;
    let mut details = Vec::new();
    for p in [8191u64, 131_071] {
        let p = pm(p);
        let a = res(2, p);
        let n_late = (0.9 * (p.get() as f64).ln() / 2f64.ln()).floor() as u64;
        let mut ev = Evolver::new(&mu, p, a, Residue::ZERO, &budget).unwrap();
        let trace = support_evolution(&mu, p, a, n_late, &budget).unwrap();
        for n in 0..=n_late {
            ev.advance_to(n);
            let size = ev.current().support_size() as u64;
            ok &= size <= 1 << (n + 1);
            ok &= trace.sizes.get(n as usize).is_none_or(|&s| s == size);
        }
        let tv = total_variation(ev.current());
        ok &= tv >= 0.5;
        details.push(format!("p={p} n={n_late} tv={tv:.4}"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() <= 60;
    assert!(report(7, "exceptional multiplier", ok, elapsed, &details.join(", ")));
}

#[test]
fn criterion_8_prime_window_averages() {
    let start = Instant::now();
    let cases: [(&str, &[&str], f64, f64); 4] = [
        ("x^2+1", &["1,0,1"], 1.0, 0.05),
        ("x^3-2", &["-2,0,0,1"], 1.0, 0.05),
        ("(x^2+1)(x^2-3)", &["1,0,1", "-3,0,1"], 2.0, 0.2),
        ("(x^2+1)(x^2-3)(x^3-2)", &["1,0,1", "-3,0,1", "-2,0,0,1"], 3.0, 0.3),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, factors, target, tol) in cases {
        let factors: Vec<ZPoly> = factors.iter().map(|s| s.parse().unwrap()).collect();
        let q = ZPoly::product(&factors);
        let avg = weighted_prime_average(&q, 10_000, 1_000_000).unwrap();
        ok &= (avg.weighted_mean - target).abs() <= tol;
        details.push(format!("{name}={:.4}", avg.weighted_mean));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() <= 180;
    assert!(report(8, "prime-window averages", ok, elapsed, &details.join(", ")));
}

fn random_factor(rng: &mut SeededRng) -> ZPoly {
    let deg = rng.gen_range(1..=5);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-5..=5);
    }
    ZPoly::from_i64(&c)
}

#[test]
fn criterion_9_mahler_suite() {
    let start = Instant::now();
    let worst_cyc = (1..=30u64)
        .map(|k| (mahler_measure(&cyclotomic_poly(k)).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let golden_err = (mahler_measure(&ZPoly::from_i64(&[-1, -1, 1])).unwrap() - golden).abs();
    let golden_paper = (mahler_measure(&ZPoly::from_i64(&[-1, -1, 1])).unwrap() - 1.6180339887).abs();

    let mut rng = SeededRng::new(9);
    let mut worst_mult = 0.0f64;
    for _ in 0..50 {
        let factors: Vec<ZPoly> = (0..rng.gen_range(2..=4)).map(|_| random_factor(&mut rng)).collect();
        let whole = mahler_measure(&ZPoly::product(&factors)).unwrap();
        let parts: f64 = factors.iter().map(|f| mahler_measure(f).unwrap()).product();
        worst_mult = worst_mult.max((whole - parts).abs() / parts);
    }

    let mut bound_violations = 0;
    for _ in 0..100 {
        let mu = &laws()[rng.gen_range(0..3)];
        let n = rng.gen_range(1..=200usize);
        let poly = difference_walk_poly(mu, n, &mut rng);
        if poly.is_zero() {
            continue;
        }
        let h = mu.atoms().iter().map(|(v, _)| v.unsigned_abs()).max().unwrap() as f64;
        let m = mahler_measure(&poly).unwrap();
        let l2 = poly.to_f64().iter().map(|c| c * c).sum::<f64>().sqrt();
        if m > 2.0 * h * (n as f64).sqrt() * (1.0 + 1e-9) || m > l2 * (1.0 + 1e-9) {
            bound_violations += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_cyc <= 1e-8
        && golden_err <= 1e-8
        && golden_paper <= 1e-8
        && worst_mult <= 1e-6
        && bound_violations == 0
        && elapsed.as_secs() <= 60;
    let detail = format!(
        "cyclotomic {worst_cyc:.1e}, golden {golden_err:.1e}, multiplicativity {worst_mult:.1e}, height bound violations {bound_violations}"
    );
    assert!(report(9, "mahler suite", ok, elapsed, &detail));
}

#[test]
fn criterion_10_konyagin_energy() {
    let start = Instant::now();
    let survey = konyagin_survey(10_000, 100_000, 100, 200.0, OrderFloor::LogSquared, 10).unwrap();
    let mut consistent = survey.cases.len() == 100;
    for c in &survey.cases {
        let p = pm(c.p);
        let lp = (c.p as f64).ln();
        let m = (200.0 * lp * lp.ln().powi(4)).ceil() as u64;
        consistent &= c.m == m && c.order_a as f64 >= lp * lp;
        let (x0, a) = (res(c.x0, p), res(c.a, p));
        let mut x = x0;
        let mut energy = 0.0;
        for _ in 0..=m {
            energy += frac_rep(x, p).powi(2);
            x = res(((x.value() as u128 * a.value() as u128) % c.p as u128) as u64, p);
        }
        consistent &= (energy - c.energy).abs() <= 1e-9 * energy;
        consistent &= c.holds == (energy >= 1.0 / (200.0 * lp.ln()));
    }
    let elapsed = start.elapsed();
    let ok = consistent && elapsed.as_secs() <= 60;
    let detail = format!(
        "{} cases, {} violations, best constant {:.3e}",
        survey.cases.len(),
        survey.violations,
        survey.best_constant
    );
    assert!(report(10, "konyagin energy", ok, elapsed, &detail));
}

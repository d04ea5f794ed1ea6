//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Oracles here are written independently of the library: tableau counts by
//! corner removal, skew counts by brute-force linear extensions, content sums
//! box by box, Gaussian moments as exact double factorials.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_traits::{One, Pow, Zero};
use youngspec::exact::to_f64;
use youngspec::hermite::hermite_coefficients;
use youngspec::spectra::moment_target;
use youngspec::{
    assemble_matrix, coxeter_audit, dimension_determinant, empirical_moment, enumerate_tableaux,
    eta_zero_lhs, gaussian_raw_moment, hook_data, k2_series, limit_moment, monte_carlo,
    plancherel_moments, ratio_mn, ratio_one_transposition, ratio_two_transpositions,
    sample_coefficients, skew_count, spectrum, staircase_lhs, BigInt, BigRational,
    DenominatorVariant, LimitParameters, MonteCarloConfig, Partition, SkewShape, StaircaseSpec,
    YoungOrthogonal, DEFAULT_DIMENSION_CAP,
};

type Outcome = Result<String, String>;

const CAP: usize = DEFAULT_DIMENSION_CAP;
const MONTE_CARLO_SEED: u64 = 20_240_601;

fn main() {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, coxeter),
        (2, dimensions),
        (3, transposition_traces),
        (4, character_ratios),
        (5, skew_counts),
        (6, staircase_identities),
        (7, plancherel),
        (8, limit_law),
        (9, per_sample_identities),
        (10, monte_carlo_convergence),
        (11, cli_golden),
    ];
    // criterion numbers on the command line select a subset
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    let mut ran = 0;
    for (n, criterion) in criteria {
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS {detail} ({secs:.2} s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL {detail} ({secs:.2} s)");
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---- oracles ----

/// Partitions of `n` with parts at most `max`, any order.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn conjugate(parts: &[usize]) -> Vec<usize> {
    let width = parts.first().copied().unwrap_or(0);
    (0..width)
        .map(|c| parts.iter().filter(|&&p| p > c).count())
        .collect()
}

/// Standard tableaux counted by removing the box holding the largest entry.
fn syt_count(parts: &[usize], memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if parts.iter().sum::<usize>() <= 1 {
        return 1;
    }
    if let Some(&c) = memo.get(parts) {
        return c;
    }
    let mut total = 0;
    for i in 0..parts.len() {
        if i + 1 == parts.len() || parts[i + 1] < parts[i] {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += syt_count(&smaller, memo);
        }
    }
    memo.insert(parts.to_vec(), total);
    total
}

fn content_sum_boxwise(parts: &[usize]) -> i64 {
    parts
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| j as i64 - i as i64))
        .sum()
}

fn content_sum_binomial(parts: &[usize]) -> i64 {
    let c2 = |x: usize| (x * x.saturating_sub(1) / 2) as i64;
    parts.iter().map(|&l| c2(l)).sum::<i64>() - conjugate(parts).iter().map(|&l| c2(l)).sum::<i64>()
}

/// Linear extensions of the skew diagram, by dynamic programming over the
/// set of already-labelled boxes.
fn skew_linear_extensions(outer: &[usize], inner: &[usize]) -> u64 {
    let inner_at = |i: usize| inner.get(i).copied().unwrap_or(0);
    let mut cells = Vec::new();
    for (i, &len) in outer.iter().enumerate() {
        for j in inner_at(i)..len {
            cells.push((i, j));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let preds: Vec<u32> = cells
        .iter()
        .map(|&(i, j)| {
            let mut m = 0u32;
            if i > 0 {
                if let Some(&k) = index.get(&(i - 1, j)) {
                    m |= 1 << k;
                }
            }
            if j > 0 {
                if let Some(&k) = index.get(&(i, j - 1)) {
                    m |= 1 << k;
                }
            }
            m
        })
        .collect();
    let full = (1usize << cells.len()) - 1;
    let mut ways = vec![0u64; full + 1];
    ways[0] = 1;
    for mask in 0..full {
        if ways[mask] == 0 {
            continue;
        }
        for (k, &p) in preds.iter().enumerate() {
            let bit = 1usize << k;
            if mask & bit == 0 && (p as usize) & mask == p as usize {
                ways[mask | bit] += ways[mask];
            }
        }
    }
    ways[full]
}

/// `E[Z^m]` for a standard Gaussian, exactly.
fn gaussian_moment_exact(m: usize) -> BigInt {
    if m % 2 == 1 {
        return BigInt::zero();
    }
    (1..m).step_by(2).fold(BigInt::one(), |acc, k| acc * k)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

// ---- criteria ----

fn coxeter() -> Outcome {
    let shapes = [
        shape(&[3, 1]),
        shape(&[2, 2]),
        shape(&[5, 2, 1]),
        Partition::staircase(4),
    ];
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in &shapes {
        let audit = coxeter_audit(p, CAP).map_err(|e| e.to_string())?;
        worst = worst.max(audit.max_residual());
        ensure(audit.passes(1e-12), || format!("{p}: {audit:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(10), || {
        format!("took {elapsed:?}, limit 10 s")
    })?;
    Ok(format!("4 shapes, max residual {worst:.2e}"))
}

fn dimensions() -> Outcome {
    let mut memo = HashMap::new();
    let mut shapes = 0;
    for n in 1..=8 {
        let mut square_sum = BigInt::zero();
        for parts in partitions(n, n) {
            let p = shape(&parts);
            let hook = hook_data(&p).dimension;
            let det = dimension_determinant(&p);
            let listed = enumerate_tableaux(&p, CAP)
                .map_err(|e| e.to_string())?
                .len();
            let oracle = syt_count(&parts, &mut memo);
            ensure(
                hook == det && hook == BigInt::from(listed) && hook == BigInt::from(oracle),
                || format!("{p}: hook {hook}, determinant {det}, listed {listed}, oracle {oracle}"),
            )?;
            square_sum += &hook * &hook;
            shapes += 1;
        }
        ensure(square_sum == factorial(n), || {
            format!("n = {n}: sum of squares {square_sum}")
        })?;
    }
    Ok(format!("{shapes} shapes, n <= 8"))
}

fn transposition_traces() -> Outcome {
    let mut checks = 0;
    let mut worst = 0.0f64;
    for n in 2..=8 {
        let pairs = (n * (n - 1) / 2) as i64;
        for parts in partitions(n, n) {
            let p = shape(&parts);
            let boxwise = content_sum_boxwise(&parts);
            let binomial = content_sum_binomial(&parts);
            ensure(boxwise == binomial, || {
                format!("{p}: contents {boxwise} vs {binomial}")
            })?;
            let exact = q(boxwise, pairs);
            let library = ratio_one_transposition(&p).map_err(|e| e.to_string())?;
            ensure(library == exact, || {
                format!("{p}: library ratio {library} vs {exact}")
            })?;
            let rep = YoungOrthogonal::new(&p, CAP).map_err(|e| e.to_string())?;
            let target = to_f64(&exact);
            for k in 1..n {
                let g = rep.generator(k).map_err(|e| e.to_string())?;
                let err = (g.trace() / rep.dim() as f64 - target).abs();
                worst = worst.max(err);
                ensure(err <= 1e-12, || {
                    format!("{p}, k = {k}: trace error {err:.2e}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} generator traces, max error {worst:.2e}"))
}

fn character_ratios() -> Outcome {
    let mut worst = 0.0f64;
    let mut shapes = 0;
    for n in 2..=10 {
        for parts in partitions(n, n) {
            let p = shape(&parts);
            let rep = YoungOrthogonal::new(&p, CAP).map_err(|e| e.to_string())?;
            for r in 1..=2usize {
                if 2 * r > n {
                    continue;
                }
                let mn = ratio_mn(&p, r).map_err(|e| e.to_string())?;
                let closed = if r == 1 {
                    ratio_one_transposition(&p)
                } else {
                    ratio_two_transpositions(&p)
                }
                .map_err(|e| e.to_string())?;
                ensure(mn == closed, || {
                    format!("{p}, r = {r}: recursion {mn} vs closed {closed}")
                })?;
                let word: Vec<usize> = (0..r).map(|i| 2 * i + 1).collect();
                let trace = rep.trace_character(&word).map_err(|e| e.to_string())?;
                let err = (trace - to_f64(&mn)).abs();
                worst = worst.max(err);
                ensure(err <= 1e-10, || {
                    format!("{p}, r = {r}: trace {trace} vs {mn}")
                })?;
            }
            shapes += 1;
        }
    }
    let known = [
        (&[2, 2][..], 1, q(0, 1)),
        (&[2, 2][..], 2, q(1, 1)),
        (&[3, 1][..], 2, q(-1, 3)),
    ];
    for (parts, r, expected) in known {
        let got = ratio_mn(&shape(parts), r).map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("{parts:?}, r = {r}: {got}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{shapes} shapes, n <= 10, max trace error {worst:.2e}"
    ))
}

fn skew_counts() -> Outcome {
    let mut count = 0;
    for size in 0..=12 {
        for outer in partitions(size, size) {
            for inner_size in size.saturating_sub(8)..=size {
                for inner in partitions(inner_size, inner_size) {
                    let fits =
                        inner.len() <= outer.len() && inner.iter().zip(&outer).all(|(b, a)| b <= a);
                    if !fits {
                        continue;
                    }
                    let skew =
                        SkewShape::new(outer.clone(), inner.clone()).map_err(|e| e.to_string())?;
                    let got = skew_count(&skew);
                    let oracle = skew_linear_extensions(&outer, &inner);
                    ensure(got == BigInt::from(oracle), || {
                        format!("{outer:?}/{inner:?}: determinant {got}, enumeration {oracle}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} skew shapes"))
}

fn staircase_identities() -> Outcome {
    let mut checks = 0;
    for k in 1..=4usize {
        for r in 0..=6usize {
            let got = eta_zero_lhs(k, r).map_err(|e| e.to_string())?;
            let expected = BigRational::from_integer(BigInt::from(k).pow(r as u32));
            ensure(got == expected, || {
                format!("eta = 0, K = {k}, r = {r}: {got}")
            })?;
            checks += 1;
        }
    }
    for r in 0..=12usize {
        let got = k2_series(r);
        ensure(
            got == BigRational::from_integer(BigInt::from(2).pow(r as u32)),
            || format!("K = 2 series, r = {r}: {got}"),
        )?;
        checks += 1;
    }
    for k in 1..=3usize {
        let etas: Vec<Vec<usize>> = match k {
            1 => vec![vec![]],
            2 => (0..=2).map(|a| vec![a]).collect(),
            _ => (0..=2)
                .flat_map(|a| (0..=2).map(move |b| vec![a, b]))
                .collect(),
        };
        for eta in etas {
            let spec = StaircaseSpec::new(k, eta.clone()).map_err(|e| e.to_string())?;
            for r in 0..=4usize {
                let got = staircase_lhs(&spec, r, DenominatorVariant::Plain);
                let expected = BigRational::from_integer(BigInt::from(k).pow(r as u32));
                ensure(got == expected, || {
                    format!("K = {k}, eta = {eta:?}, r = {r}: {got}")
                })?;
                if eta.iter().all(|&e| e == 0) {
                    let flat = eta_zero_lhs(k, r).map_err(|e| e.to_string())?;
                    ensure(got == flat, || {
                        format!("K = {k}, r = {r}: {got} vs eta-zero form {flat}")
                    })?;
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact identities"))
}

fn plancherel() -> Outcome {
    let mut memo = HashMap::new();
    for n in 2..=14usize {
        let summary = plancherel_moments(n, n).map_err(|e| e.to_string())?;
        let pairs = (n * (n - 1) / 2) as i64;
        ensure(summary.total_mass.is_one(), || {
            format!("n = {n}: mass {}", summary.total_mass)
        })?;
        ensure(summary.mean.is_zero(), || {
            format!("n = {n}: mean {}", summary.mean)
        })?;
        ensure(summary.variance == q(1, pairs), || {
            format!("n = {n}: variance {}", summary.variance)
        })?;

        let n_fact = factorial(n);
        let (mut mass, mut first, mut second) = (
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        );
        for parts in partitions(n, n) {
            let f = BigInt::from(syt_count(&parts, &mut memo));
            let w = BigRational::new(&f * &f, n_fact.clone());
            let x = q(content_sum_boxwise(&parts), pairs);
            first += &w * &x;
            second += &w * &x * &x;
            mass += w;
        }
        ensure(
            mass.is_one() && first.is_zero() && second == q(1, pairs),
            || format!("n = {n}: oracle mass {mass}, mean {first}, second moment {second}"),
        )?;
    }
    Ok("n = 2..=14 exact".into())
}

fn limit_law() -> Outcome {
    let thetas = [q(-1, 1), q(-1, 2), q(0, 1), q(3, 10), q(1, 1)];
    let zs = [-2.0, 0.0, 1.7];
    let mut worst = 0.0f64;
    for theta in &thetas {
        for &z in &zs {
            let params = LimitParameters::new(theta.clone(), z).map_err(|e| e.to_string())?;
            let t = to_f64(theta);
            for s in 0..=12 {
                let got = limit_moment(s, &params);
                let expected =
                    gaussian_raw_moment(s, t * z, 1.0 - t * t).map_err(|e| e.to_string())?;
                let err = if expected == 0.0 {
                    got.abs()
                } else {
                    ((got - expected) / expected).abs()
                };
                worst = worst.max(err);
                ensure(err <= 1e-9, || {
                    format!("theta = {theta}, z = {z}, s = {s}: {got} vs {expected}")
                })?;
            }
        }
    }
    let coeffs: Vec<Vec<BigRational>> = (0..=10).map(hermite_coefficients).collect();
    for m in 0..=10 {
        for n in 0..=10 {
            let mut inner = BigRational::zero();
            for (i, a) in coeffs[m].iter().enumerate() {
                for (j, b) in coeffs[n].iter().enumerate() {
                    inner += a * b * BigRational::from_integer(gaussian_moment_exact(i + j));
                }
            }
            let expected = if m == n {
                BigRational::new(BigInt::one(), factorial(n))
            } else {
                BigRational::zero()
            };
            ensure(inner == expected, || format!("E[H_{m} H_{n}] = {inner}"))?;
        }
    }
    Ok(format!(
        "max relative moment error {worst:.2e}, orthogonality exact for m, n <= 10"
    ))
}

fn per_sample_identities() -> Outcome {
    let cases = [(Partition::staircase(4), 200u64), (shape(&[5, 2, 1]), 200)];
    let mut worst = [0.0f64; 4];
    for (p, seeds) in &cases {
        let rep = YoungOrthogonal::new(p, CAP).map_err(|e| e.to_string())?;
        let conj_rep = YoungOrthogonal::new(&p.conjugate(), CAP).map_err(|e| e.to_string())?;
        let parts = p.parts();
        let theta = content_sum_boxwise(parts) as f64 / (p.size() * (p.size() - 1) / 2) as f64;
        for seed in 0..*seeds {
            let draw = sample_coefficients(rep.degree(), seed).map_err(|e| e.to_string())?;
            let m = assemble_matrix(&rep, &draw).map_err(|e| e.to_string())?;
            let scale = m.scale();
            let xi = spectrum(&m).map_err(|e| e.to_string())?;
            let f = m.matrix().n();
            let trace: f64 = (0..f).map(|i| m.matrix().get(i, i)).sum();
            let frobenius: f64 = m.matrix().as_slice().iter().map(|x| x * x).sum();
            let eig = xi.eigenvalues();
            let residuals = [
                (empirical_moment(&xi, 1) - theta * draw.scaled_sum()).abs() / scale,
                (eig.iter().sum::<f64>() - trace).abs() / scale,
                (eig.iter().map(|e| e * e).sum::<f64>() - frobenius).abs() / scale,
            ];
            let conj_spectrum = if p.conjugate() == *p {
                eig.to_vec()
            } else {
                let cm = assemble_matrix(&conj_rep, &draw).map_err(|e| e.to_string())?;
                spectrum(&cm).map_err(|e| e.to_string())?.into_eigenvalues()
            };
            let mirror = eig
                .iter()
                .zip(conj_spectrum.iter().rev())
                .map(|(a, b)| (a + b).abs())
                .fold(0.0, f64::max)
                / scale;
            for (w, r) in worst
                .iter_mut()
                .zip(residuals.iter().chain([mirror].iter()))
            {
                *w = w.max(*r);
            }
            ensure(residuals[0] <= 1e-9, || {
                format!(
                    "{p}, seed {seed}: first moment residual {:.2e}",
                    residuals[0]
                )
            })?;
            ensure(residuals[1] <= 1e-8 && residuals[2] <= 1e-8, || {
                format!(
                    "{p}, seed {seed}: trace {:.2e}, squares {:.2e}",
                    residuals[1], residuals[2]
                )
            })?;
            ensure(mirror <= 1e-8, || {
                format!("{p}, seed {seed}: conjugate mirror residual {mirror:.2e}")
            })?;
        }
    }
    Ok(format!(
        "stair:4 and 5,2,1 x 200 seeds; max residuals: first moment {:.1e}, trace {:.1e}, squares {:.1e}, conjugate {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

/// Odd moments of self-conjugate shapes vanish up to roundoff, which leaves a
/// standard error near 1e-17; this floor keeps the 3 SE test meaningful.
const SE_FLOOR: f64 = 1e-12;

fn monte_carlo_convergence() -> Outcome {
    let start = Instant::now();
    let trials = 2000;
    let rep4 = YoungOrthogonal::new(&Partition::staircase(4), CAP).map_err(|e| e.to_string())?;
    let report = monte_carlo(&rep4, &MonteCarloConfig::new(trials, MONTE_CARLO_SEED, 4))
        .map_err(|e| e.to_string())?;
    let rep3 = YoungOrthogonal::new(&Partition::staircase(3), CAP).map_err(|e| e.to_string())?;
    let report3 = monte_carlo(&rep3, &MonteCarloConfig::new(trials, MONTE_CARLO_SEED, 4))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let mut problems = Vec::new();
    ensure(report.theta.is_zero(), || {
        format!("theta = {}", report.theta)
    })?;
    for (s, target) in [(1, 0.0), (2, 1.0), (3, 0.0)] {
        let e = &report.estimates[s];
        if (e.mean - target).abs() > 3.0 * e.standard_error + SE_FLOOR {
            problems.push(format!(
                "m_{s} = {} (se {:.2e}), target {target}",
                e.mean, e.standard_error
            ));
        }
    }
    let m4 = &report.estimates[4];
    if (m4.mean - 3.0).abs() > 0.5 {
        problems.push(format!("m_4 = {} is not within 0.5 of 3", m4.mean));
    }
    let exact4 = moment_target(&rep4, 4).map_err(|e| e.to_string())?.value;
    let cv = &report.conditional_variance;
    if (cv.mean - 1.0).abs() > 3.0 * cv.standard_error + SE_FLOOR {
        problems.push(format!(
            "conditional variance {} (se {:.2e})",
            cv.mean, cv.standard_error
        ));
    }
    if report.ks_distance > 0.08 {
        problems.push(format!("KS {} above 0.08", report.ks_distance));
    }
    if report.ks_distance >= report3.ks_distance {
        problems.push(format!(
            "KS {} not below stair:3 value {}",
            report.ks_distance, report3.ks_distance
        ));
    }
    if elapsed > Duration::from_secs(120) {
        problems.push(format!(
            "runtime {:.1} s over 120 s on {} thread(s)",
            elapsed.as_secs_f64(),
            rayon_threads()
        ));
    }
    let detail = format!(
        "m1 {:.2e}, m2 {:.4} (se {:.1e}), m3 {:.2e}, m4 {:.4} (finite-N target {:.4}), cv {:.4}, KS {:.4} vs stair:3 {:.4}, {} thread(s)",
        report.estimates[1].mean,
        report.estimates[2].mean,
        report.estimates[2].standard_error,
        report.estimates[3].mean,
        m4.mean,
        exact4,
        cv.mean,
        report.ks_distance,
        report3.ks_distance,
        rayon_threads(),
    );
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", problems.join("; ")))
    }
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cli_golden() -> Outcome {
    let failures: Vec<String> = common::GOLDEN_CASES
        .iter()
        .filter_map(|c| common::check_golden(c).err())
        .collect();
    let names: Vec<&str> = common::GOLDEN_CASES.iter().map(|c| c.args[0]).collect();
    for sub in ["dim", "charratio", "spectrum", "moments", "check"] {
        ensure(names.contains(&sub), || {
            format!("no golden case for `{sub}`")
        })?;
    }
    if failures.is_empty() {
        Ok(format!(
            "{} golden files byte-identical",
            common::GOLDEN_CASES.len()
        ))
    } else {
        Err(failures.join("\n"))
    }
}

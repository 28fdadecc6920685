//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ghgd_core::bounds::{max_mean_for_alpha, mean_variance_gap, ThresholdMethod};
use ghgd_core::combinatorics::{pmf_full_overlap, total_configurations, FullOverlapCounts};
use ghgd_core::moments::{
    central_moment_full, expectation_at_least_t, expectation_equal_m, expectation_exact_t, expectation_full,
    raw_moment_full, second_moment_at_least_t_with, second_moment_exact_t_with, variance_at_least_t,
    variance_exact_t, variance_full, PairDenominator, PAIR_DENOMINATOR,
};
use ghgd_core::oracle::{simulate, OverlapTally};
use ghgd_core::{BigInt, BigRational, BigUint, Instance, OverlapMode};
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const FAMILY_LIMIT: u64 = 1_000_000;
const ENUM_BUDGET: u64 = FAMILY_LIMIT;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn inst(n: u64, m: &[u64]) -> Instance {
    Instance::new(n, m.to_vec()).unwrap()
}

/// Binomial coefficient by Pascal's rule, independent of the library.
fn pascal(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Every instance with n <= 6, 2 <= T <= 4, sizes non-decreasing, and at most
/// a million configurations.
fn oracle_family() -> Vec<Instance> {
    fn extend(n: u64, t: usize, prefix: &mut Vec<u64>, out: &mut Vec<Instance>) {
        if prefix.len() == t {
            let i = Instance::new(n, prefix.clone()).unwrap();
            if total_configurations(&i) <= BigUint::from(FAMILY_LIMIT) {
                out.push(i);
            }
            return;
        }
        let start = prefix.last().copied().unwrap_or(0);
        for m in start..=n {
            prefix.push(m);
            extend(n, t, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=6 {
        for t in 2..=4 {
            extend(n, t, &mut Vec::new(), &mut out);
        }
    }
    out
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    expect(elapsed < limit, || format!("runtime {elapsed:.2?} exceeds {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let n = rng.gen_range(1..=12u64);
        let (m1, m2) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let table = pmf_full_overlap(&inst(n, &[m1, m2]));
        for k in 0..=m1.min(m2) {
            let classical = BigRational::new(
                (pascal(m1, k) * pascal(n - m1, m2 - k)).into(),
                pascal(n, m2).into(),
            );
            expect(table.probability(k as usize) == classical, || {
                format!("n={n} M=[{m1},{m2}] k={k}: {} != {classical}", table.probability(k as usize))
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("50 instances exact, {:.2?}", start.elapsed()))
}

struct Enumerated {
    inst: Instance,
    tally: OverlapTally,
}

fn criterion_2(family: &[Enumerated], enum_time: Duration) -> Outcome {
    let start = Instant::now();
    for Enumerated { inst, tally } in family {
        let t = inst.subsets();
        let oracle = tally.distribution(t, OverlapMode::Exact).unwrap();
        let ctx = || format!("n={} M={:?}", inst.population(), inst.sizes());
        expect(pmf_full_overlap(inst) == oracle, || format!("{}: pmf", ctx()))?;
        expect(expectation_full(inst) == oracle.mean(), || format!("{}: mean", ctx()))?;
        expect(variance_full(inst) == oracle.variance(), || format!("{}: variance", ctx()))?;
        for v in 0..=4 {
            expect(raw_moment_full(inst, v) == oracle.raw_moment(v), || format!("{}: raw moment {v}", ctx()))?;
            expect(central_moment_full(inst, v) == oracle.central_moment(v), || {
                format!("{}: central moment {v}", ctx())
            })?;
        }
    }
    let elapsed = start.elapsed() + enum_time;
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!("{} instances exact, {elapsed:.2?} including enumeration", family.len()))
}

fn criterion_3(family: &[Enumerated], enum_time: Duration) -> Outcome {
    let start = Instant::now();
    let mut rival_mismatches = 0usize;
    let rival = match PAIR_DENOMINATOR {
        PairDenominator::FallingPair => PairDenominator::PopulationPowerT,
        PairDenominator::PopulationPowerT => PairDenominator::FallingPair,
    };
    for Enumerated { inst, tally } in family {
        let mut rival_ok = true;
        for t in 0..=inst.subsets() {
            let exact = tally.distribution(t, OverlapMode::Exact).unwrap();
            let at_least = tally.distribution(t, OverlapMode::AtLeast).unwrap();
            let ctx = |what: &str| format!("n={} M={:?} t={t}: {what}", inst.population(), inst.sizes());
            expect(expectation_exact_t(inst, t).unwrap() == exact.mean(), || ctx("E(x_t)"))?;
            expect(expectation_at_least_t(inst, t).unwrap() == at_least.mean(), || ctx("E(x_>=t)"))?;
            expect(variance_exact_t(inst, t).unwrap() == exact.variance(), || ctx("Var(x_t)"))?;
            expect(variance_at_least_t(inst, t).unwrap() == at_least.variance(), || ctx("Var(x_>=t)"))?;
            rival_ok &= second_moment_exact_t_with(rival, inst, t).unwrap() == exact.raw_moment(2)
                && second_moment_at_least_t_with(rival, inst, t).unwrap() == at_least.raw_moment(2);
        }
        if !rival_ok {
            rival_mismatches += 1;
        }
    }
    let elapsed = start.elapsed() + enum_time;
    within(elapsed, Duration::from_secs(300))?;
    let name = |d: PairDenominator| match d {
        PairDenominator::FallingPair => "n^(T-1)(n-1)^(T-1)",
        PairDenominator::PopulationPowerT => "n^T(n-1)^(T-1)",
    };
    Ok(format!(
        "{} instances x all t exact with pair denominator {}; {} disagrees with the oracle on {} instances; {elapsed:.2?}",
        family.len(),
        name(PAIR_DENOMINATOR),
        name(rival),
        rival_mismatches
    ))
}

fn criterion_4() -> Outcome {
    let two = inst(4, &[2, 2]);
    let three = inst(4, &[2, 2, 2]);
    let checks = [
        ("pmf", pmf_full_overlap(&two).probs() == [q(1, 6), q(2, 3), q(1, 6)]),
        ("E(x_2)", expectation_exact_t(&two, 2).unwrap() == q(1, 1)),
        ("Var(x_2)", variance_exact_t(&two, 2).unwrap() == q(1, 3)),
        ("E(x_1)", expectation_exact_t(&two, 1).unwrap() == q(2, 1)),
        ("Var(x_1)", variance_exact_t(&two, 1).unwrap() == q(4, 3)),
        ("E(x_>=1)", expectation_at_least_t(&two, 1).unwrap() == q(3, 1)),
        ("E(x_3)", expectation_full(&three) == q(1, 2)),
        ("Var(x_3)", variance_full(&three) == q(11, 36)),
    ];
    for (name, ok) in checks {
        expect(ok, || format!("{name} wrong"))?;
    }
    Ok("8 values exact".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=20u64);
        let m = rng.gen_range(0..=n);
        let subsets = rng.gen_range(2..=6usize);
        let i = Instance::new(n, vec![m; subsets]).unwrap();
        for t in 0..=subsets {
            expect(expectation_equal_m(n, m, subsets, t).unwrap() == expectation_exact_t(&i, t).unwrap(), || {
                format!("n={n} m={m} T={subsets} t={t}")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("100 instances, all t, {:.2?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let cheb = max_mean_for_alpha(0.05, ThresholdMethod::ChebyshevMeanSubstituted).unwrap();
    let vp = max_mean_for_alpha(0.05, ThresholdMethod::VysochanskiiPetunin).unwrap();
    expect((cheb - 0.04554).abs() <= 5e-4, || format!("chebyshev threshold {cheb}"))?;
    expect((vp - 0.09167).abs() <= 5e-4, || format!("vysochanskii-petunin threshold {vp}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("chebyshev {cheb:.6}, vysochanskii-petunin {vp:.6}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut drawn = 0;
    let (mut small_mean, mut gap_equal) = (0usize, Vec::new());
    while drawn < 500 {
        let n = rng.gen_range(2..=30u64);
        let subsets = rng.gen_range(2..=6usize);
        let sizes: Vec<u64> = (0..subsets).map(|_| rng.gen_range(1..=n)).collect();
        if sizes.iter().all(|&m| m == n) {
            continue;
        }
        drawn += 1;
        let i = Instance::new(n, sizes.clone()).unwrap();
        let g = mean_variance_gap(&i);
        let ctx = || format!("n={n} M={sizes:?}");
        expect(g.variance < g.mean, || format!("{}: Var >= E", ctx()))?;

        // prod m_i / n^(T-1) - prod (m_i - 1) / (n - 1)^(T-1)
        let exp = subsets as u32 - 1;
        let identity = BigRational::new(
            sizes.iter().map(|&m| BigInt::from(m)).product(),
            Pow::pow(BigInt::from(n), exp),
        ) - BigRational::new(
            sizes.iter().map(|&m| BigInt::from(m - 1)).product(),
            Pow::pow(BigInt::from(n - 1), exp),
        );
        expect(g.ratio.as_ref() == Some(&identity), || format!("{}: gap/E identity", ctx()))?;

        if g.mean < BigRational::one() {
            small_mean += 1;
            if g.gap >= &g.mean * &g.mean {
                gap_equal.push(sizes.clone());
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    if !gap_equal.is_empty() {
        let with_unit = gap_equal.iter().filter(|s| s.contains(&1)).count();
        return Err(format!(
            "gap < E^2 fails on {} of {small_mean} instances with E < 1 ({with_unit} of them have some m_i = 1, \
             where E(x_T | n-1, M-1) = 0 and gap = E^2 exactly); Var < E and the gap identity hold on all 500",
            gap_equal.len()
        ));
    }
    Ok(format!("500 instances, {small_mean} with E < 1, {:.2?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let i = inst(100, &[30, 40, 50]);
    let expected = expectation_exact_t(&i, 3).unwrap();
    let expected_f = 6.0;
    expect(expected == int(6), || format!("E(x_3) = {expected}"))?;
    let a = simulate(&i, 3, OverlapMode::Exact, 100_000, 20_240_601).unwrap();
    let b = simulate(&i, 3, OverlapMode::Exact, 100_000, 20_240_601).unwrap();
    let z = (a.mean - expected_f).abs() / a.standard_error();
    expect(z <= 3.0, || format!("sample mean {} is {z:.2} standard errors from 6", a.mean))?;
    expect(
        a.mean.to_bits() == b.mean.to_bits() && a.variance.to_bits() == b.variance.to_bits() && a == b,
        || "re-run differs".into(),
    )?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("mean {:.5} ({z:.2} se from 6), re-run bit-identical, {:.2?}", a.mean, start.elapsed()))
}

fn criterion_9(family: &[Enumerated]) -> Outcome {
    for Enumerated { inst, .. } in family {
        let n = inst.population();
        let here = FullOverlapCounts::new(inst);
        let shifted: Vec<u64> = inst.sizes().iter().map(|&m| m.saturating_sub(1)).collect();
        let below = FullOverlapCounts::from_sizes(n - 1, &shifted);
        for i in 1..=inst.min_size() {
            expect(here.count(i) * i == below.count(i - 1) * n, || {
                format!("n={n} M={:?} i={i}: shift identity", inst.sizes())
            })?;
        }
        let total = (0..=inst.subsets()).fold(BigRational::zero(), |acc, t| acc + expectation_exact_t(inst, t).unwrap());
        expect(total == int(n), || format!("n={n} M={:?}: sum of E(x_t)", inst.sizes()))?;
    }
    Ok(format!("{} instances", family.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let family: Vec<Enumerated> = oracle_family()
        .into_iter()
        .map(|inst| {
            let tally = OverlapTally::enumerate(&inst, ENUM_BUDGET).expect("family fits the budget");
            Enumerated { inst, tally }
        })
        .collect();
    let enum_time = start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 classical reduction for T = 2", criterion_1()),
        ("2 oracle equivalence, full overlap", criterion_2(&family, enum_time)),
        ("3 oracle equivalence, general t", criterion_3(&family, enum_time)),
        ("4 anchored values", criterion_4()),
        ("5 equal-size closed form", criterion_5()),
        ("6 threshold constants", criterion_6()),
        ("7 mean-variance gap properties", criterion_7()),
        ("8 Monte Carlo sanity", criterion_8()),
        ("9 shift identity and mean partition", criterion_9(&family)),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

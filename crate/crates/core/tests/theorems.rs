//! Worked examples for each theorem-level sweep, checked against direct
//! computations done here from the coefficient lists.

use littlewood::experiments::{
    run_theorem2, run_theorem3, run_theorem4_bound, run_theorem5, run_theorem6,
    run_theorem7_exhaustive, CompletionSpec, CsvRow, SweepConfig,
};
use littlewood::numbers::jacobi;
use littlewood::Rotation;

fn cfg(ns: &[u64], rots: &[&str], completions: Vec<CompletionSpec>) -> SweepConfig {
    let rots = rots.iter().map(|r| r.parse().unwrap()).collect();
    SweepConfig::from_n_list(ns, rots)
        .unwrap()
        .with_completions(completions)
}

/// Merit factor by the textbook double sum, after shifting left by `shift`.
fn direct_merit(coeffs: &[i64], shift: usize) -> f64 {
    let n = coeffs.len();
    let a: Vec<i64> = (0..n).map(|k| coeffs[(k + shift) % n]).collect();
    let c: Vec<i64> = (0..n)
        .map(|u| (0..n - u).map(|j| a[j] * a[j + u]).sum())
        .collect();
    let l4 = c[0] * c[0] + 2 * c[1..].iter().map(|x| x * x).sum::<i64>();
    (c[0] * c[0]) as f64 / (l4 - c[0] * c[0]) as f64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn row<'a>(rows: &'a [CsvRow], label: &str) -> &'a CsvRow {
    rows.iter().find(|r| r.completion == label).unwrap()
}

#[test]
fn theorem2_examples() {
    let out = run_theorem2(&cfg(&[3], &["0"], vec![])).unwrap();
    assert!(out.is_clean());
    assert_eq!(out.rows[0].merit, direct_merit(&[0, 1, -1], 0));

    let primes = [101u64, 1009, 10007, 100003];
    let out = run_theorem2(&cfg(&primes, &["1/4"], vec![])).unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    assert!((out.rows[2].merit - 6.0).abs() < 0.5);
    let residual: Vec<f64> = out.rows.iter().map(|r| r.aux1.parse().unwrap()).collect();
    assert!(residual.windows(2).all(|w| w[1] < w[0]), "{residual:?}");

    // p = 101 at r = 1/4 shifts by 25
    let j: Vec<i64> = (0..101)
        .map(|k| i64::from(jacobi(k, 101).unwrap()))
        .collect();
    assert_eq!(out.rows[0].merit, direct_merit(&j, 25));
}

#[test]
fn theorem3_examples() {
    let out = run_theorem3(&cfg(&[15015], &["1/4"], vec![CompletionSpec::AllOnes])).unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    let r = &out.rows[0];
    assert!(r.merit < 0.1);
    let spike: f64 = r.aux1.parse().unwrap();
    assert!((spike - 15015.0 / 54.0).abs() < 1e-9);

    // for prime n the all-ones completion is J + 1
    let out = run_theorem3(&cfg(&[1009], &["1/4"], vec![CompletionSpec::AllOnes])).unwrap();
    let plus = run_theorem6(&cfg(&[1009], &["1/4"], vec![CompletionSpec::JacobiProduct])).unwrap();
    assert_eq!(out.rows[0].l4p4_exact, plus.rows[0].l4p4_exact);
}

#[test]
fn small_all_ones_and_jacobi_product_values() {
    // n = 15, r = 1/4 (shift 3), both completions built by hand
    let n = 15u64;
    let j: Vec<i64> = (0..n as i64)
        .map(|k| i64::from(jacobi(k, n).unwrap()))
        .collect();
    let ones: Vec<i64> = (0..n)
        .map(|k| j[k as usize] + i64::from(gcd(k, n) > 1))
        .collect();
    let product: Vec<i64> = (0..n)
        .map(|k| {
            let g = gcd(k, n);
            let v = if g > 1 {
                i64::from(jacobi(k as i64, n / g).unwrap())
            } else {
                0
            };
            j[k as usize] + v
        })
        .collect();
    let labels = vec![CompletionSpec::AllOnes];
    let t3 = run_theorem3(&cfg(&[15], &["1/4"], labels)).unwrap();
    let t6 = run_theorem6(&cfg(&[15], &["1/4"], vec![CompletionSpec::JacobiProduct])).unwrap();
    assert_eq!(t3.rows[0].merit, direct_merit(&ones, 3));
    assert_eq!(t6.rows[0].merit, direct_merit(&product, 3));
    // At this length the all-ones completion is the better of the two.
    assert!(t3.rows[0].merit > t6.rows[0].merit);
}

#[test]
fn theorem4_examples() {
    let out = run_theorem4_bound(&cfg(&[101], &["1/4"], vec![])).unwrap();
    let r = &out.rows[0];
    let j: Vec<i64> = (0..101)
        .map(|k| i64::from(jacobi(k, 101).unwrap()))
        .collect();
    let best = [1, -1]
        .iter()
        .map(|s| {
            let mut x = j.clone();
            x[0] = *s;
            direct_merit(&x, 25)
        })
        .fold(f64::MIN, f64::max);
    assert_eq!(r.completion, "exhaustive_max");
    assert_eq!(r.merit, best);
    assert_eq!(r.aux2, "2");
    let margin: f64 = r.aux1.parse().unwrap();
    assert_eq!(margin, r.f_r - r.merit);

    let out = run_theorem4_bound(&cfg(&[143], &["1/4"], vec![])).unwrap();
    assert_eq!(out.rows[0].aux2, (1u64 << 23).to_string());

    let mut sampled = cfg(&[95477], &["1/4"], vec![]);
    sampled.samples = 200;
    sampled.master_seed = 1;
    let out = run_theorem4_bound(&sampled).unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    let r = &out.rows[0];
    assert_eq!(r.completion, "sampled_max");
    assert_eq!(r.aux2, "200");
    assert_eq!(out.prop4.len(), 200);
    let best = out.prop4.iter().map(|p| p.check.l4_x).min();
    assert_eq!(r.l4p4_exact, best);
}

#[test]
fn theorem5_examples() {
    let spec = vec![CompletionSpec::Random { seed: 3, count: 20 }];
    let out = run_theorem5(&cfg(&[101 * 103, 1009 * 1013], &["1/4"], spec.clone())).unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    let summaries: Vec<&CsvRow> = out
        .rows
        .iter()
        .filter(|r| r.completion == "random_summary")
        .collect();
    assert_eq!(summaries.len(), 2);
    let std: Vec<f64> = summaries.iter().map(|r| r.aux1.parse().unwrap()).collect();
    assert!(std[1] < std[0], "{std:?}");

    // the summary agrees with its samples
    let samples: Vec<f64> = out
        .rows
        .iter()
        .filter(|r| r.n == 10403 && r.completion == "random")
        .map(|r| r.merit)
        .collect();
    assert_eq!(samples.len(), 20);
    let mean = samples.iter().sum::<f64>() / 20.0;
    assert!((summaries[0].merit - mean).abs() < 1e-12);
    let max_dev = samples.iter().map(|f| (f - 6.0).abs()).fold(0.0, f64::max);
    assert_eq!(summaries[0].abs_gap, max_dev);

    let again = run_theorem5(&cfg(&[101 * 103], &["1/4"], spec)).unwrap();
    let first: Vec<&CsvRow> = out.rows.iter().filter(|r| r.n == 10403).collect();
    assert_eq!(again.rows.iter().collect::<Vec<_>>(), first);
}

#[test]
fn theorem6_examples() {
    let jp = vec![CompletionSpec::JacobiProduct];
    let out = run_theorem6(&cfg(
        &[101 * 103, 307 * 311, 1009 * 1013],
        &["1/4"],
        jp.clone(),
    ))
    .unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    let last = out.rows.last().unwrap();
    assert!((last.merit - 6.0).abs() / 6.0 < 0.10);
    let gaps: Vec<f64> = out.rows.iter().map(|r| r.aux2.parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");

    // prime n: the completion is the constant +1 at index 0
    let out = run_theorem6(&cfg(&[10007], &["0", "1/4"], jp)).unwrap();
    let plus = littlewood::experiments::run_merit(&cfg(
        &[10007],
        &["0", "1/4"],
        vec![CompletionSpec::PlusOne],
    ))
    .unwrap();
    for (a, b) in out
        .rows
        .iter()
        .zip(plus.rows.iter().filter(|r| r.completion == "plus_one"))
    {
        assert_eq!(a.l4p4_exact, b.l4p4_exact);
    }
}

#[test]
fn theorem7_examples() {
    let out = run_theorem7_exhaustive(&cfg(&[15], &["1/4"], vec![])).unwrap();
    assert!(out.is_clean(), "{:?}", out.failures);
    let max = row(&out.rows, "exhaustive_max");
    let min = row(&out.rows, "exhaustive_min");
    assert_eq!(max.aux2, "128");
    let jp = row(&out.rows, "jacobi_product");
    assert!(min.merit <= jp.merit && jp.merit <= max.merit);
    let spread: f64 = jp.aux2.parse().unwrap();
    assert!((spread - (max.merit - min.merit) / max.merit).abs() < 1e-12);

    // rebuild the argmax from its sign string
    let n = 15u64;
    let mut x: Vec<i64> = (0..n as i64)
        .map(|k| i64::from(jacobi(k, n).unwrap()))
        .collect();
    let free: Vec<usize> = (0..n)
        .filter(|&k| gcd(k, n) > 1)
        .map(|k| k as usize)
        .collect();
    for (&k, s) in free.iter().zip(max.aux1.chars()) {
        x[k] = if s == '+' { 1 } else { -1 };
    }
    assert_eq!(max.merit, direct_merit(&x, 3));

    // brute force over all 128 sign patterns
    let best = (0..1u32 << 7)
        .map(|bits| {
            let mut y = x.clone();
            for (i, &k) in free.iter().enumerate() {
                y[k] = if bits >> i & 1 == 1 { 1 } else { -1 };
            }
            direct_merit(&y, 3)
        })
        .fold(f64::MIN, f64::max);
    assert_eq!(max.merit, best);

    let out = run_theorem7_exhaustive(&cfg(&[35], &["1/4"], vec![])).unwrap();
    assert_eq!(row(&out.rows, "exhaustive_min").aux2, "2048");
    assert!(Rotation::quarter() == out.rows[0].rotation);
}

//! Mann-Whitney U: midranked U statistic with an exact permutation
//! p-value for small samples and a tie-corrected, continuity-corrected
//! normal approximation for large ones.

use super::AnalysisError;

/// One-sided reports the observed-direction tail; two-sided doubles it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    One,
    Two,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankTestResult {
    /// U for the first sample.
    pub u_statistic: f64,
    pub p_value: f64,
    pub sidedness: Sidedness,
    pub n1: usize,
    pub n2: usize,
}

/// Subset-count ceiling for the exact permutation distribution.
const EXACT_LIMIT: u128 = 2_000_000;

/// Rank-sum test between two unpaired samples.
///
/// Pooled values are midranked (ties get the average rank); the exact
/// permutation p is used below the 8/8 sample-size threshold when the
/// subset count is tractable, otherwise the normal approximation with
/// tie-corrected variance and a 0.5 continuity correction.
pub fn mann_whitney_u(
    a: &[f64],
    b: &[f64],
    sidedness: Sidedness,
) -> Result<RankTestResult, AnalysisError> {
    if a.is_empty() {
        return Err(AnalysisError::EmptySample { which: "a" });
    }
    if b.is_empty() {
        return Err(AnalysisError::EmptySample { which: "b" });
    }
    let n1 = a.len();
    let n2 = b.len();
    let ranks = midranks(a, b);
    let rank_sum_a: f64 = ranks[..n1].iter().sum();
    let u_a = rank_sum_a - (n1 * (n1 + 1)) as f64 / 2.0;

    let small = !(n1 >= 8 && n2 >= 8);
    let one_sided = if small && binomial(n1 + n2, n1.min(n2)) <= EXACT_LIMIT {
        exact_one_sided_p(&ranks, n1, n2, u_a)
    } else {
        normal_one_sided_p(&ranks, n1, n2, u_a)
    };
    let p_value = match sidedness {
        Sidedness::One => one_sided,
        Sidedness::Two => (2.0 * one_sided).min(1.0),
    };
    Ok(RankTestResult {
        u_statistic: u_a,
        p_value,
        sidedness,
        n1,
        n2,
    })
}

/// Midranks of the pooled samples, in input order (a then b).
fn midranks(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len() + b.len();
    let mut order: Vec<usize> = (0..n).collect();
    let value = |i: usize| if i < a.len() { a[i] } else { b[i - a.len()] };
    order.sort_by(|&x, &y| value(x).partial_cmp(&value(y)).expect("NaN in sample"));

    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && value(order[j]) == value(order[i]) {
            j += 1;
        }
        // Positions i..j share the average of ranks i+1..=j.
        let midrank = (i + j + 1) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = midrank;
        }
        i = j;
    }
    ranks
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if result > EXACT_LIMIT * 1_000 {
            return u128::MAX;
        }
    }
    result
}

/// Exact observed-direction tail over the permutation distribution of U,
/// enumerating every assignment of the pooled midranks to the smaller
/// sample.
fn exact_one_sided_p(ranks: &[f64], n1: usize, n2: usize, u_a: f64) -> f64 {
    let n = n1 + n2;
    // Enumerate for the smaller side; U_a + U_b = n1 n2 maps the tails.
    let (k, u_obs) = if n1 <= n2 {
        (n1, u_a)
    } else {
        (n2, (n1 * n2) as f64 - u_a)
    };
    let offset = (k * (k + 1)) as f64 / 2.0;

    let mut le = 0u64;
    let mut ge = 0u64;
    let mut total = 0u64;
    let eps = 1e-9;
    // Depth-first over k-subsets with an incremental rank sum.
    let mut indices = vec![0usize; k];
    let mut sums = vec![0.0f64; k + 1];
    let mut depth = 0usize;
    let mut next = 0usize;
    loop {
        if depth == k {
            let u = sums[k] - offset;
            total += 1;
            if u <= u_obs + eps {
                le += 1;
            }
            if u >= u_obs - eps {
                ge += 1;
            }
            // Backtrack.
            if depth == 0 {
                break;
            }
            depth -= 1;
            next = indices[depth] + 1;
            continue;
        }
        if next > n - (k - depth) {
            if depth == 0 {
                break;
            }
            depth -= 1;
            next = indices[depth] + 1;
            continue;
        }
        indices[depth] = next;
        sums[depth + 1] = sums[depth] + ranks[next];
        depth += 1;
        next = indices[depth - 1] + 1;
    }
    let p_le = le as f64 / total as f64;
    let p_ge = ge as f64 / total as f64;
    p_le.min(p_ge)
}

/// Observed-direction tail under the normal approximation with tie
/// correction and continuity correction.
fn normal_one_sided_p(ranks: &[f64], n1: usize, n2: usize, u_a: f64) -> f64 {
    let n = (n1 + n2) as f64;
    let mean = (n1 * n2) as f64 / 2.0;
    let tie_term = tie_correction(ranks);
    let variance = (n1 * n2) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0; // Everything tied: no evidence against H0.
    }
    let z = ((u_a - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    normal_cdf(-z)
}

/// Sum of t^3 - t over tie groups of the pooled midranks.
fn tie_correction(ranks: &[f64]) -> f64 {
    let mut sorted = ranks.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        sum += t * t * t - t;
        i = j;
    }
    sum
}

/// Standard normal CDF via a rational erfc approximation (fractional
/// error below 1.2e-7 everywhere).
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc_approx(-z / std::f64::consts::SQRT_2)
}

fn erfc_approx(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let poly = -z * z - 1.26551223
        + t * (1.00002368
            + t * (0.37409196
                + t * (0.09678418
                    + t * (-0.18628806
                        + t * (0.27886807
                            + t * (-1.13520398
                                + t * (1.48851587 + t * (-0.82215223 + t * 0.17087277))))))));
    let ans = t * poly.exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// U by its definition: pairs where a wins, half credit for ties.
    fn pairwise_u(a: &[f64], b: &[f64]) -> f64 {
        let mut u = 0.0;
        for x in a {
            for y in b {
                if x > y {
                    u += 1.0;
                } else if x == y {
                    u += 0.5;
                }
            }
        }
        u
    }

    #[test]
    fn identical_samples_show_no_difference() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let r = mann_whitney_u(&a, &a, Sidedness::Two).unwrap();
        assert!(r.p_value >= 0.99, "p = {}", r.p_value);
        assert_eq!(r.u_statistic, 8.0); // n1 n2 / 2
    }

    #[test]
    fn complete_separation_u_is_zero() {
        let r = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], Sidedness::One).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        // Exact: 1 of C(6,3) = 20 subsets is as extreme.
        assert!((r.p_value - 0.05).abs() < 1e-12);
        let r2 = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], Sidedness::Two).unwrap();
        assert!((r2.p_value - 0.1).abs() < 1e-12);
    }

    #[test]
    fn midranks_average_tied_positions() {
        let ranks = midranks(&[1.0, 2.0, 2.0], &[2.0, 5.0]);
        assert_eq!(ranks, vec![1.0, 3.0, 3.0, 3.0, 5.0]);
    }

    #[test]
    fn empty_samples_rejected() {
        assert!(mann_whitney_u(&[], &[1.0], Sidedness::One).is_err());
        assert!(mann_whitney_u(&[1.0], &[], Sidedness::One).is_err());
    }

    #[test]
    fn all_tied_values_give_p_one() {
        let a = [5.0; 10];
        let b = [5.0; 12];
        let r = mann_whitney_u(&a, &b, Sidedness::Two).unwrap();
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn large_sample_separation_is_significant() {
        let a: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let b: Vec<f64> = (0..50).map(|i| 100.0 + i as f64).collect();
        let r = mann_whitney_u(&a, &b, Sidedness::Two).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-7);
        assert!((normal_cdf(1.96) - 0.975_002_104_85).abs() < 1e-6);
        assert!((normal_cdf(-2.575_829) - 0.005).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn u_matches_pairwise_definition(
            a in proptest::collection::vec(0i32..20, 1..12),
            b in proptest::collection::vec(0i32..20, 1..12),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let r = mann_whitney_u(&a, &b, Sidedness::One).unwrap();
            prop_assert!((r.u_statistic - pairwise_u(&a, &b)).abs() < 1e-9);
        }

        #[test]
        fn u_statistics_are_complementary(
            a in proptest::collection::vec(0i32..50, 1..15),
            b in proptest::collection::vec(0i32..50, 1..15),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let ra = mann_whitney_u(&a, &b, Sidedness::One).unwrap();
            let rb = mann_whitney_u(&b, &a, Sidedness::One).unwrap();
            let product = (a.len() * b.len()) as f64;
            prop_assert!((ra.u_statistic + rb.u_statistic - product).abs() < 1e-9);
            // And the observed-direction p is symmetric in argument order.
            prop_assert!((ra.p_value - rb.p_value).abs() < 1e-12);
        }

        #[test]
        fn p_invariant_under_monotone_transforms(
            a in proptest::collection::vec(1u8..100, 2..20),
            b in proptest::collection::vec(1u8..100, 2..20),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let base = mann_whitney_u(&a, &b, Sidedness::Two).unwrap();
            for transform in [|x: f64| x * x * x, |x: f64| (x / 10.0).exp(), |x: f64| 3.0 * x + 7.0] {
                let ta: Vec<f64> = a.iter().map(|&x| transform(x)).collect();
                let tb: Vec<f64> = b.iter().map(|&x| transform(x)).collect();
                let r = mann_whitney_u(&ta, &tb, Sidedness::Two).unwrap();
                prop_assert!((r.p_value - base.p_value).abs() < 1e-9);
            }
        }

        #[test]
        fn p_values_always_valid(
            a in proptest::collection::vec(0i32..10, 1..30),
            b in proptest::collection::vec(0i32..10, 1..30),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            for s in [Sidedness::One, Sidedness::Two] {
                let r = mann_whitney_u(&a, &b, s).unwrap();
                prop_assert!((0.0..=1.0).contains(&r.p_value));
                prop_assert!(r.u_statistic >= 0.0);
                prop_assert!(r.u_statistic <= (r.n1 * r.n2) as f64);
            }
        }
    }
}

//! One-tailed Mann-Whitney U test with mid-ranks for ties.
//!
//! Exact p-values come from the null distribution of the rank sum of the
//! smaller sample, counted by dynamic programming over the pooled (doubled,
//! hence integral) mid-ranks, which keeps ties exact. Larger samples use the
//! tie-corrected normal approximation with continuity correction.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Above this `n·m` the normal approximation is used by default.
pub const EXACT_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PValueMethod {
    /// Exact when `n·m <= 400`, normal approximation otherwise.
    Auto,
    Exact,
    Normal,
}

/// Outcome of the rank test for the alternative "x is stochastically
/// greater than y".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankTest {
    /// `U` statistic of the first sample.
    pub u: f64,
    /// `U` statistic of the second sample; `u + u_other = n·m`.
    pub u_other: f64,
    pub n: usize,
    pub m: usize,
    pub p_value: f64,
    pub method: PValueMethod,
}

/// Rank test outcome judged against a Bonferroni-adjusted threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub u: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub comparisons: usize,
    /// `alpha / comparisons`.
    pub threshold: f64,
    pub reject: bool,
}

impl RankTest {
    /// Rejects the null hypothesis when `p < alpha / comparisons`.
    pub fn decide(&self, alpha: f64, comparisons: usize) -> Result<TestResult> {
        let threshold = bonferroni(alpha, comparisons)?;
        Ok(TestResult {
            u: self.u,
            p_value: self.p_value,
            alpha,
            comparisons,
            threshold,
            reject: self.p_value < threshold,
        })
    }
}

/// Family-wise significance threshold `alpha / comparisons`.
pub fn bonferroni(alpha: f64, comparisons: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if comparisons == 0 {
        return Err(Error::InvalidParameter(
            "number of comparisons must be >= 1".into(),
        ));
    }
    Ok(alpha / comparisons as f64)
}

/// One-tailed test of "x is stochastically greater than y". To test the other
/// direction, swap the samples.
pub fn mann_whitney_one_tailed(x: &[f64], y: &[f64]) -> Result<RankTest> {
    mann_whitney_with(x, y, PValueMethod::Auto)
}

pub fn mann_whitney_with(x: &[f64], y: &[f64], method: PValueMethod) -> Result<RankTest> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidInput("both samples must be nonempty".into()));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("samples contain NaN".into()));
    }
    let (n, m) = (x.len(), y.len());
    let ranks = doubled_midranks(x, y);
    let (rx2, ry2) = ranks.split_at(n);
    let sum_x2: u64 = rx2.iter().sum();
    // 2U = 2R - n(n + 1)
    let u2 = sum_x2 as i64 - (n * (n + 1)) as i64;
    let u = u2 as f64 / 2.0;
    let nm = (n * m) as f64;

    let method = match method {
        PValueMethod::Auto if n * m <= EXACT_LIMIT => PValueMethod::Exact,
        PValueMethod::Auto => PValueMethod::Normal,
        other => other,
    };
    let p_value = match method {
        PValueMethod::Exact => exact_upper_tail(rx2, ry2, u2),
        _ => normal_upper_tail(u, n, m, &ranks),
    };
    Ok(RankTest {
        u,
        u_other: nm - u,
        n,
        m,
        p_value: p_value.clamp(0.0, 1.0),
        method,
    })
}

/// Twice the mid-rank of every observation, x first then y.
fn doubled_midranks(x: &[f64], y: &[f64]) -> Vec<u64> {
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0u64; pooled.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && pooled[order[end + 1]] == pooled[order[start]] {
            end += 1;
        }
        // 1-based positions start+1 ..= end+1 share rank (start + end + 2) / 2.
        let doubled = (start + end + 2) as u64;
        for &i in &order[start..=end] {
            ranks[i] = doubled;
        }
        start = end + 1;
    }
    ranks
}

/// `P(U_x >= u)` under the permutation null, counting subsets exactly.
fn exact_upper_tail(rx2: &[u64], ry2: &[u64], u2_obs: i64) -> f64 {
    let (n, m) = (rx2.len(), ry2.len());
    let pooled: Vec<u64> = rx2.iter().chain(ry2).copied().collect();
    // Count over the smaller group; U_x = nm - U_y when that group is y.
    let k = n.min(m);
    let total: u64 = pooled.iter().sum();
    let mut counts = vec![vec![0.0f64; total as usize + 1]; k + 1];
    counts[0][0] = 1.0;
    for (seen, &r) in pooled.iter().enumerate() {
        let r = r as usize;
        for chosen in (1..=k.min(seen + 1)).rev() {
            let (lower, upper) = counts.split_at_mut(chosen);
            let (src, dst) = (&lower[chosen - 1], &mut upper[0]);
            for s in (r..dst.len()).rev() {
                let c = src[s - r];
                if c != 0.0 {
                    dst[s] += c;
                }
            }
        }
    }
    let dist = &counts[k];
    let all: f64 = dist.iter().sum();
    let nm2 = 2 * (n * m) as i64;
    let kk = (k * (k + 1)) as i64;
    let favourable: f64 = dist
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .filter(|(s, _)| {
            let u2_group = *s as i64 - kk;
            let u2_x = if k == n && n <= m {
                u2_group
            } else {
                nm2 - u2_group
            };
            u2_x >= u2_obs
        })
        .map(|(_, c)| c)
        .sum();
    favourable / all
}

fn normal_upper_tail(u: f64, n: usize, m: usize, doubled: &[u64]) -> f64 {
    let big_n = (n + m) as f64;
    let nm = (n * m) as f64;
    let mean = nm / 2.0;
    // Tie correction from the sizes of the tied groups.
    let mut sorted = doubled.to_vec();
    sorted.sort_unstable();
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = if big_n > 1.0 {
        nm / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)))
    } else {
        0.0
    };
    if var <= 0.0 {
        return if u >= mean { 1.0 } else { 0.0 };
    }
    let z = (u - mean - 0.5) / var.sqrt();
    Normal::standard().sf(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_case() {
        let t = mann_whitney_one_tailed(&[3.0, 4.0], &[1.0, 2.0]).unwrap();
        assert_eq!(t.u, 4.0);
        assert_eq!(t.method, PValueMethod::Exact);
        assert!((t.p_value - 1.0 / 6.0).abs() < 1e-15);
        let r = mann_whitney_one_tailed(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(r.u, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn unequal_sizes_use_either_group() {
        // x has 3 values, y has 1: all 4 placements of y are equally likely.
        let t = mann_whitney_one_tailed(&[2.0, 3.0, 4.0], &[1.0]).unwrap();
        assert_eq!(t.u, 3.0);
        assert!((t.p_value - 0.25).abs() < 1e-15);
        let t = mann_whitney_one_tailed(&[4.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!((t.p_value - 0.25).abs() < 1e-15);
    }

    #[test]
    fn identical_samples_are_not_significant() {
        let x = [1.0, 2.0, 3.0, 3.0, 5.0];
        let t = mann_whitney_one_tailed(&x, &x).unwrap();
        assert!(t.p_value >= 0.5);
        assert_eq!(t.u + t.u_other, 25.0);
        let all_tied = mann_whitney_one_tailed(&[2.0; 4], &[2.0; 3]).unwrap();
        assert_eq!(all_tied.p_value, 1.0);
        let approx = mann_whitney_with(&[2.0; 4], &[2.0; 3], PValueMethod::Normal).unwrap();
        assert_eq!(approx.p_value, 1.0);
    }

    #[test]
    fn large_samples_switch_to_normal() {
        let x: Vec<f64> = (0..25).map(|i| i as f64).collect();
        let y: Vec<f64> = (0..17).map(|i| i as f64 + 0.5).collect();
        assert_eq!(
            mann_whitney_one_tailed(&x, &y).unwrap().method,
            PValueMethod::Normal
        );
    }

    #[test]
    fn bad_input() {
        assert!(mann_whitney_one_tailed(&[], &[1.0]).is_err());
        assert!(mann_whitney_one_tailed(&[f64::NAN], &[1.0]).is_err());
    }

    #[test]
    fn bonferroni_values() {
        assert_eq!(bonferroni(0.05, 1).unwrap(), 0.05);
        assert!((bonferroni(0.05, 5).unwrap() - 0.01).abs() < 1e-18);
        assert!((bonferroni(0.05, 42).unwrap() - 0.00119).abs() < 5e-6);
        assert!(bonferroni(0.05, 0).is_err());
        assert!(bonferroni(1.5, 3).is_err());
    }

    #[test]
    fn decision_uses_adjusted_threshold() {
        let t = mann_whitney_one_tailed(&[3.0, 4.0], &[1.0, 2.0]).unwrap();
        let d = t.decide(0.05, 1).unwrap();
        assert!(!d.reject);
        assert_eq!(d.threshold, 0.05);
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Median and quartiles with linear interpolation between order statistics
/// (`h = (n - 1) p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput(
                "cannot summarize an empty sample".into(),
            ));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidInput("sample contains NaN".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let (q1, median, q3) = (
            quantile_sorted(&sorted, 0.25),
            quantile_sorted(&sorted, 0.5),
            quantile_sorted(&sorted, 0.75),
        );
        Ok(Self {
            n: values.len(),
            median,
            q1,
            q3,
            iqr: q3 - q1,
        })
    }
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// `(median, Q3 - Q1)`.
pub fn median_iqr(values: &[f64]) -> Result<(f64, f64)> {
    let s = Summary::of(values)?;
    Ok((s.median, s.iqr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(median_iqr(&[1.0, 2.0, 3.0]).unwrap(), (2.0, 1.0));
        assert_eq!(median_iqr(&[5.0]).unwrap(), (5.0, 0.0));
        assert_eq!(median_iqr(&[1.0; 4]).unwrap(), (1.0, 0.0));
        let s = Summary::of(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((s.q1, s.q3), (1.5, 2.5));
        assert!(median_iqr(&[]).is_err());
    }

    #[test]
    fn even_count_interpolates() {
        // h = 3 * 0.25 = 0.75 -> 1 + 0.75 * (2 - 1)
        let s = Summary::of(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));
    }
}

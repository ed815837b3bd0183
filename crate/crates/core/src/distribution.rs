use num_complex::Complex64;

use crate::output::{csv_row, fmt_f64};

/// Probability distribution on a contiguous window of integer sites.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    offset: i64,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(offset: i64, probs: Vec<f64>) -> Self {
        Self { offset, probs }
    }

    /// Point mass at `x`.
    pub fn point(x: i64) -> Self {
        Self::new(x, vec![1.0])
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn hi(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    /// Probability at site `x`, zero outside the window.
    pub fn prob(&self, x: i64) -> f64 {
        let i = x - self.offset;
        if i < 0 {
            return 0.0;
        }
        self.probs.get(i as usize).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `sum_x p(x) exp(i xi x)`.
    pub fn char_fn(&self, xi: f64) -> Complex64 {
        self.iter()
            .map(|(x, p)| Complex64::from_polar(p, xi * x as f64))
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(x, p)| x as f64 * p).sum()
    }

    /// Largest pointwise difference over the union of both windows.
    pub fn max_abs_gap(&self, other: &Distribution) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = self.hi().max(other.hi());
        (lo..=hi)
            .map(|x| (self.prob(x) - other.prob(x)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,prob\n");
        for (x, p) in self.iter() {
            out.push_str(&csv_row([x.to_string(), fmt_f64(p)]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn char_fn_basics() {
        let d = Distribution::point(1);
        assert!((d.char_fn(PI) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let d = Distribution::new(-3, vec![0.0, 0.0, 0.25, 0.0, 0.5, 0.0, 0.25]);
        assert!((d.char_fn(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(d.char_fn(PI / 2.0).norm() < 1e-15);
    }

    #[test]
    fn gap_spans_both_windows() {
        let a = Distribution::new(0, vec![1.0]);
        let b = Distribution::new(-1, vec![0.5, 0.0, 0.5]);
        assert_eq!(a.max_abs_gap(&b), 1.0);
        assert_eq!(a.prob(5), 0.0);
        assert_eq!(b.prob(-2), 0.0);
    }

    #[test]
    fn csv_header() {
        let csv = Distribution::point(0).to_csv();
        assert!(csv.starts_with("x,prob\n0,1.0000000000000000e0"));
    }
}

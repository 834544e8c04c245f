use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::AffectCategory;

pub const DEFAULT_BIN_WIDTH: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    /// 1-based; bin `i` covers `[(i-1)·width, i·width)`.
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSpec {
    pub category: Option<AffectCategory>,
    pub bin_width: f64,
    pub bins: Vec<HistogramBin>,
}

impl HistogramSpec {
    pub fn total(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }
}

/// Uniform half-open binning from 0. Empty interior bins are kept with count
/// 0; nothing is emitted past the last occupied bin.
pub fn histogram(densities: &[f64], bin_width: f64) -> Result<HistogramSpec> {
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(Error::InvalidArgument(format!("bin width must be positive, got {bin_width}")));
    }
    let mut counts: Vec<usize> = Vec::new();
    for &d in densities {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::InvalidArgument(format!("density {d} is not a finite non-negative value")));
        }
        let slot = (d / bin_width).floor() as usize;
        if slot >= counts.len() {
            counts.resize(slot + 1, 0);
        }
        counts[slot] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            index: i + 1,
            lower: i as f64 * bin_width,
            upper: (i + 1) as f64 * bin_width,
            count,
        })
        .collect();
    Ok(HistogramSpec {
        category: None,
        bin_width,
        bins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counts(h: &HistogramSpec) -> Vec<(usize, usize)> {
        h.bins.iter().map(|b| (b.index, b.count)).collect()
    }

    #[test]
    fn direct_binning() {
        let h = histogram(&[50.0, 150.0, 155.0], 100.0).unwrap();
        assert_eq!(counts(&h), [(1, 1), (2, 2)]);
    }

    #[test]
    fn empty_input() {
        assert!(histogram(&[], 100.0).unwrap().bins.is_empty());
    }

    #[test]
    fn boundaries_are_half_open() {
        let h = histogram(&[100.0, 0.0, 399.99], 100.0).unwrap();
        assert_eq!(counts(&h), [(1, 1), (2, 1), (3, 0), (4, 1)]);
        assert_eq!(h.bins[2].lower, 200.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(histogram(&[1.0], 0.0).is_err());
        assert!(histogram(&[1.0], f64::NAN).is_err());
        assert!(histogram(&[-1.0], 100.0).is_err());
    }

    proptest! {
        #[test]
        fn mass_is_conserved(d in prop::collection::vec(0.0f64..5000.0, 0..300), w in prop::sample::select(vec![50.0, 100.0, 250.0, 7.5])) {
            let h = histogram(&d, w).unwrap();
            prop_assert_eq!(h.total(), d.len());
            if let Some(last) = h.bins.last() {
                prop_assert!(last.count > 0);
            }
            for x in &d {
                let b = &h.bins[(x / w).floor() as usize];
                prop_assert!(b.lower <= *x && *x < b.upper);
            }
        }
    }
}

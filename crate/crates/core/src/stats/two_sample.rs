//! Two-sample tests on document densities: Welch's t-test for a difference of
//! means and the F-test for a ratio of variances, both two-sided.

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    MeanDifference,
    VarianceRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSampleTest {
    pub kind: TestKind,
    pub statistic: f64,
    /// Welch–Satterthwaite df for the t-test; numerator df for the F-test.
    pub degrees_of_freedom: f64,
    /// Denominator df, F-test only.
    pub denominator_degrees_of_freedom: Option<f64>,
    pub p_value: f64,
}

fn moments(sample: &[f64]) -> Result<(f64, f64, f64)> {
    if sample.len() < 2 {
        return Err(Error::SampleTooSmall {
            needed: 2,
            got: sample.len(),
        });
    }
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let var = sample.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    Ok((n, mean, var))
}

/// Welch's unequal-variance t-test.
pub fn mean_difference_test(a: &[f64], b: &[f64]) -> Result<TwoSampleTest> {
    let (na, ma, va) = moments(a)?;
    let (nb, mb, vb) = moments(b)?;
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;
    if se2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    // P(|T| > |t|) = I_{df/(df+t²)}(df/2, 1/2)
    let p = if t == 0.0 {
        1.0
    } else {
        beta_reg(df / 2.0, 0.5, df / (df + t * t))
    };
    Ok(TwoSampleTest {
        kind: TestKind::MeanDifference,
        statistic: t,
        degrees_of_freedom: df,
        denominator_degrees_of_freedom: None,
        p_value: p.clamp(0.0, 1.0),
    })
}

/// Two-sided F-test of `var(a) / var(b)`.
pub fn variance_ratio_test(a: &[f64], b: &[f64]) -> Result<TwoSampleTest> {
    let (na, _, va) = moments(a)?;
    let (nb, _, vb) = moments(b)?;
    if va == 0.0 || vb == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let f = va / vb;
    let (d1, d2) = (na - 1.0, nb - 1.0);
    // both tails straight from the incomplete beta, avoiding 1 - cdf
    let lower = beta_reg(d1 / 2.0, d2 / 2.0, d1 * f / (d1 * f + d2));
    let upper = beta_reg(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
    let p = (2.0 * lower.min(upper)).min(1.0);
    Ok(TwoSampleTest {
        kind: TestKind::VarianceRatio,
        statistic: f,
        degrees_of_freedom: d1,
        denominator_degrees_of_freedom: Some(d2),
        p_value: p.clamp(0.0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_samples_are_null() {
        let a = [3.0, 5.0, 9.0, 1.0];
        let t = mean_difference_test(&a, &a).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.p_value, 1.0);
        let f = variance_ratio_test(&a, &a).unwrap();
        assert_eq!(f.statistic, 1.0);
        assert!((f.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extreme_separation() {
        let a = [1.0, 2.0, 3.0];
        let b = [1001.0, 1002.0, 1003.0];
        let t = mean_difference_test(&a, &b).unwrap();
        assert!(t.statistic < 0.0);
        assert!(t.p_value < 0.001);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(mean_difference_test(&[1.0], &[1.0, 2.0]), Err(Error::SampleTooSmall { got: 1, .. })));
        assert!(matches!(variance_ratio_test(&[1.0, 2.0], &[]), Err(Error::SampleTooSmall { got: 0, .. })));
        assert!(matches!(mean_difference_test(&[1.0, 1.0], &[2.0, 2.0]), Err(Error::ZeroVariance)));
        assert!(matches!(variance_ratio_test(&[1.0, 1.0], &[2.0, 3.0]), Err(Error::ZeroVariance)));
    }

    fn sample() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..3000.0, 2..40)
            .prop_filter("needs spread", |v| v.iter().any(|x| (x - v[0]).abs() > 1e-6))
    }

    proptest! {
        #[test]
        fn welch_swap_negates_statistic(a in sample(), b in sample()) {
            let ab = mean_difference_test(&a, &b).unwrap();
            let ba = mean_difference_test(&b, &a).unwrap();
            prop_assert_eq!(ab.statistic, -ba.statistic);
            prop_assert!((ab.p_value - ba.p_value).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab.p_value));
        }

        #[test]
        fn f_test_is_scale_invariant(a in sample(), b in sample(), k in 0.01f64..100.0) {
            let base = variance_ratio_test(&a, &b).unwrap();
            let sa: Vec<f64> = a.iter().map(|x| x * k).collect();
            let sb: Vec<f64> = b.iter().map(|x| x * k).collect();
            let scaled = variance_ratio_test(&sa, &sb).unwrap();
            prop_assert!((base.statistic - scaled.statistic).abs() <= 1e-9 * base.statistic);
            prop_assert!((base.p_value - scaled.p_value).abs() <= 1e-9_f64.max(1e-7 * base.p_value));
            prop_assert!((0.0..=1.0).contains(&base.p_value));
        }
    }
}

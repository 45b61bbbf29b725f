//! Confusion matrices and their normalized rate form.

use core::fmt;

/// Absolute tolerance on `p1 + p2 = 1` and on the per-class bounds.
pub const RATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ConfusionError {
    #[error("confusion matrix entry `{field}` is negative or not finite ({value})")]
    InvalidEntry { field: &'static str, value: f64 },
    #[error("confusion matrix is empty (N = 0)")]
    EmptyMatrix,
    #[error("class {class} has zero population")]
    MissingClass { class: u8 },
    #[error("rates are inconsistent: {0}")]
    InvalidRates(&'static str),
    #[error("sample count must be positive and finite, got {0}")]
    InvalidCount(f64),
}

/// A 2x2 confusion matrix `[[TN, FP], [FN, TP]]`.
///
/// Entries are real-valued so that expected matrices of continuous models
/// can be represented alongside integer counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionMatrix {
    tn: f64,
    fp: f64,
    fn_: f64,
    tp: f64,
}

impl ConfusionMatrix {
    pub fn new(tn: f64, fp: f64, fn_: f64, tp: f64) -> Result<Self, ConfusionError> {
        for (field, value) in [("tn", tn), ("fp", fp), ("fn", fn_), ("tp", tp)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ConfusionError::InvalidEntry { field, value });
            }
        }
        if tn + fp + fn_ + tp <= 0.0 {
            return Err(ConfusionError::EmptyMatrix);
        }
        Ok(Self { tn, fp, fn_, tp })
    }

    pub fn from_counts(tn: u64, fp: u64, fn_: u64, tp: u64) -> Result<Self, ConfusionError> {
        Self::new(tn as f64, fp as f64, fn_ as f64, tp as f64)
    }

    pub fn tn(&self) -> f64 {
        self.tn
    }

    pub fn fp(&self) -> f64 {
        self.fp
    }

    pub fn fn_(&self) -> f64 {
        self.fn_
    }

    pub fn tp(&self) -> f64 {
        self.tp
    }

    /// Total number of samples `N`.
    pub fn total(&self) -> f64 {
        self.tn + self.fp + self.fn_ + self.tp
    }

    /// Divides every entry by `N`.
    ///
    /// Both classes must be present: every cost function divides by `p2`
    /// or `1 - p2`, so a single-class matrix is rejected rather than
    /// clamped.
    pub fn normalize(&self) -> Result<ClassRates, ConfusionError> {
        let n = self.total();
        if n <= 0.0 {
            return Err(ConfusionError::EmptyMatrix);
        }
        if self.tn + self.fp <= 0.0 {
            return Err(ConfusionError::MissingClass { class: 1 });
        }
        if self.fn_ + self.tp <= 0.0 {
            return Err(ConfusionError::MissingClass { class: 2 });
        }
        ClassRates::new(self.tn / n, self.fp / n, self.fn_ / n, self.tp / n)
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[TN={}, FP={}], [FN={}, TP={}]]",
            self.tn, self.fp, self.fn_, self.tp
        )
    }
}

/// Correct-recognition and error rates of both classes, each a fraction of `N`.
///
/// `p1 = cr1 + e1` and `p2 = cr2 + e2` are the population rates. Both lie
/// strictly inside `(0, 1)` and sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassRates {
    cr1: f64,
    e1: f64,
    e2: f64,
    cr2: f64,
}

impl ClassRates {
    /// Builds rates in confusion-matrix order (`cr1, e1, e2, cr2`).
    pub fn new(cr1: f64, e1: f64, e2: f64, cr2: f64) -> Result<Self, ConfusionError> {
        for (field, value) in [("cr1", cr1), ("e1", e1), ("e2", e2), ("cr2", cr2)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ConfusionError::InvalidEntry { field, value });
            }
        }
        let p1 = cr1 + e1;
        let p2 = cr2 + e2;
        if (p1 + p2 - 1.0).abs() > RATE_TOLERANCE {
            return Err(ConfusionError::InvalidRates("p1 + p2 must equal 1"));
        }
        if p1 <= 0.0 || p1 >= 1.0 {
            return Err(ConfusionError::MissingClass { class: 1 });
        }
        if p2 <= 0.0 || p2 >= 1.0 {
            return Err(ConfusionError::MissingClass { class: 2 });
        }
        Ok(Self { cr1, e1, e2, cr2 })
    }

    /// Rates from the population rate of class 2 and the two error rates.
    pub fn from_errors(p2: f64, e1: f64, e2: f64) -> Result<Self, ConfusionError> {
        if !(p2 > 0.0 && p2 < 1.0) {
            return Err(ConfusionError::InvalidRates("p2 must lie in (0, 1)"));
        }
        let p1 = 1.0 - p2;
        if !(0.0..=p1).contains(&e1) {
            return Err(ConfusionError::InvalidRates("e1 must lie in [0, p1]"));
        }
        if !(0.0..=p2).contains(&e2) {
            return Err(ConfusionError::InvalidRates("e2 must lie in [0, p2]"));
        }
        Self::new(p1 - e1, e1, e2, p2 - e2)
    }

    pub fn cr1(&self) -> f64 {
        self.cr1
    }

    pub fn cr2(&self) -> f64 {
        self.cr2
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    pub fn e2(&self) -> f64 {
        self.e2
    }

    pub fn p1(&self) -> f64 {
        self.cr1 + self.e1
    }

    pub fn p2(&self) -> f64 {
        self.cr2 + self.e2
    }

    /// Fraction of class 1 misclassified, `E1 / p1`.
    pub fn e1_over_p1(&self) -> f64 {
        self.e1 / self.p1()
    }

    /// Fraction of class 2 misclassified, `E2 / p2`.
    pub fn e2_over_p2(&self) -> f64 {
        self.e2 / self.p2()
    }

    /// Class-imbalance ratio `p1 / p2`; above one when class 2 is the minority.
    pub fn skew_ratio(&self) -> f64 {
        self.p1() / self.p2()
    }

    /// Scales the rates back up to a matrix over `n` samples.
    pub fn denormalize(&self, n: f64) -> Result<ConfusionMatrix, ConfusionError> {
        if !(n.is_finite() && n > 0.0) {
            return Err(ConfusionError::InvalidCount(n));
        }
        ConfusionMatrix::new(n * self.cr1, n * self.e1, n * self.e2, n * self.cr2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn normalize_balanced() {
        let r = ConfusionMatrix::from_counts(40, 10, 10, 40)
            .unwrap()
            .normalize()
            .unwrap();
        assert_abs_diff_eq!(r.cr1(), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(r.e1(), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(r.e2(), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(r.cr2(), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn normalize_skewed_matrix() {
        let r = ConfusionMatrix::from_counts(8000, 1000, 500, 500)
            .unwrap()
            .normalize()
            .unwrap();
        assert_abs_diff_eq!(r.e1(), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(r.e2(), 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(r.p2(), 0.1, epsilon = 1e-15);
    }

    #[test]
    fn normalize_perfect_classifier() {
        let r = ConfusionMatrix::from_counts(1, 0, 0, 1)
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!((r.cr1(), r.cr2(), r.e1(), r.e2()), (0.5, 0.5, 0.0, 0.0));
    }

    #[test]
    fn rejects_empty_and_single_class() {
        assert_eq!(
            ConfusionMatrix::new(0.0, 0.0, 0.0, 0.0),
            Err(ConfusionError::EmptyMatrix)
        );
        let only_negatives = ConfusionMatrix::from_counts(5, 3, 0, 0).unwrap();
        assert_eq!(
            only_negatives.normalize(),
            Err(ConfusionError::MissingClass { class: 2 })
        );
        let only_positives = ConfusionMatrix::from_counts(0, 0, 2, 7).unwrap();
        assert_eq!(
            only_positives.normalize(),
            Err(ConfusionError::MissingClass { class: 1 })
        );
    }

    #[test]
    fn rejects_negative_entries() {
        assert!(matches!(
            ConfusionMatrix::new(1.0, -1.0, 0.0, 1.0),
            Err(ConfusionError::InvalidEntry { field: "fp", .. })
        ));
        assert!(ClassRates::new(0.5, 0.1, 0.1, 0.5).is_err());
    }

    #[test]
    fn skew_ratio_examples() {
        let at = |p2: f64| ClassRates::from_errors(p2, 0.0, 0.0).unwrap().skew_ratio();
        assert_eq!(at(0.5), 1.0);
        assert_abs_diff_eq!(at(0.1), 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(at(0.00001), 99999.0, epsilon = 1e-6);
    }

    #[test]
    fn denormalize_examples() {
        let r = ClassRates::new(0.4, 0.1, 0.1, 0.4).unwrap();
        let m = r.denormalize(100.0).unwrap();
        assert_abs_diff_eq!(m.tn(), 40.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.fp(), 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.fn_(), 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.tp(), 40.0, epsilon = 1e-12);

        let r = ClassRates::from_errors(0.1, 0.1, 0.05).unwrap();
        let m = r.denormalize(10000.0).unwrap();
        assert_abs_diff_eq!(m.tn(), 8000.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.fp(), 1000.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.fn_(), 500.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.tp(), 500.0, epsilon = 1e-9);

        let unit = r.denormalize(1.0).unwrap();
        assert_eq!(
            (unit.tn(), unit.fp(), unit.fn_(), unit.tp()),
            (r.cr1(), r.e1(), r.e2(), r.cr2())
        );
        assert!(r.denormalize(0.0).is_err());
    }
}

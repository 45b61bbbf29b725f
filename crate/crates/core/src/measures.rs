//! The twelve binary-classification measures, plus the parametric `F_β`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::confusion::ClassRates;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("{0} is undefined for these rates")]
    DegenerateMeasure(MeasureId),
    #[error("F-beta requires a positive finite beta, got {0}")]
    InvalidBeta(f64),
}

/// Which measure to evaluate.
///
/// The twelve parameter-free variants are listed in their canonical
/// order, see [`MeasureId::ALL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureId {
    /// Total accuracy rate `A_T = 1 - E1 - E2`.
    TotalAccuracy,
    /// Arithmetic mean of precision and recall.
    ArithmeticPr,
    /// Geometric mean of precision and recall.
    GeometricPr,
    /// Quadratic mean of precision and recall.
    QuadraticPr,
    /// Harmonic mean of precision and recall, i.e. `F1`.
    F1,
    /// Arithmetic mean of the accuracy rates, i.e. balanced accuracy / single-point AUC.
    ArithmeticAccuracy,
    /// Geometric mean of the accuracy rates (G-mean).
    GeometricAccuracy,
    /// Quadratic mean of the accuracy rates.
    QuadraticAccuracy,
    /// Harmonic mean of the accuracy rates.
    HarmonicAccuracy,
    /// Balanced error rate.
    BalancedErrorRate,
    /// Matthews correlation coefficient.
    Mcc,
    /// Cohen's kappa.
    Kappa,
    /// `F_β = (1 + β²) P R / (β² P + R)`.
    FBeta(f64),
}

impl MeasureId {
    pub const ALL: [MeasureId; 12] = [
        MeasureId::TotalAccuracy,
        MeasureId::ArithmeticPr,
        MeasureId::GeometricPr,
        MeasureId::QuadraticPr,
        MeasureId::F1,
        MeasureId::ArithmeticAccuracy,
        MeasureId::GeometricAccuracy,
        MeasureId::QuadraticAccuracy,
        MeasureId::HarmonicAccuracy,
        MeasureId::BalancedErrorRate,
        MeasureId::Mcc,
        MeasureId::Kappa,
    ];

    /// Short identifier used in files and on the command line.
    pub fn code(&self) -> &'static str {
        match self {
            MeasureId::TotalAccuracy => "AT",
            MeasureId::ArithmeticPr => "APR",
            MeasureId::GeometricPr => "GPR",
            MeasureId::QuadraticPr => "QPR",
            MeasureId::F1 => "F1",
            MeasureId::ArithmeticAccuracy => "AAI",
            MeasureId::GeometricAccuracy => "GAI",
            MeasureId::QuadraticAccuracy => "QAI",
            MeasureId::HarmonicAccuracy => "HAI",
            MeasureId::BalancedErrorRate => "BER",
            MeasureId::Mcc => "MCC",
            MeasureId::Kappa => "KAPPA",
            MeasureId::FBeta(_) => "FBETA",
        }
    }

    pub fn orientation(&self) -> Orientation {
        match self {
            MeasureId::BalancedErrorRate => Orientation::Minimize,
            _ => Orientation::Maximize,
        }
    }

    /// Smallest attainable value: -1 for MCC and kappa, 0 otherwise.
    pub fn min_value(&self) -> f64 {
        match self {
            MeasureId::Mcc | MeasureId::Kappa => -1.0,
            _ => 0.0,
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self, MeasureId::FBeta(_))
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::FBeta(beta) => write!(f, "FBETA:{beta}"),
            other => f.write_str(other.code()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown measure name")]
pub struct UnknownMeasure;

impl FromStr for MeasureId {
    type Err = UnknownMeasure;

    /// Accepts the codes from [`MeasureId::code`], a few common aliases,
    /// and `FBETA:<beta>`. Matching is case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let upper = s.to_ascii_uppercase();
        if let Some(beta) = upper
            .strip_prefix("FBETA:")
            .or_else(|| upper.strip_prefix("FBETA="))
        {
            let beta: f64 = beta.parse().map_err(|_| UnknownMeasure)?;
            if !(beta.is_finite() && beta > 0.0) {
                return Err(UnknownMeasure);
            }
            return Ok(MeasureId::FBeta(beta));
        }
        let id = match upper.as_str() {
            "AT" | "A_T" | "ACC" | "ACCURACY" => MeasureId::TotalAccuracy,
            "APR" | "A_PR" => MeasureId::ArithmeticPr,
            "GPR" | "G_PR" => MeasureId::GeometricPr,
            "QPR" | "Q_PR" => MeasureId::QuadraticPr,
            "F1" | "HPR" | "H_PR" | "HPR_F1" => MeasureId::F1,
            "AAI" | "A_AI" | "AUCB" | "AUC_B" | "AAI_AUCB" | "BACC" => {
                MeasureId::ArithmeticAccuracy
            }
            "GAI" | "G_AI" | "GMEAN" => MeasureId::GeometricAccuracy,
            "QAI" | "Q_AI" => MeasureId::QuadraticAccuracy,
            "HAI" | "H_AI" => MeasureId::HarmonicAccuracy,
            "BER" => MeasureId::BalancedErrorRate,
            "MCC" => MeasureId::Mcc,
            "KAPPA" | "K" => MeasureId::Kappa,
            _ => return Err(UnknownMeasure),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Maximize,
    Minimize,
}

impl Orientation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::Maximize => "maximize",
            Orientation::Minimize => "minimize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub id: MeasureId,
    pub value: f64,
    pub orientation: Orientation,
}

/// Precision `P = CR2 / (CR2 + E1)` and recall `R = CR2 / p2`.
///
/// With no positive predictions (`CR2 + E1 = 0`) precision is taken as 0.
pub fn precision_recall(r: &ClassRates) -> (f64, f64) {
    let predicted_positive = r.cr2() + r.e1();
    let precision = if predicted_positive > 0.0 {
        r.cr2() / predicted_positive
    } else {
        0.0
    };
    (precision, r.cr2() / r.p2())
}

/// Per-class accuracy rates `A1 = CR1 / p1` (specificity) and `A2 = CR2 / p2` (sensitivity).
pub fn accuracy_rates(r: &ClassRates) -> (f64, f64) {
    (r.cr1() / r.p1(), r.cr2() / r.p2())
}

fn arithmetic(a: f64, b: f64) -> f64 {
    0.5 * (a + b)
}

fn geometric(a: f64, b: f64) -> f64 {
    libm::sqrt(a * b)
}

fn quadratic(a: f64, b: f64) -> f64 {
    libm::sqrt(0.5 * (a * a + b * b))
}

// 0 when both arguments vanish.
fn harmonic(a: f64, b: f64) -> f64 {
    let sum = a + b;
    if sum > 0.0 {
        2.0 * a * b / sum
    } else {
        0.0
    }
}

fn f_beta(beta: f64, precision: f64, recall: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * precision + recall;
    if denom > 0.0 {
        (1.0 + b2) * precision * recall / denom
    } else {
        0.0
    }
}

fn mcc(r: &ClassRates) -> Result<f64, MeasureError> {
    let numerator = r.cr2() * r.cr1() - r.e1() * r.e2();
    let predicted_negative = r.cr1() + r.e2();
    let predicted_positive = r.cr2() + r.e1();
    let denom_sq = r.p1() * r.p2() * predicted_negative * predicted_positive;
    if denom_sq > 0.0 {
        // Rounding can push |value| a hair past 1 for perfect classifiers.
        Ok((numerator / libm::sqrt(denom_sq)).clamp(-1.0, 1.0))
    } else if numerator == 0.0 {
        Ok(0.0)
    } else {
        Err(MeasureError::DegenerateMeasure(MeasureId::Mcc))
    }
}

fn kappa(r: &ClassRates) -> Result<f64, MeasureError> {
    let observed = r.cr1() + r.cr2();
    let chance = r.p1() * (r.cr1() + r.e2()) + r.p2() * (r.cr2() + r.e1());
    let denom = 1.0 - chance;
    if denom > 0.0 {
        Ok(((observed - chance) / denom).clamp(-1.0, 1.0))
    } else {
        Err(MeasureError::DegenerateMeasure(MeasureId::Kappa))
    }
}

/// Evaluates one measure.
pub fn evaluate(id: MeasureId, r: &ClassRates) -> Result<MeasureValue, MeasureError> {
    let (precision, recall) = precision_recall(r);
    let (a1, a2) = accuracy_rates(r);
    let value = match id {
        MeasureId::TotalAccuracy => r.cr1() + r.cr2(),
        MeasureId::ArithmeticPr => arithmetic(precision, recall),
        MeasureId::GeometricPr => geometric(precision, recall),
        MeasureId::QuadraticPr => quadratic(precision, recall),
        MeasureId::F1 => harmonic(precision, recall),
        MeasureId::ArithmeticAccuracy => arithmetic(a1, a2),
        MeasureId::GeometricAccuracy => geometric(a1, a2),
        MeasureId::QuadraticAccuracy => quadratic(a1, a2),
        MeasureId::HarmonicAccuracy => harmonic(a1, a2),
        MeasureId::BalancedErrorRate => 0.5 * (r.e1_over_p1() + r.e2_over_p2()),
        MeasureId::Mcc => mcc(r)?,
        MeasureId::Kappa => kappa(r)?,
        MeasureId::FBeta(beta) => {
            if !(beta.is_finite() && beta > 0.0) {
                return Err(MeasureError::InvalidBeta(beta));
            }
            // Keep FBETA:1 bit-identical to F1.
            if beta == 1.0 {
                harmonic(precision, recall)
            } else {
                f_beta(beta, precision, recall)
            }
        }
    };
    Ok(MeasureValue {
        id,
        value,
        orientation: id.orientation(),
    })
}

/// One row of an [`evaluate_all`] batch; a degenerate measure is carried
/// as an error without aborting the rest of the batch.
pub type MeasureEntry = (MeasureId, Result<MeasureValue, MeasureError>);

/// All twelve measures in canonical order.
pub fn evaluate_all(r: &ClassRates) -> Vec<MeasureEntry> {
    evaluate_all_with_betas(r, &[])
}

/// All twelve measures followed by `F_β` for each requested β.
pub fn evaluate_all_with_betas(r: &ClassRates, betas: &[f64]) -> Vec<MeasureEntry> {
    MeasureId::ALL
        .iter()
        .copied()
        .chain(betas.iter().map(|&b| MeasureId::FBeta(b)))
        .map(|id| (id, evaluate(id, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scenario_one(p2: f64) -> ClassRates {
        ClassRates::from_errors(p2, 0.1, p2 / 2.0).unwrap()
    }

    fn value(id: MeasureId, r: &ClassRates) -> f64 {
        evaluate(id, r).unwrap().value
    }

    #[test]
    fn precision_recall_examples() {
        let (p, r) = precision_recall(&scenario_one(0.1));
        assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r, 0.5, epsilon = 1e-15);

        let perfect = ClassRates::from_errors(0.3, 0.0, 0.0).unwrap();
        assert_eq!(precision_recall(&perfect), (1.0, 1.0));

        let no_positive_predictions = ClassRates::from_errors(0.3, 0.0, 0.3).unwrap();
        assert_eq!(precision_recall(&no_positive_predictions), (0.0, 0.0));
    }

    #[test]
    fn accuracy_rate_examples() {
        let (a1, a2) = accuracy_rates(&scenario_one(0.5));
        assert_abs_diff_eq!(a1, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(a2, 0.5, epsilon = 1e-15);

        let all_missed = ClassRates::from_errors(0.2, 0.05, 0.2).unwrap();
        assert_eq!(accuracy_rates(&all_missed).1, 0.0);
    }

    #[test]
    fn table_values_for_skewed_data() {
        assert_abs_diff_eq!(
            value(MeasureId::BalancedErrorRate, &scenario_one(0.1)),
            0.306,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(
            value(MeasureId::F1, &scenario_one(0.05)),
            0.286,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(
            value(MeasureId::BalancedErrorRate, &scenario_one(0.5)),
            0.350,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(
            value(MeasureId::F1, &scenario_one(0.5)),
            0.588,
            epsilon = 5e-4
        );
    }

    #[test]
    fn mcc_and_kappa_balanced() {
        let r = ClassRates::new(0.4, 0.1, 0.1, 0.4).unwrap();
        assert_abs_diff_eq!(value(MeasureId::Mcc, &r), 0.6, epsilon = 1e-14);
        assert_abs_diff_eq!(value(MeasureId::Kappa, &r), 0.6, epsilon = 1e-14);
    }

    #[test]
    fn symmetric_matrix_means_coincide() {
        let r = ClassRates::new(0.4, 0.1, 0.1, 0.4).unwrap();
        assert_abs_diff_eq!(value(MeasureId::ArithmeticPr, &r), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(
            value(MeasureId::ArithmeticAccuracy, &r),
            0.8,
            epsilon = 1e-15
        );
    }

    #[test]
    fn perfect_classifier() {
        let r = ClassRates::from_errors(0.25, 0.0, 0.0).unwrap();
        for (id, v) in evaluate_all(&r) {
            let v = v.unwrap().value;
            let expected = if id == MeasureId::BalancedErrorRate {
                0.0
            } else {
                1.0
            };
            assert_abs_diff_eq!(v, expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn uninformative_classifier_mcc_is_zero() {
        // Everything predicted as class 1: the predicted-positive margin vanishes.
        let r = ClassRates::from_errors(0.2, 0.0, 0.2).unwrap();
        assert_eq!(value(MeasureId::Mcc, &r), 0.0);
        assert_eq!(value(MeasureId::Kappa, &r), 0.0);
        assert_eq!(value(MeasureId::GeometricPr, &r), 0.0);
        assert_eq!(value(MeasureId::F1, &r), 0.0);
    }

    #[test]
    fn batch_order_and_betas() {
        let r = scenario_one(0.1);
        let all = evaluate_all_with_betas(&r, &[1.0, 2.0]);
        assert_eq!(all.len(), 14);
        let ids: Vec<MeasureId> = all.iter().map(|(id, _)| *id).collect();
        assert_eq!(&ids[..12], &MeasureId::ALL[..]);
        let f1 = all[4].1.unwrap().value;
        assert_eq!(all[12].1.unwrap().value, f1);
        assert!(all[13].1.unwrap().value != f1);
        assert!(matches!(
            evaluate(MeasureId::FBeta(-1.0), &r),
            Err(MeasureError::InvalidBeta(_))
        ));
    }

    #[test]
    fn names_round_trip() {
        for id in MeasureId::ALL {
            assert_eq!(id.code().parse::<MeasureId>().unwrap(), id);
        }
        assert_eq!("hpr_f1".parse::<MeasureId>().unwrap(), MeasureId::F1);
        assert_eq!(
            "AUCB".parse::<MeasureId>().unwrap(),
            MeasureId::ArithmeticAccuracy
        );
        assert_eq!(
            "FBETA:2".parse::<MeasureId>().unwrap(),
            MeasureId::FBeta(2.0)
        );
        assert!("FBETA:0".parse::<MeasureId>().is_err());
        assert!("nope".parse::<MeasureId>().is_err());
    }

    #[test]
    fn only_ber_minimizes() {
        for id in MeasureId::ALL {
            let expected = if id == MeasureId::BalancedErrorRate {
                Orientation::Minimize
            } else {
                Orientation::Maximize
            };
            assert_eq!(id.orientation(), expected);
        }
    }
}

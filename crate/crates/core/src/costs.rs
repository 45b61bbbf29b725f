//! Equivalent misclassification costs implied by each measure.
//!
//! Every measure, once turned into a risk to minimize, can be read as a
//! weighted error `λ12·E1 + λ21·E2`. The weights depend on the class-2
//! population rate `p2` and fall into four families:
//!
//! | type | `λ12(p2)`      | `λ21(p2)`      |
//! |------|----------------|----------------|
//! | I    | 1              | 1              |
//! | II   | 1/p2           | 1/p2           |
//! | III  | 1/(1-p2)       | 1/p2           |
//! | IV   | 1/(p2(1-p2))   | 1/(p2(1-p2))   |
//!
//! Only type III charges more for an error on the smaller class, so only
//! type III measures are [`Verdict::Proper`].

use core::fmt;

use crate::confusion::ClassRates;
use crate::measures::{self, MeasureError, MeasureId};

/// Residual bound for the closed-form cost identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum CostError {
    #[error("no tabulated cost profile for {0}; use apparent costs instead")]
    Unsupported(MeasureId),
    #[error("population rate p2 = {0} is outside (0, 1)")]
    DomainError(f64),
    #[error("apparent costs are undefined when class 2 is entirely misclassified (p2 = E2)")]
    DegenerateApparentCost,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CostType {
    I,
    II,
    III,
    IV,
}

impl CostType {
    pub fn as_str(&self) -> &'static str {
        match self {
            CostType::I => "I",
            CostType::II => "II",
            CostType::III => "III",
            CostType::IV => "IV",
        }
    }

    /// `(λ12, λ21)` at `p2`, which must already be inside `(0, 1)`.
    ///
    /// Values may overflow to `+inf` as `p2` approaches a boundary.
    pub fn lambdas(&self, p2: f64) -> (f64, f64) {
        let p1 = 1.0 - p2;
        match self {
            CostType::I => (1.0, 1.0),
            CostType::II => (1.0 / p2, 1.0 / p2),
            CostType::III => (1.0 / p1, 1.0 / p2),
            CostType::IV => {
                let l = 1.0 / (p2 * p1);
                (l, l)
            }
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            CostType::III => Verdict::Proper,
            _ => Verdict::Improper,
        }
    }
}

impl fmt::Display for CostType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the tabulated cost functions relate to the measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// The measure is exactly an affine transform of `λ12·E1 + λ21·E2`.
    Exact,
    /// First-order approximation that bounds the exact cost from below,
    /// under the profile's [`BoundCondition`].
    ApproximateLowerBound,
    /// First-order approximation whose bounding behaviour is unknown.
    ApproximateUnknownBound,
}

impl Exactness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::ApproximateLowerBound => "approximate_lower_bound",
            Exactness::ApproximateUnknownBound => "approximate_unknown_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Improper,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::Improper => "improper",
        }
    }
}

/// When an approximate cost function is a lower bound of the exact one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundCondition {
    /// Not applicable: the cost functions are exact.
    Exact,
    /// Holds for any error rates.
    Always,
    /// Holds when `E1 > factor · E2`.
    E1Exceeds(f64),
    /// Bounding behaviour is not known.
    Unknown,
}

impl BoundCondition {
    pub fn holds(&self, r: &ClassRates) -> bool {
        match *self {
            BoundCondition::Exact | BoundCondition::Always => true,
            BoundCondition::E1Exceeds(factor) => r.e1() > factor * r.e2(),
            BoundCondition::Unknown => false,
        }
    }
}

/// Cost functions of one parameter-free measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostProfile {
    pub id: MeasureId,
    pub cost_type: CostType,
    pub exactness: Exactness,
    pub bound_condition: BoundCondition,
}

impl CostProfile {
    /// Proper iff the cost type is III.
    pub fn verdict(&self) -> Verdict {
        self.cost_type.verdict()
    }

    pub fn lambda12(&self, p2: f64) -> Result<f64, CostError> {
        self.eval(p2).map(|(l12, _)| l12)
    }

    pub fn lambda21(&self, p2: f64) -> Result<f64, CostError> {
        self.eval(p2).map(|(_, l21)| l21)
    }

    /// `(λ12, λ21)` at population rate `p2 ∈ (0, 1)`.
    pub fn eval(&self, p2: f64) -> Result<(f64, f64), CostError> {
        eval_costs(self, p2)
    }
}

/// Cost profile of one of the twelve parameter-free measures.
pub fn cost_profile(id: MeasureId) -> Result<CostProfile, CostError> {
    use BoundCondition as B;
    use CostType as T;
    use Exactness as X;

    let sqrt = libm::sqrt;
    let (cost_type, exactness, bound_condition) = match id {
        MeasureId::TotalAccuracy => (T::I, X::Exact, B::Exact),
        MeasureId::ArithmeticPr => (
            T::II,
            X::ApproximateLowerBound,
            B::E1Exceeds(2.0 + sqrt(5.0)),
        ),
        MeasureId::GeometricPr => (
            T::II,
            X::ApproximateLowerBound,
            B::E1Exceeds(3.0 + 2.0 * sqrt(3.0)),
        ),
        MeasureId::QuadraticPr => (
            T::II,
            X::ApproximateLowerBound,
            B::E1Exceeds(5.0 / 3.0 + 2.0 / 3.0 * sqrt(7.0)),
        ),
        MeasureId::F1 => (T::II, X::ApproximateLowerBound, B::Always),
        MeasureId::ArithmeticAccuracy | MeasureId::BalancedErrorRate => {
            (T::III, X::Exact, B::Exact)
        }
        MeasureId::GeometricAccuracy
        | MeasureId::QuadraticAccuracy
        | MeasureId::HarmonicAccuracy => (T::III, X::ApproximateLowerBound, B::Always),
        MeasureId::Mcc | MeasureId::Kappa => (T::IV, X::ApproximateUnknownBound, B::Unknown),
        MeasureId::FBeta(_) => return Err(CostError::Unsupported(id)),
    };
    Ok(CostProfile {
        id,
        cost_type,
        exactness,
        bound_condition,
    })
}

/// `(λ12, λ21)` of `profile` at `p2`.
pub fn eval_costs(profile: &CostProfile, p2: f64) -> Result<(f64, f64), CostError> {
    if !(p2 > 0.0 && p2 < 1.0) {
        return Err(CostError::DomainError(p2));
    }
    Ok(profile.cost_type.lambdas(p2))
}

/// Error-coupled ("apparent") costs of `F_β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApparentCosts {
    pub lambda12: f64,
    pub lambda21: f64,
    pub beta: f64,
}

/// `λ12 = 1/(p2 - E2)`, `λ21 = β²/(p2 - E2)`, from writing `F_β` as the
/// risk `(E1 + β² E2)/(p2 - E2)`.
pub fn apparent_costs_fbeta(r: &ClassRates, beta: f64) -> Result<ApparentCosts, CostError> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(MeasureError::InvalidBeta(beta).into());
    }
    // p2 - E2 is CR2; use it directly rather than subtracting.
    let correct_minority = r.cr2();
    if correct_minority <= 0.0 {
        return Err(CostError::DegenerateApparentCost);
    }
    Ok(ApparentCosts {
        lambda12: 1.0 / correct_minority,
        lambda21: beta * beta / correct_minority,
        beta,
    })
}

/// Non-negative risk equivalent to a measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Risk {
    Finite(f64),
    /// The measure sits at its minimum value.
    Infinite,
}

impl Risk {
    pub fn value(&self) -> f64 {
        match self {
            Risk::Finite(v) => *v,
            Risk::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Risk::Infinite)
    }
}

/// Turns a measure into a quantity to minimize without changing which
/// classifier is preferred.
///
/// `A_T` becomes `E1 + E2`, BER is used as is, and every other measure `M`
/// becomes `1 / (M - M_min)`.
pub fn risk_transform(id: MeasureId, r: &ClassRates) -> Result<Risk, CostError> {
    match id {
        MeasureId::TotalAccuracy => Ok(Risk::Finite(r.e1() + r.e2())),
        MeasureId::BalancedErrorRate => Ok(Risk::Finite(measures::evaluate(id, r)?.value)),
        _ => {
            let m = measures::evaluate(id, r)?.value;
            let gap = m - id.min_value();
            if gap > 0.0 {
                Ok(Risk::Finite(1.0 / gap))
            } else {
                Ok(Risk::Infinite)
            }
        }
    }
}

/// Residual of the closed-form relation between a measure and its costs:
///
/// * BER: `BER = ½(λ12·E1 + λ21·E2)` with type III costs,
/// * F1: `1/F1 = 1 + ½(λ12·E1 + λ21·E2)` with apparent costs at β = 1.
pub fn verify_cost_identity(id: MeasureId, r: &ClassRates) -> Result<f64, CostError> {
    match id {
        MeasureId::BalancedErrorRate => {
            let ber = measures::evaluate(id, r)?.value;
            let (l12, l21) = eval_costs(&cost_profile(id)?, r.p2())?;
            Ok((ber - 0.5 * (l12 * r.e1() + l21 * r.e2())).abs())
        }
        MeasureId::F1 => {
            let costs = apparent_costs_fbeta(r, 1.0)?;
            let f1 = measures::evaluate(id, r)?.value;
            let rhs = 1.0 + 0.5 * (costs.lambda12 * r.e1() + costs.lambda21 * r.e2());
            Ok((1.0 / f1 - rhs).abs())
        }
        other => Err(CostError::Unsupported(other)),
    }
}

/// Whether the profile's approximate costs are a lower bound at `r`.
///
/// Exact profiles and the "any error rates" rows always hold; MCC and
/// kappa, whose bound behaviour is unknown, never do.
pub fn bound_condition_holds(id: MeasureId, r: &ClassRates) -> Result<bool, CostError> {
    Ok(cost_profile(id)?.bound_condition.holds(r))
}

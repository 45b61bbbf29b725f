//! Two univariate Gaussian classes separated by a single threshold.
//!
//! Samples with `x > x_b` are predicted as class 2, so with `μ1 < μ2` the
//! class-1 error is the right tail of class 1 and the class-2 error the
//! left tail of class 2. All rates come from exact normal CDFs.

use alloc::vec::Vec;

use crate::confusion::{ClassRates, ConfusionError};
use crate::measures::{self, MeasureError, MeasureId};
use crate::optimize::{self, GoldenSection, OptimizeError};

/// Grid points used to bracket the optimum before golden-section refinement.
pub const GRID_POINTS: usize = 4096;
/// Final golden-section bracket width.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;
/// The boundary search spans this many standard deviations past each mean.
pub const SEARCH_SIGMAS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GaussianError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(&'static str),
    #[error("closed-form boundary needs equal class variances")]
    UnequalVariance,
    #[error("{0} has no finite optimum on the search interval")]
    NonFinite(MeasureId),
    #[error(transparent)]
    Rates(#[from] ConfusionError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Standard normal CDF `Φ(z)`.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * core::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal survival function `1 - Φ(z)`, accurate deep in the right tail.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * core::f64::consts::FRAC_1_SQRT_2)
}

/// Class-conditional normals `N(μ1, σ1²)`, `N(μ2, σ2²)` with class-2 prior `p2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianScenario {
    mu1: f64,
    mu2: f64,
    sigma1: f64,
    sigma2: f64,
    p2: f64,
}

impl GaussianScenario {
    pub fn new(
        mu1: f64,
        mu2: f64,
        sigma1: f64,
        sigma2: f64,
        p2: f64,
    ) -> Result<Self, GaussianError> {
        if !(mu1.is_finite() && mu2.is_finite()) {
            return Err(GaussianError::InvalidScenario("means must be finite"));
        }
        if mu1 >= mu2 {
            return Err(GaussianError::InvalidScenario(
                "class 1 mean must be left of class 2 mean",
            ));
        }
        if !(sigma1.is_finite() && sigma1 > 0.0 && sigma2.is_finite() && sigma2 > 0.0) {
            return Err(GaussianError::InvalidScenario(
                "standard deviations must be positive",
            ));
        }
        if !(p2 > 0.0 && p2 < 1.0) {
            return Err(GaussianError::InvalidScenario("p2 must lie in (0, 1)"));
        }
        Ok(Self {
            mu1,
            mu2,
            sigma1,
            sigma2,
            p2,
        })
    }

    /// `μ1 = -1`, `μ2 = 1`, `σ1 = σ2 = 1`.
    pub fn unit(p2: f64) -> Result<Self, GaussianError> {
        Self::new(-1.0, 1.0, 1.0, 1.0, p2)
    }

    pub fn with_p2(&self, p2: f64) -> Result<Self, GaussianError> {
        Self::new(self.mu1, self.mu2, self.sigma1, self.sigma2, p2)
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn p1(&self) -> f64 {
        1.0 - self.p2
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// `[μ1 - 8σ1, μ2 + 8σ2]`.
    pub fn search_interval(&self) -> (f64, f64) {
        (
            self.mu1 - SEARCH_SIGMAS * self.sigma1,
            self.mu2 + SEARCH_SIGMAS * self.sigma2,
        )
    }

    /// Expected rates for the rule "class 2 iff x > x_b".
    pub fn rates_at(&self, x_b: f64) -> Result<ClassRates, GaussianError> {
        let z1 = (x_b - self.mu1) / self.sigma1;
        let z2 = (x_b - self.mu2) / self.sigma2;
        let p1 = self.p1();
        let p2 = self.p2;
        // Each tail comes straight from erfc; never as 1 - Φ.
        let cr1 = p1 * normal_cdf(z1);
        let e1 = p1 * normal_sf(z1);
        let e2 = p2 * normal_cdf(z2);
        let cr2 = p2 * normal_sf(z2);
        Ok(ClassRates::new(cr1, e1, e2, cr2)?)
    }

    /// Threshold maximizing total accuracy for equal variances:
    /// `(μ1 + μ2)/2 + σ² ln(p1/p2) / (μ2 - μ1)`.
    pub fn bayes_boundary_equal_variance(&self) -> Result<f64, GaussianError> {
        if self.sigma1 != self.sigma2 {
            return Err(GaussianError::UnequalVariance);
        }
        let var = self.sigma1 * self.sigma1;
        Ok(0.5 * (self.mu1 + self.mu2)
            + var * libm::log(self.p1() / self.p2) / (self.mu2 - self.mu1))
    }

    /// Quantity minimized by the boundary search. It orders boundaries the
    /// same way the measure does.
    fn objective(&self, id: MeasureId, x_b: f64) -> f64 {
        let Ok(r) = self.rates_at(x_b) else {
            return f64::NAN;
        };
        match id {
            // E1 + E2 shifted by the constant p2, which keeps relative
            // precision once both errors are deep in the tails.
            MeasureId::TotalAccuracy => r.e1() - r.cr2(),
            _ => match measures::evaluate(id, &r) {
                Ok(v) if id.orientation() == measures::Orientation::Minimize => v.value,
                Ok(v) => -v.value,
                Err(_) => f64::NAN,
            },
        }
    }

    /// Boundary that optimizes `id` over [`Self::search_interval`].
    pub fn optimize_boundary(&self, id: MeasureId) -> Result<OptimumSolution, GaussianError> {
        let (lo, hi) = self.search_interval();
        let golden = GoldenSection {
            tolerance: BOUNDARY_TOLERANCE,
            ..GoldenSection::default()
        };
        let minimum =
            optimize::grid_then_golden(|x| self.objective(id, x), lo, hi, GRID_POINTS, golden)
                .map_err(|e| match e {
                    OptimizeError::NonFinite => GaussianError::NonFinite(id),
                    _ => GaussianError::InvalidScenario("degenerate search interval"),
                })?;
        let rates = self.rates_at(minimum.x)?;
        let value = measures::evaluate(id, &rates)?.value;
        Ok(OptimumSolution {
            id,
            p2: self.p2,
            x_b: minimum.x,
            value,
            e1_over_p1: rates.e1_over_p1(),
            e2_over_p2: rates.e2_over_p2(),
        })
    }
}

/// Boundary optimizing one measure, with the per-class error fractions there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumSolution {
    pub id: MeasureId,
    pub p2: f64,
    pub x_b: f64,
    pub value: f64,
    pub e1_over_p1: f64,
    pub e2_over_p2: f64,
}

impl OptimumSolution {
    /// Class-imbalance ratio `p1 / p2` of the scenario this was solved for.
    pub fn skew_ratio(&self) -> f64 {
        (1.0 - self.p2) / self.p2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub id: MeasureId,
    pub p2: f64,
    pub result: Result<OptimumSolution, GaussianError>,
}

/// Optimum boundaries over a grid of measures and population rates.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub ids: Vec<MeasureId>,
    pub p2_values: Vec<f64>,
    /// Row-major by measure, then by `p2`, in input order.
    pub cells: Vec<SweepCell>,
}

impl Sweep {
    pub fn cell(&self, id_index: usize, p2_index: usize) -> &SweepCell {
        &self.cells[id_index * self.p2_values.len() + p2_index]
    }

    pub fn row(&self, id_index: usize) -> &[SweepCell] {
        let n = self.p2_values.len();
        &self.cells[id_index * n..(id_index + 1) * n]
    }

    pub fn first_error(&self) -> Option<&GaussianError> {
        self.cells.iter().find_map(|c| c.result.as_ref().err())
    }
}

/// Solves every `(id, p2)` pair, reusing the template's means and deviations.
/// A failing cell does not stop the sweep.
pub fn sweep(template: &GaussianScenario, ids: &[MeasureId], p2_values: &[f64]) -> Sweep {
    let mut cells = Vec::with_capacity(ids.len() * p2_values.len());
    for &id in ids {
        for &p2 in p2_values {
            let result = template.with_p2(p2).and_then(|s| s.optimize_boundary(id));
            cells.push(SweepCell { id, p2, result });
        }
    }
    Sweep {
        ids: ids.to_vec(),
        p2_values: p2_values.to_vec(),
        cells,
    }
}

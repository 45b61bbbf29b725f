//! Reproduction tables and plot-ready series.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::confusion::{ClassRates, ConfusionError};
use crate::costs::{self, CostError, CostType};
use crate::gaussian::{self, GaussianError, GaussianScenario, OptimumSolution, Sweep};
use crate::measures::{self, MeasureId};

/// Population rates of the fixed-error example.
pub const TABLE2_P2: [f64; 6] = [0.5, 0.1, 0.05, 0.01, 0.005, 0.001];
/// Class-1 error rate of the fixed-error example; `E2 = p2 / 2`.
pub const TABLE2_E1: f64 = 0.1;
pub const TABLE2_DEFAULT_N: f64 = 10_000.0;

/// Population rates of the Gaussian example.
pub const TABLE3_P2: [f64; 6] = [0.5, 0.1, 0.01, 0.001, 0.0001, 0.00001];
/// Measures compared in the Gaussian example.
pub const TABLE3_MEASURES: [MeasureId; 5] = [
    MeasureId::TotalAccuracy,
    MeasureId::BalancedErrorRate,
    MeasureId::F1,
    MeasureId::GeometricAccuracy,
    MeasureId::GeometricPr,
];

/// One `(x, y)` curve. Entries of `y` may be infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub x_name: String,
    pub y_name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Series {
    fn new(label: &str, x_name: &str, y_name: &str) -> Self {
        Self {
            label: label.to_string(),
            x_name: x_name.to_string(),
            y_name: y_name.to_string(),
            x: Vec::new(),
            y: Vec::new(),
        }
    }

    fn push(&mut self, x: f64, y: f64) {
        self.x.push(x);
        self.y.push(y);
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// BER and F1 together with their cost values at one population rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Column {
    pub p2: f64,
    pub e1: f64,
    pub e2: f64,
    pub ber: f64,
    pub ber_lambda12: f64,
    pub ber_lambda21: f64,
    pub f1: f64,
    pub f1_lambda12: f64,
    pub f1_lambda21: f64,
    pub ber_residual: f64,
    pub f1_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    pub n: f64,
    pub columns: Vec<Table2Column>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Rates(#[from] ConfusionError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

/// Fixed-error example: `E1 = 0.1`, `E2 = p2/2` over [`TABLE2_P2`], with
/// the rates passed through an `n`-sample confusion matrix.
pub fn table2(n: f64) -> Result<Table2, ReportError> {
    let ber_profile = costs::cost_profile(MeasureId::BalancedErrorRate)?;
    let mut columns = Vec::with_capacity(TABLE2_P2.len());
    for p2 in TABLE2_P2 {
        let ideal = ClassRates::from_errors(p2, TABLE2_E1, p2 / 2.0)?;
        let r = ideal.denormalize(n)?.normalize()?;
        let (ber_lambda12, ber_lambda21) = ber_profile.eval(r.p2())?;
        let apparent = costs::apparent_costs_fbeta(&r, 1.0)?;
        let ber = costs::risk_transform(MeasureId::BalancedErrorRate, &r)?.value();
        let f1 = measures::evaluate(MeasureId::F1, &r)
            .map_err(CostError::from)?
            .value;
        columns.push(Table2Column {
            p2: r.p2(),
            e1: r.e1(),
            e2: r.e2(),
            ber,
            ber_lambda12,
            ber_lambda21,
            f1,
            f1_lambda12: apparent.lambda12,
            f1_lambda21: apparent.lambda21,
            ber_residual: costs::verify_cost_identity(MeasureId::BalancedErrorRate, &r)?,
            f1_residual: costs::verify_cost_identity(MeasureId::F1, &r)?,
        });
    }
    Ok(Table2 { n, columns })
}

/// Optimum boundaries for a grid of measures and population rates.
#[derive(Debug, Clone, PartialEq)]
pub struct Table3 {
    pub scenario: GaussianScenario,
    pub sweep: Sweep,
}

impl Table3 {
    /// All solutions, or the first failure.
    pub fn solutions(&self) -> Result<Vec<OptimumSolution>, GaussianError> {
        self.sweep.cells.iter().map(|c| c.result).collect()
    }
}

/// Gaussian example with the unit scenario, [`TABLE3_MEASURES`] and [`TABLE3_P2`].
pub fn table3() -> Table3 {
    let template = GaussianScenario::unit(0.5).expect("unit scenario is valid");
    table3_for(&template, &TABLE3_MEASURES, &TABLE3_P2)
}

/// Gaussian example over an arbitrary scenario, measure list and `p2` grid.
pub fn table3_for(template: &GaussianScenario, ids: &[MeasureId], p2_values: &[f64]) -> Table3 {
    Table3 {
        scenario: *template,
        sweep: gaussian::sweep(template, ids, p2_values),
    }
}

/// The four cost-function shapes over a `p2` grid.
pub fn fig3_series(p2_grid: &[f64]) -> Result<Vec<Series>, CostError> {
    let mut inv_p2 = Series::new("1/p2", "p2", "lambda");
    let mut inv_p1 = Series::new("1/(1-p2)", "p2", "lambda");
    let mut inv_p1p2 = Series::new("1/(p2(1-p2))", "p2", "lambda");
    let mut one = Series::new("1", "p2", "lambda");
    for &p2 in p2_grid {
        if !(p2 > 0.0 && p2 < 1.0) {
            return Err(CostError::DomainError(p2));
        }
        let (l12, l21) = CostType::III.lambdas(p2);
        inv_p2.push(p2, l21);
        inv_p1.push(p2, l12);
        inv_p1p2.push(p2, CostType::IV.lambdas(p2).0);
        one.push(p2, CostType::I.lambdas(p2).0);
    }
    Ok(alloc::vec![inv_p2, inv_p1, inv_p1p2, one])
}

/// Cost values of F1 and BER from a [`table2`] result.
pub fn fig4_series(table: &Table2) -> Vec<Series> {
    let mut f1 = Series::new("F1 lambda12 = lambda21 = 1/(p2-E2)", "p2", "lambda");
    let mut ber21 = Series::new("BER lambda21 = 1/p2", "p2", "lambda");
    let mut ber12 = Series::new("BER lambda12 = 1/(1-p2)", "p2", "lambda");
    for c in &table.columns {
        f1.push(c.p2, c.f1_lambda12);
        ber21.push(c.p2, c.ber_lambda21);
        ber12.push(c.p2, c.ber_lambda12);
    }
    alloc::vec![f1, ber21, ber12]
}

/// Optimal `E2/p2` against `p1/p2`, one series per measure of a [`table3`] result.
pub fn fig5_series(table: &Table3) -> Result<Vec<Series>, GaussianError> {
    let sweep = &table.sweep;
    let mut out = Vec::with_capacity(sweep.ids.len());
    for (i, id) in sweep.ids.iter().enumerate() {
        let mut s = Series::new(&id.to_string(), "p1/p2", "E2/p2");
        for cell in sweep.row(i) {
            let sol = cell.result?;
            s.push(sol.skew_ratio(), sol.e2_over_p2);
        }
        out.push(s);
    }
    Ok(out)
}

/// `count` points log-spaced over `[lo, hi]`, both ends included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let (a, b) = (libm::log10(lo), libm::log10(hi));
            let step = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        libm::pow(10.0, a + step * i as f64)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn table2_column_values() {
        let t = table2(TABLE2_DEFAULT_N).unwrap();
        let c = t.columns[4];
        assert_eq!(c.p2, 0.005);
        assert_abs_diff_eq!(c.ber, 0.300, epsilon = 5e-4);
        assert_abs_diff_eq!(c.ber_lambda21, 200.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c.f1, 0.047, epsilon = 5e-4);
        assert_abs_diff_eq!(c.f1_lambda12, 400.0, epsilon = 1e-9);

        let c = t.columns[0];
        assert_abs_diff_eq!(c.ber, 0.350, epsilon = 5e-4);
        assert_abs_diff_eq!(c.f1, 0.588, epsilon = 5e-4);
        assert_abs_diff_eq!(t.columns[5].ber_lambda12, 1.001, epsilon = 5e-4);
        for c in &t.columns {
            assert!(c.ber_residual < 1e-10 && c.f1_residual < 1e-10);
        }
    }

    #[test]
    fn table2_rejects_bad_n() {
        assert!(table2(0.0).is_err());
    }

    #[test]
    fn table3_spot_values() {
        let t = table3();
        let gpr = t.sweep.cell(4, 4).result.unwrap();
        assert_abs_diff_eq!(gpr.value, 0.0436, epsilon = 1e-3);
        assert_abs_diff_eq!(gpr.x_b, 2.2840, epsilon = 1e-3);
        let f1 = t.sweep.cell(2, 0).result.unwrap();
        assert_abs_diff_eq!(f1.x_b, -0.1570, epsilon = 1e-3);
        for cell in t.sweep.row(3) {
            let s = cell.result.unwrap();
            assert_abs_diff_eq!(s.value, 0.8413, epsilon = 1e-4);
            assert_abs_diff_eq!(s.x_b, 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn fig3_values() {
        let s = fig3_series(&[0.5, 0.1]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(
            (s[0].y[0], s[1].y[0], s[2].y[0], s[3].y[0]),
            (2.0, 2.0, 4.0, 1.0)
        );
        assert_abs_diff_eq!(s[0].y[1], 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s[1].y[1], 1.111, epsilon = 5e-4);
        assert_abs_diff_eq!(s[2].y[1], 11.111, epsilon = 5e-4);
        assert_abs_diff_eq!(s[2].y[1], s[0].y[1] + s[1].y[1], epsilon = 1e-12);
        assert!(fig3_series(&[0.5, 1.0]).is_err());

        let tail = fig3_series(&[1e-9]).unwrap();
        assert!(tail[0].y[0] > 1e8);
        assert_abs_diff_eq!(tail[1].y[0], 1.0, epsilon = 1e-8);
    }

    #[test]
    fn fig4_and_fig5_values() {
        let f4 = fig4_series(&table2(TABLE2_DEFAULT_N).unwrap());
        assert_eq!(f4.len(), 3);
        assert_abs_diff_eq!(f4[0].y[2], 40.0, epsilon = 1e-9);

        let f5 = fig5_series(&table3()).unwrap();
        assert_eq!(f5.len(), 5);
        for y in &f5[1].y {
            assert_abs_diff_eq!(*y, 0.1587, epsilon = 1e-4);
        }
        assert_abs_diff_eq!(f5[0].x[1], 9.0, epsilon = 1e-9);
        assert_abs_diff_eq!(f5[0].y[1], 0.5393, epsilon = 1e-3);
        // Same boundary up to optimizer accuracy.
        for (ber, gai) in f5[1].y.iter().zip(&f5[3].y) {
            assert_abs_diff_eq!(*ber, *gai, epsilon = 1e-6);
        }
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-4, 0.5, 5);
        assert_eq!(g.len(), 5);
        assert_abs_diff_eq!(g[0], 1e-4, epsilon = 1e-18);
        assert_eq!(g[4], 0.5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(log_grid(1.0, 2.0, 0).is_empty());
    }
}

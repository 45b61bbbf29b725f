//! Bracketed scalar minimization: coarse grid scan followed by
//! golden-section refinement.

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum OptimizeError {
    #[error("search interval [{lo}, {hi}] is empty or not finite")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("grid scan needs at least 3 points, got {0}")]
    GridTooSmall(usize),
    #[error("objective is not finite anywhere on the search interval")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenSection {
    /// Final bracket width.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for GoldenSection {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 200,
        }
    }
}

// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_8;

impl GoldenSection {
    /// Minimizes `f` over `[lo, hi]`, assuming it is unimodal there.
    ///
    /// Non-finite objective values are treated as `+inf`.
    pub fn minimize<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<Minimum, OptimizeError>
    where
        F: FnMut(f64) -> f64,
    {
        check_interval(lo, hi)?;
        let mut eval = |x: f64| finite_or_inf(f(x));
        let (mut a, mut b) = (lo, hi);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = eval(c);
        let mut fd = eval(d);
        let mut evaluations = 2;
        for _ in 0..self.max_iterations {
            if (b - a).abs() <= self.tolerance {
                break;
            }
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = eval(d);
            }
            evaluations += 1;
        }
        let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
        if !value.is_finite() {
            return Err(OptimizeError::NonFinite);
        }
        Ok(Minimum {
            x,
            value,
            evaluations,
        })
    }
}

/// Scans `grid_points` evenly spaced points over `[lo, hi]`, then refines
/// inside the two grid cells around the best point.
///
/// The scan guards against a wrong bracket when the objective is flat or
/// multi-modal at grid resolution.
pub fn grid_then_golden<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    golden: GoldenSection,
) -> Result<Minimum, OptimizeError>
where
    F: FnMut(f64) -> f64,
{
    check_interval(lo, hi)?;
    if grid_points < 3 {
        return Err(OptimizeError::GridTooSmall(grid_points));
    }
    let step = (hi - lo) / (grid_points - 1) as f64;
    let at = |i: usize| {
        if i == grid_points - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };

    let mut best: Option<(usize, f64)> = None;
    for i in 0..grid_points {
        let v = f(at(i));
        if !v.is_finite() {
            continue;
        }
        if best.is_none_or(|(_, bv)| v < bv) {
            best = Some((i, v));
        }
    }
    let (best_i, best_v) = best.ok_or(OptimizeError::NonFinite)?;

    let a = at(best_i.saturating_sub(1));
    let b = at((best_i + 1).min(grid_points - 1));
    let refined = golden.minimize(&mut f, a, b)?;
    let grid_x = at(best_i);
    let evaluations = grid_points + refined.evaluations;
    // Golden section never does worse than its bracket, but keep the grid
    // point if rounding says otherwise.
    if refined.value <= best_v {
        Ok(Minimum {
            evaluations,
            ..refined
        })
    } else {
        Ok(Minimum {
            x: grid_x,
            value: best_v,
            evaluations,
        })
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<(), OptimizeError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(OptimizeError::InvalidInterval { lo, hi })
    }
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

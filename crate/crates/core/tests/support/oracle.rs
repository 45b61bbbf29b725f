//! Reference normal CDF that shares no code with the library.
//!
//! `Φ(z) = 1/2 + φ(z) · Σ z^(2n+1) / (1·3·5···(2n+1))` has only positive
//! terms for `z > 0`, so it sums without cancellation. The right tail uses
//! the Laplace continued fraction for the Mills ratio, evaluated bottom-up.
#![allow(dead_code)]

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn density(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// `Φ(z)` by the odd-power series.
pub fn cdf_series(z: f64) -> f64 {
    let a = z.abs();
    let mut term = a;
    let mut sum = a;
    let mut k = 1.0;
    loop {
        k += 2.0;
        term *= a * a / k;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    let upper = 0.5 + density(a) * sum;
    if z >= 0.0 {
        upper
    } else {
        1.0 - upper
    }
}

/// `1 - Φ(z)` for `z >= 2` by continued fraction,
/// `φ(z) / (z + 1/(z + 2/(z + 3/(z + ...))))`.
pub fn sf_continued_fraction(z: f64) -> f64 {
    assert!(z >= 2.0);
    let mut tail = z;
    for k in (1..=400).rev() {
        tail = z + k as f64 / tail;
    }
    density(z) / tail
}

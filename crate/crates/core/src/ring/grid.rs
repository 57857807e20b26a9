//! Sample grids on circles `|z| = r` and grid sup-norm estimates.

use std::f64::consts::TAU;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{RingError, VecFn};

/// Fewest points a grid may have.
pub const MIN_GRID_POINTS: usize = 64;
pub const DEFAULT_POINTS_PER_CIRCLE: usize = 4096;

/// Points `r e^{2 pi i k / N}` for each configured radius `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub circles: Vec<f64>,
    pub points_per_circle: usize,
}

impl Default for GridSpec {
    /// `|z| = 1` and `|z| = 1 - 2^-10`, 4096 points each.
    fn default() -> Self {
        GridSpec { circles: vec![1.0, 1.0 - 2f64.powi(-10)], points_per_circle: DEFAULT_POINTS_PER_CIRCLE }
    }
}

impl GridSpec {
    pub fn new(circles: Vec<f64>, points_per_circle: usize) -> Result<Self, RingError> {
        if circles.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(RingError::Domain("grid radii must lie in [0, 1]".into()));
        }
        let g = GridSpec { circles, points_per_circle };
        if g.len() < MIN_GRID_POINTS {
            return Err(RingError::Domain(format!("grid has {} points, need at least {MIN_GRID_POINTS}", g.len())));
        }
        Ok(g)
    }

    /// Default circles with a custom resolution.
    pub fn with_points(points_per_circle: usize) -> Result<Self, RingError> {
        Self::new(Self::default().circles, points_per_circle)
    }

    pub fn len(&self) -> usize {
        self.circles.len() * self.points_per_circle
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.points_per_circle;
        self.circles.iter().flat_map(move |&r| (0..n).map(move |k| Complex64::from_polar(r, TAU * k as f64 / n as f64)))
    }
}

/// Largest `l^2` norm of `F(z)` over the grid.
///
/// This is a lower estimate of `sup_{|z|<1} ||F(z)||`; refining the grid by
/// an integer factor never decreases it.
pub fn sup_norm_estimate(f: &VecFn, grid: &GridSpec) -> f64 {
    let fl: Vec<_> = f.iter().filter(|e| !e.is_zero()).map(|e| e.to_float()).collect();
    if fl.is_empty() {
        return 0.0;
    }
    grid.points().map(|z| fl.iter().map(|e| e.eval(z).norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max)
}

/// Largest modulus of a scalar function over the grid.
pub fn sup_abs_estimate(f: &super::RFunc, grid: &GridSpec) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let fl = f.to_float();
    grid.points().map(|z| fl.eval(z).norm()).fold(0.0, f64::max)
}

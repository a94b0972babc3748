use serde::Serialize;

use crate::duopoly::{GameParams, Model};
use crate::error::{Error, Result};

/// Number of steps used by [`ProfileGrid::default_for`].
pub const DEFAULT_STEPS: usize = 2000;

/// Uniform discretization `{k * x_max / steps : k = 0..=steps}` of one
/// player's strategy axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileGrid {
    x_max: f64,
    steps: usize,
}

impl ProfileGrid {
    pub fn new(x_max: f64, steps: usize) -> Result<Self> {
        if steps == 0 || !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::EmptyGrid);
        }
        Ok(ProfileGrid { x_max, steps })
    }

    /// Grid over `[0, x_max]` whose step is `h` rounded to divide `x_max`.
    pub fn with_step(x_max: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::EmptyGrid);
        }
        let steps = (x_max / h).round();
        if !(steps >= 1.0 && steps < u32::MAX as f64) {
            return Err(Error::EmptyGrid);
        }
        Self::new(x_max, steps as usize)
    }

    /// Covers every breakpoint of the model's best replies with margin:
    /// `x_max = min(1.2 a / s, 50 a)` floored at `2a`, where `s` is
    /// `sinh g` or `sin² g`; `h = x_max / 2000`.
    pub fn default_for(params: &GameParams) -> Self {
        Self::new(Self::default_x_max(params), DEFAULT_STEPS).expect("valid params give a positive x_max")
    }

    pub fn default_x_max(params: &GameParams) -> f64 {
        let a = params.a();
        let spread = match params.model() {
            Model::Classical => 0.0,
            Model::Ldm => params.gamma().sinh(),
            Model::TwoQubit => params.gamma().sin().powi(2),
        };
        let x_max = if spread > 0.0 { (1.2 * a / spread).min(50.0 * a) } else { 0.0 };
        x_max.max(2.0 * a)
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.x_max / self.steps as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        debug_assert!(k <= self.steps);
        self.x_max * k as f64 / self.steps as f64
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.steps + 1).map(move |k| self.point(k))
    }

    /// Index of the grid point nearest to `x`, clamped to the grid.
    pub fn nearest_index(&self, x: f64) -> usize {
        let k = (x / self.step()).round();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.steps)
        }
    }

    pub fn snap(&self, x: f64) -> f64 {
        self.point(self.nearest_index(x))
    }

    pub fn contains_value(&self, x: f64) -> bool {
        (0.0..=self.x_max).contains(&x)
    }
}

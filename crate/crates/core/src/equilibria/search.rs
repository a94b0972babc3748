use rayon::prelude::*;

use crate::duopoly::{GameParams, StrategyProfile};
use crate::error::{Error, Result};
use crate::grid::ProfileGrid;

/// `2 a h`: the payoff change from one grid step near an equilibrium
/// manifold is `O(a h)`.
pub fn default_epsilon(params: &GameParams, grid: &ProfileGrid) -> f64 {
    2.0 * params.a() * grid.step()
}

/// The game restricted to `grid × grid`, with each player's best
/// unilateral grid payoff against every opponent point precomputed.
pub struct GridGame<'a> {
    params: &'a GameParams,
    grid: &'a ProfileGrid,
    best1: Vec<f64>,
    best2: Vec<f64>,
}

impl<'a> GridGame<'a> {
    pub fn new(params: &'a GameParams, grid: &'a ProfileGrid) -> Self {
        let n = grid.len();
        // best1[j] = max_i u1(x_i, x_j); best2[i] = max_j u2(x_i, x_j)
        let best1 = (0..n)
            .into_par_iter()
            .map(|j| {
                let x2 = grid.point(j);
                (0..n)
                    .map(|i| params.payoffs_unchecked(grid.point(i), x2).u1)
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let best2 = (0..n)
            .into_par_iter()
            .map(|i| {
                let x1 = grid.point(i);
                (0..n)
                    .map(|j| params.payoffs_unchecked(x1, grid.point(j)).u2)
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        GridGame { params, grid, best1, best2 }
    }

    pub fn grid(&self) -> &ProfileGrid {
        self.grid
    }

    /// Largest gain either player gets from a unilateral grid deviation
    /// at grid profile `(i, j)`.
    pub fn max_gain(&self, i: usize, j: usize) -> f64 {
        let u = self.params.payoffs_unchecked(self.grid.point(i), self.grid.point(j));
        (self.best1[j] - u.u1).max(self.best2[i] - u.u2)
    }

    /// Grid profiles where no unilateral deviation gains more than
    /// `epsilon`, in lexicographic `(x1, x2)` order.
    pub fn epsilon_equilibria(&self, epsilon: f64) -> Vec<StrategyProfile> {
        let n = self.grid.len();
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .filter(|&j| self.max_gain(i, j) <= epsilon)
                    .map(|j| StrategyProfile { x1: self.grid.point(i), x2: self.grid.point(j) })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .concat()
    }
}

pub fn grid_epsilon_equilibria(
    params: &GameParams,
    grid: &ProfileGrid,
    epsilon: f64,
) -> Result<Vec<StrategyProfile>> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            reason: format!("must be finite and positive, got {epsilon}"),
        });
    }
    Ok(GridGame::new(params, grid).epsilon_equilibria(epsilon))
}

//! Numerical checks of both quantum price maps from first principles.

mod fock;
mod linalg;
mod qubit;

pub use fock::{
    annihilation_matrix, creation_matrix, displacement, entangler, expect_quadrature, final_state,
    number_matrix, quadrature_matrix, FockSimulator, SimulatedState, TwoModeState,
    DEFAULT_TAIL_BUDGET, DEFAULT_TRUNCATION, IMAGINARY_RESIDUE_BOUND,
};
pub use linalg::{matrix_exp, TruncatedOperator, C64, DEFAULT_EXP_TOL};
pub use qubit::{
    measurement_operator, price_from_measurement, qubit_state, reduced_density, trace, Density2,
    QubitState,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::duopoly::{ldm_prices, Player};
use crate::error::{Error, Result};

/// Largest entanglement inside the validated envelope.
pub const MAX_VALIDATED_GAMMA: f64 = 0.6;
/// Largest strategy inside the validated envelope.
pub const MAX_VALIDATED_X: f64 = 1.0;

/// Simulated against closed-form quadratures at one `(x1, x2, g)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LdmComparison {
    pub x1: f64,
    pub x2: f64,
    pub gamma: f64,
    pub simulated: (f64, f64),
    pub closed_form: (f64, f64),
    pub error: f64,
    pub leakage: f64,
}

/// The `{0, 0.1, …, 0.5}² × {0, 0.25, 0.5}` validation grid.
pub fn standard_ldm_points() -> Vec<(f64, f64, f64)> {
    let xs: Vec<f64> = (0..=5).map(|k| k as f64 / 10.0).collect();
    let mut out = Vec::with_capacity(108);
    for gamma in [0.0, 0.25, 0.5] {
        for &x1 in &xs {
            for &x2 in &xs {
                out.push((x1, x2, gamma));
            }
        }
    }
    out
}

fn check_envelope(x1: f64, x2: f64, gamma: f64) -> Result<()> {
    if !(0.0..=MAX_VALIDATED_GAMMA).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("{gamma} is outside the validated range [0, {MAX_VALIDATED_GAMMA}]"),
        });
    }
    for (name, x) in [("x1", x1), ("x2", x2)] {
        if !(0.0..=MAX_VALIDATED_X).contains(&x) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("{x} is outside the validated range [0, {MAX_VALIDATED_X}]"),
            });
        }
    }
    Ok(())
}

/// Simulates every point at truncation `n` and compares both quadratures
/// with `ldm_prices`. One entangler is built per distinct `g`; points run
/// in parallel. Truncation overflow is reported per point in `leakage`
/// rather than as an error.
pub fn compare_ldm(points: &[(f64, f64, f64)], n: usize) -> Result<Vec<LdmComparison>> {
    for &(x1, x2, g) in points {
        check_envelope(x1, x2, g)?;
    }
    let mut gammas: Vec<f64> = points.iter().map(|p| p.2).collect();
    gammas.sort_by(f64::total_cmp);
    gammas.dedup();
    let sims = gammas
        .iter()
        .map(|&g| FockSimulator::new(g, n).map(|s| (g, s)))
        .collect::<Result<Vec<_>>>()?;
    points
        .par_iter()
        .map(|&(x1, x2, gamma)| {
            let sim = &sims.iter().find(|(g, _)| *g == gamma).expect("simulator per gamma").1;
            let run = sim.simulate(x1, x2)?;
            let q1 = expect_quadrature(&run.state, Player::One)?;
            let q2 = expect_quadrature(&run.state, Player::Two)?;
            let closed_form = ldm_prices(x1, x2, gamma);
            let error = (q1 - closed_form.0).abs().max((q2 - closed_form.1).abs());
            let leakage = run.leakage.max(1.0 - run.state.norm().powi(2));
            Ok(LdmComparison { x1, x2, gamma, simulated: (q1, q2), closed_form, error, leakage })
        })
        .collect()
}

//! Truncated two-mode Fock-space simulation of the continuous-variable
//! duopoly scheme.
//!
//! Two-mode vectors and operators use mode-1-major ordering: basis state
//! `|n1⟩|n2⟩` sits at index `n1 * N + n2`, and `A ⊗ B` acts as `A` on
//! mode 1 and `B` on mode 2.
//!
//! The quadrature is `X = (a + a†) / √2`. It is the normalization for
//! which `D(x) = exp(x (a† - a) / √2)` shifts `⟨X⟩` by exactly `x`.

use std::f64::consts::SQRT_2;

use ndarray::{Array1, Array2};

use super::linalg::{matrix_exp, real, TruncatedOperator, C64, DEFAULT_EXP_TOL};
use crate::duopoly::Player;
use crate::error::{check_strategy, Error, Result};

/// Default per-mode truncation.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Probability allowed to reach the highest retained Fock level.
pub const DEFAULT_TAIL_BUDGET: f64 = 1e-8;

/// Largest imaginary part tolerated in a Hermitian expectation value.
pub const IMAGINARY_RESIDUE_BOUND: f64 = 1e-10;

/// `a` on `N` levels: `√n` at `(n-1, n)`.
pub fn annihilation_matrix(n: usize) -> Result<TruncatedOperator> {
    check_truncation(n)?;
    let mut m = Array2::zeros((n, n));
    for k in 1..n {
        m[[k - 1, k]] = real((k as f64).sqrt());
    }
    Ok(TruncatedOperator::from_matrix(m))
}

pub fn creation_matrix(n: usize) -> Result<TruncatedOperator> {
    Ok(annihilation_matrix(n)?.dagger())
}

/// `X = (a + a†)/√2` on `N` levels.
pub fn quadrature_matrix(n: usize) -> Result<TruncatedOperator> {
    let a = annihilation_matrix(n)?;
    Ok(a.plus(&a.dagger()).scaled(real(1.0 / SQRT_2)))
}

pub fn number_matrix(n: usize) -> Result<TruncatedOperator> {
    let a = annihilation_matrix(n)?;
    Ok(a.dagger().compose(&a))
}

fn check_truncation(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::TruncationTooSmall(n))
    } else {
        Ok(())
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("entanglement must be finite and nonnegative, got {gamma}"),
        })
    }
}

/// `J(g) = exp(-g (a1† a2† - a1 a2))` on `N² ` two-mode levels.
pub fn entangler(gamma: f64, n: usize) -> Result<TruncatedOperator> {
    check_gamma(gamma)?;
    let a = annihilation_matrix(n)?;
    let ad = a.dagger();
    let generator = ad.kron(&ad).minus(&a.kron(&a));
    matrix_exp(&generator.scaled(real(-gamma)), DEFAULT_EXP_TOL)
}

/// `D(x) = exp(x (a† - a) / √2)` on `N` levels.
pub fn displacement(x: f64, n: usize) -> Result<TruncatedOperator> {
    check_strategy("x", x)?;
    let a = annihilation_matrix(n)?;
    let generator = a.dagger().minus(&a);
    matrix_exp(&generator.scaled(real(x / SQRT_2)), DEFAULT_EXP_TOL)
}

/// Pure state of two truncated modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amplitudes: Array1<C64>,
    truncation: usize,
}

impl TwoModeState {
    pub fn vacuum(n: usize) -> Result<Self> {
        check_truncation(n)?;
        let mut amplitudes = Array1::zeros(n * n);
        amplitudes[0] = real(1.0);
        Ok(TwoModeState { amplitudes, truncation: n })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    /// Amplitude of `|n1⟩|n2⟩`.
    pub fn amplitude(&self, n1: usize, n2: usize) -> C64 {
        self.amplitudes[n1 * self.truncation + n2]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability on states where either mode occupies the top level.
    pub fn boundary_weight(&self) -> f64 {
        let n = self.truncation;
        let mut w = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i == n - 1 || j == n - 1 {
                    w += self.amplitudes[i * n + j].norm_sqr();
                }
            }
        }
        w
    }

    /// Applies a full two-mode operator.
    pub fn evolve(&self, op: &TruncatedOperator) -> Self {
        assert_eq!(op.dim(), self.amplitudes.len());
        TwoModeState { amplitudes: op.apply(&self.amplitudes), truncation: self.truncation }
    }

    /// Applies a single-mode operator to `mode`, identity on the other.
    pub fn evolve_mode(&self, op: &TruncatedOperator, mode: Player) -> Self {
        let n = self.truncation;
        assert_eq!(op.dim(), n);
        let mut out = Array1::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += match mode {
                        Player::One => op.get(i, k) * self.amplitudes[k * n + j],
                        Player::Two => op.get(j, k) * self.amplitudes[i * n + k],
                    };
                }
                out[i * n + j] = acc;
            }
        }
        TwoModeState { amplitudes: out, truncation: n }
    }

    /// `⟨ψ| op_mode |ψ⟩` for a single-mode operator.
    pub fn expect_mode(&self, op: &TruncatedOperator, mode: Player) -> C64 {
        let moved = self.evolve_mode(op, mode);
        self.amplitudes.iter().zip(moved.amplitudes.iter()).map(|(a, b)| a.conj() * b).sum()
    }
}

/// `⟨X⟩` on one mode; fails if the expectation is not real to
/// [`IMAGINARY_RESIDUE_BOUND`].
pub fn expect_quadrature(state: &TwoModeState, mode: Player) -> Result<f64> {
    let x = quadrature_matrix(state.truncation)?;
    let value = state.expect_mode(&x, mode);
    if value.im.abs() > IMAGINARY_RESIDUE_BOUND {
        return Err(Error::ImaginaryResidue(value.im.abs()));
    }
    Ok(value.re)
}

/// Caches `J(g)` and `J(g)†` for repeated final-state evaluations.
#[derive(Debug, Clone)]
pub struct FockSimulator {
    gamma: f64,
    truncation: usize,
    tail_budget: f64,
    entangler: TruncatedOperator,
    entangler_dagger: TruncatedOperator,
}

/// Final state together with the truncation diagnostic.
#[derive(Debug, Clone)]
pub struct SimulatedState {
    pub state: TwoModeState,
    /// Largest top-level probability over the intermediate states.
    pub leakage: f64,
}

impl FockSimulator {
    pub fn new(gamma: f64, truncation: usize) -> Result<Self> {
        let entangler = entangler(gamma, truncation)?;
        let entangler_dagger = entangler.dagger();
        Ok(FockSimulator {
            gamma,
            truncation,
            tail_budget: DEFAULT_TAIL_BUDGET,
            entangler,
            entangler_dagger,
        })
    }

    pub fn with_tail_budget(mut self, budget: f64) -> Self {
        self.tail_budget = budget;
        self
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn entangler(&self) -> &TruncatedOperator {
        &self.entangler
    }

    /// `J† (D1(x1) ⊗ D2(x2)) J |0⟩|0⟩` without enforcing the tail budget.
    pub fn simulate(&self, x1: f64, x2: f64) -> Result<SimulatedState> {
        let n = self.truncation;
        let d1 = displacement(x1, n)?;
        let d2 = displacement(x2, n)?;
        let squeezed = TwoModeState::vacuum(n)?.evolve(&self.entangler);
        let displaced = squeezed.evolve_mode(&d1, Player::One).evolve_mode(&d2, Player::Two);
        let state = displaced.evolve(&self.entangler_dagger);
        let leakage = [&squeezed, &displaced, &state]
            .iter()
            .map(|s| s.boundary_weight())
            .fold(0.0, f64::max);
        Ok(SimulatedState { state, leakage })
    }

    /// Final state; fails when truncation leakage exceeds the tail budget
    /// or the norm drops below `1 - budget`.
    pub fn final_state(&self, x1: f64, x2: f64) -> Result<TwoModeState> {
        let sim = self.simulate(x1, x2)?;
        let norm_loss = 1.0 - sim.state.norm().powi(2);
        let leakage = sim.leakage.max(norm_loss);
        if leakage > self.tail_budget {
            return Err(Error::TruncationOverflow { leakage, budget: self.tail_budget });
        }
        Ok(sim.state)
    }
}

/// One-shot final state; builds the entangler on every call.
pub fn final_state(x1: f64, x2: f64, gamma: f64, truncation: usize) -> Result<TwoModeState> {
    FockSimulator::new(gamma, truncation)?.final_state(x1, x2)
}

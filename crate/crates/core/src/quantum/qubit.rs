//! Exact two-qubit computation of the correlated price map.
//!
//! The shared state is `cos g |00⟩ + i sin g |11⟩` (qubit 1 first, basis
//! order `|00⟩, |01⟩, |10⟩, |11⟩`). Player `i` measures the diagonal
//! observable `M_i` on its reduced state; for player 1,
//! `M_1 = x1 |0⟩⟨0| + x2 |1⟩⟨1|`, and player 2 swaps the roles.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64 as C64;

use crate::duopoly::Player;
use crate::error::{check_strategy, Error, Result};

pub type Density2 = [[C64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub amplitudes: [C64; 4],
}

impl QubitState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn amp(&self, q1: usize, q2: usize) -> C64 {
        self.amplitudes[2 * q1 + q2]
    }
}

pub fn qubit_state(gamma: f64) -> Result<QubitState> {
    if !(0.0..=FRAC_PI_4).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    let (s, c) = gamma.sin_cos();
    let zero = C64::new(0.0, 0.0);
    Ok(QubitState { amplitudes: [C64::new(c, 0.0), zero, zero, C64::new(0.0, s)] })
}

/// Reduced density matrix of `subsystem`, tracing out the other qubit.
pub fn reduced_density(state: &QubitState, subsystem: Player) -> Density2 {
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for (r, row) in rho.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = (0..2)
                .map(|k| match subsystem {
                    Player::One => state.amp(r, k) * state.amp(c, k).conj(),
                    Player::Two => state.amp(k, r) * state.amp(k, c).conj(),
                })
                .sum();
        }
    }
    rho
}

pub fn trace(rho: &Density2) -> C64 {
    rho[0][0] + rho[1][1]
}

/// `M_i` for player `i`.
pub fn measurement_operator(x1: f64, x2: f64, player: Player) -> Density2 {
    let zero = C64::new(0.0, 0.0);
    let (d0, d1) = match player {
        Player::One => (x1, x2),
        Player::Two => (x2, x1),
    };
    [[C64::new(d0, 0.0), zero], [zero, C64::new(d1, 0.0)]]
}

fn trace_of_product(m: &Density2, rho: &Density2) -> C64 {
    (0..2).map(|i| (0..2).map(|k| m[i][k] * rho[k][i]).sum::<C64>()).sum()
}

/// `p'_i = tr(M_i ρ_i)`, computed from the shared state.
pub fn price_from_measurement(x1: f64, x2: f64, gamma: f64, player: Player) -> Result<f64> {
    check_strategy("x1", x1)?;
    check_strategy("x2", x2)?;
    let state = qubit_state(gamma)?;
    let rho = reduced_density(&state, player);
    Ok(trace_of_product(&measurement_operator(x1, x2, player), &rho).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6};

    #[test]
    fn states() {
        let s0 = qubit_state(0.0).unwrap();
        assert_eq!(s0.amplitudes[0], C64::new(1.0, 0.0));
        assert_eq!(s0.amplitudes[3], C64::new(0.0, 0.0));
        let s = qubit_state(FRAC_PI_4).unwrap();
        assert_relative_eq!(s.amplitudes[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(s.amplitudes[3].im, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert!(qubit_state(1.0).is_err());
        assert!(qubit_state(-1e-3).is_err());
    }

    #[test]
    fn reduced_densities_are_diagonal() {
        let rho = reduced_density(&qubit_state(0.0).unwrap(), Player::One);
        assert_eq!(rho[0][0], C64::new(1.0, 0.0));
        assert_eq!(rho[1][1], C64::new(0.0, 0.0));
        let g = 0.37;
        for who in [Player::One, Player::Two] {
            let rho = reduced_density(&qubit_state(g).unwrap(), who);
            assert!((rho[0][0].re - g.cos().powi(2)).abs() <= 1e-14);
            assert!((rho[1][1].re - g.sin().powi(2)).abs() <= 1e-14);
            assert_eq!(rho[0][1], C64::new(0.0, 0.0));
            assert!((trace(&rho).re - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn random_states_are_normalized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
        for _ in 0..50 {
            let g = rng.gen_range(0.0..=FRAC_PI_4);
            let s = qubit_state(g).unwrap();
            assert!((s.norm() - 1.0).abs() <= 1e-14);
            for who in [Player::One, Player::Two] {
                let rho = reduced_density(&s, who);
                assert!((trace(&rho) - C64::new(1.0, 0.0)).norm() <= 1e-14);
                assert_eq!(rho[0][1], rho[1][0].conj());
                assert!(rho[0][0].re >= 0.0 && rho[1][1].re >= 0.0);
            }
        }
    }

    #[test]
    fn measured_prices() {
        assert_relative_eq!(price_from_measurement(1.0, 2.0, FRAC_PI_6, Player::One).unwrap(), 1.25, epsilon = 1e-12);
        assert_relative_eq!(price_from_measurement(1.0, 2.0, FRAC_PI_6, Player::Two).unwrap(), 1.75, epsilon = 1e-12);
        for who in [Player::One, Player::Two] {
            assert_relative_eq!(price_from_measurement(1.0, 2.0, FRAC_PI_4, who).unwrap(), 1.5, epsilon = 1e-12);
            assert_relative_eq!(price_from_measurement(3.3, 3.3, 0.2, who).unwrap(), 3.3, epsilon = 1e-12);
        }
        assert!(price_from_measurement(-1.0, 2.0, 0.1, Player::One).is_err());
    }
}

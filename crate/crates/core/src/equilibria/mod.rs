//! Nash equilibria: closed-form families, exact verification by mutual
//! best-reply membership, a grid ε-equilibrium oracle, and Pareto checks.

mod families;
mod search;

pub use families::{equilibrium_families, sample_family, EquilibriumFamily, FamilyShape, PayoffFormula};
pub use search::{default_epsilon, grid_epsilon_equilibria, GridGame};

use serde::Serialize;

use crate::duopoly::{GameParams, PayoffProfile, StrategyProfile};
use crate::reply::{point_tolerance, Correspondence};

/// True iff each coordinate is in the other player's best reply to the
/// opponent's coordinate. Non-finite or negative profiles are never Nash.
pub fn is_nash(x1: f64, x2: f64, params: &GameParams) -> bool {
    if !(x1.is_finite() && x2.is_finite() && x1 >= 0.0 && x2 >= 0.0) {
        return false;
    }
    let corr = Correspondence::for_params(params);
    let tol = point_tolerance(params);
    corr.reply(x2).contains_within(x1, tol) && corr.reply(x1).contains_within(x2, tol)
}

/// Maximum joint payoff `(a - c)² / 4` over all price pairs.
pub fn pareto_bound(params: &GameParams) -> f64 {
    (params.a() - params.c()).powi(2) / 4.0
}

pub fn is_pareto_optimal(payoffs: &PayoffProfile, params: &GameParams) -> bool {
    payoffs.total() >= pareto_bound(params) - 1e-9 * params.a().powi(2)
}

/// Outcome of checking one sampled family point.
#[derive(Debug, Clone, Serialize)]
pub struct PointCheck {
    pub profile: StrategyProfile,
    pub nash: bool,
    pub payoff: PayoffProfile,
    pub formula: PayoffProfile,
    pub payoff_agrees: bool,
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        self.nash && self.payoff_agrees
    }
}

/// Samples `family` with `n` points per direction and checks each for
/// Nash membership and agreement between the model payoff and the table
/// formula (within `1e-9 a²`).
pub fn verify_family(family: &EquilibriumFamily, params: &GameParams, n: usize) -> Vec<PointCheck> {
    let tol = 1e-9 * params.a().powi(2);
    family
        .sample(n)
        .into_iter()
        .map(|profile| {
            let payoff = params
                .payoffs(profile.x1, profile.x2)
                .expect("family profiles are nonnegative");
            let formula = family.payoff_at(&profile);
            let payoff_agrees =
                (payoff.u1 - formula.u1).abs() <= tol && (payoff.u2 - formula.u2).abs() <= tol;
            PointCheck {
                profile,
                nash: is_nash(profile.x1, profile.x2, params),
                payoff,
                formula,
                payoff_agrees,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, LN_2};

    #[test]
    fn nash_examples() {
        let cl = GameParams::classical(10.0, 2.0).unwrap();
        assert!(is_nash(2.0, 2.0, &cl));
        assert!(!is_nash(5.0, 5.0, &cl));
        assert!(!is_nash(2.0, 3.0, &cl));
        assert!(!is_nash(-1.0, 2.0, &cl));

        let ldm = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
        let x2 = equilibrium_families(&ldm)[1].curve_point(0.0).unwrap().x2;
        assert!(is_nash(0.0, x2, &ldm));
        let anchor = 2.0 / LN_2.exp();
        assert!(is_nash(anchor, anchor, &ldm));
        assert!(!is_nash(anchor + 0.5, anchor + 0.5, &ldm));
    }

    #[test]
    fn every_family_verifies() {
        let games = [
            GameParams::classical(10.0, 2.0).unwrap(),
            GameParams::ldm(10.0, 2.0, LN_2).unwrap(),
            GameParams::ldm(7.0, 0.0, 1.3).unwrap(),
            GameParams::two_qubit(10.0, 2.0, FRAC_PI_6).unwrap(),
            GameParams::two_qubit(3.0, 1.0, 0.2).unwrap(),
            GameParams::two_qubit(10.0, 2.0, FRAC_PI_4).unwrap(),
        ];
        for params in &games {
            for fam in equilibrium_families(params) {
                for check in verify_family(&fam, params, 25) {
                    assert!(check.passed(), "{} {:?}: {check:?}", fam.id, params);
                }
            }
        }
    }

    #[test]
    fn pareto() {
        let p = GameParams::classical(10.0, 2.0).unwrap();
        assert_eq!(pareto_bound(&p), 16.0);
        assert_eq!(pareto_bound(&GameParams::classical(1.0, 0.0).unwrap()), 0.25);
        assert!(is_pareto_optimal(&PayoffProfile { u1: 8.0, u2: 8.0 }, &p));
        assert!(is_pareto_optimal(&PayoffProfile { u1: 16.0, u2: 0.0 }, &p));
        assert!(!is_pareto_optimal(&PayoffProfile::ZERO, &p));
    }
}

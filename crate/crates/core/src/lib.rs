//! Classical and quantum Bertrand duopoly: payoffs, set-valued best
//! replies, Nash-equilibrium families, grid oracles, and numerical
//! validation of the quantum price maps.

pub mod duopoly;
pub mod equilibria;
pub mod error;
pub mod grid;
pub mod interval;
pub mod quantum;
pub mod reply;

pub use duopoly::{
    classical_payoffs, demand, ldm_payoffs, ldm_prices, qubit_payoffs, qubit_prices, GameParams, Model,
    PayoffProfile, Player, StrategyProfile,
};
pub use equilibria::{
    equilibrium_families, grid_epsilon_equilibria, is_nash, is_pareto_optimal, pareto_bound, sample_family,
    verify_family, EquilibriumFamily,
};
pub use error::{Error, Result};
pub use grid::ProfileGrid;
pub use interval::Interval;
pub use quantum::{TruncatedOperator, TwoModeState};
pub use reply::{best_reply, Correspondence, ReplySet};

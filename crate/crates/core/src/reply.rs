//! Set-valued best-reply correspondences.
//!
//! Every correspondence in the three games is piecewise in the opponent's
//! choice, and each piece returns one of five set shapes (see
//! [`ReplySet`]). A correspondence is therefore stored as an ordered table
//! of [`Branch`]es whose opponent intervals partition `[0, ∞)`; the
//! inequality signs at each breakpoint are carried by the intervals.
//!
//! Both players face the same correspondence, so the player argument only
//! matters for the grid oracle, which evaluates the actual payoffs.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::duopoly::{qubit_weights, GameParams, Model, Player};
use crate::error::{check_strategy, Error, Result};
use crate::grid::ProfileGrid;
use crate::interval::Interval;

/// Best-reply set of one player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "value")]
pub enum ReplySet {
    /// Supremum approached but not attained.
    Empty,
    Point(f64),
    /// `{x : x >= lo}`
    ClosedRay(f64),
    /// `{x : x > lo}`
    OpenRay(f64),
    /// The whole strategy set `[0, ∞)`.
    Full,
}

impl ReplySet {
    /// Membership test. `Point` matches within `1e-12 * max(1, a)`.
    pub fn contains(&self, x: f64, params: &GameParams) -> bool {
        self.contains_within(x, point_tolerance(params))
    }

    pub fn contains_within(&self, x: f64, point_tol: f64) -> bool {
        match *self {
            ReplySet::Empty => false,
            ReplySet::Point(v) => (x - v).abs() <= point_tol,
            ReplySet::ClosedRay(lo) => x >= lo,
            ReplySet::OpenRay(lo) => x > lo,
            ReplySet::Full => x >= 0.0,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ReplySet::Empty => "Empty",
            ReplySet::Point(_) => "Point",
            ReplySet::ClosedRay(_) => "ClosedRay",
            ReplySet::OpenRay(_) => "OpenRay",
            ReplySet::Full => "Full",
        }
    }

    /// The point value or ray endpoint, if any.
    pub fn value(&self) -> Option<f64> {
        match *self {
            ReplySet::Point(v) | ReplySet::ClosedRay(v) | ReplySet::OpenRay(v) => Some(v),
            ReplySet::Empty | ReplySet::Full => None,
        }
    }

    /// Checks the grid oracle's maximizers against this analytic reply.
    ///
    /// * `Point(v)`: some maximizer lies within `h` of `v`;
    /// * `Empty`: every maximizer is the grid point just below `opp`;
    /// * rays: every maximizer is a member or within `h` of the endpoint;
    /// * `Full`: the whole grid is returned.
    pub fn agrees_with_grid(&self, opp: f64, maximizers: &[f64], grid: &ProfileGrid) -> bool {
        let h = grid.step();
        let slack = h * (1.0 + 1e-9);
        if maximizers.is_empty() {
            return false;
        }
        match *self {
            ReplySet::Point(v) => maximizers.iter().any(|&x| (x - v).abs() <= slack),
            ReplySet::Empty => maximizers.iter().all(|&x| x < opp && x >= opp - slack),
            ReplySet::ClosedRay(lo) | ReplySet::OpenRay(lo) => {
                maximizers.iter().all(|&x| x >= lo - slack)
            }
            ReplySet::Full => maximizers.len() == grid.len(),
        }
    }
}

pub(crate) fn point_tolerance(params: &GameParams) -> f64 {
    1e-12 * params.a().max(1.0)
}

/// What a branch returns for an opponent choice `opp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ReplyRule {
    /// `{x : x > opp}`
    Undercut,
    ClosedRayAt(f64),
    Empty,
    /// `((a+c)/2 - opp * cross) / own`: puts the own price at `(a+c)/2`.
    Interior { half: f64, cross: f64, own: f64 },
    Constant(f64),
    /// `total - opp` (maximally entangled two-qubit game).
    Complement(f64),
    Full,
}

impl ReplyRule {
    pub fn apply(&self, opp: f64) -> ReplySet {
        match *self {
            ReplyRule::Undercut => ReplySet::OpenRay(opp),
            ReplyRule::ClosedRayAt(lo) => ReplySet::ClosedRay(lo),
            ReplyRule::Empty => ReplySet::Empty,
            ReplyRule::Interior { half, cross, own } => ReplySet::Point((half - opp * cross) / own),
            ReplyRule::Constant(v) => ReplySet::Point(v),
            ReplyRule::Complement(total) => ReplySet::Point(total - opp),
            ReplyRule::Full => ReplySet::Full,
        }
    }
}

/// One piece of a correspondence: `opp ∈ domain ⇒ reply = rule(opp)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Branch {
    pub domain: Interval,
    pub rule: ReplyRule,
}

/// A named breakpoint of a correspondence, for plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Breakpoint {
    pub label: &'static str,
    pub value: f64,
}

/// The piecewise best-reply correspondence of a game.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correspondence {
    branches: Vec<Branch>,
    breakpoints: Vec<Breakpoint>,
}

impl Correspondence {
    pub fn for_params(params: &GameParams) -> Self {
        let (a, c, g) = (params.a(), params.c(), params.gamma());
        match params.model() {
            _ if g == 0.0 => Self::classical(a, c),
            Model::Classical => Self::classical(a, c),
            Model::Ldm => {
                let e = g.exp();
                Self::six_branch(a, c, e, g.sinh(), g.cosh(), ["c/e^g", "(a+c)/(2e^g)", "(a+c)/(2 sinh g)", "a/sinh g"])
            }
            Model::TwoQubit if g == FRAC_PI_4 => Self::maximally_entangled(a, c),
            Model::TwoQubit => {
                let (cos2, sin2) = qubit_weights(g);
                Self::six_branch(a, c, 1.0, sin2, cos2, ["c", "(a+c)/2", "(a+c)/(2 sin^2 g)", "a/sin^2 g"])
            }
        }
    }

    fn classical(a: f64, c: f64) -> Self {
        let half = (a + c) / 2.0;
        let branches = vec![
            Branch { domain: Interval::closed_open(0.0, c), rule: ReplyRule::Undercut },
            Branch { domain: Interval::point(c), rule: ReplyRule::ClosedRayAt(c) },
            Branch { domain: Interval::open_closed(c, half), rule: ReplyRule::Empty },
            Branch { domain: Interval::above(half), rule: ReplyRule::Constant(half) },
        ];
        let breakpoints = vec![
            Breakpoint { label: "c", value: c },
            Breakpoint { label: "(a+c)/2", value: half },
        ];
        Correspondence { branches, breakpoints }.pruned()
    }

    /// Shared shape of the entangled games for `0 < g` (and `g < π/4` for
    /// two qubits). `growth` is `e^g` (`1` for two qubits), `cross` the
    /// weight of the opponent's choice in the own price, `own` the weight
    /// of the own choice.
    fn six_branch(a: f64, c: f64, growth: f64, cross: f64, own: f64, labels: [&'static str; 4]) -> Self {
        let half = (a + c) / 2.0;
        let anchor = c / growth;
        let empty_end = half / growth;
        let interior_end = half / cross;
        let full_start = a / cross;
        let branches = vec![
            Branch { domain: Interval::closed_open(0.0, anchor), rule: ReplyRule::Undercut },
            Branch { domain: Interval::point(anchor), rule: ReplyRule::ClosedRayAt(anchor) },
            Branch { domain: Interval::open_closed(anchor, empty_end), rule: ReplyRule::Empty },
            Branch {
                domain: Interval::open_closed(empty_end, interior_end),
                rule: ReplyRule::Interior { half, cross, own },
            },
            Branch { domain: Interval::open(interior_end, full_start), rule: ReplyRule::Constant(0.0) },
            Branch { domain: Interval::from(full_start), rule: ReplyRule::Full },
        ];
        let breakpoints = [anchor, empty_end, interior_end, full_start]
            .into_iter()
            .zip(labels)
            .map(|(value, label)| Breakpoint { label, value })
            .collect();
        Correspondence { branches, breakpoints }.pruned()
    }

    fn maximally_entangled(a: f64, c: f64) -> Self {
        let total = a + c;
        let cutoff = 2.0 * a;
        let branches = vec![
            Branch { domain: Interval::closed(0.0, total), rule: ReplyRule::Complement(total) },
            Branch { domain: Interval::open(total, cutoff), rule: ReplyRule::Constant(0.0) },
            Branch { domain: Interval::from(cutoff), rule: ReplyRule::Full },
        ];
        let breakpoints = vec![
            Breakpoint { label: "a+c", value: total },
            Breakpoint { label: "2a", value: cutoff },
        ];
        Correspondence { branches, breakpoints }
    }

    // With c = 0 the leading undercut branch [0, 0) is empty.
    fn pruned(mut self) -> Self {
        self.branches.retain(|b| !b.domain.is_empty());
        self
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn branch_for(&self, opp: f64) -> &Branch {
        self.branches
            .iter()
            .find(|b| b.domain.contains(opp))
            .expect("branches partition [0, inf)")
    }

    pub fn reply(&self, opp: f64) -> ReplySet {
        self.branch_for(opp).rule.apply(opp)
    }
}

/// Best reply of `player` to the opponent's choice under any model.
pub fn best_reply(player: Player, opp: f64, params: &GameParams) -> Result<ReplySet> {
    let _ = player;
    check_strategy("opp", opp)?;
    Ok(Correspondence::for_params(params).reply(opp))
}

pub fn classical_best_reply(player: Player, opp: f64, params: &GameParams) -> Result<ReplySet> {
    expect_model(params, Model::Classical)?;
    best_reply(player, opp, params)
}

/// Li–Du–Massar correspondence; `g = 0` coincides with the classical one.
pub fn ldm_best_reply(player: Player, opp: f64, params: &GameParams) -> Result<ReplySet> {
    expect_model(params, Model::Ldm)?;
    best_reply(player, opp, params)
}

pub fn qubit_best_reply(player: Player, opp: f64, params: &GameParams) -> Result<ReplySet> {
    expect_model(params, Model::TwoQubit)?;
    best_reply(player, opp, params)
}

fn expect_model(params: &GameParams, expected: Model) -> Result<()> {
    if params.model() == expected {
        Ok(())
    } else {
        Err(Error::ModelMismatch { expected, actual: params.model() })
    }
}

/// Brute-force best reply: all grid points maximizing `player`'s payoff
/// against `opp`, in increasing order.
///
/// Ties are taken within `1e-12 * max(|best|, (a-c)²/4)`, i.e. relative to
/// the larger of the attained value and the game's payoff scale.
pub fn grid_best_reply_oracle(
    player: Player,
    opp: f64,
    params: &GameParams,
    grid: &ProfileGrid,
) -> Result<Vec<f64>> {
    check_strategy("opp", opp)?;
    let payoffs = grid_payoffs(player, opp, params, grid);
    let best = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = (params.a() - params.c()).powi(2) / 4.0;
    let tol = 1e-12 * best.abs().max(scale);
    Ok(grid
        .points()
        .zip(&payoffs)
        .filter(|&(_, &u)| u >= best - tol)
        .map(|(x, _)| x)
        .collect())
}

/// `player`'s payoff at every grid point against a fixed `opp`.
pub fn grid_payoffs(player: Player, opp: f64, params: &GameParams, grid: &ProfileGrid) -> Vec<f64> {
    (0..grid.len())
        .into_par_iter()
        .map(|k| params.payoff_of(player, grid.point(k), opp))
        .collect()
}

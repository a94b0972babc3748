//! Game parameters, price maps and the piecewise Bertrand payoffs.
//!
//! Three games share one payoff skeleton: the lower price takes the whole
//! market, equal prices split it, and a price above the demand intercept
//! sells nothing. They differ in how the players' choices `(x1, x2)` are
//! turned into prices:
//!
//! * classical: the choices are the prices;
//! * Li–Du–Massar (continuous-variable): `p1 = x1 cosh g + x2 sinh g`;
//! * two-qubit: `p1 = x1 cos²g + x2 sin²g`, `g ∈ [0, π/4]`.
//!
//! All branch conditions are exact floating comparisons on the inputs.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_strategy, Error, Result};

/// Which quantization of the duopoly is being played.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Classical,
    /// Li–Du–Massar two-mode squeezing scheme.
    Ldm,
    TwoQubit,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Classical => "classical",
            Model::Ldm => "ldm",
            Model::TwoQubit => "two-qubit",
        })
    }
}

/// Player index. Both games are symmetric, so most queries ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

/// Validated parameters of one game instance.
///
/// Fields are private: every `GameParams` in circulation satisfies
/// `0 <= c < a` and the model's range for `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GameParams {
    a: f64,
    c: f64,
    gamma: f64,
    model: Model,
}

impl GameParams {
    pub fn new(model: Model, a: f64, c: f64, gamma: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: format!("demand intercept must be finite and positive, got {a}"),
            });
        }
        if !(c.is_finite() && c >= 0.0 && c < a) {
            return Err(Error::InvalidParameter {
                name: "c",
                reason: format!("marginal cost must satisfy 0 <= c < a, got c = {c}, a = {a}"),
            });
        }
        let gamma = match model {
            Model::Classical => 0.0,
            Model::Ldm => {
                if !(gamma.is_finite() && gamma >= 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "gamma",
                        reason: format!("entanglement must be finite and nonnegative, got {gamma}"),
                    });
                }
                gamma
            }
            Model::TwoQubit => {
                if !(0.0..=FRAC_PI_4).contains(&gamma) {
                    return Err(Error::GammaOutOfRange(gamma));
                }
                gamma
            }
        };
        Ok(GameParams { a, c, gamma, model })
    }

    pub fn classical(a: f64, c: f64) -> Result<Self> {
        Self::new(Model::Classical, a, c, 0.0)
    }

    pub fn ldm(a: f64, c: f64, gamma: f64) -> Result<Self> {
        Self::new(Model::Ldm, a, c, gamma)
    }

    pub fn two_qubit(a: f64, c: f64, gamma: f64) -> Result<Self> {
        Self::new(Model::TwoQubit, a, c, gamma)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Entanglement parameter; always 0 for the classical model.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// `(a + c) / 2`, the monopoly price.
    pub fn monopoly_price(&self) -> f64 {
        (self.a + self.c) / 2.0
    }

    /// Prices induced by a profile under this game's price map.
    pub fn prices(&self, x1: f64, x2: f64) -> (f64, f64) {
        match self.model {
            Model::Classical => (x1, x2),
            Model::Ldm => ldm_prices(x1, x2, self.gamma),
            Model::TwoQubit => qubit_prices_unchecked(x1, x2, self.gamma),
        }
    }

    /// Payoffs under this game's model, after validating the profile.
    pub fn payoffs(&self, x1: f64, x2: f64) -> Result<PayoffProfile> {
        check_strategy("x1", x1)?;
        check_strategy("x2", x2)?;
        Ok(self.payoffs_unchecked(x1, x2))
    }

    /// Payoffs without validating the profile; callers guarantee
    /// nonnegative finite inputs (grid loops).
    pub(crate) fn payoffs_unchecked(&self, x1: f64, x2: f64) -> PayoffProfile {
        match self.model {
            Model::Classical => classical_unchecked(x1, x2, self),
            Model::Ldm => ldm_unchecked(x1, x2, self),
            Model::TwoQubit => qubit_unchecked(x1, x2, self),
        }
    }

    /// Payoff of one player; convenience for best-reply searches.
    pub(crate) fn payoff_of(&self, player: Player, own: f64, opp: f64) -> f64 {
        match player {
            Player::One => self.payoffs_unchecked(own, opp).u1,
            Player::Two => self.payoffs_unchecked(opp, own).u2,
        }
    }

    fn expect_model(&self, expected: Model) -> Result<()> {
        if self.model == expected {
            Ok(())
        } else {
            Err(Error::ModelMismatch { expected, actual: self.model })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile {
    pub x1: f64,
    pub x2: f64,
}

impl StrategyProfile {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        check_strategy("x1", x1)?;
        check_strategy("x2", x2)?;
        Ok(StrategyProfile { x1, x2 })
    }

    pub fn swapped(self) -> Self {
        StrategyProfile { x1: self.x2, x2: self.x1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffProfile {
    pub u1: f64,
    pub u2: f64,
}

impl PayoffProfile {
    pub const ZERO: PayoffProfile = PayoffProfile { u1: 0.0, u2: 0.0 };

    pub fn total(&self) -> f64 {
        self.u1 + self.u2
    }
}

/// Market demand `max(a - p, 0)`.
pub fn demand(p: f64, params: &GameParams) -> f64 {
    (params.a - p).max(0.0)
}

fn profit(p: f64, params: &GameParams) -> f64 {
    (p - params.c) * (params.a - p)
}

pub fn classical_payoffs(x1: f64, x2: f64, params: &GameParams) -> Result<PayoffProfile> {
    params.expect_model(Model::Classical)?;
    check_strategy("x1", x1)?;
    check_strategy("x2", x2)?;
    Ok(classical_unchecked(x1, x2, params))
}

fn classical_unchecked(p1: f64, p2: f64, params: &GameParams) -> PayoffProfile {
    let a = params.a;
    let u1 = if p1 < p2 && p1 <= a {
        profit(p1, params)
    } else if p1 == p2 && p1 <= a {
        0.5 * profit(p1, params)
    } else {
        0.0
    };
    let u2 = if p2 < p1 && p2 <= a {
        profit(p2, params)
    } else if p1 == p2 && p2 <= a {
        0.5 * profit(p2, params)
    } else {
        0.0
    };
    PayoffProfile { u1, u2 }
}

/// Li–Du–Massar price map `p1 = x1 cosh g + x2 sinh g`, `p2` mirrored.
pub fn ldm_prices(x1: f64, x2: f64, gamma: f64) -> (f64, f64) {
    let (ch, sh) = (gamma.cosh(), gamma.sinh());
    (x1 * ch + x2 * sh, x2 * ch + x1 * sh)
}

pub fn ldm_payoffs(x1: f64, x2: f64, params: &GameParams) -> Result<PayoffProfile> {
    params.expect_model(Model::Ldm)?;
    check_strategy("x1", x1)?;
    check_strategy("x2", x2)?;
    Ok(ldm_unchecked(x1, x2, params))
}

// The winner is decided on x-ordering: p1 - p2 = (x1 - x2) e^{-g}.
fn ldm_unchecked(x1: f64, x2: f64, params: &GameParams) -> PayoffProfile {
    let a = params.a;
    let (p1, p2) = ldm_prices(x1, x2, params.gamma);
    let split = x1 == x2 && x1 * params.gamma.exp() <= a;
    let u1 = if x1 < x2 && p1 <= a {
        profit(p1, params)
    } else if split {
        0.5 * profit(p1, params)
    } else {
        0.0
    };
    let u2 = if x2 < x1 && p2 <= a {
        profit(p2, params)
    } else if split {
        0.5 * profit(p2, params)
    } else {
        0.0
    };
    PayoffProfile { u1, u2 }
}

/// Two-qubit price map `p'1 = x1 cos²g + x2 sin²g`, `p'2` mirrored.
///
/// At exactly `g = π/4` both prices are `(x1 + x2) / 2`.
pub fn qubit_prices(x1: f64, x2: f64, gamma: f64) -> Result<(f64, f64)> {
    if !(0.0..=FRAC_PI_4).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    Ok(qubit_prices_unchecked(x1, x2, gamma))
}

fn qubit_prices_unchecked(x1: f64, x2: f64, gamma: f64) -> (f64, f64) {
    if gamma == FRAC_PI_4 {
        let mean = (x1 + x2) / 2.0;
        return (mean, mean);
    }
    let (cos2, sin2) = qubit_weights(gamma);
    (x1 * cos2 + x2 * sin2, x2 * cos2 + x1 * sin2)
}

/// `(cos²g, sin²g)`.
pub(crate) fn qubit_weights(gamma: f64) -> (f64, f64) {
    let (s, c) = gamma.sin_cos();
    (c * c, s * s)
}

pub fn qubit_payoffs(x1: f64, x2: f64, params: &GameParams) -> Result<PayoffProfile> {
    params.expect_model(Model::TwoQubit)?;
    check_strategy("x1", x1)?;
    check_strategy("x2", x2)?;
    Ok(qubit_unchecked(x1, x2, params))
}

fn qubit_unchecked(x1: f64, x2: f64, params: &GameParams) -> PayoffProfile {
    let a = params.a;
    if params.gamma == FRAC_PI_4 {
        let sum = x1 + x2;
        if sum <= 2.0 * a {
            let u = 0.5 * profit(sum / 2.0, params);
            return PayoffProfile { u1: u, u2: u };
        }
        return PayoffProfile::ZERO;
    }
    let (p1, p2) = qubit_prices_unchecked(x1, x2, params.gamma);
    let split = x1 == x2 && x1 <= a;
    // The winner condition tests the correlated price p'_i.
    let u1 = if x1 < x2 && p1 <= a {
        profit(p1, params)
    } else if split {
        0.5 * profit(p1, params)
    } else {
        0.0
    };
    let u2 = if x2 < x1 && p2 <= a {
        profit(p2, params)
    } else if split {
        0.5 * profit(p2, params)
    } else {
        0.0
    };
    PayoffProfile { u1, u2 }
}

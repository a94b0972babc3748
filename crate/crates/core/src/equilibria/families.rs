//! Closed-form Nash-equilibrium families of every game regime.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::duopoly::{GameParams, Model, PayoffProfile, Player, StrategyProfile};
use crate::interval::Interval;
use crate::reply::Correspondence;

/// Geometry of a family in the strategy plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FamilyShape {
    Point(StrategyProfile),
    /// One coordinate is the free parameter `t ∈ domain`; the other is
    /// `(offset - coef * t) / divisor`.
    Curve {
        free: Player,
        domain: Interval,
        offset: f64,
        coef: f64,
        divisor: f64,
    },
    Region { x1: Interval, x2: Interval },
}

/// Closed-form payoff attached to a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PayoffFormula {
    Zero,
    /// The winner earns the monopoly profit `(a-c)²/4`, the other nothing.
    Monopoly(Player),
    /// The loser sits on the opposite axis at `t`; the winner, choosing 0,
    /// earns `(t w - c)(a - t w)`.
    AxisWinner { winner: Player, weight: f64 },
    /// Both earn `(a-c)²/8`.
    EqualSplit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumFamily {
    pub id: &'static str,
    pub description: String,
    pub shape: FamilyShape,
    pub payoff: PayoffFormula,
    /// Replaces infinite upper bounds when sampling.
    pub sample_cap: f64,
    a: f64,
    c: f64,
}

impl EquilibriumFamily {
    pub fn dim(&self) -> usize {
        match self.shape {
            FamilyShape::Point(_) => 0,
            FamilyShape::Curve { .. } => 1,
            FamilyShape::Region { .. } => 2,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        match &self.shape {
            FamilyShape::Point(_) => false,
            FamilyShape::Curve { domain, .. } => domain.is_unbounded(),
            FamilyShape::Region { x1, x2 } => x1.is_unbounded() || x2.is_unbounded(),
        }
    }

    /// Profile at parameter value `t` of a curve family.
    pub fn curve_point(&self, t: f64) -> Option<StrategyProfile> {
        match self.shape {
            FamilyShape::Curve { free, offset, coef, divisor, .. } => {
                let other = (offset - coef * t) / divisor;
                Some(match free {
                    Player::One => StrategyProfile { x1: t, x2: other },
                    Player::Two => StrategyProfile { x1: other, x2: t },
                })
            }
            _ => None,
        }
    }

    /// Profiles spanning the family: closed ends included, open ends
    /// approached at `length / (10 n)`, unbounded directions cut at
    /// `sample_cap`, regions on an `n × n` lattice.
    pub fn sample(&self, n: usize) -> Vec<StrategyProfile> {
        match &self.shape {
            FamilyShape::Point(p) => vec![*p; n],
            FamilyShape::Curve { domain, .. } => domain
                .truncated(self.sample_cap)
                .spread(n)
                .into_iter()
                .map(|t| self.curve_point(t).expect("curve family"))
                .collect(),
            FamilyShape::Region { x1, x2 } => {
                let xs = x1.truncated(self.sample_cap).spread(n);
                let ys = x2.truncated(self.sample_cap).spread(n);
                xs.iter()
                    .flat_map(|&x1| ys.iter().map(move |&x2| StrategyProfile { x1, x2 }))
                    .collect()
            }
        }
    }

    /// First and last profile of the family: the curve ends, or the
    /// lower-left and upper-right region corners. Unbounded ends are cut at
    /// `sample_cap`.
    pub fn endpoints(&self) -> (StrategyProfile, StrategyProfile) {
        match &self.shape {
            FamilyShape::Point(p) => (*p, *p),
            FamilyShape::Curve { domain, .. } => {
                let d = domain.truncated(self.sample_cap);
                (self.curve_point(d.lo).expect("curve"), self.curve_point(d.hi).expect("curve"))
            }
            FamilyShape::Region { x1, x2 } => {
                let (x1, x2) = (x1.truncated(self.sample_cap), x2.truncated(self.sample_cap));
                (StrategyProfile { x1: x1.lo, x2: x2.lo }, StrategyProfile { x1: x1.hi, x2: x2.hi })
            }
        }
    }

    /// The tabulated payoff at a profile of this family.
    pub fn payoff_at(&self, profile: &StrategyProfile) -> PayoffProfile {
        let (a, c) = (self.a, self.c);
        let monopoly = (a - c).powi(2) / 4.0;
        match self.payoff {
            PayoffFormula::Zero => PayoffProfile::ZERO,
            PayoffFormula::Monopoly(Player::One) => PayoffProfile { u1: monopoly, u2: 0.0 },
            PayoffFormula::Monopoly(Player::Two) => PayoffProfile { u1: 0.0, u2: monopoly },
            PayoffFormula::AxisWinner { winner, weight } => {
                let t = match winner {
                    Player::One => profile.x2,
                    Player::Two => profile.x1,
                };
                let u = (t * weight - c) * (a - t * weight);
                match winner {
                    Player::One => PayoffProfile { u1: u, u2: 0.0 },
                    Player::Two => PayoffProfile { u1: 0.0, u2: u },
                }
            }
            PayoffFormula::EqualSplit => {
                let u = (a - c).powi(2) / 8.0;
                PayoffProfile { u1: u, u2: u }
            }
        }
    }
}

/// Upper cut for unbounded family directions: `3a`, or twice the lower
/// end when that already exceeds `3a`.
fn sample_cap(a: f64, lo: f64) -> f64 {
    (3.0 * a).max(2.0 * lo)
}

/// All Nash-equilibrium families for the game's regime.
///
/// * classical, or any model at `g = 0`: the single point `(c, c)`;
/// * Li–Du–Massar with `g > 0`, two qubits with `0 < g < π/4`: eight
///   families (an anchor point, two monopoly curves, two axis segments,
///   three zero-payoff regions);
/// * two qubits at `g = π/4`: the priced-out region `[2a, ∞)²` and the
///   collusive segment `x1 + x2 = a + c`.
pub fn equilibrium_families(params: &GameParams) -> Vec<EquilibriumFamily> {
    let (a, c, g) = (params.a(), params.c(), params.gamma());
    let family = |id, description: String, shape, payoff, cap| EquilibriumFamily {
        id,
        description,
        shape,
        payoff,
        sample_cap: cap,
        a,
        c,
    };

    if g == 0.0 {
        return vec![family(
            "cost-pricing",
            "(c, c)".to_string(),
            FamilyShape::Point(StrategyProfile { x1: c, x2: c }),
            PayoffFormula::Zero,
            3.0 * a,
        )];
    }

    if params.model() == Model::TwoQubit && g == FRAC_PI_4 {
        let cutoff = 2.0 * a;
        let cap = sample_cap(a, cutoff);
        return vec![
            family(
                "priced-out-region",
                "x1, x2 in [2a, inf)".to_string(),
                FamilyShape::Region { x1: Interval::from(cutoff), x2: Interval::from(cutoff) },
                PayoffFormula::Zero,
                cap,
            ),
            family(
                "collusive-segment",
                "(x1, a + c - x1), x1 in [0, a + c]".to_string(),
                FamilyShape::Curve {
                    free: Player::One,
                    domain: Interval::closed(0.0, a + c),
                    offset: a + c,
                    coef: 1.0,
                    divisor: 1.0,
                },
                PayoffFormula::EqualSplit,
                cap,
            ),
        ];
    }

    // Shared eight-row table; thresholds come from the correspondence so
    // that family endpoints and branch breakpoints are bit-identical.
    let corr = Correspondence::for_params(params);
    let bp: Vec<f64> = corr.breakpoints().iter().map(|b| b.value).collect();
    let (anchor, interior_end, full_start) = (bp[0], bp[2], bp[3]);
    let half = params.monopoly_price();
    let (own, cross, names) = match params.model() {
        Model::Ldm => (g.cosh(), g.sinh(), ("c/e^g", "cosh g", "csch g", "sinh g")),
        _ => {
            let (cos2, sin2) = crate::duopoly::qubit_weights(g);
            (cos2, sin2, ("c", "cos^2 g", "sin^-2 g", "sin^2 g"))
        }
    };
    let (anchor_name, own_name, inv_cross_name, cross_name) = names;
    let cap = sample_cap(a, full_start);
    let low = Interval::closed(0.0, anchor);
    let high = Interval::from(full_start);
    let axis = Interval::open(interior_end, full_start);
    let monopoly_curve = |free| FamilyShape::Curve {
        free,
        domain: low,
        offset: half,
        coef: own,
        divisor: cross,
    };
    let axis_curve = |free| FamilyShape::Curve {
        free,
        domain: axis,
        offset: 0.0,
        coef: 0.0,
        divisor: 1.0,
    };

    vec![
        family(
            "anchor-point",
            format!("({anchor_name}, {anchor_name})"),
            FamilyShape::Point(StrategyProfile { x1: anchor, x2: anchor }),
            PayoffFormula::Zero,
            cap,
        ),
        family(
            "p1-monopoly-curve",
            format!("(x1, ((a+c)/2 - x1 {own_name}) {inv_cross_name}), x1 in [0, {anchor_name}]"),
            monopoly_curve(Player::One),
            PayoffFormula::Monopoly(Player::One),
            cap,
        ),
        family(
            "p2-monopoly-curve",
            format!("(((a+c)/2 - x2 {own_name}) {inv_cross_name}, x2), x2 in [0, {anchor_name}]"),
            monopoly_curve(Player::Two),
            PayoffFormula::Monopoly(Player::Two),
            cap,
        ),
        family(
            "p1-axis-segment",
            format!("(0, x2), x2 in ((a+c)/(2 {cross_name}), a/{cross_name})"),
            axis_curve(Player::Two),
            PayoffFormula::AxisWinner { winner: Player::One, weight: cross },
            cap,
        ),
        family(
            "p2-axis-segment",
            format!("(x1, 0), x1 in ((a+c)/(2 {cross_name}), a/{cross_name})"),
            axis_curve(Player::One),
            PayoffFormula::AxisWinner { winner: Player::Two, weight: cross },
            cap,
        ),
        family(
            "low-high-region",
            format!("x1 in [0, {anchor_name}], x2 in [a/{cross_name}, inf)"),
            FamilyShape::Region { x1: low, x2: high },
            PayoffFormula::Zero,
            cap,
        ),
        family(
            "high-low-region",
            format!("x1 in [a/{cross_name}, inf), x2 in [0, {anchor_name}]"),
            FamilyShape::Region { x1: high, x2: low },
            PayoffFormula::Zero,
            cap,
        ),
        family(
            "high-high-region",
            format!("x1, x2 in [a/{cross_name}, inf)"),
            FamilyShape::Region { x1: high, x2: high },
            PayoffFormula::Zero,
            cap,
        ),
    ]
}

/// Profiles spanning `family`; see [`EquilibriumFamily::sample`].
pub fn sample_family(family: &EquilibriumFamily, n: usize) -> Vec<StrategyProfile> {
    family.sample(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn regime_sizes() {
        let cl = GameParams::classical(10.0, 2.0).unwrap();
        assert_eq!(equilibrium_families(&cl).len(), 1);
        assert_eq!(equilibrium_families(&GameParams::ldm(10.0, 2.0, 0.0).unwrap()).len(), 1);
        assert_eq!(equilibrium_families(&GameParams::ldm(10.0, 2.0, 0.3).unwrap()).len(), 8);
        assert_eq!(equilibrium_families(&GameParams::two_qubit(10.0, 2.0, 0.3).unwrap()).len(), 8);
        assert_eq!(equilibrium_families(&GameParams::two_qubit(10.0, 2.0, FRAC_PI_4).unwrap()).len(), 2);
    }

    #[test]
    fn ldm_monopoly_curve_start() {
        let p = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
        let fams = equilibrium_families(&p);
        let curve = &fams[1];
        assert_eq!(curve.dim(), 1);
        let start = curve.curve_point(0.0).unwrap();
        assert_eq!(start.x1, 0.0);
        assert_relative_eq!(start.x2, 8.0, epsilon = 1e-12);
        let u = curve.payoff_at(&start);
        assert_eq!(u, PayoffProfile { u1: 16.0, u2: 0.0 });
    }

    #[test]
    fn sampling_shapes() {
        let cl = GameParams::classical(10.0, 2.0).unwrap();
        let pts = sample_family(&equilibrium_families(&cl)[0], 5);
        assert_eq!(pts, vec![StrategyProfile { x1: 2.0, x2: 2.0 }; 5]);

        let q = GameParams::two_qubit(10.0, 2.0, FRAC_PI_4).unwrap();
        let seg = sample_family(&equilibrium_families(&q)[1], 3);
        let want = [(0.0, 12.0), (6.0, 6.0), (12.0, 0.0)];
        for (p, (x1, x2)) in seg.iter().zip(want) {
            assert_eq!((p.x1, p.x2), (x1, x2));
        }
        let region = sample_family(&equilibrium_families(&q)[0], 4);
        assert_eq!(region.len(), 16);
        assert!(region.iter().all(|p| p.x1 >= 20.0 && p.x1 <= 40.0 && p.x2 >= 20.0));

        let ldm = GameParams::ldm(10.0, 2.0, LN_2).unwrap();
        let axis = sample_family(&equilibrium_families(&ldm)[3], 2);
        assert!(axis.iter().all(|p| p.x1 == 0.0 && p.x2 > 8.0 + 1e-9 && p.x2 < 40.0 / 3.0 - 1e-9));
    }

    #[test]
    fn cap_clears_high_lower_bounds() {
        // sin² (pi/6) = 1/4 puts the priced-out threshold at 4a
        let q = GameParams::two_qubit(10.0, 2.0, std::f64::consts::FRAC_PI_6).unwrap();
        let fams = equilibrium_families(&q);
        assert!(fams[7].sample_cap > 40.0);
        assert!(fams[7].is_unbounded());
    }
}

use std::f64::consts::FRAC_PI_4;

use bertrand_core::equilibria::{default_epsilon, FamilyShape, GridGame, PayoffFormula};
use bertrand_core::quantum::{
    compare_ldm, price_from_measurement, qubit_state, reduced_density, standard_ldm_points, MAX_VALIDATED_GAMMA,
};
use bertrand_core::reply::grid_best_reply_oracle;
use bertrand_core::{
    best_reply, equilibrium_families, qubit_prices, verify_family, Correspondence, Interval, Model, Player,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{emit, sig, sig_opt};
use crate::CliError;

/// Sampled points per family for `equilibria verify`.
pub const VERIFY_SAMPLES: usize = 25;
/// Samples per player for `plot-data`.
pub const PLOT_SAMPLES: usize = 1000;
pub const LDM_TOLERANCE: f64 = 1e-6;
pub const QUBIT_TOLERANCE: f64 = 1e-12;
pub const DENSITY_TOLERANCE: f64 = 1e-14;
pub const QUBIT_TRIALS: usize = 200;
const QUBIT_SEED: u64 = 0x5eed_b17e;

fn player_arg(p: u8) -> Result<Player, CliError> {
    match p {
        1 => Ok(Player::One),
        2 => Ok(Player::Two),
        _ => Err(CliError::Usage(format!("--player must be 1 or 2, got {p}"))),
    }
}

#[derive(Serialize)]
struct PayoffRow {
    model: String,
    a: f64,
    c: f64,
    gamma: f64,
    x1: f64,
    x2: f64,
    p1: f64,
    p2: f64,
    u1: f64,
    u2: f64,
}

pub fn payoff(config: &RunConfig, x1: f64, x2: f64) -> Result<(), CliError> {
    let p = config.params()?;
    let u = p.payoffs(x1, x2)?;
    let (p1, p2) = p.prices(x1, x2);
    emit(
        config,
        &[PayoffRow {
            model: p.model().to_string(),
            a: sig(p.a()),
            c: sig(p.c()),
            gamma: sig(p.gamma()),
            x1: sig(x1),
            x2: sig(x2),
            p1: sig(p1),
            p2: sig(p2),
            u1: sig(u.u1),
            u2: sig(u.u2),
        }],
    )
}

#[derive(Serialize)]
struct ReplyRow {
    model: String,
    player: usize,
    opp: f64,
    variant: &'static str,
    value: Option<f64>,
    branch: String,
    oracle_h: Option<f64>,
    oracle_count: Option<usize>,
    oracle_min: Option<f64>,
    oracle_max: Option<f64>,
    oracle_agrees: Option<bool>,
}

/// Returns whether the oracle (if requested) agreed.
pub fn best_reply_cmd(config: &RunConfig, player: u8, opp: f64) -> Result<bool, CliError> {
    let p = config.params()?;
    let who = player_arg(player)?;
    let reply = best_reply(who, opp, &p)?;
    let corr = Correspondence::for_params(&p);
    let mut row = ReplyRow {
        model: p.model().to_string(),
        player: who.index(),
        opp: sig(opp),
        variant: reply.tag(),
        value: sig_opt(reply.value()),
        branch: interval_text(&corr.branch_for(opp).domain),
        oracle_h: None,
        oracle_count: None,
        oracle_min: None,
        oracle_max: None,
        oracle_agrees: None,
    };
    let mut agrees = true;
    if config.oracle {
        let grid = config.grid(&p)?;
        let maxima = grid_best_reply_oracle(who, opp, &p, &grid)?;
        agrees = reply.agrees_with_grid(opp, &maxima, &grid);
        row.oracle_h = Some(sig(grid.step()));
        row.oracle_count = Some(maxima.len());
        row.oracle_min = maxima.first().copied().map(sig);
        row.oracle_max = maxima.last().copied().map(sig);
        row.oracle_agrees = Some(agrees);
    }
    emit(config, &[row])?;
    Ok(agrees)
}

#[derive(Serialize)]
struct FamilyRow {
    id: &'static str,
    dim: usize,
    description: String,
    domain: String,
    payoff: String,
    start_x1: f64,
    start_x2: f64,
    start_u1: f64,
    start_u2: f64,
    end_x1: f64,
    end_x2: f64,
    end_u1: f64,
    end_u2: f64,
    truncated_at: Option<f64>,
}

fn formula_text(f: &PayoffFormula) -> String {
    match f {
        PayoffFormula::Zero => "(0, 0)".into(),
        PayoffFormula::Monopoly(Player::One) => "((a-c)^2/4, 0)".into(),
        PayoffFormula::Monopoly(Player::Two) => "(0, (a-c)^2/4)".into(),
        PayoffFormula::AxisWinner { winner: Player::One, weight } => {
            format!("((x2 w - c)(a - x2 w), 0), w = {}", sig(*weight))
        }
        PayoffFormula::AxisWinner { winner: Player::Two, weight } => {
            format!("(0, (x1 w - c)(a - x1 w)), w = {}", sig(*weight))
        }
        PayoffFormula::EqualSplit => "((a-c)^2/8, (a-c)^2/8)".into(),
    }
}

fn interval_text(i: &Interval) -> String {
    let l = if i.lo_closed { '[' } else { '(' };
    let r = if i.hi_closed { ']' } else { ')' };
    let hi = if i.is_unbounded() { "inf".to_string() } else { sig(i.hi).to_string() };
    format!("{l}{}, {hi}{r}", sig(i.lo))
}

fn domain_text(shape: &FamilyShape) -> String {
    match shape {
        FamilyShape::Point(p) => format!("({}, {})", sig(p.x1), sig(p.x2)),
        FamilyShape::Curve { free, domain, .. } => format!("x{} in {}", free.index(), interval_text(domain)),
        FamilyShape::Region { x1, x2 } => format!("x1 in {}, x2 in {}", interval_text(x1), interval_text(x2)),
    }
}

pub fn equilibria_list(config: &RunConfig) -> Result<(), CliError> {
    let p = config.params()?;
    let rows: Vec<FamilyRow> = equilibrium_families(&p)
        .into_iter()
        .map(|f| {
            let (s, e) = f.endpoints();
            let (us, ue) = (f.payoff_at(&s), f.payoff_at(&e));
            FamilyRow {
                id: f.id,
                dim: f.dim(),
                description: f.description.clone(),
                domain: domain_text(&f.shape),
                payoff: formula_text(&f.payoff),
                start_x1: sig(s.x1),
                start_x2: sig(s.x2),
                start_u1: sig(us.u1),
                start_u2: sig(us.u2),
                end_x1: sig(e.x1),
                end_x2: sig(e.x2),
                end_u1: sig(ue.u1),
                end_u2: sig(ue.u2),
                truncated_at: f.is_unbounded().then(|| sig(f.sample_cap)),
            }
        })
        .collect();
    emit(config, &rows)
}

#[derive(Serialize)]
struct CheckRow {
    id: &'static str,
    x1: f64,
    x2: f64,
    nash: bool,
    u1: f64,
    u2: f64,
    formula_u1: f64,
    formula_u2: f64,
    payoff_agrees: bool,
}

/// Returns whether every sampled point passed.
pub fn equilibria_verify(config: &RunConfig) -> Result<bool, CliError> {
    let p = config.params()?;
    let mut rows = Vec::new();
    for f in equilibrium_families(&p) {
        for check in verify_family(&f, &p, VERIFY_SAMPLES) {
            rows.push(CheckRow {
                id: f.id,
                x1: sig(check.profile.x1),
                x2: sig(check.profile.x2),
                nash: check.nash,
                u1: sig(check.payoff.u1),
                u2: sig(check.payoff.u2),
                formula_u1: sig(check.formula.u1),
                formula_u2: sig(check.formula.u2),
                payoff_agrees: check.payoff_agrees,
            });
        }
    }
    let ok = rows.iter().all(|r| r.nash && r.payoff_agrees);
    emit(config, &rows)?;
    Ok(ok)
}

/// One line of `equilibria search`: a metadata record followed by one
/// record per surviving profile.
#[derive(Serialize)]
struct SearchRow {
    kind: &'static str,
    x1: Option<f64>,
    x2: Option<f64>,
    u1: Option<f64>,
    u2: Option<f64>,
    gain: Option<f64>,
    h: Option<f64>,
    epsilon: Option<f64>,
    x_max: Option<f64>,
    count: Option<usize>,
    truncated: Option<String>,
}

pub fn equilibria_search(config: &RunConfig) -> Result<(), CliError> {
    let p = config.params()?;
    let grid = config.grid(&p)?;
    let eps = config.epsilon.unwrap_or_else(|| default_epsilon(&p, &grid));
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CliError::Usage(format!("--epsilon must be positive, got {eps}")));
    }
    let game = GridGame::new(&p, &grid);
    let found = game.epsilon_equilibria(eps);
    let truncated: Vec<&str> = equilibrium_families(&p)
        .into_iter()
        .filter(|f| f.is_unbounded() || f.endpoints().1.x1.max(f.endpoints().1.x2) > grid.x_max())
        .map(|f| f.id)
        .collect();
    let mut rows = vec![SearchRow {
        kind: "metadata",
        x1: None,
        x2: None,
        u1: None,
        u2: None,
        gain: None,
        h: Some(sig(grid.step())),
        epsilon: Some(sig(eps)),
        x_max: Some(sig(grid.x_max())),
        count: Some(found.len()),
        truncated: Some(truncated.join(";")),
    }];
    rows.extend(found.iter().map(|s| {
        let u = p.payoffs(s.x1, s.x2).expect("grid points are nonnegative");
        let gain = game.max_gain(grid.nearest_index(s.x1), grid.nearest_index(s.x2));
        SearchRow {
            kind: "profile",
            x1: Some(sig(s.x1)),
            x2: Some(sig(s.x2)),
            u1: Some(sig(u.u1)),
            u2: Some(sig(u.u2)),
            gain: Some(sig(gain)),
            h: None,
            epsilon: None,
            x_max: None,
            count: None,
            truncated: None,
        }
    }));
    emit(config, &rows)
}

#[derive(Serialize)]
struct PlotRow {
    kind: &'static str,
    player: Option<usize>,
    opp: f64,
    variant: &'static str,
    value: Option<f64>,
}

pub fn plot_data(config: &RunConfig) -> Result<(), CliError> {
    let p = config.params()?;
    let x_max = config.grid(&p)?.x_max();
    let corr = Correspondence::for_params(&p);
    let mut rows = Vec::with_capacity(2 * PLOT_SAMPLES + 8);
    for who in [Player::One, Player::Two] {
        for k in 0..PLOT_SAMPLES {
            let opp = x_max * k as f64 / (PLOT_SAMPLES - 1) as f64;
            let reply = best_reply(who, opp, &p)?;
            rows.push(PlotRow {
                kind: "sample",
                player: Some(who.index()),
                opp: sig(opp),
                variant: reply.tag(),
                value: sig_opt(reply.value()),
            });
        }
    }
    for bp in corr.breakpoints() {
        rows.push(PlotRow { kind: "breakpoint", player: None, opp: sig(bp.value), variant: bp.label, value: Some(sig(bp.value)) });
    }
    emit(config, &rows)
}

#[derive(Serialize)]
struct QuantumRow {
    kind: &'static str,
    x1: Option<f64>,
    x2: Option<f64>,
    gamma: Option<f64>,
    measured1: Option<f64>,
    measured2: Option<f64>,
    expected1: Option<f64>,
    expected2: Option<f64>,
    error: f64,
    leakage: Option<f64>,
    tolerance: Option<f64>,
    passed: Option<bool>,
}

impl QuantumRow {
    fn summary(kind: &'static str, error: f64, tolerance: f64) -> Self {
        QuantumRow {
            kind,
            x1: None,
            x2: None,
            gamma: None,
            measured1: None,
            measured2: None,
            expected1: None,
            expected2: None,
            error: sig(error),
            leakage: None,
            tolerance: Some(tolerance),
            passed: Some(error <= tolerance),
        }
    }
}

/// Returns whether every comparison met its tolerance.
pub fn verify_quantum(config: &RunConfig) -> Result<bool, CliError> {
    match Model::from(config.model) {
        Model::Ldm => verify_ldm(config),
        Model::TwoQubit => verify_qubit(config),
        Model::Classical => Err(CliError::Usage("verify-quantum needs --model ldm or --model two-qubit".into())),
    }
}

fn verify_ldm(config: &RunConfig) -> Result<bool, CliError> {
    let points = match config.gamma {
        None => standard_ldm_points(),
        Some(g) => {
            if !(0.0..=MAX_VALIDATED_GAMMA).contains(&g) {
                return Err(CliError::Usage(format!(
                    "--gamma {g} is outside the validated range [0, {MAX_VALIDATED_GAMMA}]"
                )));
            }
            standard_ldm_points().into_iter().filter(|pt| pt.2 == 0.0).map(|(x1, x2, _)| (x1, x2, g)).collect()
        }
    };
    let results = compare_ldm(&points, config.truncation)?;
    let worst = results.iter().map(|r| r.error).fold(0.0, f64::max);
    let mut rows: Vec<QuantumRow> = results
        .iter()
        .map(|r| QuantumRow {
            kind: "point",
            x1: Some(sig(r.x1)),
            x2: Some(sig(r.x2)),
            gamma: Some(sig(r.gamma)),
            measured1: Some(sig(r.simulated.0)),
            measured2: Some(sig(r.simulated.1)),
            expected1: Some(sig(r.closed_form.0)),
            expected2: Some(sig(r.closed_form.1)),
            error: sig(r.error),
            leakage: Some(sig(r.leakage)),
            tolerance: None,
            passed: None,
        })
        .collect();
    rows.push(QuantumRow::summary("summary", worst, LDM_TOLERANCE));
    emit(config, &rows)?;
    Ok(worst <= LDM_TOLERANCE)
}

fn verify_qubit(config: &RunConfig) -> Result<bool, CliError> {
    let p = config.params()?;
    let mut rng = ChaCha8Rng::seed_from_u64(QUBIT_SEED);
    let mut rows = Vec::with_capacity(QUBIT_TRIALS + 2);
    let mut worst: f64 = 0.0;
    let mut density_err: f64 = 0.0;
    for _ in 0..QUBIT_TRIALS {
        let x1 = rng.gen_range(0.0..2.0 * p.a());
        let x2 = rng.gen_range(0.0..2.0 * p.a());
        let g = match config.gamma {
            Some(_) => p.gamma(),
            None => rng.gen_range(0.0..=FRAC_PI_4),
        };
        let m1 = price_from_measurement(x1, x2, g, Player::One)?;
        let m2 = price_from_measurement(x1, x2, g, Player::Two)?;
        let (e1, e2) = qubit_prices(x1, x2, g)?;
        let scale = x1.max(x2).max(1.0);
        let err = (m1 - e1).abs().max((m2 - e2).abs()) / scale;
        worst = worst.max(err);

        let (cos2, sin2) = (g.cos().powi(2), g.sin().powi(2));
        let state = qubit_state(g)?;
        for who in [Player::One, Player::Two] {
            let rho = reduced_density(&state, who);
            let want = [[cos2, 0.0], [0.0, sin2]];
            for r in 0..2 {
                for c in 0..2 {
                    density_err = density_err.max((rho[r][c] - want[r][c]).norm());
                }
            }
        }
        rows.push(QuantumRow {
            kind: "point",
            x1: Some(sig(x1)),
            x2: Some(sig(x2)),
            gamma: Some(sig(g)),
            measured1: Some(sig(m1)),
            measured2: Some(sig(m2)),
            expected1: Some(sig(e1)),
            expected2: Some(sig(e2)),
            error: sig(err),
            leakage: None,
            tolerance: None,
            passed: None,
        });
    }
    rows.push(QuantumRow::summary("summary", worst, QUBIT_TOLERANCE));
    rows.push(QuantumRow::summary("density", density_err, DENSITY_TOLERANCE));
    emit(config, &rows)?;
    Ok(worst <= QUBIT_TOLERANCE && density_err <= DENSITY_TOLERANCE)
}

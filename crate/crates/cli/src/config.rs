use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, LN_2, PI};
use std::path::PathBuf;

use bertrand_core::{GameParams, Model, ProfileGrid};
use clap::{Args, ValueEnum};

use crate::CliError;

/// Two-qubit gammas this close to pi/4 are taken as pi/4, so that the
/// four-decimal literal 0.7854 selects the maximally entangled game.
pub const PI_4_SNAP: f64 = 5e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Classical,
    Ldm,
    TwoQubit,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Classical => Model::Classical,
            ModelArg::Ldm => Model::Ldm,
            ModelArg::TwoQubit => Model::TwoQubit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "classical", global = true)]
    pub model: ModelArg,

    /// Demand intercept.
    #[arg(short = 'a', default_value_t = 10.0, global = true)]
    pub a: f64,

    /// Marginal cost.
    #[arg(short = 'c', default_value_t = 2.0, global = true)]
    pub c: f64,

    /// Entanglement: a number, `pi`, `pi/K`, `K*pi` or `ln2`.
    #[arg(long, value_parser = parse_gamma, global = true)]
    pub gamma: Option<f64>,

    /// Grid step for oracles and searches.
    #[arg(long = "h", global = true)]
    pub h: Option<f64>,

    #[arg(long = "x-max", global = true)]
    pub x_max: Option<f64>,

    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Also run the brute-force grid oracle.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Per-mode Fock truncation.
    #[arg(short = 'N', default_value_t = 32, global = true)]
    pub truncation: usize,
}

pub fn parse_gamma(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let named = |t: &str| match t {
        "pi" => Some(PI),
        "ln2" => Some(LN_2),
        _ => None,
    };
    if let Some(v) = named(s) {
        return Ok(v);
    }
    if let Some(den) = s.strip_prefix("pi/") {
        let k: f64 = den.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        return Ok(match den {
            "2" => FRAC_PI_2,
            "3" => FRAC_PI_3,
            "4" => FRAC_PI_4,
            "6" => FRAC_PI_6,
            "8" => FRAC_PI_8,
            _ if k > 0.0 => PI / k,
            _ => return Err(format!("denominator in `{s}` must be positive")),
        });
    }
    if let Some(num) = s.strip_suffix("*pi") {
        let k: f64 = num.parse().map_err(|_| format!("bad multiplier in `{s}`"))?;
        return Ok(k * PI);
    }
    s.parse::<f64>().map_err(|_| format!("`{s}` is not a number, pi, pi/K, K*pi or ln2"))
}

impl RunConfig {
    pub fn gamma_or_zero(&self) -> f64 {
        self.gamma.unwrap_or(0.0)
    }

    pub fn params(&self) -> Result<GameParams, CliError> {
        let model = Model::from(self.model);
        let mut gamma = self.gamma_or_zero();
        if model == Model::TwoQubit && (gamma - FRAC_PI_4).abs() <= PI_4_SNAP {
            gamma = FRAC_PI_4;
        }
        Ok(GameParams::new(model, self.a, self.c, gamma)?)
    }

    pub fn grid(&self, params: &GameParams) -> Result<ProfileGrid, CliError> {
        if let Some(x) = self.x_max {
            if !(x.is_finite() && x > 0.0) {
                return Err(CliError::Usage(format!("--x-max must be positive, got {x}")));
            }
        }
        if let Some(h) = self.h {
            if !(h.is_finite() && h > 0.0) {
                return Err(CliError::Usage(format!("--h must be positive, got {h}")));
            }
        }
        let x_max = self.x_max.unwrap_or_else(|| ProfileGrid::default_x_max(params));
        Ok(match self.h {
            Some(h) => ProfileGrid::with_step(x_max, h)?,
            None => ProfileGrid::new(x_max, bertrand_core::grid::DEFAULT_STEPS)?,
        })
    }
}

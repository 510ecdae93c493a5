//! Run configuration: TOML sections with strict keys, data given as
//! expressions in x, y, t or as preset names.

use std::path::Path;
use std::sync::Arc;

use meval::{ContextProvider, FuncEvalError};
use serde::{Deserialize, Serialize};

use crate::domain::{build_disc_grid, build_interval_grid, Grid};
use crate::error::{check_exponents, Error, Result};
use crate::parabolic::StepControl;
use crate::source::SpaceTimeFn;
use crate::stationary::StationaryMethod;

struct Vars {
    x: f64,
    y: f64,
    t: f64,
}

impl ContextProvider for Vars {
    fn get_var(&self, name: &str) -> Option<f64> {
        match name {
            "x" => Some(self.x),
            "y" => Some(self.y),
            "t" => Some(self.t),
            "pi" => Some(std::f64::consts::PI),
            "e" => Some(std::f64::consts::E),
            _ => None,
        }
    }

    fn eval_func(&self, name: &str, args: &[f64]) -> std::result::Result<f64, FuncEvalError> {
        let f: fn(f64) -> f64 = match name {
            "sin" => f64::sin,
            "cos" => f64::cos,
            "exp" => f64::exp,
            "abs" => f64::abs,
            _ => return Err(FuncEvalError::UnknownFunction),
        };
        match args {
            [a] => Ok(f(*a)),
            [] => Err(FuncEvalError::TooFewArguments),
            _ => Err(FuncEvalError::TooManyArguments),
        }
    }
}

/// Named data.
pub const DATA_PRESETS: [(&str, &str); 6] = [
    ("zero", "0"),
    ("one", "1"),
    ("bump", "sin(pi*x)"),
    ("ramp50t", "50*t"),
    ("minus1", "-1"),
    ("plus1", "1"),
];

/// A parsed expression in x, y, t.
#[derive(Clone, Debug)]
pub struct Expression {
    source: String,
    expr: Arc<meval::Expr>,
    time_dependent: bool,
}

impl Expression {
    /// Parses `text`, or the expression of a preset when `text` names one.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let source = DATA_PRESETS
            .iter()
            .find(|(k, _)| *k == text.trim())
            .map_or(text.trim(), |(_, v)| *v)
            .to_string();
        let bad = |message: String| Error::Expression { name: name.to_string(), message };
        let tokens = meval::tokenizer::tokenize(&source).map_err(|e| bad(e.to_string()))?;
        let time_dependent = tokens.iter().any(|t| matches!(t, meval::tokenizer::Token::Var(v) if v == "t"));
        let expr: meval::Expr = source.parse().map_err(|e: meval::Error| bad(e.to_string()))?;
        expr.eval_with_context(Vars { x: 0.25, y: 0.25, t: 0.25 }).map_err(|e| bad(e.to_string()))?;
        Ok(Expression { source, expr: Arc::new(expr), time_dependent })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, x: [f64; 2], t: f64) -> f64 {
        self.expr.eval_with_context(Vars { x: x[0], y: x[1], t }).unwrap_or(f64::NAN)
    }

    pub fn to_fn(&self) -> SpaceTimeFn {
        let expr = self.clone();
        if let Ok(c) = self.source.parse::<f64>() {
            return SpaceTimeFn::constant(c);
        }
        if self.time_dependent {
            SpaceTimeFn::new(move |x, t| expr.eval(x, t))
        } else {
            SpaceTimeFn::steady(move |x| expr.eval(x, 0.0))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum DomainConfig {
    Interval {
        #[serde(default)]
        a: f64,
        #[serde(default = "one")]
        b: f64,
        #[serde(default = "default_n")]
        n: usize,
        #[serde(default)]
        delta: Option<f64>,
    },
    Disc {
        #[serde(default = "one")]
        radius: f64,
        #[serde(default = "default_n")]
        n: usize,
        #[serde(default)]
        delta: Option<f64>,
    },
}

fn one() -> f64 {
    1.0
}
fn default_n() -> usize {
    128
}

impl Default for DomainConfig {
    fn default() -> Self {
        DomainConfig::Interval { a: 0.0, b: 1.0, n: 128, delta: None }
    }
}

impl DomainConfig {
    pub fn build(&self) -> Result<Arc<Grid>> {
        let (grid, delta) = match *self {
            DomainConfig::Interval { a, b, n, delta } => (build_interval_grid(a, b, n)?, delta),
            DomainConfig::Disc { radius, n, delta } => (build_disc_grid(radius, n)?, delta),
        };
        Ok(Arc::new(match delta {
            Some(d) => grid.with_delta(d)?,
            None => grid,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EquationConfig {
    pub p: f64,
    pub q: f64,
    /// Discount for stationary solves and barrier constants.
    pub lambda: f64,
}

impl Default for EquationConfig {
    fn default() -> Self {
        EquationConfig { p: 2.0, q: 3.0, lambda: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DataConfig {
    pub f: String,
    pub g: String,
    pub u0: String,
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig { f: "0".into(), g: "0".into(), u0: "0".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParabolicConfig {
    pub horizon: f64,
}

impl Default for ParabolicConfig {
    fn default() -> Self {
        ParabolicConfig { horizon: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StationaryConfig {
    /// Defaults to 1e−8·(1 + ‖f̃‖∞).
    pub tol: Option<f64>,
    pub max_iterations: usize,
    pub method: StationaryMethod,
    /// Solve the state-constraint problem instead of the Dirichlet one.
    pub state_constraint: bool,
    /// Overrides M₂ for the state-constraint datum.
    pub m2: Option<f64>,
}

impl Default for StationaryConfig {
    fn default() -> Self {
        StationaryConfig { tol: None, max_iterations: 5_000_000, method: StationaryMethod::Auto, state_constraint: false, m2: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ErgodicConfig {
    pub lambdas: Vec<f64>,
    pub reference: Option<usize>,
    pub m2: Option<f64>,
    pub cross_check: bool,
}

impl Default for ErgodicConfig {
    fn default() -> Self {
        ErgodicConfig { lambdas: crate::ergodic::default_lambdas(), reference: None, m2: None, cross_check: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BarrierConfig {
    /// Bound C of the local barrier.
    pub target_c: f64,
    pub sample_count: usize,
    /// Scales r at which w_r is checked.
    pub scales: Vec<f64>,
}

impl Default for BarrierConfig {
    fn default() -> Self {
        BarrierConfig { target_c: 1.0, sample_count: 4000, scales: vec![0.5, 0.25, 0.125] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisConfig {
    /// Trajectory or field CSV consumed by supconv, holder and slope.
    pub input: Option<String>,
    pub alpha: f64,
    pub window_fraction: f64,
    /// Hölder exponent; β(p, q) when unset.
    pub beta: Option<f64>,
    /// Random ordered pairs for `compare`.
    pub pairs: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { input: None, alpha: 0.1, window_fraction: 0.5, beta: None, pairs: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: String,
    pub prefix: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: "out".into(), prefix: "run".into() }
    }
}

/// Everything a run needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub domain: DomainConfig,
    pub equation: EquationConfig,
    pub data: DataConfig,
    pub control: StepControl,
    pub parabolic: ParabolicConfig,
    pub stationary: StationaryConfig,
    pub ergodic: ErgodicConfig,
    pub barrier: BarrierConfig,
    pub analysis: AnalysisConfig,
    pub output: OutputConfig,
}

/// Built-in configurations, usable wherever a config path is accepted.
pub const CONFIG_PRESETS: [(&str, &str); 5] = [
    ("zero", "[parabolic]\nhorizon = 0.1\n"),
    ("ftilde_minus1", "[data]\nf = \"-1\"\n[domain.interval]\nn = 512\n"),
    ("ftilde_plus1", "[data]\nf = \"1\"\n[domain.interval]\nn = 512\n"),
    (
        "loss_of_bc",
        "[data]\ng = \"50*t\"\n[parabolic]\nhorizon = 0.05\n[domain.interval]\nn = 256\n",
    ),
    ("long_time_minus1", "[data]\nf = \"-1\"\n[parabolic]\nhorizon = 20.0\n[domain.interval]\nn = 64\n"),
];

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a file, or a preset when `source` names one.
    pub fn load(source: &str) -> Result<Self> {
        if let Some((_, text)) = CONFIG_PRESETS.iter().find(|(k, _)| *k == source) {
            return Self::from_toml(text);
        }
        let text = std::fs::read_to_string(Path::new(source)).map_err(|e| Error::Config(format!("{source}: {e}")))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        check_exponents(self.equation.p, self.equation.q)?;
        if !(self.equation.lambda > 0.0) {
            return Err(Error::Config(format!("lambda must be positive, got {}", self.equation.lambda)));
        }
        if !(self.parabolic.horizon > 0.0) {
            return Err(Error::Config(format!("horizon must be positive, got {}", self.parabolic.horizon)));
        }
        self.control.validate()?;
        for (name, text) in [("f", &self.data.f), ("g", &self.data.g), ("u0", &self.data.u0)] {
            Expression::parse(name, text)?;
        }
        if !(self.analysis.alpha > 0.0 && self.analysis.alpha <= 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1], got {}", self.analysis.alpha)));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Arc<Grid>> {
        self.domain.build()
    }

    pub fn f(&self) -> Result<Expression> {
        Expression::parse("f", &self.data.f)
    }
    pub fn g(&self) -> Result<Expression> {
        Expression::parse("g", &self.data.g)
    }
    pub fn u0(&self) -> Result<Expression> {
        Expression::parse("u0", &self.data.u0)
    }

    /// The configuration with every default filled in, as TOML.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let e = Expression::parse("f", "sin(pi*x) + 2*t^2 - abs(y)").unwrap();
        assert!((e.eval([0.5, -1.0], 1.0) - 2.0).abs() < 1e-15);
        assert!(e.to_fn().is_time_dependent());
        assert!(!Expression::parse("g", "exp(x)*cos(y)").unwrap().to_fn().is_time_dependent());
        assert_eq!(Expression::parse("g", "ramp50t").unwrap().eval([0.0; 2], 0.1), 5.0);
        assert_eq!(Expression::parse("g", "2.5").unwrap().to_fn().as_constant(), Some(2.5));
        assert!(Expression::parse("f", "tanh(x)").is_err());
        assert!(Expression::parse("f", "z + 1").is_err());
        assert!(Expression::parse("f", "1 +").is_err());
    }

    #[test]
    fn configs() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
        let err = RunConfig::from_toml("[equation]\np = 3.0\nq = 3.0\n").unwrap_err();
        assert!(err.to_string().contains("q > p ≥ 2"));
        assert!(matches!(RunConfig::from_toml("bogus = 1\n"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_toml("[control]\nfoo = 1\n"), Err(Error::Config(_))));
        let c = RunConfig::from_toml("[domain.disc]\nradius = 2.0\nn = 20\n").unwrap();
        assert_eq!(c.grid().unwrap().dimension(), 2);
        for (name, _) in CONFIG_PRESETS {
            RunConfig::load(name).unwrap();
        }
        let d = RunConfig::default();
        assert_eq!(RunConfig::from_toml(&d.to_toml().unwrap()).unwrap(), d);
    }
}

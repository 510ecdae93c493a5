//! Space-time data: sources, boundary data, initial data.

use std::fmt;
use std::sync::Arc;

type Inner = dyn Fn([f64; 2], f64) -> f64 + Send + Sync;

/// A function of (x, t). Time-independent data are sampled once per solve.
#[derive(Clone)]
pub struct SpaceTimeFn {
    f: Arc<Inner>,
    time_dependent: bool,
    constant: Option<f64>,
}

impl SpaceTimeFn {
    pub fn new(f: impl Fn([f64; 2], f64) -> f64 + Send + Sync + 'static) -> Self {
        SpaceTimeFn { f: Arc::new(f), time_dependent: true, constant: None }
    }

    pub fn steady(f: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static) -> Self {
        SpaceTimeFn { f: Arc::new(move |x, _| f(x)), time_dependent: false, constant: None }
    }

    pub fn constant(c: f64) -> Self {
        SpaceTimeFn { f: Arc::new(move |_, _| c), time_dependent: false, constant: Some(c) }
    }

    #[inline]
    pub fn eval(&self, x: [f64; 2], t: f64) -> f64 {
        (self.f)(x, t)
    }

    pub fn is_time_dependent(&self) -> bool {
        self.time_dependent
    }

    pub fn as_constant(&self) -> Option<f64> {
        self.constant
    }

    /// Values at the given points at time t.
    pub fn sample(&self, points: &[[f64; 2]], t: f64) -> Vec<f64> {
        points.iter().map(|&x| self.eval(x, t)).collect()
    }
}

impl fmt::Debug for SpaceTimeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Some(c) => write!(f, "SpaceTimeFn::constant({c})"),
            None => write!(f, "SpaceTimeFn {{ time_dependent: {} }}", self.time_dependent),
        }
    }
}

impl From<f64> for SpaceTimeFn {
    fn from(c: f64) -> Self {
        SpaceTimeFn::constant(c)
    }
}

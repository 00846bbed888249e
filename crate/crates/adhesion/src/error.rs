use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "dual grid [{dual_lo}, {dual_hi}] on axis {axis} does not cover the slope range \
         [{slope_lo}, {slope_hi}] of the input field"
    )]
    DualGridTooNarrow {
        axis: usize,
        dual_lo: f64,
        dual_hi: f64,
        slope_lo: f64,
        slope_hi: f64,
    },

    #[error("quadrature window of {halfwidth} standard deviations is below the minimum of 6")]
    QuadratureWindow { halfwidth: f64 },

    #[error("time step underflow at t = {t}: step {step} fell below minimum {min_step}")]
    StepUnderflow { t: f64, step: f64, min_step: f64 },

    #[error("velocity vectors are collinear or coincident")]
    CollinearVelocities,

    #[error("viscosity ladder not Cauchy: last decrement {last_decrement} > tol {tol}")]
    NonConvergent { last_decrement: f64, tol: f64 },

    #[error("point {0:?} lies outside the grid interior")]
    OutsideGrid(Vec<f64>),

    #[error("field is not convex: {0}")]
    NotConvex(String),

    #[error("time {0} is not sampled in the bundle")]
    TimeNotSampled(f64),

    #[error("convexification failed to stabilize after {0} sweeps")]
    ConvexifyNotStabilized(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

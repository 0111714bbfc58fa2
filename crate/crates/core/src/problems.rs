//! Benchmark targets and problems with known exact solutions.
//!
//! Every forcing term is expressed through the monomial derivatives in
//! `special`, so a single closed-form implementation backs both the
//! problems and their residual oracles.

use crate::special::{rl_left_monomial, rl_right_monomial};

/// f1(x) = sin(pi x / 2) x (1 - x). Vanishes at both ends with f1'(0) = 0,
/// the boundary profile that yields optimal interpolation rates for the
/// left kernel.
pub fn f1(x: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * x).sin() * x * (1.0 - x)
}

/// f2(x) = cos(pi x / 2) x (1 - x). Vanishes at both ends but f2'(0) = 1.
pub fn f2(x: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * x).cos() * x * (1.0 - x)
}

/// Exact solution of both boundary value problems: u(x) = x - x^2.
pub fn bvp_exact(x: f64) -> f64 {
    x - x * x
}

/// Forcing of the left-sided problem -D^a u = f with u = x - x^2:
/// f = D^a x^2 - D^a x. Behaves like x^(1 - a) near 0; the IEEE value at
/// x = 0 is infinite for a > 1.
pub fn problem1_forcing(alpha: f64, x: f64) -> f64 {
    rl_left_monomial(2.0, alpha, x) - rl_left_monomial(1.0, alpha, x)
}

/// Forcing of the right-sided problem with the same exact solution,
/// computed in the mirror form: u = x - x^2 = (1-x) - (1-x)^2, so the
/// negated right derivative is assembled from (1-x) powers directly. This
/// stays stable near x = 1 where the expanded form cancels catastrophically;
/// the value at x = 1 is unbounded like (1-x)^(1-a).
pub fn problem2_forcing(alpha: f64, x: f64) -> f64 {
    rl_right_monomial(2.0, alpha, x) - rl_right_monomial(1.0, alpha, x)
}

/// Source term of the diffusion benchmark,
/// q(x, t) = -e^-t ((1 + D^a)x - (1 + D^a)x^4) with D^a the left monomial
/// derivative; unbounded like x^(1-a) at x = 0.
pub fn diffusion_source(alpha: f64, x: f64, t: f64) -> f64 {
    -(-t).exp()
        * ((x + rl_left_monomial(1.0, alpha, x)) - (x.powi(4) + rl_left_monomial(4.0, alpha, x)))
}

/// Initial profile u(x, 0) = x - x^4.
pub fn diffusion_initial(x: f64) -> f64 {
    x - x.powi(4)
}

/// Exact solution u(x, t) = e^-t (x - x^4).
pub fn diffusion_exact(x: f64, t: f64) -> f64 {
    (-t).exp() * (x - x.powi(4))
}

/// The named benchmarks addressable from the command line and the study
/// harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Benchmark {
    /// Interpolation of f1.
    F1,
    /// Interpolation of f2.
    F2,
    /// Left Riemann-Liouville two-point boundary value problem.
    BvpLeft,
    /// Right Riemann-Liouville two-point boundary value problem.
    BvpRight,
    /// Fractional diffusion with the left operator.
    Diffusion,
}

impl Benchmark {
    pub fn name(self) -> &'static str {
        match self {
            Benchmark::F1 => "f1",
            Benchmark::F2 => "f2",
            Benchmark::BvpLeft => "bvp-left",
            Benchmark::BvpRight => "bvp-right",
            Benchmark::Diffusion => "diffusion",
        }
    }
}

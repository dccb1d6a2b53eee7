//! Empirical orders: log-log slope fits of error sequences, limit relations
//! between families, and coefficient growth checks.

use rayon::prelude::*;

use crate::closed_forms;
use crate::error::{Error, Result};
use crate::laguerre_expansion::{solve_plan, FreeParamMode};
use crate::polyfamilies::{Family, FamilySpec};
use crate::scalar::{Precision, Scalar};

/// Geometrically spaced parameter values, in the order they are visited.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    values: Vec<f64>,
}

impl Grid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::GridTooSmall(values.len()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::GridNotGeometric("values must be positive and finite".into()));
        }
        let ratio = values[1] / values[0];
        if (ratio - 1.0).abs() < 0.01 {
            return Err(Error::GridNotGeometric("ratio must differ from 1".into()));
        }
        for (i, w) in values.windows(2).enumerate() {
            let step = w[1] / w[0];
            if (step / ratio - 1.0).abs() > 0.01 {
                return Err(Error::GridNotGeometric(format!("step {i} has ratio {step}, expected {ratio}")));
            }
        }
        Ok(Grid { values })
    }

    pub fn geometric(start: f64, ratio: f64, count: usize) -> Result<Self> {
        Self::new((0..count).map(|i| start * ratio.powi(i as i32)).collect())
    }

    /// `10², 10³, 10⁴, 10⁵`.
    pub fn large_default() -> Self {
        Self::geometric(100.0, 10.0, 4).expect("valid grid")
    }

    /// `0.1, 0.05, 0.025, 0.0125`.
    pub fn small_default() -> Self {
        Self::geometric(0.1, 0.5, 4).expect("valid grid")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// Fitted `d log₁₀ err / d log₁₀ param`; `-∞` when some error is exactly zero.
    pub slope: f64,
    pub intercept: f64,
    /// Largest distance of a point from the fitted line, in decades.
    pub residual: f64,
    /// `(param, error)` in grid order.
    pub points: Vec<(f64, f64)>,
}

impl OrderEstimate {
    pub fn is_exact(&self) -> bool {
        self.slope == f64::NEG_INFINITY
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Last error over first error.
    pub fn reduction(&self) -> f64 {
        let first = self.points.first().map_or(f64::NAN, |p| p.1);
        let last = self.points.last().map_or(f64::NAN, |p| p.1);
        last / first
    }
}

/// Evaluate `err` on every grid point (in parallel) and fit a line in log-log space.
pub fn estimate_order<F>(err: F, grid: &Grid) -> Result<OrderEstimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let errors: Vec<f64> = grid.values.par_iter().map(|&p| err(p)).collect::<Result<_>>()?;
    let points: Vec<(f64, f64)> = grid.values.iter().copied().zip(errors).collect();
    for &(param, value) in &points {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::NonpositiveError { param, value });
        }
    }
    if points.iter().any(|p| p.1 == 0.0) {
        return Ok(OrderEstimate {
            slope: f64::NEG_INFINITY,
            intercept: f64::NEG_INFINITY,
            residual: 0.0,
            points,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.log10()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.log10()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    Ok(OrderEstimate { slope, intercept, residual, points })
}

/// A limit relation between families; the grid parameter is named by
/// [`LimitCase::parameter`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitCase {
    /// `γ^{−n/2} C_n^γ(x/√γ) → H_n(x)/n!` as `γ → ∞`.
    GegenbauerToHermite { n: usize, x: f64 },
    /// `α^{−n/2} L_n^α(x√α + α) → (−1)ⁿ 2^{−n/2} H_n(x/√2)/n!` as `α → ∞`.
    LaguerreToHermite { n: usize, x: f64 },
    /// `γ^{−n} (γ + 2x²)^{n/2} C_n^γ(x/√(γ + 2x²)) → H_n(x)/n!` as `γ → ∞`; the
    /// scale is `z^{−n}` with `z = √(γ(1 − 2x'²)) = γ/√(γ + 2x²)` at the shifted argument `x'`.
    GegenbauerExact { n: usize, x: f64 },
    /// `P_n^{((α+1)/2)}([(α+1)(1 − cos φ) − ξ]/(2 sin φ); φ) → L_n^α(ξ)` as `φ → 0`.
    MpLambdaHalf { n: usize, alpha: f64, xi: f64 },
    /// `P_n^{(λ)}(x; φ) → L_n^α(ξ)` as `φ → 0`, with `(x, λ)` from
    /// [`closed_forms::mp_limit_substitution`].
    MpSubstitution { n: usize, alpha: f64, xi: f64 },
    /// `P_n^{(α,β)}(1 − 2ξ/(2 + α + β)) → L_n^α(ξ)` as `β → ∞`.
    JacobiToLaguerre { n: usize, alpha: f64, xi: f64 },
    /// `P_n^{(α,β)}(1 − 2ξ/β) → L_n^α(ξ)` as `β → ∞`.
    JacobiToLaguerreAskey { n: usize, alpha: f64, xi: f64 },
    /// `M_n(cξ/(1 − c); α + 1, c) → L_n^α(ξ)/L_n^α(0)`; the grid runs over `1 − c → 0`.
    MeixnerToLaguerre { n: usize, alpha: f64, xi: f64 },
}

impl LimitCase {
    pub fn name(&self) -> &'static str {
        match self {
            LimitCase::GegenbauerToHermite { .. } => "gegenbauer-hermite",
            LimitCase::LaguerreToHermite { .. } => "laguerre-hermite",
            LimitCase::GegenbauerExact { .. } => "gegenbauer-exact",
            LimitCase::MpLambdaHalf { .. } => "mp-lambda-half",
            LimitCase::MpSubstitution { .. } => "mp-substitution",
            LimitCase::JacobiToLaguerre { .. } => "jacobi-laguerre",
            LimitCase::JacobiToLaguerreAskey { .. } => "jacobi-laguerre-askey",
            LimitCase::MeixnerToLaguerre { .. } => "meixner-laguerre",
        }
    }

    pub fn parameter(&self) -> &'static str {
        match self {
            LimitCase::GegenbauerToHermite { .. } | LimitCase::GegenbauerExact { .. } => "gamma",
            LimitCase::LaguerreToHermite { .. } => "alpha",
            LimitCase::MpLambdaHalf { .. } | LimitCase::MpSubstitution { .. } => "phi",
            LimitCase::JacobiToLaguerre { .. } | LimitCase::JacobiToLaguerreAskey { .. } => "beta",
            LimitCase::MeixnerToLaguerre { .. } => "one_minus_c",
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            LimitCase::GegenbauerToHermite { n, .. }
            | LimitCase::LaguerreToHermite { n, .. }
            | LimitCase::GegenbauerExact { n, .. }
            | LimitCase::MpLambdaHalf { n, .. }
            | LimitCase::MpSubstitution { n, .. }
            | LimitCase::JacobiToLaguerre { n, .. }
            | LimitCase::JacobiToLaguerreAskey { n, .. }
            | LimitCase::MeixnerToLaguerre { n, .. } => n,
        }
    }

    /// Large parameters run `10²..10⁵`; `φ` and `1 − c` run `0.1` down by halves.
    pub fn default_grid(&self) -> Grid {
        match self {
            LimitCase::MpLambdaHalf { .. } | LimitCase::MpSubstitution { .. } | LimitCase::MeixnerToLaguerre { .. } => {
                Grid::small_default()
            }
            _ => Grid::large_default(),
        }
    }

    /// `|scaled polynomial − limit|` at parameter value `t`.
    pub fn error_at<T: Scalar>(&self, t: f64, precision: Precision) -> Result<f64> {
        let v = |a: f64| T::from_f64(a, precision);
        let value: T;
        let target: T;
        match *self {
            LimitCase::GegenbauerToHermite { n, x } => {
                let g = v(t);
                let arg = v(x) / &g.sqrt();
                value = ultra(&g, arg, n)? / &g.sqrt().powi(n as i32);
                target = hermite_over_factorial(v(x), n)?;
            }
            LimitCase::GegenbauerExact { n, x } => {
                let g = v(t);
                let shifted = (g.clone() + &(v(x).square() * &v(2.0))).sqrt();
                let arg = v(x) / &shifted;
                value = ultra(&g, arg, n)? * &shifted.powi(n as i32) / &g.powi(n as i32);
                target = hermite_over_factorial(v(x), n)?;
            }
            LimitCase::LaguerreToHermite { n, x } => {
                let a = v(t);
                let arg = v(x) * &a.sqrt() + &a;
                value = laguerre(&a, arg, n)? / &a.sqrt().powi(n as i32);
                let root2 = v(2.0).sqrt();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                target = hermite_over_factorial(v(x) / &root2, n)? * &v(sign) / &root2.powi(n as i32);
            }
            LimitCase::MpLambdaHalf { n, alpha, xi } => {
                let phi = v(t);
                let a1 = v(alpha + 1.0);
                let x = (a1.clone() * &(v(1.0) - &phi.cos()) - &v(xi)) / &(phi.sin() * &v(2.0));
                let lambda = a1 / &v(2.0);
                value = eval(Family::MeixnerPollaczek { lambda, phi }, x, n)?;
                target = laguerre(&v(alpha), v(xi), n)?;
            }
            LimitCase::MpSubstitution { n, alpha, xi } => {
                let phi = v(t);
                let (x, lambda) = closed_forms::mp_limit_substitution(&v(xi), &v(alpha), &phi)?;
                value = eval(Family::MeixnerPollaczek { lambda, phi }, x, n)?;
                target = laguerre(&v(alpha), v(xi), n)?;
            }
            LimitCase::JacobiToLaguerre { n, alpha, xi } => {
                let x = v(1.0) - &(v(2.0 * xi) / &v(2.0 + alpha + t));
                value = eval(Family::Jacobi { alpha: v(alpha), beta: v(t) }, x, n)?;
                target = laguerre(&v(alpha), v(xi), n)?;
            }
            LimitCase::JacobiToLaguerreAskey { n, alpha, xi } => {
                let x = v(1.0) - &(v(2.0 * xi) / &v(t));
                value = eval(Family::Jacobi { alpha: v(alpha), beta: v(t) }, x, n)?;
                target = laguerre(&v(alpha), v(xi), n)?;
            }
            LimitCase::MeixnerToLaguerre { n, alpha, xi } => {
                let one_minus_c = v(t);
                let c = v(1.0) - &one_minus_c;
                let x = c.clone() * &v(xi) / &one_minus_c;
                value = eval(Family::Meixner { beta: v(alpha + 1.0), c }, x, n)?;
                target = laguerre(&v(alpha), v(xi), n)? / &laguerre(&v(alpha), v(0.0), n)?;
            }
        }
        Ok(value.distance(&target))
    }
}

fn eval<T: Scalar>(family: Family<T>, x: T, n: usize) -> Result<T> {
    FamilySpec::new(family, x)?.eval_standard(n)
}

fn ultra<T: Scalar>(gamma: &T, x: T, n: usize) -> Result<T> {
    eval(Family::Ultraspherical { gamma: gamma.clone() }, x, n)
}

fn laguerre<T: Scalar>(alpha: &T, x: T, n: usize) -> Result<T> {
    eval(Family::Laguerre { alpha: alpha.clone() }, x, n)
}

fn hermite_over_factorial<T: Scalar>(x: T, n: usize) -> Result<T> {
    FamilySpec::new(Family::Hermite, x)?.series_coefficient(n)
}

/// Limit error over `grid` with its fitted slope.
pub fn run_limit<T: Scalar>(case: &LimitCase, grid: &Grid, precision: Precision) -> Result<OrderEstimate> {
    estimate_order(|t| case.error_at::<T>(t, precision), grid)
}

/// How the large parameter enters a family for truncation studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationSetup {
    /// `x + iλ = r e^{iθ}`, large `r`.
    MeixnerPollaczek { theta: f64, phi: f64 },
    /// Large `S = α + β`, i.e. `β = S − α`, at fixed `x`.
    Jacobi { alpha: f64, x: f64 },
    /// Large `β` at fixed `c`, `x`.
    Meixner { c: f64, x: f64 },
    /// Large `N` with `x = sN`; `N` is rounded to an integer.
    Krawtchouk { p: f64, s: f64 },
}

impl TruncationSetup {
    pub fn spec<T: Scalar>(&self, t: f64, precision: Precision) -> Result<FamilySpec<T>> {
        let v = |a: f64| T::from_f64(a, precision);
        match *self {
            TruncationSetup::MeixnerPollaczek { theta, phi } => {
                let r = v(t);
                let th = v(theta);
                let family = Family::MeixnerPollaczek { lambda: r.clone() * &th.sin(), phi: v(phi) };
                FamilySpec::new(family, r * &th.cos())
            }
            TruncationSetup::Jacobi { alpha, x } => {
                FamilySpec::new(Family::Jacobi { alpha: v(alpha), beta: v(t - alpha) }, v(x))
            }
            TruncationSetup::Meixner { c, x } => FamilySpec::new(Family::Meixner { beta: v(t), c: v(c) }, v(x)),
            TruncationSetup::Krawtchouk { p, s } => {
                let size = t.round();
                if !(1.0..=f64::from(u32::MAX)).contains(&size) {
                    return Err(Error::InvalidParameter { name: "N", reason: format!("{t} is not a valid size") });
                }
                FamilySpec::new(Family::Krawtchouk { size: size as u32, p: v(p) }, v(s * size))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationStudy {
    pub setup: TruncationSetup,
    pub mode: FreeParamMode,
    /// Laguerre order for the modes that fix `C`.
    pub alpha: f64,
    pub n: usize,
    pub up_to: usize,
}

impl TruncationStudy {
    pub fn relative_error<T: Scalar>(&self, t: f64, precision: Precision) -> Result<f64> {
        let spec = self.setup.spec::<T>(t, precision)?;
        let plan = solve_plan(&spec, self.mode, &T::from_f64(self.alpha, precision), self.n)?;
        let exact = spec.series_coefficient(self.n)?;
        let approx = plan.eval(self.n, self.up_to)?;
        Ok(approx.distance(&exact) / exact.abs_f64())
    }
}

/// `|pₙ − approx_{up_to}| / |pₙ|` over the grid of the large parameter.
pub fn truncation_error_order<T: Scalar>(
    study: &TruncationStudy,
    grid: &Grid,
    precision: Precision,
) -> Result<OrderEstimate> {
    estimate_order(|t| study.relative_error::<T>(t, precision), grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCheck {
    pub k: usize,
    /// `|c_k(σμ)/c_k(μ)|`; `NaN` when both are negligible.
    pub ratio: f64,
    /// `σ^{⌊k/n⌋} · slack`.
    pub bound: f64,
    pub pass: bool,
}

/// Check `c_k = O(|μ|^{⌊k/n⌋})` between coefficient streams at `μ` and `σμ`.
pub fn coefficient_growth_check<T: Scalar>(
    at_mu: &[T],
    at_sigma_mu: &[T],
    sigma: f64,
    lead_power: usize,
    slack: f64,
) -> Vec<GrowthCheck> {
    let threshold = |c: &[T]| {
        let scale = c.iter().map(|v| v.abs_f64()).fold(1.0, f64::max);
        c.first().map_or(0.0, |v| v.precision().zero_threshold(scale))
    };
    let (t0, t1) = (threshold(at_mu), threshold(at_sigma_mu));
    at_mu
        .iter()
        .zip(at_sigma_mu)
        .enumerate()
        .map(|(k, (a, b))| {
            let bound = sigma.powi((k / lead_power.max(1)) as i32) * slack;
            let (small_a, small_b) = (a.abs_f64() <= t0, b.abs_f64() <= t1);
            if small_a && small_b {
                return GrowthCheck { k, ratio: f64::NAN, bound, pass: true };
            }
            let ratio = b.abs_f64() / a.abs_f64();
            GrowthCheck { k, ratio, bound, pass: !small_a && ratio <= bound }
        })
        .collect()
}

pub const GROWTH_SLACK: f64 = 3.0;

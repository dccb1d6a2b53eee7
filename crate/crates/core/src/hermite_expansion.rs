//! Finite expansions in Hermite polynomials.
//!
//! With `A = p₁`, `B = p₁²/2 − p₂` and `f(w) = e^{−Aw+Bw²} F(w) = Σ c_k w^k`,
//! every series coefficient satisfies
//! `p_n = zⁿ Σ_{k≤n} c_k z^{−k} H_{n−k}(ξ)/(n−k)!` with `z = √B`, `ξ = A/(2z)`.

use crate::asymptotics::{self, Grid, LimitCase, OrderEstimate};
use crate::error::{Error, Result};
use crate::polyfamilies::{recurrence, Family, FamilySpec, GeneratingForm};
use crate::powerseries::TruncatedSeries;
use crate::scalar::{Precision, Scalar};

#[derive(Debug, Clone)]
pub struct HermitePlan<T> {
    a: T,
    b: T,
    z: T,
    xi: T,
    coeffs: Vec<T>,
    /// Set when the series is `Σ (−1)ⁿ pₙ wⁿ`, so evaluation restores the sign.
    alternating: bool,
}

impl<T: Scalar> HermitePlan<T> {
    /// Plan for an arbitrary series with unit constant term.
    pub fn from_series(series: &TruncatedSeries<T>) -> Result<Self> {
        let p = series.precision();
        let order = series.order();
        let zero = T::zero(p);
        let p1 = if order >= 1 { series.coeff(1).clone() } else { zero.clone() };
        let p2 = if order >= 2 { series.coeff(2).clone() } else { zero };
        let a = p1.clone();
        let b = p1.square() * &p1.real(0.5) - &p2;
        let scale = series.max_abs().max(a.abs_f64()).max(1.0);
        if b.abs_f64() <= p.zero_threshold(scale) {
            return Err(Error::DegenerateB);
        }
        let exponent = TruncatedSeries::from_poly(&[T::zero(p), -a.clone(), b.clone()], order, p)?;
        let coeffs = series.mul(&exponent.exp()?).into_coeffs();
        let z = b.sqrt();
        let xi = a.clone() / &(z.clone() * &z.real(2.0));
        Ok(HermitePlan { a, b, z, xi, coeffs, alternating: false })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn z(&self) -> &T {
        &self.z
    }

    pub fn xi(&self) -> &T {
        &self.xi
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    /// The same plan on the other square-root branch, `(−z, −ξ)`.
    pub fn negated_branch(&self) -> Self {
        HermitePlan { z: -self.z.clone(), xi: -self.xi.clone(), ..self.clone() }
    }

    fn check(&self, n: usize, up_to: usize) -> Result<()> {
        if up_to > n || up_to >= self.coeffs.len() {
            Err(Error::TruncationOutOfRange { n, up_to })
        } else {
            Ok(())
        }
    }

    /// `φ_k = c_k z^{−k} H_{n−k}(ξ)` for `k = 0..=up_to`.
    pub fn terms(&self, n: usize, up_to: usize) -> Result<Vec<T>> {
        self.check(n, up_to)?;
        let h = recurrence::values(&Family::Hermite, &self.xi, n);
        let zinv = self.z.recip();
        let mut zpow = self.z.real(1.0);
        let mut out = Vec::with_capacity(up_to + 1);
        for k in 0..=up_to {
            out.push(self.coeffs[k].clone() * &zpow * &h[n - k]);
            zpow *= &zinv;
        }
        Ok(out)
    }

    /// `zⁿ Σ_{k≤up_to} c_k z^{−k} H_{n−k}(ξ)/(n−k)!`, with the sign restored for
    /// alternating plans. At `up_to = n` this is exactly `pₙ`.
    pub fn eval(&self, n: usize, up_to: usize) -> Result<T> {
        let terms = self.terms(n, up_to)?;
        let one = self.z.real(1.0);
        let mut sum = self.z.real(0.0);
        for (k, t) in terms.into_iter().enumerate() {
            let fact = (1..=n - k).fold(one.clone(), |acc, j| acc * &one.real(j as f64));
            sum += &(t / &fact);
        }
        let mut value = self.z.powi(n as i32) * &sum;
        if self.alternating && n % 2 == 1 {
            value = -value;
        }
        Ok(value)
    }
}

/// Plan built from the family's generating series of order `order`. Laguerre
/// uses the alternating generating function.
pub fn build_hermite_plan<T: Scalar>(spec: &FamilySpec<T>, order: usize) -> Result<HermitePlan<T>> {
    let alternating = matches!(spec.family(), Family::Laguerre { .. });
    let form = if alternating { GeneratingForm::Alternating } else { GeneratingForm::Standard };
    let series = spec.generating_series_in(form, order.max(2))?;
    let mut plan = HermitePlan::from_series(&series)?;
    plan.alternating = alternating;
    Ok(plan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiteLimit {
    /// `γ^{−n/2} C_n^γ(x/√γ) → H_n(x)/n!`
    GegenbauerI2,
    /// `α^{−n/2} L_n^α(x√α + α) → (−1)ⁿ 2^{−n/2} H_n(x/√2)/n!`
    LaguerreI4,
    /// `γ^{−n} (γ + 2x²)^{n/2} C_n^γ(x/√(γ + 2x²)) → H_n(x)/n!`
    GegenbauerExact,
}

impl HermiteLimit {
    pub fn case(self, n: usize, x: f64) -> LimitCase {
        match self {
            HermiteLimit::GegenbauerI2 => LimitCase::GegenbauerToHermite { n, x },
            HermiteLimit::LaguerreI4 => LimitCase::LaguerreToHermite { n, x },
            HermiteLimit::GegenbauerExact => LimitCase::GegenbauerExact { n, x },
        }
    }
}

/// Distance to the Hermite limit over `grid`, with its fitted slope.
pub fn hermite_limit_check<T: Scalar>(
    kind: HermiteLimit,
    n: usize,
    x: f64,
    grid: &Grid,
    precision: Precision,
) -> Result<OrderEstimate> {
    asymptotics::run_limit::<T>(&kind.case(n, x), grid, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MpComplex;

    const P50: Precision = Precision::Digits(50);

    fn ultra(gamma: f64, x: f64) -> FamilySpec<MpComplex> {
        FamilySpec::from_f64(Family::Ultraspherical { gamma }, x, P50).unwrap()
    }

    fn close(a: &MpComplex, b: &MpComplex, rel: f64) -> bool {
        a.distance(b) <= rel * b.abs_f64().max(1.0)
    }

    #[test]
    fn ultraspherical_coefficients() {
        let plan = build_hermite_plan(&ultra(10.0, 0.3), 6).unwrap();
        let g = plan.a().real(10.0);
        let x = plan.a().real(0.3);
        assert!(close(plan.a(), &(g.clone() * &x * &x.real(2.0)), 1e-48));
        assert!(close(plan.b(), &(g.clone() * &(x.real(1.0) - &(x.square() * &x.real(2.0)))), 1e-48));
        let c = plan.coeffs();
        assert!(close(&c[0], &x.real(1.0), 1e-48));
        assert!(c[1].abs_f64() < 1e-45 && c[2].abs_f64() < 1e-45);
        let c3 = g * &x * &(x.square() * &x.real(4.0) - &x.real(3.0)) * &x.real(2.0) / &x.real(3.0);
        assert!(close(&c[3], &c3, 1e-46));
        assert!((c[3].re_f64() - -5.28).abs() < 1e-13);
    }

    #[test]
    fn laguerre_coefficients() {
        let spec = FamilySpec::<MpComplex>::from_f64(Family::Laguerre { alpha: 3.0 }, 10.0, P50).unwrap();
        let plan = build_hermite_plan(&spec, 5).unwrap();
        assert!(close(plan.a(), &plan.a().real(6.0), 1e-48));
        assert!(close(plan.b(), &plan.a().real(8.0), 1e-48));
        let c3 = plan.a().real(26.0) / &plan.a().real(3.0);
        assert!(close(&plan.coeffs()[3], &c3, 1e-46));
        let expected = spec.eval_recurrence(4).unwrap();
        assert!(close(&plan.eval(4, 4).unwrap(), &expected, 1e-44));
        assert!(close(&plan.eval(3, 3).unwrap(), &spec.eval_recurrence(3).unwrap(), 1e-44));
    }

    #[test]
    fn exact_reconstruction_and_branch_invariance() {
        let spec = ultra(10.0, 0.3);
        let plan = build_hermite_plan(&spec, 10).unwrap();
        let flipped = plan.negated_branch();
        for n in 0..=10 {
            let exact = spec.eval_recurrence(n).unwrap();
            let v = plan.eval(n, n).unwrap();
            assert!(close(&v, &exact, 1e-40), "n={n}");
            assert!(close(&flipped.eval(n, n).unwrap(), &v, 1e-40), "n={n}");
            for k in 0..n {
                assert!(close(&flipped.eval(n, k).unwrap(), &plan.eval(n, k).unwrap(), 1e-40));
            }
        }
        assert!(close(&plan.eval(0, 0).unwrap(), &plan.a().real(1.0), 1e-48));
    }

    #[test]
    fn truncation_bounds() {
        let plan = build_hermite_plan(&ultra(2.0, 0.4), 4).unwrap();
        assert_eq!(plan.eval(3, 4).unwrap_err(), Error::TruncationOutOfRange { n: 3, up_to: 4 });
        assert_eq!(plan.eval(6, 5).unwrap_err(), Error::TruncationOutOfRange { n: 6, up_to: 5 });
    }

    #[test]
    fn degenerate_b_is_rejected() {
        let root = 0.5f64.sqrt();
        let spec = FamilySpec::<MpComplex>::new(
            Family::Ultraspherical { gamma: MpComplex::from_f64(3.0, P50) },
            MpComplex::from_f64(0.5, P50).sqrt(),
        )
        .unwrap();
        assert!(spec.x().distance(&spec.x().real(root)) < 1e-16);
        assert_eq!(build_hermite_plan(&spec, 4).unwrap_err(), Error::DegenerateB);
        let flat = TruncatedSeries::from_real_poly(&[1.0, 0.0, 0.0, 2.0], 5, P50);
        assert_eq!(HermitePlan::<MpComplex>::from_series(&flat).unwrap_err(), Error::DegenerateB);
    }

    #[test]
    fn ultraspherical_term_decay() {
        let n = 10;
        let x = 0.3;
        for gamma in [1e3, 1e4] {
            let small = build_hermite_plan(&ultra(gamma, x), n).unwrap().terms(n, 9).unwrap();
            let large = build_hermite_plan(&ultra(10.0 * gamma, x), n).unwrap().terms(n, 9).unwrap();
            for k in 3..=9 {
                let power = n as f64 / 2.0 + (k / 3) as f64 - k as f64;
                let ratio = large[k].abs_f64() / small[k].abs_f64() / 10f64.powf(power);
                assert!((0.1..=10.0).contains(&ratio), "gamma={gamma} k={k} ratio={ratio}");
            }
        }
    }
}

//! Polynomial families, each evaluated two independent ways: coefficient
//! extraction from its generating function and its classical recurrence.

pub mod recurrence;

use std::fmt;

use crate::error::{Error, Result};
use crate::powerseries::TruncatedSeries;
use crate::scalar::{Precision, Scalar};

/// A family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<T> {
    Hermite,
    Laguerre { alpha: T },
    Ultraspherical { gamma: T },
    Jacobi { alpha: T, beta: T },
    MeixnerPollaczek { lambda: T, phi: T },
    Meixner { beta: T, c: T },
    /// `size` is the Krawtchouk `N`.
    Krawtchouk { size: u32, p: T },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Ultraspherical,
    Jacobi,
    MeixnerPollaczek,
    Meixner,
    Krawtchouk,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::Hermite,
        FamilyKind::Laguerre,
        FamilyKind::Ultraspherical,
        FamilyKind::Jacobi,
        FamilyKind::MeixnerPollaczek,
        FamilyKind::Meixner,
        FamilyKind::Krawtchouk,
    ];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Ultraspherical => "ultraspherical",
            FamilyKind::Jacobi => "jacobi",
            FamilyKind::MeixnerPollaczek => "meixner-pollaczek",
            FamilyKind::Meixner => "meixner",
            FamilyKind::Krawtchouk => "krawtchouk",
        };
        f.write_str(name)
    }
}

/// Which generating function produces the series. Only Laguerre has two:
/// `Standard` is `Σ L_n^α(x) wⁿ`, `Alternating` is `Σ (−1)ⁿ L_n^α(x) wⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratingForm {
    Standard,
    Alternating,
}

impl<T> Family<T> {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::Hermite => FamilyKind::Hermite,
            Family::Laguerre { .. } => FamilyKind::Laguerre,
            Family::Ultraspherical { .. } => FamilyKind::Ultraspherical,
            Family::Jacobi { .. } => FamilyKind::Jacobi,
            Family::MeixnerPollaczek { .. } => FamilyKind::MeixnerPollaczek,
            Family::Meixner { .. } => FamilyKind::Meixner,
            Family::Krawtchouk { .. } => FamilyKind::Krawtchouk,
        }
    }

    /// Apply `f` to every parameter.
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Family<U> {
        match self {
            Family::Hermite => Family::Hermite,
            Family::Laguerre { alpha } => Family::Laguerre { alpha: f(alpha) },
            Family::Ultraspherical { gamma } => Family::Ultraspherical { gamma: f(gamma) },
            Family::Jacobi { alpha, beta } => Family::Jacobi { alpha: f(alpha), beta: f(beta) },
            Family::MeixnerPollaczek { lambda, phi } => {
                Family::MeixnerPollaczek { lambda: f(lambda), phi: f(phi) }
            }
            Family::Meixner { beta, c } => Family::Meixner { beta: f(beta), c: f(c) },
            Family::Krawtchouk { size, p } => Family::Krawtchouk { size: *size, p: f(p) },
        }
    }
}

impl Family<f64> {
    pub fn lift<T: Scalar>(&self, precision: Precision) -> Family<T> {
        self.map(|&v| T::from_f64(v, precision))
    }
}

/// A validated family with its evaluation point `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec<T> {
    family: Family<T>,
    x: T,
}

fn real_in<T: Scalar>(
    name: &'static str,
    v: &T,
    low: f64,
    high: f64,
    reason: &str,
) -> Result<()> {
    let re = v.re_f64();
    let imag_ok = v.im_f64().abs() <= v.precision().zero_threshold(re.abs());
    if imag_ok && re > low && re < high {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: reason.to_string() })
    }
}

fn finite<T: Scalar>(name: &'static str, v: &T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: "must be finite".to_string() })
    }
}

impl<T: Scalar> FamilySpec<T> {
    pub fn new(family: Family<T>, x: T) -> Result<Self> {
        finite("x", &x)?;
        match &family {
            Family::Hermite => {}
            Family::Laguerre { alpha } => finite("alpha", alpha)?,
            Family::Ultraspherical { gamma } => finite("gamma", gamma)?,
            Family::Jacobi { alpha, beta } => {
                finite("alpha", alpha)?;
                finite("beta", beta)?;
            }
            Family::MeixnerPollaczek { lambda, phi } => {
                real_in("lambda", lambda, 0.0, f64::INFINITY, "must be real and > 0")?;
                real_in("phi", phi, 0.0, std::f64::consts::PI, "must be real and in (0, pi)")?;
            }
            Family::Meixner { beta, c } => {
                real_in("beta", beta, 0.0, f64::INFINITY, "must be real and > 0")?;
                real_in("c", c, 0.0, 1.0, "must be real and in (0,1)")?;
            }
            Family::Krawtchouk { size, p } => {
                if *size == 0 {
                    return Err(Error::InvalidParameter {
                        name: "N",
                        reason: "must be a positive integer".to_string(),
                    });
                }
                real_in("p", p, 0.0, 1.0, "must be real and in (0,1)")?;
            }
        }
        Ok(FamilySpec { family, x })
    }

    /// Build from double parameters, lifted exactly to `precision`.
    pub fn from_f64(family: Family<f64>, x: f64, precision: Precision) -> Result<Self> {
        Self::new(family.lift(precision), T::from_f64(x, precision))
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    pub fn kind(&self) -> FamilyKind {
        self.family.kind()
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn precision(&self) -> Precision {
        self.x.precision()
    }

    /// Same family at another argument.
    pub fn with_x(&self, x: T) -> Result<Self> {
        Self::new(self.family.clone(), x)
    }

    /// Highest degree the family defines (`N` for Krawtchouk).
    pub fn max_degree(&self) -> Option<usize> {
        match &self.family {
            Family::Krawtchouk { size, .. } => Some(*size as usize),
            _ => None,
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        match self.max_degree() {
            Some(max) if n > max => Err(Error::DegreeOutOfRange { n, max }),
            _ => Ok(()),
        }
    }

    /// Generating series of the family in its standard form.
    pub fn generating_series(&self, order: usize) -> Result<TruncatedSeries<T>> {
        self.generating_series_in(GeneratingForm::Standard, order)
    }

    pub fn generating_series_in(
        &self,
        form: GeneratingForm,
        order: usize,
    ) -> Result<TruncatedSeries<T>> {
        let x = &self.x;
        let p = self.precision();
        let one = T::one(p);
        let lin = |c0: f64, c1: T| TruncatedSeries::linear(x.real(c0), c1, order);
        match &self.family {
            // e^{2xw − w²} = Σ H_n(x)/n! wⁿ
            Family::Hermite => {
                let exponent = TruncatedSeries::from_poly(
                    &[T::zero(p), x.clone() * &x.real(2.0), x.real(-1.0)],
                    order,
                    p,
                )?;
                exponent.exp()
            }
            // (1 − σw)^{−α−1} exp(−σ x w/(1 − σw)) = Σ σⁿ L_n^α(x) wⁿ
            Family::Laguerre { alpha } => {
                let sign = match form {
                    GeneratingForm::Standard => 1.0,
                    GeneratingForm::Alternating => -1.0,
                };
                let base = lin(1.0, x.real(-sign));
                let w = TruncatedSeries::variable(order, p);
                let ratio = w.div(&base)?.scale(&(x.clone() * &x.real(-sign)));
                let power = base.pow(&(-(alpha.clone() + &one)))?;
                Ok(power.mul(&ratio.exp()?))
            }
            // (1 − 2xw + w²)^{−γ}
            Family::Ultraspherical { gamma } => TruncatedSeries::from_poly(
                &[one.clone(), x.clone() * &x.real(-2.0), one.clone()],
                order,
                p,
            )?
            .pow(&(-gamma.clone())),
            // 2^{α+β} (1 + R − w)^{−α} (1 + R + w)^{−β} / R,  R = √(1 − 2xw + w²)
            Family::Jacobi { alpha, beta } => {
                let quad = TruncatedSeries::from_poly(
                    &[one.clone(), x.clone() * &x.real(-2.0), one.clone()],
                    order,
                    p,
                )?;
                let root = quad.pow(&x.real(0.5))?;
                let half = x.real(0.5);
                let u = root.add(&lin(1.0, x.real(-1.0))).scale(&half);
                let v = root.add(&lin(1.0, x.real(1.0))).scale(&half);
                u.pow(&-alpha.clone())?.mul(&v.pow(&-beta.clone())?).div(&root)
            }
            // (1 − e^{iφ}w)^{−λ+ix} (1 − e^{−iφ}w)^{−λ−ix}
            Family::MeixnerPollaczek { lambda, phi } => {
                let i = T::imag_unit(p);
                let e_plus = (i.clone() * phi).exp();
                let e_minus = (-(i.clone() * phi)).exp();
                let ix = i * x;
                let left = lin(1.0, -e_plus).pow(&(ix.clone() - lambda))?;
                let right = lin(1.0, -e_minus).pow(&(-(ix + lambda)))?;
                Ok(left.mul(&right))
            }
            // (1 − w/c)^x (1 − w)^{−β−x}
            Family::Meixner { beta, c } => {
                let left = lin(1.0, -c.recip()).pow(x)?;
                let right = lin(1.0, x.real(-1.0)).pow(&(-(beta.clone() + x)))?;
                Ok(left.mul(&right))
            }
            // (1 − qw)^x (1 + w)^{N−x},  q = (1 − p)/p. Off the lattice x = 0..=N
            // the tail past wᴺ is nonzero, but coefficients up to wᴺ are exact.
            Family::Krawtchouk { size, p: prob } => {
                let q = (one.clone() - prob) / prob;
                let left = lin(1.0, -q).pow(x)?;
                let right = lin(1.0, one.clone()).pow(&(x.real(f64::from(*size)) - x))?;
                Ok(left.mul(&right))
            }
        }
    }

    /// Coefficient of `wⁿ` in the standard generating series.
    pub fn series_coefficient(&self, n: usize) -> Result<T> {
        Ok(self.generating_series(n)?.coeff(n).clone())
    }

    /// Ratio of the series coefficient to the standard polynomial at degree `n`:
    /// `1/n!` (Hermite), `(β)_n/n!` (Meixner), `C(N, n)` (Krawtchouk), else 1.
    pub fn normalization_tag(&self, n: usize) -> T {
        let one = self.x.real(1.0);
        match &self.family {
            Family::Hermite => (1..=n).fold(one.clone(), |acc, j| acc / &one.real(j as f64)),
            Family::Meixner { beta, .. } => (0..n).fold(one.clone(), |acc, j| {
                acc * &(beta.clone() + &one.real(j as f64)) / &one.real((j + 1) as f64)
            }),
            Family::Krawtchouk { size, .. } => (0..n).fold(one.clone(), |acc, j| {
                acc * &one.real(f64::from(*size) - j as f64) / &one.real((j + 1) as f64)
            }),
            _ => one,
        }
    }

    /// Standard-normalization value through series extraction.
    pub fn eval_standard(&self, n: usize) -> Result<T> {
        self.check_degree(n)?;
        Ok(self.series_coefficient(n)? / &self.normalization_tag(n))
    }

    /// Standard-normalization values `p_0..=p_n` through series extraction.
    pub fn standard_values(&self, n: usize) -> Result<Vec<T>> {
        self.check_degree(n)?;
        let series = self.generating_series(n)?;
        Ok(series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() / &self.normalization_tag(k))
            .collect())
    }

    /// Standard-normalization value through the classical recurrence.
    pub fn eval_recurrence(&self, n: usize) -> Result<T> {
        self.check_degree(n)?;
        Ok(recurrence::values(&self.family, &self.x, n).pop().expect("non-empty"))
    }

    /// True when every parameter and `x` have negligible imaginary parts.
    pub fn is_real(&self) -> bool {
        let real = |v: &T| v.im_f64().abs() <= v.precision().zero_threshold(v.re_f64().abs());
        let mut all = real(&self.x);
        self.family.map(|v| all &= real(v));
        all
    }
}

/// `|Im v| ≤ 10^{10−digits}(|Re v| + floor)`, the test that a computed value is real.
pub fn is_effectively_real<T: Scalar>(v: &T, floor: f64) -> bool {
    let tol = v.precision().epsilon_shifted(10);
    v.im_f64().abs() <= tol * (v.re_f64().abs() + floor)
}

/// Polar coordinates `x + iλ = r e^{iθ}` of a Meixner-Pollaczek argument pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarMP<T> {
    pub r: T,
    pub theta: T,
}

impl<T: Scalar> PolarMP<T> {
    pub fn new(r: T, theta: T) -> Result<Self> {
        if r.re_f64() < 0.0 {
            return Err(Error::InvalidParameter { name: "r", reason: "must be >= 0".into() });
        }
        let t = theta.re_f64();
        if !(0.0..=std::f64::consts::PI + 1e-15).contains(&t) {
            return Err(Error::InvalidParameter { name: "theta", reason: "must be in [0, pi]".into() });
        }
        Ok(PolarMP { r, theta })
    }

    /// Recover `(r, θ)` from `(x, λ)`.
    pub fn from_mp(x: &T, lambda: &T) -> Self {
        let r = x.square() + &lambda.square();
        let z = x.clone() + &(T::imag_unit(x.precision()) * lambda);
        PolarMP { r: r.sqrt(), theta: z.arg() }
    }
}

/// `(x, λ) = (r cos θ, r sin θ)`.
pub fn polar_to_mp<T: Scalar>(p: &PolarMP<T>) -> (T, T) {
    (p.r.clone() * &p.theta.cos(), p.r.clone() * &p.theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MpComplex;
    use num_complex::Complex64;

    const P50: Precision = Precision::Digits(50);

    fn spec(family: Family<f64>, x: f64) -> FamilySpec<MpComplex> {
        FamilySpec::from_f64(family, x, P50).unwrap()
    }

    fn all_families() -> Vec<(Family<f64>, f64)> {
        vec![
            (Family::Hermite, 0.7),
            (Family::Laguerre { alpha: 1.5 }, 2.25),
            (Family::Ultraspherical { gamma: 2.5 }, 0.3),
            (Family::Jacobi { alpha: 0.5, beta: 1.5 }, -0.4),
            (Family::MeixnerPollaczek { lambda: 1.25, phi: 0.9 }, 0.6),
            (Family::Meixner { beta: 2.0, c: 0.4 }, 3.0),
            (Family::Krawtchouk { size: 12, p: 0.35 }, 4.5),
        ]
    }

    #[test]
    fn generating_series_examples() {
        let h = spec(Family::Hermite, 1.0).generating_series(2).unwrap();
        for (c, e) in h.coeffs().iter().zip([1.0, 2.0, 1.0]) {
            assert!(c.distance(&c.real(e)) < 1e-48);
        }
        let k = spec(Family::Krawtchouk { size: 7, p: 0.3 }, 0.0).generating_series(9).unwrap();
        let binom = [1.0, 7.0, 21.0, 35.0, 35.0, 21.0, 7.0, 1.0, 0.0, 0.0];
        for (c, e) in k.coeffs().iter().zip(binom) {
            assert!(c.distance(&c.real(e)) < 1e-46);
        }
        let m = spec(Family::Meixner { beta: 2.0, c: 0.5 }, 0.0).generating_series(2).unwrap();
        for (c, e) in m.coeffs().iter().zip([1.0, 2.0, 3.0]) {
            assert!(c.distance(&c.real(e)) < 1e-48);
        }
    }

    #[test]
    fn constant_term_is_one_for_every_family() {
        for (family, x) in all_families() {
            let s = spec(family.clone(), x).generating_series(3).unwrap();
            assert!(s.coeff(0).distance(&s.coeff(0).real(1.0)) < 1e-48, "{family:?}");
        }
    }

    #[test]
    fn eval_examples() {
        let h = spec(Family::Hermite, 0.7).eval_standard(2).unwrap();
        let x = h.real(0.7);
        let expected = x.square() * &x.real(4.0) - &x.real(2.0);
        assert!(h.distance(&expected) < 1e-48);
        assert!((h.re_f64() - -0.04).abs() < 1e-15);

        let c = spec(Family::Ultraspherical { gamma: 10.0 }, 0.3).eval_standard(1).unwrap();
        assert!((c.re_f64() - 6.0).abs() < 1e-14);

        let phi = std::f64::consts::FRAC_PI_3;
        let mp = spec(Family::MeixnerPollaczek { lambda: 2.0, phi }, 1.0).eval_standard(1).unwrap();
        let ph = mp.real(phi);
        let expected = (mp.real(2.0) * &ph.cos() + &ph.sin()) * &mp.real(2.0);
        assert!(mp.distance(&expected) < 1e-48);
        assert!((mp.re_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn series_and_recurrence_routes_agree() {
        for (family, x) in all_families() {
            let s = spec(family.clone(), x);
            let by_series = s.standard_values(12.min(s.max_degree().unwrap_or(12))).unwrap();
            for (n, v) in by_series.iter().enumerate() {
                let r = s.eval_recurrence(n).unwrap();
                let scale = r.abs_f64().max(1.0);
                assert!(v.distance(&r) <= 1e-40 * scale, "{family:?} n={n}: {v:?} vs {r:?}");
            }
        }
    }

    #[test]
    fn double_precision_routes_agree() {
        for (family, x) in all_families() {
            let s: FamilySpec<Complex64> = FamilySpec::from_f64(family.clone(), x, Precision::Double).unwrap();
            for n in 0..=10 {
                let a = s.eval_standard(n).unwrap();
                let b = s.eval_recurrence(n).unwrap();
                assert!((a - b).norm() <= 1e-11 * b.norm().max(1.0), "{family:?} n={n}");
            }
        }
    }

    #[test]
    fn laguerre_forms_differ_by_alternating_sign() {
        let s = spec(Family::Laguerre { alpha: 3.0 }, 10.0);
        let std = s.generating_series(6).unwrap();
        let alt = s.generating_series_in(GeneratingForm::Alternating, 6).unwrap();
        for n in 0..=6 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(alt.coeff(n).distance(&(std.coeff(n).clone() * &std.coeff(n).real(sign))) < 1e-44);
        }
    }

    #[test]
    fn krawtchouk_degree_bound() {
        // the tail vanishes on the lattice x = 0..=N only
        for x in 0..=5 {
            let s = spec(Family::Krawtchouk { size: 5, p: 0.6 }, f64::from(x));
            let series = s.generating_series(9).unwrap();
            for n in 6..=9 {
                assert!(series.is_negligible(series.coeff(n)), "x={x} n={n}");
            }
        }
        let s = spec(Family::Krawtchouk { size: 5, p: 0.6 }, 2.3);
        assert_eq!(s.eval_standard(6).unwrap_err(), Error::DegreeOutOfRange { n: 6, max: 5 });
        assert!(s.eval_standard(5).is_ok());
    }

    #[test]
    fn real_inputs_give_real_values() {
        for (family, x) in all_families() {
            let s = spec(family.clone(), x);
            assert!(s.is_real());
            for v in s.standard_values(8.min(s.max_degree().unwrap_or(8))).unwrap() {
                assert!(is_effectively_real(&v, 1.0), "{family:?}: {v:?}");
            }
        }
    }

    #[test]
    fn parameter_validation() {
        let bad = [
            (Family::MeixnerPollaczek { lambda: -1.0, phi: 1.0 }, "lambda"),
            (Family::MeixnerPollaczek { lambda: 1.0, phi: 3.5 }, "phi"),
            (Family::Meixner { beta: 1.0, c: 1.0 }, "c"),
            (Family::Meixner { beta: 0.0, c: 0.5 }, "beta"),
            (Family::Krawtchouk { size: 4, p: 1.5 }, "p"),
            (Family::Krawtchouk { size: 0, p: 0.5 }, "N"),
        ];
        for (family, name) in bad {
            match FamilySpec::<MpComplex>::from_f64(family, 0.5, P50) {
                Err(Error::InvalidParameter { name: got, .. }) => assert_eq!(got, name),
                other => panic!("expected InvalidParameter({name}), got {other:?}"),
            }
        }
    }

    #[test]
    fn polar_examples() {
        let p = |r: f64, t: f64| PolarMP::new(MpComplex::from_f64(r, P50), MpComplex::from_f64(t, P50)).unwrap();
        let half_pi = MpComplex::pi(P50) / MpComplex::from_f64(2.0, P50);
        let (x, l) = polar_to_mp(&PolarMP { r: MpComplex::from_f64(1.0, P50), theta: half_pi });
        assert!(x.abs_f64() < 1e-49 && l.distance(&l.real(1.0)) < 1e-49);
        let (x, l) = polar_to_mp(&p(0.0, 0.0));
        assert_eq!((x.abs_f64(), l.abs_f64()), (0.0, 0.0));
        let third = MpComplex::pi(P50) / MpComplex::from_f64(3.0, P50);
        let (x, l) = polar_to_mp(&PolarMP { r: MpComplex::from_f64(2.0, P50), theta: third });
        assert!(x.distance(&x.real(1.0)) < 1e-48);
        assert!(l.distance(&l.real(3.0).sqrt()) < 1e-48);
        let back = PolarMP::from_mp(&x, &l);
        assert!(back.r.distance(&back.r.real(2.0)) < 1e-48);
        assert!(PolarMP::new(MpComplex::from_f64(-1.0, P50), MpComplex::from_f64(0.0, P50)).is_err());
    }
}

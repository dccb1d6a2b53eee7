//! Truncated formal power series in `w` with complex coefficients.
//!
//! Every polynomial value and expansion coefficient in the crate is read off
//! one of these series, so the operations here are the whole numerical engine.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Precision, Scalar};

/// `coeffs[k]` is the coefficient of `w^k`, for `k = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
    precision: Precision,
}

/// `μ · w^n · (a₀ + a₁w + …)` with `a₀ ≠ 0`.
#[derive(Debug, Clone)]
pub struct ScaledForm<T> {
    pub lead_power: usize,
    pub scale: T,
    pub tail: TruncatedSeries<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        let precision = coeffs.first().ok_or(Error::EmptySeries)?.precision();
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(TruncatedSeries { coeffs, precision })
    }

    /// Polynomial `coeffs`, zero-padded or truncated to `order`.
    pub fn from_poly(coeffs: &[T], order: usize, precision: Precision) -> Result<Self> {
        let zero = T::zero(precision);
        let padded = (0..=order)
            .map(|k| coeffs.get(k).cloned().unwrap_or_else(|| zero.clone()))
            .collect();
        Self::new(padded)
    }

    /// Polynomial with real double coefficients, lifted to `precision`.
    pub fn from_real_poly(coeffs: &[f64], order: usize, precision: Precision) -> Self {
        let lifted: Vec<T> = coeffs.iter().map(|&c| T::from_f64(c, precision)).collect();
        Self::from_poly(&lifted, order, precision).expect("finite literal coefficients")
    }

    pub fn constant(c: T, order: usize) -> Self {
        let precision = c.precision();
        Self::from_poly(&[c], order, precision).expect("finite constant")
    }

    pub fn one(order: usize, precision: Precision) -> Self {
        Self::constant(T::one(precision), order)
    }

    pub fn zero(order: usize, precision: Precision) -> Self {
        Self::constant(T::zero(precision), order)
    }

    /// The series `w`.
    pub fn variable(order: usize, precision: Precision) -> Self {
        Self::from_real_poly(&[0.0, 1.0], order, precision)
    }

    /// `c0 + c1 w`.
    pub fn linear(c0: T, c1: T, order: usize) -> Self {
        let precision = c0.precision();
        Self::from_poly(&[c0, c1], order, precision).expect("finite linear coefficients")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec(), precision: self.precision }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Scale-aware zero threshold for this series.
    pub fn zero_threshold(&self) -> f64 {
        self.precision.zero_threshold(self.max_abs())
    }

    pub fn is_negligible(&self, value: &T) -> bool {
        value.abs_f64() <= self.zero_threshold()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        TruncatedSeries { coeffs, precision: self.precision }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                let mut acc = self.coeffs[0].clone() * &other.coeffs[k];
                for j in 1..=k {
                    acc += &(self.coeffs[j].clone() * &other.coeffs[k - j]);
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs, precision: self.precision }
    }

    pub fn scale(&self, s: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.clone() * s).collect();
        TruncatedSeries { coeffs, precision: self.precision }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        TruncatedSeries { coeffs, precision: self.precision }
    }

    /// `exp` of a series with zero constant term, from `(exp a)' = a' exp a`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].abs_f64() > self.precision.zero_threshold(1.0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let one = T::one(self.precision);
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(one.clone());
        for k in 1..=self.order() {
            let mut acc = T::zero(self.precision);
            for j in 1..=k {
                acc += &(self.coeffs[j].clone() * &out[k - j] * &one.real(j as f64));
            }
            out.push(acc / &one.real(k as f64));
        }
        Ok(TruncatedSeries { coeffs: out, precision: self.precision })
    }

    /// Logarithm of a series with unit constant term, from `a · (log a)' = a'`.
    pub fn ln(&self) -> Result<Self> {
        let one = T::one(self.precision);
        if self.coeffs[0].distance(&one) > self.precision.zero_threshold(1.0) {
            return Err(Error::NonunitConstantTerm);
        }
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(T::zero(self.precision));
        for k in 1..=self.order() {
            let mut acc = T::zero(self.precision);
            for j in 1..k {
                acc += &(out[j].clone() * &self.coeffs[k - j] * &one.real(j as f64));
            }
            out.push(self.coeffs[k].clone() - &(acc / &one.real(k as f64)));
        }
        Ok(TruncatedSeries { coeffs: out, precision: self.precision })
    }

    /// `a^s` with `c₀^s` on the principal branch, from `a · (a^s)' = s a' a^s`:
    /// `k c₀ g_k = Σ_{j=1..k} ((s + 1) j − k) c_j g_{k−j}`.
    pub fn pow(&self, s: &T) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if self.is_negligible(&c0) {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = c0.recip();
        let s1 = s.clone() + &s.real(1.0);
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(c0.powc(s));
        for k in 1..=self.order() {
            let mut acc = T::zero(self.precision);
            for j in 1..=k {
                if self.coeffs[j].abs_f64() == 0.0 {
                    continue;
                }
                let weight = s1.clone() * &s.real(j as f64) - &s.real(k as f64);
                acc += &(weight * &self.coeffs[j] * &out[k - j]);
            }
            out.push(acc * &inv / &s.real(k as f64));
        }
        Ok(TruncatedSeries { coeffs: out, precision: self.precision })
    }

    pub fn recip(&self) -> Result<Self> {
        self.pow(&T::from_f64(-1.0, self.precision))
    }

    /// `self / other`, as `self · other^(-1)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Factor `self = μ w^n (a₀ + a₁ w + …)` for a caller-chosen `μ`.
    pub fn decompose_scaled(&self, scale: &T) -> Result<ScaledForm<T>> {
        if self.coeffs[0].abs_f64() > self.precision.zero_threshold(1.0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let threshold = self.zero_threshold();
        let lead_power = self
            .coeffs
            .iter()
            .position(|c| c.abs_f64() > threshold)
            .ok_or(Error::ZeroSeries)?;
        let inv = scale.recip();
        let tail: Vec<T> = self.coeffs[lead_power..].iter().map(|c| c.clone() * &inv).collect();
        Ok(ScaledForm { lead_power, scale: scale.clone(), tail: TruncatedSeries::new(tail)? })
    }
}

impl<T: Scalar> ScaledForm<T> {
    /// `μ wⁿ (a₀ + a₁w + …)` as a series of order `n + tail.order()`.
    pub fn assemble(&self) -> TruncatedSeries<T> {
        let precision = self.tail.precision();
        let mut coeffs = vec![T::zero(precision); self.lead_power];
        coeffs.extend(self.tail.coeffs().iter().map(|a| a.clone() * &self.scale));
        TruncatedSeries { coeffs, precision }
    }
}

impl<'a, T: Scalar> Add for &'a TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<'a, T: Scalar> Sub for &'a TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<'a, T: Scalar> Mul for &'a TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        TruncatedSeries::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MpComplex;
    use num_complex::Complex64;
    use proptest::prelude::*;

    const P50: Precision = Precision::Digits(50);

    fn series(c: &[f64], order: usize) -> TruncatedSeries<MpComplex> {
        TruncatedSeries::from_real_poly(c, order, P50)
    }

    fn mpc(re: f64, im: f64) -> MpComplex {
        MpComplex::from_parts(re, im, P50)
    }

    /// Expected values are exact rationals `(numerator, denominator)`.
    fn assert_coeffs(s: &TruncatedSeries<MpComplex>, expected: &[(f64, f64)], tol: f64) {
        assert_eq!(s.order() + 1, expected.len());
        for (k, (c, &(num, den))) in s.coeffs().iter().zip(expected).enumerate() {
            let e = c.real(num) / c.real(den);
            assert!(c.distance(&e) <= tol, "coefficient {k}: {c:?} vs {num}/{den}");
        }
    }

    fn ints(v: &[f64]) -> Vec<(f64, f64)> {
        v.iter().map(|&x| (x, 1.0)).collect()
    }

    #[test]
    fn products_and_sums() {
        let d = series(&[1.0, 1.0], 2).mul(&series(&[1.0, -1.0], 2));
        assert_coeffs(&d, &ints(&[1.0, 0.0, -1.0]), 0.0);
        let s = &series(&[1.0], 0) + &series(&[0.0], 0);
        assert_coeffs(&s, &ints(&[1.0]), 0.0);
        let p = series(&[1.0, 2.0, 3.0], 2).mul(&series(&[1.0, 1.0], 2));
        assert_coeffs(&p, &ints(&[1.0, 3.0, 5.0]), 0.0);
        // mixed orders truncate to the smaller one
        let q = series(&[1.0, 2.0, 3.0], 4).mul(&series(&[1.0, 1.0], 2));
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn construction_rejects_non_finite() {
        let bad = vec![Complex64::new(1.0, 0.0), Complex64::new(f64::NAN, 0.0)];
        assert_eq!(TruncatedSeries::new(bad).unwrap_err(), Error::NonFiniteCoefficient { index: 1 });
        assert_eq!(TruncatedSeries::<Complex64>::new(vec![]).unwrap_err(), Error::EmptySeries);
    }

    #[test]
    fn exp_examples() {
        assert_coeffs(&series(&[0.0], 3).exp().unwrap(), &ints(&[1.0, 0.0, 0.0, 0.0]), 0.0);
        let mu = 7.0;
        let e = series(&[0.0, 0.0, 0.0, mu], 5).exp().unwrap();
        assert_coeffs(&e, &ints(&[1.0, 0.0, 0.0, mu, 0.0, 0.0]), 1e-48);
        let e = series(&[0.0, 1.0, 1.0], 3).exp().unwrap();
        assert_coeffs(&e, &[(1.0, 1.0), (1.0, 1.0), (3.0, 2.0), (7.0, 6.0)], 1e-48);
        assert_eq!(series(&[1.0, 1.0], 3).exp().unwrap_err(), Error::NonzeroConstantTerm);
    }

    #[test]
    fn log_examples() {
        assert_coeffs(&series(&[1.0], 2).ln().unwrap(), &ints(&[0.0, 0.0, 0.0]), 0.0);
        let l = series(&[1.0, 1.0], 3).ln().unwrap();
        assert_coeffs(&l, &[(0.0, 1.0), (1.0, 1.0), (-1.0, 2.0), (1.0, 3.0)], 1e-48);
        let round = series(&[0.0, 0.0, 1.0], 4).exp().unwrap().ln().unwrap();
        assert_coeffs(&round, &ints(&[0.0, 0.0, 1.0, 0.0, 0.0]), 1e-48);
        assert_eq!(series(&[2.0, 1.0], 3).ln().unwrap_err(), Error::NonunitConstantTerm);
    }

    #[test]
    fn pow_examples() {
        let (x, gamma) = (0.3, 2.0);
        // The w² coefficient is C_2^2(0.3) = 2γ(γ+1)x² − γ = −0.92.
        let g = series(&[1.0, -2.0 * x, 1.0], 2).pow(&mpc(-gamma, 0.0)).unwrap();
        let (xm, gm) = (mpc(x, 0.0), mpc(gamma, 0.0));
        let c2 = xm.square() * &gm * &(gm.clone() + &xm.real(1.0)) * &xm.real(2.0) - &gm;
        assert!(g.coeff(1).distance(&(xm.clone() * &gm * &xm.real(2.0))) < 1e-48);
        assert!(g.coeff(2).distance(&c2) < 1e-48);
        assert!(g.coeff(2).distance(&xm.real(-0.92)) < 1e-15);
        let id = series(&[1.0, 1.0], 3).pow(&mpc(1.0, 0.0)).unwrap();
        assert_coeffs(&id, &ints(&[1.0, 1.0, 0.0, 0.0]), 1e-48);
        let r = series(&[1.0, -1.0, 1.0], 2).pow(&mpc(0.5, 0.0)).unwrap();
        assert_coeffs(&r, &[(1.0, 1.0), (-1.0, 2.0), (3.0, 8.0)], 1e-48);
        assert_eq!(series(&[0.0, 1.0], 2).pow(&mpc(0.5, 0.0)).unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn pow_of_negative_constant_uses_principal_branch() {
        // (-4 + w)^{1/2} = 2i (1 - w/4)^{1/2}
        let r = series(&[-4.0, 1.0], 2).pow(&mpc(0.5, 0.0)).unwrap();
        assert!(r.coeff(0).distance(&mpc(0.0, 2.0)) < 1e-48);
        assert!(r.coeff(1).distance(&mpc(0.0, -0.25)) < 1e-48);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = series(&[1.0, 2.0, -1.0, 0.5], 6);
        let b = series(&[3.0, -1.0, 0.25], 6);
        let back = a.mul(&b).div(&b).unwrap();
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            assert!(x.distance(y) < 1e-47);
        }
    }

    #[test]
    fn decompose_examples() {
        let mu = mpc(5.0, 0.0);
        let s = series(&[0.0, 0.0, 0.0, 10.0, -5.0], 6);
        let f = s.decompose_scaled(&mu).unwrap();
        assert_eq!(f.lead_power, 3);
        assert_coeffs(&f.tail, &ints(&[2.0, -1.0, 0.0, 0.0]), 1e-48);
        let back = f.assemble();
        for (x, y) in back.coeffs().iter().zip(s.coeffs()) {
            assert!(x.distance(y) < 1e-48);
        }
        let s = series(&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0], 5);
        assert_eq!(s.decompose_scaled(&mpc(1.0, 0.0)).unwrap().lead_power, 2);
        assert_eq!(series(&[0.0, 0.0], 3).decompose_scaled(&mu).unwrap_err(), Error::ZeroSeries);
    }

    #[test]
    fn ultraspherical_exponent_factors_with_cubic_lead() {
        let (gamma, x) = (100.0, 0.3);
        let order = 8;
        let f = series(&[1.0, -2.0 * x, 1.0], order).pow(&mpc(-gamma, 0.0)).unwrap();
        let a = f.coeff(1).clone();
        let b = a.square() * &mpc(0.5, 0.0) - f.coeff(2);
        let shift = TruncatedSeries::from_poly(&[mpc(0.0, 0.0), -a, b], order, P50).unwrap();
        let exponent = f.ln().unwrap().add(&shift);
        let form = exponent.decompose_scaled(&mpc(gamma, 0.0)).unwrap();
        assert_eq!(form.lead_power, 3);
        let xm = mpc(x, 0.0);
        let a0 = xm.clone() * &(xm.square() * &xm.real(4.0) - &xm.real(3.0)) * &xm.real(2.0) / &xm.real(3.0);
        assert!(form.tail.coeff(0).distance(&a0) < 1e-45, "{:?} vs {a0:?}", form.tail.coeff(0));
    }

    /// Lemma-2.1 shape: exponent `μ wⁿ tail(w)` gives vanishing c_1..c_{n-1}
    /// and c_k growing no faster than `|μ|^⌊k/n⌋`.
    #[test]
    fn scaled_exponent_coefficient_growth() {
        let tail = series(&[0.7, -0.3, 0.45, 0.2, -0.9, 0.33, 0.1, 0.05, -0.2, 0.4], 12);
        for n in [2usize, 3] {
            let mut eps = Vec::new();
            for mu in [1e3, 1e4, 1e5] {
                let c = |m: f64| {
                    ScaledForm { lead_power: n, scale: mpc(m, 0.0), tail: tail.clone() }
                        .assemble()
                        .truncate(12)
                        .exp()
                        .unwrap()
                };
                let (c1, c2) = (c(mu), c(2.0 * mu));
                assert!(c1.coeff(0).distance(&mpc(1.0, 0.0)) < 1e-48);
                for k in 1..n {
                    assert!(c1.is_negligible(c1.coeff(k)));
                }
                let worst = (n..=12)
                    .map(|k| (c2.coeff(k).abs_f64() / c1.coeff(k).abs_f64() / 2f64.powi((k / n) as i32) - 1.0).abs())
                    .fold(f64::MIN, f64::max);
                eps.push(worst);
            }
            // slack shrinks like 1/|μ|
            assert!(eps[0] < 0.05 && eps[1] < eps[0] / 5.0 && eps[2] < eps[1] / 5.0, "{eps:?}");
        }
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), order + 1)
    }

    fn lift(c: &[(f64, f64)]) -> TruncatedSeries<MpComplex> {
        TruncatedSeries::new(c.iter().map(|&(re, im)| mpc(re, im)).collect()).unwrap()
    }

    fn close(a: &TruncatedSeries<MpComplex>, b: &TruncatedSeries<MpComplex>, rel: f64) -> bool {
        let scale = a.max_abs().max(b.max_abs()).max(1.0);
        a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x.distance(y) <= rel * scale)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn exp_log_round_trip(c in arb_series(12)) {
            let mut a = lift(&c);
            a = a.sub(&TruncatedSeries::constant(a.coeff(0).clone(), 12));
            let tol = P50.epsilon_shifted(3);
            let back = a.exp().unwrap().ln().unwrap();
            prop_assert!(close(&back, &a, tol));
            let b = a.exp().unwrap();
            prop_assert!(close(&b.ln().unwrap().exp().unwrap(), &b, tol));
        }

        #[test]
        fn power_and_inverse_power_cancel(c in arb_series(10), s in (-3.0f64..3.0, -1.0f64..1.0)) {
            let mut coeffs = c.clone();
            coeffs[0].0 = coeffs[0].0.abs() + 0.5;
            let a = lift(&coeffs);
            let e = mpc(s.0, s.1);
            let prod = a.pow(&e).unwrap().mul(&a.pow(&-e).unwrap());
            prop_assert!(close(&prod, &TruncatedSeries::one(10, P50), P50.epsilon_shifted(3)));
        }

        #[test]
        fn product_is_commutative_and_associative(
            a in arb_series(20), b in arb_series(20), c in arb_series(20)
        ) {
            let (a, b, c) = (lift(&a), lift(&b), lift(&c));
            let tol = P50.epsilon_shifted(3);
            prop_assert!(close(&a.mul(&b), &b.mul(&a), tol));
            prop_assert!(close(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), tol));
        }
    }
}

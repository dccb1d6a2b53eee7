//! Closed forms for expansion parameters and leading coefficients.
//!
//! Each was re-derived against the series engine; where a formula in the
//! literature differs, the value here is the one the series engine confirms.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn r<T: Scalar>(like: &T, v: f64) -> T {
    like.real(v)
}

/// Ultraspherical, Hermite-type: `c₃ = (2/3)γx(4x² − 3)`.
pub fn ultraspherical_c3<T: Scalar>(gamma: &T, x: &T) -> T {
    gamma.clone() * x * &(x.square() * &r(x, 4.0) - &r(x, 3.0)) * &r(x, 2.0) / &r(x, 3.0)
}

/// Laguerre, alternating Hermite-type: `A = x − α − 1`, `B = x − (α + 1)/2`.
pub fn laguerre_hermite_ab<T: Scalar>(alpha: &T, x: &T) -> (T, T) {
    let a1 = alpha.clone() + &r(x, 1.0);
    (x.clone() - &a1, x.clone() - &(a1 / &r(x, 2.0)))
}

/// Laguerre, alternating Hermite-type: `c₃ = (3x − α − 1)/3`.
pub fn laguerre_hermite_c3<T: Scalar>(alpha: &T, x: &T) -> T {
    (x.clone() * &r(x, 3.0) - alpha - &r(x, 1.0)) / &r(x, 3.0)
}

/// Meixner-Pollaczek, one free parameter: `A = α + 1 − 2λ cos φ − 2x sin φ`.
pub fn mp_onefree_a<T: Scalar>(alpha: &T, lambda: &T, phi: &T, x: &T) -> T {
    alpha.clone() + &r(x, 1.0) - &((lambda.clone() * &phi.cos() + &(x.clone() * &phi.sin())) * &r(x, 2.0))
}

/// Meixner-Pollaczek, one free parameter:
/// `c₂ = x sin 2φ + λ cos 2φ − 2(x sin φ + λ cos φ) + (α + 1)/2`.
pub fn mp_onefree_c2<T: Scalar>(alpha: &T, lambda: &T, phi: &T, x: &T) -> T {
    let two_phi = phi.clone() * &r(x, 2.0);
    x.clone() * &two_phi.sin() + &(lambda.clone() * &two_phi.cos())
        - &((x.clone() * &phi.sin() + &(lambda.clone() * &phi.cos())) * &r(x, 2.0))
        + &((alpha.clone() + &r(x, 1.0)) / &r(x, 2.0))
}

/// Meixner-Pollaczek, `C = α`:
/// `A = √(4(λ cos φ + x sin φ)² − 2(α + 1)(λ cos 2φ + x sin 2φ))`, `B = (2(λ cos φ + x sin φ) + A)/(α + 1)`,
/// principal root.
pub fn mp_twofree_ab<T: Scalar>(alpha: &T, lambda: &T, phi: &T, x: &T) -> (T, T) {
    let two_phi = phi.clone() * &r(x, 2.0);
    let p = lambda.clone() * &phi.cos() + &(x.clone() * &phi.sin());
    let q = lambda.clone() * &two_phi.cos() + &(x.clone() * &two_phi.sin());
    let a1 = alpha.clone() + &r(x, 1.0);
    let a = (p.square() * &r(x, 4.0) - &(a1.clone() * &q * &r(x, 2.0))).sqrt();
    let b = (p * &r(x, 2.0) + &a) / &a1;
    (a, b)
}

/// Meixner-Pollaczek, `B = 1`:
/// `A = 2[x(sin φ − sin 2φ) + λ(cos φ − cos 2φ)]`,
/// `C = 2[x(2 sin φ − sin 2φ) + λ(2 cos φ − cos 2φ)] − 1`.
pub fn mp_twofree_ac<T: Scalar>(lambda: &T, phi: &T, x: &T) -> (T, T) {
    let two_phi = phi.clone() * &r(x, 2.0);
    let (s1, c1, s2, c2) = (phi.sin(), phi.cos(), two_phi.sin(), two_phi.cos());
    let a = (x.clone() * &(s1.clone() - &s2) + &(lambda.clone() * &(c1.clone() - &c2))) * &r(x, 2.0);
    let c = (x.clone() * &(s1 * &r(x, 2.0) - &s2) + &(lambda.clone() * &(c1 * &r(x, 2.0) - &c2))) * &r(x, 2.0)
        - &r(x, 1.0);
    (a, c)
}

#[derive(Debug, Clone)]
pub struct ThreeFreeForms<T> {
    pub a: T,
    pub b: T,
    pub c_plus_one: T,
}

/// Meixner-Pollaczek, three free parameters, in polar form `x + iλ = r e^{iθ}`:
/// `B = sin((θ+3φ)/2)/sin((θ+φ)/2)`, `A = 2r sin φ sin((θ+φ)/2)/sin((θ+3φ)/2)`,
/// `C + 1 = 2r[sin(θ+2φ) + 2 sin φ]/B²`.
pub fn mp_threefree<T: Scalar>(r_: &T, theta: &T, phi: &T) -> Result<ThreeFreeForms<T>> {
    let half = r(r_, 0.5);
    let lo = ((theta.clone() + phi) * &half).sin();
    let hi = ((theta.clone() + &(phi.clone() * &r(r_, 3.0))) * &half).sin();
    if hi.abs_f64() <= hi.precision().zero_threshold(1.0) {
        return Err(Error::ZeroB);
    }
    let b = hi.clone() / &lo;
    let a = r_.clone() * &phi.sin() * &lo * &r(r_, 2.0) / &hi;
    let c_plus_one = r_.clone()
        * &((theta.clone() + &(phi.clone() * &r(r_, 2.0))).sin() + &(phi.sin() * &r(r_, 2.0)))
        * &r(r_, 2.0)
        / &b.square();
    Ok(ThreeFreeForms { a, b, c_plus_one })
}

/// `c₄ = (r/2){sin(θ + 4φ) + [2 sin φ − sin(θ + 2φ)]B²}` for the three-parameter plan.
pub fn mp_threefree_c4<T: Scalar>(r_: &T, theta: &T, phi: &T, b: &T) -> T {
    let s4 = (theta.clone() + &(phi.clone() * &r(r_, 4.0))).sin();
    let s2 = (theta.clone() + &(phi.clone() * &r(r_, 2.0))).sin();
    r_.clone() / &r(r_, 2.0) * &(s4 + &((phi.sin() * &r(r_, 2.0) - &s2) * &b.square()))
}

/// `(x, λ)` making the `B = 1` two-parameter plan return `A = ξ`, `C = α`:
/// `λ = (1 − cos φ)ξ + (α + 1)(2 cos φ − 1)/2`,
/// `x = [2(ξ − α − 1)cos²φ + (α + 1 − 2ξ)cos φ + α + 1 − ξ]/(2 sin φ)`.
pub fn mp_limit_substitution<T: Scalar>(xi: &T, alpha: &T, phi: &T) -> Result<(T, T)> {
    let sin = phi.sin();
    if sin.abs_f64() <= sin.precision().zero_threshold(1.0) {
        return Err(Error::SinPhiZero);
    }
    let cos = phi.cos();
    let one = r(xi, 1.0);
    let two = r(xi, 2.0);
    let a1 = alpha.clone() + &one;
    let lambda = (one - &cos) * xi + &(a1.clone() * &(cos.clone() * &two - &r(xi, 1.0)) / &two);
    let num = (xi.clone() - &a1) * &cos.square() * &two + &((a1.clone() - &(xi.clone() * &two)) * &cos) + &a1 - xi;
    Ok((num / &(sin * &two), lambda))
}

/// `c₃ = (2/3)(2ξ − α − 1)(1 − cos φ)` after the substitution above.
pub fn mp_limit_c3<T: Scalar>(xi: &T, alpha: &T, phi: &T) -> T {
    (xi.clone() * &r(xi, 2.0) - alpha - &r(xi, 1.0)) * &(r(xi, 1.0) - &phi.cos()) * &r(xi, 2.0) / &r(xi, 3.0)
}

/// Jacobi, one free parameter: `A = (α + β + 2)(1 − x)/2`.
pub fn jacobi_onefree_a<T: Scalar>(alpha: &T, beta: &T, x: &T) -> T {
    (alpha.clone() + beta + &r(x, 2.0)) * &(r(x, 1.0) - x) / &r(x, 2.0)
}

/// Jacobi, one free parameter:
/// `c₂ = [−α + 3β − 2(α + 3β + 4)x + (3α + 3β + 8)x²]/8`.
pub fn jacobi_onefree_c2<T: Scalar>(alpha: &T, beta: &T, x: &T) -> T {
    let b3 = beta.clone() * &r(x, 3.0);
    let lin = (alpha.clone() + &b3 + &r(x, 4.0)) * x * &r(x, 2.0);
    let quad = (alpha.clone() * &r(x, 3.0) + &b3 + &r(x, 8.0)) * &x.square();
    (b3 - alpha - &lin + &quad) / &r(x, 8.0)
}

/// Meixner, one free parameter: `A = [(α − β + 1)c + (1 − c)x]/c`.
pub fn meixner_onefree_a<T: Scalar>(alpha: &T, beta: &T, c: &T, x: &T) -> T {
    ((alpha.clone() - beta + &r(x, 1.0)) * c + &((r(x, 1.0) - c) * x)) / c
}

/// Meixner, one free parameter: `c₂ = [(1 + α − β)c² + (2c − c² − 1)x]/(2c²)`.
pub fn meixner_onefree_c2<T: Scalar>(alpha: &T, beta: &T, c: &T, x: &T) -> T {
    let c2 = c.square();
    ((r(x, 1.0) + alpha - beta) * &c2 + &((c.clone() * &r(x, 2.0) - &c2 - &r(x, 1.0)) * x)) / &(c2 * &r(x, 2.0))
}

/// Krawtchouk, one free parameter: `A = α + 1 − N + (1 + q)x`, `q = (1 − p)/p`.
pub fn krawtchouk_onefree_a<T: Scalar>(alpha: &T, size: u32, p: &T, x: &T) -> T {
    let q = (r(x, 1.0) - p) / p;
    alpha.clone() + &r(x, 1.0 - f64::from(size)) + &((q + &r(x, 1.0)) * x)
}

/// Krawtchouk, one free parameter: `c₂ = [1 + α − 3N + (3 + 2q − q²)x]/2`.
pub fn krawtchouk_onefree_c2<T: Scalar>(alpha: &T, size: u32, p: &T, x: &T) -> T {
    let q = (r(x, 1.0) - p) / p;
    let slope = r(x, 3.0) + &(q.clone() * &r(x, 2.0)) - &q.square();
    (alpha.clone() + &r(x, 1.0 - 3.0 * f64::from(size)) + &(slope * x)) / &r(x, 2.0)
}

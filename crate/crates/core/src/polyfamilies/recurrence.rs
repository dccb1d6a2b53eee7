//! Classical three-term recurrences, the direct evaluation route.
//!
//! Every family is written as `d_k p_{k+1} = a_k p_k - b_k p_{k-1}` in its
//! standard normalization, with `p_0 = 1` and `p_1` given explicitly. These are
//! external reference data, not derived from the generating functions, so that
//! the two evaluation routes stay independent.
//!
//! Sources: R. Koekoek, P. A. Lesky, R. F. Swarttouw, *Hypergeometric
//! Orthogonal Polynomials and Their q-Analogues* (Springer, 2010), sections
//! 9.7 (Meixner-Pollaczek), 9.8 (Jacobi), 9.10 (Meixner), 9.11 (Krawtchouk),
//! 9.12 (Laguerre), 9.15 (Hermite); DLMF 18.9.1 for Gegenbauer.

use super::Family;
use crate::scalar::Scalar;

/// Coefficients of `d p_{k+1} = a p_k - b p_{k-1}`.
pub struct Step<T> {
    pub d: T,
    pub a: T,
    pub b: T,
}

/// `p_1(x)` in standard normalization.
pub fn first<T: Scalar>(family: &Family<T>, x: &T) -> T {
    let one = x.real(1.0);
    let two = x.real(2.0);
    match family {
        // H_1 = 2x
        Family::Hermite => x.clone() * &two,
        // L_1^α = 1 + α − x
        Family::Laguerre { alpha } => one + alpha - x,
        // C_1^γ = 2γx
        Family::Ultraspherical { gamma } => gamma.clone() * x * &two,
        // P_1^{(α,β)} = (α + 1) + (α + β + 2)(x − 1)/2
        Family::Jacobi { alpha, beta } => {
            alpha.clone() + &one + (alpha.clone() + beta + &two) * &(x.clone() - &one) / &two
        }
        // P_1^{(λ)}(x; φ) = 2(λ cos φ + x sin φ)
        Family::MeixnerPollaczek { lambda, phi } => {
            (lambda.clone() * &phi.cos() + x.clone() * &phi.sin()) * &two
        }
        // M_1(x; β, c) = 1 + (c − 1)x/(cβ)
        Family::Meixner { beta, c } => one.clone() + (c.clone() - &one) * x / &(c.clone() * beta),
        // K_1(x; p, N) = 1 − x/(pN)
        Family::Krawtchouk { size, p } => one - &(x.clone() / &(p.clone() * &x.real(f64::from(*size)))),
    }
}

/// Recurrence coefficients advancing from degree `k ≥ 1` to `k + 1`.
pub fn step<T: Scalar>(family: &Family<T>, x: &T, k: usize) -> Step<T> {
    let kk = x.real(k as f64);
    let one = x.real(1.0);
    let two = x.real(2.0);
    match family {
        // H_{k+1} = 2x H_k − 2k H_{k−1}
        Family::Hermite => Step { d: one, a: x.clone() * &two, b: kk * &two },
        // (k+1) L_{k+1} = (2k + α + 1 − x) L_k − (k + α) L_{k−1}
        Family::Laguerre { alpha } => Step {
            d: kk.clone() + &one,
            a: kk.clone() * &two + alpha + &one - x,
            b: kk + alpha,
        },
        // (k+1) C_{k+1} = 2(k + γ) x C_k − (k + 2γ − 1) C_{k−1}
        Family::Ultraspherical { gamma } => Step {
            d: kk.clone() + &one,
            a: (kk.clone() + gamma) * x * &two,
            b: kk + &(gamma.clone() * &two) - &one,
        },
        // 2(k+1)(k+α+β+1)(2k+α+β) P_{k+1}
        //   = (2k+α+β+1)[(2k+α+β+2)(2k+α+β) x + α² − β²] P_k
        //     − 2(k+α)(k+β)(2k+α+β+2) P_{k−1}
        Family::Jacobi { alpha, beta } => {
            let s = kk.clone() * &two + alpha + beta;
            Step {
                d: (kk.clone() + &one) * &(kk.clone() + alpha + beta + &one) * &s * &two,
                a: (s.clone() + &one)
                    * &((s.clone() + &two) * &s * x + &alpha.square() - &beta.square()),
                b: (kk.clone() + alpha) * &(kk + beta) * &(s + &two) * &two,
            }
        }
        // (k+1) P_{k+1} = 2[x sin φ + (k + λ) cos φ] P_k − (k + 2λ − 1) P_{k−1}
        Family::MeixnerPollaczek { lambda, phi } => Step {
            d: kk.clone() + &one,
            a: (x.clone() * &phi.sin() + &((kk.clone() + lambda) * &phi.cos())) * &two,
            b: kk + &(lambda.clone() * &two) - &one,
        },
        // c(k + β) M_{k+1} = [(c − 1)x + k + (k + β)c] M_k − k M_{k−1}
        Family::Meixner { beta, c } => Step {
            d: c.clone() * &(kk.clone() + beta),
            a: (c.clone() - &one) * x + &kk + &((kk.clone() + beta) * c),
            b: kk,
        },
        // p(N − k) K_{k+1} = [p(N − k) + k(1 − p) − x] K_k − k(1 − p) K_{k−1}
        Family::Krawtchouk { size, p } => {
            let n_minus_k = x.real(f64::from(*size)) - &kk;
            let q = kk * &(one - p);
            Step {
                d: p.clone() * &n_minus_k,
                a: p.clone() * &n_minus_k + &q - x,
                b: q,
            }
        }
    }
}

/// `p_0..=p_n` by forward recurrence.
pub fn values<T: Scalar>(family: &Family<T>, x: &T, n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.real(1.0));
    if n == 0 {
        return out;
    }
    out.push(first(family, x));
    for k in 1..n {
        let Step { d, a, b } = step(family, x, k);
        let next = (a * &out[k] - &(b * &out[k - 1])) / &d;
        out.push(next);
    }
    out
}

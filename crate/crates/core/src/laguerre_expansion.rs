//! Finite expansions in Laguerre polynomials of variable order.
//!
//! With `f(w) = e^{Aw/(1−Bw)} (1−Bw)^{C+1} F(w) = Σ c_k w^k`, every series
//! coefficient satisfies `p_n = Σ_{k≤n} B^{n−k} c_k L_{n−k}^{(C)}(A/B)`.
//! `A`, `B`, `C` are chosen to annihilate the first one, two or three `c_k`.

use crate::closed_forms;
use crate::error::{Error, Result};
use crate::polyfamilies::{Family, FamilySpec, PolarMP};
use crate::powerseries::TruncatedSeries;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeParamMode {
    /// `B = 1`, `C = α`; solves `c₁ = 0` for `A`.
    OneFree,
    /// `C = α`; solves `c₁ = c₂ = 0` for `A`, `B`.
    TwoFreeAB,
    /// `B = 1`; solves `c₁ = c₂ = 0` for `A`, `C`.
    TwoFreeAC,
    /// Solves `c₁ = c₂ = c₃ = 0`.
    ThreeFree,
}

impl FreeParamMode {
    pub const ALL: [FreeParamMode; 4] = [
        FreeParamMode::OneFree,
        FreeParamMode::TwoFreeAB,
        FreeParamMode::TwoFreeAC,
        FreeParamMode::ThreeFree,
    ];

    /// Number of leading coefficients `c₁, c₂, …` forced to vanish.
    pub fn forced(self) -> usize {
        match self {
            FreeParamMode::OneFree => 1,
            FreeParamMode::TwoFreeAB | FreeParamMode::TwoFreeAC => 2,
            FreeParamMode::ThreeFree => 3,
        }
    }

    /// Whether `B` is solved for rather than fixed at 1.
    pub fn solves_b(self) -> bool {
        matches!(self, FreeParamMode::TwoFreeAB | FreeParamMode::ThreeFree)
    }

    /// Whether the target order `α` enters the solve.
    pub fn uses_alpha(self) -> bool {
        matches!(self, FreeParamMode::OneFree | FreeParamMode::TwoFreeAB)
    }
}

/// Facts about how a plan was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanNote {
    /// The square-root argument in the two-parameter solve was a negative real.
    ComplexSquareRoot,
    /// The non-principal square root gave the smaller `|c₃|`.
    NonPrincipalRoot,
    /// Meixner-Pollaczek three-parameter values taken from the polar closed forms.
    PolarClosedForm,
}

#[derive(Debug, Clone)]
pub struct LaguerrePlan<T> {
    a: T,
    b: T,
    c_order: T,
    xi: T,
    coeffs: Vec<T>,
    mode: FreeParamMode,
    notes: Vec<PlanNote>,
}

/// `F(w) · e^{Aw/(1−Bw)} · (1−Bw)^{C+1}`.
pub fn lemma_coefficients<T: Scalar>(
    series: &TruncatedSeries<T>,
    a: &T,
    b: &T,
    c_order: &T,
) -> Result<TruncatedSeries<T>> {
    let order = series.order();
    let p = series.precision();
    let one = a.real(1.0);
    let base = TruncatedSeries::linear(one.clone(), -b.clone(), order);
    let w = TruncatedSeries::variable(order, p);
    let exponent = w.div(&base)?.scale(a);
    let power = base.pow(&(c_order.clone() + &one))?;
    Ok(series.mul(&exponent.exp()?).mul(&power))
}

fn coefficient<T: Scalar>(series: &TruncatedSeries<T>, k: usize) -> Result<T> {
    if k > series.order() {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: format!("series of order {} is too short, need {k}", series.order()),
        });
    }
    Ok(series.coeff(k).clone())
}

struct Candidate<T> {
    a: T,
    b: T,
    c_order: T,
    coeffs: TruncatedSeries<T>,
}

fn candidate<T: Scalar>(series: &TruncatedSeries<T>, a: T, b: T, c_order: T) -> Result<Candidate<T>> {
    let coeffs = lemma_coefficients(series, &a, &b, &c_order)?;
    Ok(Candidate { a, b, c_order, coeffs })
}

fn negligible_b<T: Scalar>(b: &T, scale: f64) -> bool {
    b.abs_f64() <= b.precision().zero_threshold(scale)
}

/// `A`, `C` from `c₁ = c₂ = 0` at given `B`.
fn a_c_for_b<T: Scalar>(p1: &T, p2: &T, b: &T) -> (T, T) {
    let two = b.real(2.0);
    let c = (p1.square() - &(p2.clone() * &two) + &(p1.clone() * b * &two) - &b.square()) / &b.square();
    let a = b.clone() * &(c.clone() + &b.real(1.0)) - p1;
    (a, c)
}

/// Roots of `p₁B² + (2p₁² − 4p₂)B + (3p₃ − 3p₁p₂ + p₁³) = 0`, the condition
/// `c₃ = 0` once `A` and `C` are eliminated.
pub fn b_quadratic_roots<T: Scalar>(p1: &T, p2: &T, p3: &T) -> Result<Vec<T>> {
    let (a2, a1, a0) = b_quadratic(p1, p2, p3);
    let scale = a2.abs_f64().max(a1.abs_f64()).max(a0.abs_f64()).max(1.0);
    let tiny = |v: &T| v.abs_f64() <= v.precision().zero_threshold(scale);
    if tiny(&a2) {
        if tiny(&a1) {
            return Err(Error::DegenerateQuadratic);
        }
        return Ok(vec![-(a0 / &a1)]);
    }
    let disc = (a1.square() - &(a2.clone() * &a0 * &a0.real(4.0))).sqrt();
    let denom = a2.clone() * &a2.real(2.0);
    Ok(vec![(disc.clone() - &a1) / &denom, (-(disc + &a1)) / &denom])
}

fn b_quadratic<T: Scalar>(p1: &T, p2: &T, p3: &T) -> (T, T, T) {
    let a2 = p1.clone();
    let a1 = p1.square() * &p1.real(2.0) - &(p2.clone() * &p2.real(4.0));
    let a0 = (p3.clone() - &(p1.clone() * p2)) * &p3.real(3.0) + &p1.powi(3);
    (a2, a1, a0)
}

/// Residual of the B-quadratic at `b`, relative to the size of its terms.
pub fn b_quadratic_residual<T: Scalar>(p1: &T, p2: &T, p3: &T, b: &T) -> f64 {
    let (a2, a1, a0) = b_quadratic(p1, p2, p3);
    let t2 = a2 * &b.square();
    let t1 = a1 * b;
    let size = t2.abs_f64() + t1.abs_f64() + a0.abs_f64();
    (t2 + &t1 + &a0).abs_f64() / size.max(f64::MIN_POSITIVE)
}

impl<T: Scalar> LaguerrePlan<T> {
    /// Solve for `A`, `B`, `C` on an arbitrary series with unit constant term.
    /// `alpha` is the Laguerre order for the modes that fix `C`. The series
    /// order bounds the stored coefficients and must be at least 4.
    pub fn from_series(series: &TruncatedSeries<T>, mode: FreeParamMode, alpha: &T) -> Result<Self> {
        let p1 = coefficient(series, 1)?;
        let p2 = coefficient(series, 2)?;
        let p3 = coefficient(series, 3)?;
        coefficient(series, 4)?;
        let one = p1.real(1.0);
        let scale = series.max_abs().max(1.0);
        let mut notes = Vec::new();
        let chosen = match mode {
            FreeParamMode::OneFree => {
                candidate(series, alpha.clone() + &one - &p1, one.clone(), alpha.clone())?
            }
            FreeParamMode::TwoFreeAC => {
                let two = one.real(2.0);
                let c = p1.square() - &(p2.clone() * &two) + &(p1.clone() * &two) - &one;
                candidate(series, c.clone() + &one - &p1, one.clone(), c)?
            }
            FreeParamMode::TwoFreeAB => {
                let alpha1 = alpha.clone() + &one;
                if negligible_b(&alpha1, 1.0) {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        reason: "alpha + 1 must be nonzero for the two-parameter (A, B) solve".into(),
                    });
                }
                let disc = p1.square() - &(alpha1.clone() * &(p2.clone() * &one.real(2.0) - &p1.square()));
                if disc.re_f64() < 0.0 && disc.im_f64().abs() <= disc.precision().zero_threshold(disc.abs_f64()) {
                    notes.push(PlanNote::ComplexSquareRoot);
                }
                let root = disc.sqrt();
                let mut best: Option<(f64, bool, Candidate<T>)> = None;
                for (principal, a) in [(true, root.clone()), (false, -root)] {
                    let b = (p1.clone() + &a) / &alpha1;
                    if negligible_b(&b, scale) {
                        continue;
                    }
                    let cand = candidate(series, a, b, alpha.clone())?;
                    let c3 = cand.coeffs.coeff(3).abs_f64();
                    let better = match &best {
                        None => true,
                        Some((best_c3, _, _)) => c3 < *best_c3 - series.precision().zero_threshold(*best_c3),
                    };
                    if better {
                        best = Some((c3, principal, cand));
                    }
                }
                let (_, principal, cand) = best.ok_or(Error::ZeroB)?;
                if !principal {
                    notes.push(PlanNote::NonPrincipalRoot);
                }
                cand
            }
            FreeParamMode::ThreeFree => {
                let mut best: Option<(f64, Candidate<T>)> = None;
                for b in b_quadratic_roots(&p1, &p2, &p3)? {
                    if negligible_b(&b, scale) {
                        continue;
                    }
                    let (a, c) = a_c_for_b(&p1, &p2, &b);
                    let cand = candidate(series, a, b, c)?;
                    let c4 = cand.coeffs.coeff(4).abs_f64();
                    let tie_tol = series.precision().zero_threshold(c4.max(1.0));
                    let better = match &best {
                        None => true,
                        Some((best_c4, prev)) => {
                            c4 < best_c4 - tie_tol
                                || ((c4 - best_c4).abs() <= tie_tol && cand.b.re_f64() > prev.b.re_f64())
                        }
                    };
                    if better {
                        best = Some((c4, cand));
                    }
                }
                best.ok_or(Error::QuadraticNoRoot)?.1
            }
        };
        Self::finish(chosen, mode, notes, scale)
    }

    fn finish(cand: Candidate<T>, mode: FreeParamMode, notes: Vec<PlanNote>, scale: f64) -> Result<Self> {
        // a solved B is judged against the series scale, a fixed one absolutely
        let scale = if mode.solves_b() { scale } else { 1.0 };
        if negligible_b(&cand.b, scale) {
            return Err(Error::ZeroB);
        }
        let xi = cand.a.clone() / &cand.b;
        Ok(LaguerrePlan {
            a: cand.a,
            b: cand.b,
            c_order: cand.c_order,
            xi,
            coeffs: cand.coeffs.into_coeffs(),
            mode,
            notes,
        })
    }

    /// Plan from explicit `A`, `B`, `C`, with no solve.
    pub fn with_parameters(series: &TruncatedSeries<T>, mode: FreeParamMode, a: T, b: T, c_order: T) -> Result<Self> {
        let scale = series.max_abs().max(1.0);
        Self::finish(candidate(series, a, b, c_order)?, mode, Vec::new(), scale)
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// The Laguerre order `C`.
    pub fn c_order(&self) -> &T {
        &self.c_order
    }

    pub fn xi(&self) -> &T {
        &self.xi
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn mode(&self) -> FreeParamMode {
        self.mode
    }

    pub fn notes(&self) -> &[PlanNote] {
        &self.notes
    }

    /// `L_0^{(C)}(ξ), …, L_n^{(C)}(ξ)` by series extraction.
    pub fn laguerre_values(&self, n: usize) -> Result<Vec<T>> {
        let spec = FamilySpec::new(Family::Laguerre { alpha: self.c_order.clone() }, self.xi.clone())?;
        Ok(spec.generating_series(n)?.into_coeffs())
    }

    /// `Σ_{k≤up_to} B^{n−k} c_k L_{n−k}^{(C)}(ξ)`. At `up_to = n` this is `pₙ`.
    pub fn eval(&self, n: usize, up_to: usize) -> Result<T> {
        if up_to > n || up_to >= self.coeffs.len() {
            return Err(Error::TruncationOutOfRange { n, up_to });
        }
        let lag = self.laguerre_values(n)?;
        let mut sum = self.b.real(0.0);
        for k in 0..=up_to {
            sum += &(self.b.powi((n - k) as i32) * &self.coeffs[k] * &lag[n - k]);
        }
        Ok(sum)
    }
}

/// Plan for a family, coefficients through `c_order_max = max(order, 4)`.
/// Meixner-Pollaczek with real arguments takes its three-parameter values from
/// the polar closed forms, checked against the B-quadratic.
pub fn solve_plan<T: Scalar>(
    spec: &FamilySpec<T>,
    mode: FreeParamMode,
    alpha: &T,
    order: usize,
) -> Result<LaguerrePlan<T>> {
    let series = spec.generating_series(order.max(4))?;
    if let (FreeParamMode::ThreeFree, Family::MeixnerPollaczek { lambda, phi }) = (mode, spec.family()) {
        if spec.is_real() {
            let polar = PolarMP::from_mp(&spec.x().re(), &lambda.re());
            let forms = closed_forms::mp_threefree(&polar.r, &polar.theta, &phi.re())?;
            let residual = b_quadratic_residual(series.coeff(1), series.coeff(2), series.coeff(3), &forms.b);
            let tol = spec.precision().epsilon_shifted(12);
            if !(residual <= tol) {
                return Err(Error::ClosedFormMismatch(format!(
                    "polar B leaves relative residual {residual:.3e} in the B-quadratic"
                )));
            }
            let c_order = forms.c_plus_one - &forms.b.real(1.0);
            let mut plan = LaguerrePlan::with_parameters(&series, mode, forms.a, forms.b, c_order)?;
            plan.notes.push(PlanNote::PolarClosedForm);
            return Ok(plan);
        }
    }
    LaguerrePlan::from_series(&series, mode, alpha)
}

/// `c₀, …, c_K` of the one-parameter Meixner-Pollaczek expansion by the
/// four-term recursion in `k`.
pub fn mp_coefficient_recursion<T: Scalar>(alpha: &T, lambda: &T, phi: &T, x: &T, upto: usize) -> Vec<T> {
    let r = |v: f64| x.real(v);
    let (cos, sin) = (phi.cos(), phi.sin());
    let one_cos = r(1.0) + &cos;
    let proj = lambda.clone() * &cos + &(x.clone() * &sin);
    let base1 = alpha.clone() + &r(1.0) - &(lambda.clone() * &r(2.0))
        + &((cos.clone() - &r(1.0)) * &proj * &r(4.0));
    let mut c = vec![r(1.0)];
    let at = |c: &[T], j: isize| if j < 0 { r(0.0) } else { c[j as usize].clone() };
    for k in 0..upto {
        let kf = k as f64;
        let ki = k as isize;
        let t0 = one_cos.clone() * &r(2.0 * kf) * &at(&c, ki);
        let t1 = (base1.clone() + &(r(2.0 * (1.0 - kf)) * &(r(1.0) + &(cos.clone() * &r(2.0))))) * &at(&c, ki - 1);
        let t2 = (lambda.clone() * &r(4.0) + &(one_cos.clone() * &r(2.0 * (kf - 2.0)))
            - &((alpha.clone() + &r(1.0)) * &cos * &r(2.0)))
            * &at(&c, ki - 2);
        let t3 = (alpha.clone() + &r(4.0 - kf) - &(lambda.clone() * &r(2.0))) * &at(&c, ki - 3);
        c.push((t0 + &t1 + &t2 + &t3) / &r(kf + 1.0));
    }
    c
}

/// Compare the recursion against the series-engine coefficients of the
/// one-parameter plan; the first disagreeing index is reported.
pub fn check_mp_recursion<T: Scalar>(spec: &FamilySpec<T>, alpha: &T, upto: usize) -> Result<Vec<T>> {
    let (lambda, phi) = match spec.family() {
        Family::MeixnerPollaczek { lambda, phi } => (lambda, phi),
        _ => {
            return Err(Error::InvalidParameter {
                name: "family",
                reason: "the coefficient recursion is defined for Meixner-Pollaczek only".into(),
            })
        }
    };
    let plan = solve_plan(spec, FreeParamMode::OneFree, alpha, upto)?;
    let rec = mp_coefficient_recursion(alpha, lambda, phi, spec.x(), upto);
    compare_streams(&rec, plan.coeffs(), spec.precision().epsilon_shifted(12))?;
    Ok(rec)
}

/// First index where two coefficient streams differ beyond `rel` (relative to
/// the larger magnitude, floored at 1).
pub fn compare_streams<T: Scalar>(recursion: &[T], series: &[T], rel: f64) -> Result<()> {
    for (k, (r, s)) in recursion.iter().zip(series).enumerate() {
        let scale = r.abs_f64().max(s.abs_f64()).max(1.0);
        if !(r.distance(s) <= rel * scale) {
            let digits = 20;
            let show = |v: &T| {
                let (re, im) = v.to_decimal_parts(digits);
                format!("{re}{}{im}i", if im.starts_with('-') { "" } else { "+" })
            };
            return Err(Error::RecursionMismatch { k, recursion: show(r), series: show(s) });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{MpComplex, Precision};

    const P50: Precision = Precision::Digits(50);

    fn mp(v: f64) -> MpComplex {
        MpComplex::from_f64(v, P50)
    }

    fn close(a: &MpComplex, b: &MpComplex, rel: f64) -> bool {
        a.distance(b) <= rel * b.abs_f64().max(1.0)
    }

    fn spec(family: Family<f64>, x: f64) -> FamilySpec<MpComplex> {
        FamilySpec::from_f64(family, x, P50).unwrap()
    }

    fn mp_polar(r: f64, theta: f64, phi: f64) -> FamilySpec<MpComplex> {
        let (x, lambda) = (mp(r) * &mp(theta).cos(), mp(r) * &mp(theta).sin());
        FamilySpec::new(Family::MeixnerPollaczek { lambda, phi: mp(phi) }, x).unwrap()
    }

    #[test]
    fn jacobi_one_free_example() {
        let s = spec(Family::Jacobi { alpha: 1.0, beta: 40.0 }, 0.9);
        let plan = solve_plan(&s, FreeParamMode::OneFree, &mp(1.0), 6).unwrap();
        assert!((plan.a().re_f64() - 2.15).abs() < 1e-13);
        assert!((plan.coeffs()[2].re_f64() - 0.01375).abs() < 1e-13);
        let first = plan.eval(5, 0).unwrap();
        let lag = FamilySpec::new(Family::Laguerre { alpha: mp(1.0) }, plan.a().clone()).unwrap();
        assert!(close(&first, &lag.eval_standard(5).unwrap(), 1e-45));
    }

    #[test]
    fn meixner_and_krawtchouk_examples() {
        let s = spec(Family::Meixner { beta: 3.0, c: 0.5 }, 4.0);
        let plan = solve_plan(&s, FreeParamMode::OneFree, &mp(2.0), 4).unwrap();
        assert!(close(plan.a(), &mp(4.0), 1e-47));

        let s = spec(Family::Krawtchouk { size: 100, p: 0.5 }, 60.0);
        let plan = solve_plan(&s, FreeParamMode::OneFree, &mp(0.0), 4).unwrap();
        assert!(close(plan.a(), &mp(21.0), 1e-46));
        assert!(close(&plan.coeffs()[2], &mp(-29.5), 1e-46));
    }

    #[test]
    fn every_mode_reconstructs_and_annihilates() {
        let specs = [
            mp_polar(3.0, 1.1, 0.8),
            spec(Family::Jacobi { alpha: 0.5, beta: 2.5 }, 0.3),
            spec(Family::Meixner { beta: 2.5, c: 0.3 }, 1.7),
            spec(Family::Krawtchouk { size: 12, p: 0.4 }, 3.3),
        ];
        for s in &specs {
            for mode in FreeParamMode::ALL {
                let plan = solve_plan(s, mode, &mp(1.5), 10).unwrap();
                let c = plan.coeffs();
                assert!(close(&c[0], &mp(1.0), 1e-46));
                for (k, ck) in c.iter().enumerate().take(mode.forced() + 1).skip(1) {
                    assert!(ck.abs_f64() < 1e-40, "{:?} {mode:?} c{k}={ck:?}", s.kind());
                }
                let top = s.max_degree().unwrap_or(10).min(10);
                for n in 0..=top {
                    let exact = s.series_coefficient(n).unwrap();
                    assert!(close(&plan.eval(n, n).unwrap(), &exact, 1e-38), "{:?} {mode:?} n={n}", s.kind());
                }
            }
        }
    }

    #[test]
    fn polar_closed_form_is_a_root_of_the_b_quadratic() {
        for theta in [0.4, 1.2, 2.7] {
            let s = mp_polar(100.0, theta, 0.7);
            let closed = solve_plan(&s, FreeParamMode::ThreeFree, &mp(0.0), 6).unwrap();
            assert!(closed.notes().contains(&PlanNote::PolarClosedForm));
            let series = s.generating_series(6).unwrap();
            let roots = b_quadratic_roots(series.coeff(1), series.coeff(2), series.coeff(3)).unwrap();
            assert!(roots.iter().any(|b| close(b, closed.b(), 1e-40)), "theta={theta}");
            for k in 1..=3 {
                assert!(closed.coeffs()[k].abs_f64() < 1e-40);
            }
        }
        // away from small theta the |c₄| rule lands on the same branch
        for theta in [1.2, 2.7] {
            let s = mp_polar(100.0, theta, 0.7);
            let closed = solve_plan(&s, FreeParamMode::ThreeFree, &mp(0.0), 6).unwrap();
            let generic = LaguerrePlan::from_series(&s.generating_series(6).unwrap(), FreeParamMode::ThreeFree, &mp(0.0)).unwrap();
            assert!(close(generic.b(), closed.b(), 1e-40), "theta={theta}");
            assert!(close(generic.c_order(), closed.c_order(), 1e-38));
        }
    }

    #[test]
    fn mode_nesting_gives_same_polynomials() {
        let s = spec(Family::Meixner { beta: 1.5, c: 0.6 }, 2.2);
        let one = solve_plan(&s, FreeParamMode::OneFree, &mp(0.5), 8).unwrap();
        let two = solve_plan(&s, FreeParamMode::TwoFreeAB, &mp(0.5), 8).unwrap();
        for n in 0..=8 {
            assert!(close(&one.eval(n, n).unwrap(), &two.eval(n, n).unwrap(), 1e-40));
        }
    }

    #[test]
    fn recursion_matches_series_engine() {
        let phi = std::f64::consts::FRAC_PI_3;
        let s = spec(Family::MeixnerPollaczek { lambda: 2.0, phi }, 1.0);
        let rec = check_mp_recursion(&s, &mp(0.0), 10).unwrap();
        assert!(rec[1].abs_f64() < 1e-45);
        let corrupt: Vec<_> = rec.iter().enumerate().map(|(k, c)| if k == 3 { c.clone() * &mp(1.0001) } else { c.clone() }).collect();
        let plan = solve_plan(&s, FreeParamMode::OneFree, &mp(0.0), 10).unwrap();
        match compare_streams(&corrupt, plan.coeffs(), 1e-38) {
            Err(Error::RecursionMismatch { k, .. }) => assert_eq!(k, 3),
            other => panic!("expected mismatch at 3, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_degeneracy() {
        assert_eq!(b_quadratic_roots(&mp(0.0), &mp(0.0), &mp(1.0)).unwrap_err(), Error::DegenerateQuadratic);
        let roots = b_quadratic_roots(&mp(0.0), &mp(1.0), &mp(2.0)).unwrap();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn truncation_bounds() {
        let s = spec(Family::Jacobi { alpha: 1.0, beta: 2.0 }, 0.2);
        let plan = solve_plan(&s, FreeParamMode::OneFree, &mp(1.0), 4).unwrap();
        assert!(plan.eval(3, 4).is_err());
        assert!(plan.eval(5, 5).is_err());
        assert!(close(&plan.eval(0, 0).unwrap(), &mp(1.0), 1e-48));
    }
}

//! Built-in checks: oracle agreement, exact reconstruction, closed forms and
//! one asymptotic check per family.

use askey_core::asymptotics::{run_limit, truncation_error_order};
use askey_core::closed_forms as cf;
use askey_core::laguerre_expansion::{lemma_coefficients, PlanNote};
use askey_core::polyfamilies::recurrence;
use askey_core::{
    build_hermite_plan, solve_plan, Error, Family, FamilyKind, FamilySpec, FreeParamMode, Grid, LimitCase,
    Precision, Scalar, TruncationSetup, TruncationStudy,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Recurrence values, with one family's `a_k` scaled by `1 + 10⁻⁶` when asked.
fn oracle<T: Scalar>(family: &Family<T>, x: &T, n: usize, corrupt: Option<FamilyKind>) -> Vec<T> {
    if corrupt != Some(family.kind()) {
        return recurrence::values(family, x, n);
    }
    let mut out = vec![x.real(1.0), recurrence::first(family, x)];
    for k in 1..n {
        let step = recurrence::step(family, x, k);
        let a = step.a * &x.real(1.0 + 1e-6);
        let next = (a * &out[k] - &(step.b * &out[k - 1])) / &step.d;
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

fn points() -> [(Family<f64>, f64); 7] {
    [
        (Family::Hermite, 0.7),
        (Family::Laguerre { alpha: 1.5 }, 4.0),
        (Family::Ultraspherical { gamma: 2.5 }, 0.3),
        (Family::Jacobi { alpha: 1.0, beta: 3.0 }, -0.4),
        (Family::MeixnerPollaczek { lambda: 1.5, phi: 1.0 }, 0.8),
        (Family::Meixner { beta: 2.0, c: 0.4 }, 3.0),
        (Family::Krawtchouk { size: 12, p: 0.35 }, 5.0),
    ]
}

fn sci(v: f64) -> String {
    format!("{v:.1e}")
}

pub fn run<T: Scalar>(precision: Precision, corrupt: Option<FamilyKind>) -> Vec<Check> {
    let mut checks = Vec::new();
    for (family, x) in points() {
        checks.push(guard(format!("recurrence {}", family.kind()), || recurrence_check::<T>(&family, x, precision, corrupt)));
        checks.push(guard(format!("reconstruction {}", family.kind()), || {
            reconstruction_check::<T>(&family, x, precision, corrupt)
        }));
    }
    closed_form_checks::<T>(precision, &mut checks);
    asymptotic_checks::<T>(precision, &mut checks);
    checks
}

fn guard(name: String, f: impl FnOnce() -> Result<(bool, String), Error>) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check { name, pass: false, detail: e.to_string() },
    }
}

fn recurrence_check<T: Scalar>(
    family: &Family<f64>,
    x: f64,
    precision: Precision,
    corrupt: Option<FamilyKind>,
) -> Result<(bool, String), Error> {
    let spec = FamilySpec::<T>::from_f64(family.clone(), x, precision)?;
    let top = spec.max_degree().unwrap_or(15).min(15);
    let series = spec.standard_values(top)?;
    let rec = oracle(spec.family(), spec.x(), top, corrupt);
    let scale = rec.iter().map(Scalar::abs_f64).fold(1.0, f64::max);
    let worst = series.iter().zip(&rec).map(|(s, r)| s.distance(r)).fold(0.0, f64::max) / scale;
    let tol = precision.epsilon_shifted(10);
    Ok((worst <= tol, format!("series vs recurrence, n <= {top}: {} (tolerance {})", sci(worst), sci(tol))))
}

fn reconstruction_check<T: Scalar>(
    family: &Family<f64>,
    x: f64,
    precision: Precision,
    corrupt: Option<FamilyKind>,
) -> Result<(bool, String), Error> {
    let spec = FamilySpec::<T>::from_f64(family.clone(), x, precision)?;
    let top = spec.max_degree().unwrap_or(10).min(10);
    let rec = oracle(spec.family(), spec.x(), top, corrupt);
    let exact: Vec<T> = rec.iter().enumerate().map(|(n, v)| v.clone() * &spec.normalization_tag(n)).collect();
    let mut worst = 0.0f64;
    let mut measure = |eval: &dyn Fn(usize) -> Result<T, Error>| -> Result<(), Error> {
        for (n, want) in exact.iter().enumerate() {
            worst = worst.max(eval(n)?.distance(want) / want.abs_f64());
        }
        Ok(())
    };
    let plans = match family.kind() {
        FamilyKind::Hermite | FamilyKind::Laguerre | FamilyKind::Ultraspherical => {
            let plan = build_hermite_plan(&spec, top)?;
            measure(&|n| plan.eval(n, n))?;
            "hermite plan".to_string()
        }
        _ => {
            let alpha = T::from_f64(0.5, precision);
            for mode in FreeParamMode::ALL {
                let plan = solve_plan(&spec, mode, &alpha, top)?;
                measure(&|n| plan.eval(n, n))?;
            }
            "laguerre plan, all modes".to_string()
        }
    };
    let tol = precision.epsilon_shifted(12);
    Ok((worst <= tol, format!("{plans}, n <= {top}: {} (tolerance {})", sci(worst), sci(tol))))
}

fn closed_form_checks<T: Scalar>(p: Precision, checks: &mut Vec<Check>) {
    let v = |a: f64| T::from_f64(a, p);
    let tol = p.epsilon_shifted(10);
    let compare = |want: &T, got: &T| want.distance(got) / got.abs_f64().max(1.0);
    let mut record = |name: &str, result: Result<f64, Error>| {
        checks.push(match result {
            Ok(err) => Check { name: format!("closed form {name}"), pass: err <= tol, detail: sci(err) },
            Err(e) => Check { name: format!("closed form {name}"), pass: false, detail: e.to_string() },
        })
    };
    let spec = |family: Family<T>, x: &T| FamilySpec::new(family, x.clone());

    let (gamma, x) = (v(2.5), v(0.3));
    record("ultraspherical c3", (|| {
        let plan = build_hermite_plan(&spec(Family::Ultraspherical { gamma: gamma.clone() }, &x)?, 4)?;
        Ok(compare(&cf::ultraspherical_c3(&gamma, &x), &plan.coeffs()[3]))
    })());

    let (alpha, x) = (v(1.5), v(4.0));
    record("laguerre A, B, c3", (|| {
        let plan = build_hermite_plan(&spec(Family::Laguerre { alpha: alpha.clone() }, &x)?, 4)?;
        let (a, b) = cf::laguerre_hermite_ab(&alpha, &x);
        let c3 = cf::laguerre_hermite_c3(&alpha, &x);
        Ok(compare(&a, plan.a()).max(compare(&b, plan.b())).max(compare(&c3, &plan.coeffs()[3])))
    })());

    let (alpha, lambda, phi, x) = (v(0.5), v(1.5), v(1.0), v(0.8));
    let mp = || spec(Family::MeixnerPollaczek { lambda: lambda.clone(), phi: phi.clone() }, &x);
    record("meixner-pollaczek one-free A, c2", (|| {
        let plan = solve_plan(&mp()?, FreeParamMode::OneFree, &alpha, 4)?;
        let a = cf::mp_onefree_a(&alpha, &lambda, &phi, &x);
        let c2 = cf::mp_onefree_c2(&alpha, &lambda, &phi, &x);
        Ok(compare(&a, plan.a()).max(compare(&c2, &plan.coeffs()[2])))
    })());
    record("meixner-pollaczek two-free A, B", (|| {
        let plan = solve_plan(&mp()?, FreeParamMode::TwoFreeAB, &alpha, 4)?;
        let (mut a, mut b) = cf::mp_twofree_ab(&alpha, &lambda, &phi, &x);
        if plan.notes().contains(&PlanNote::NonPrincipalRoot) {
            // other branch: A → −A, so B drops by 2A/(α + 1)
            b = b - &(a.clone() * &v(2.0) / &(alpha.clone() + &v(1.0)));
            a = -a;
        }
        Ok(compare(&a, plan.a()).max(compare(&b, plan.b())))
    })());
    record("meixner-pollaczek two-free A, C", (|| {
        let plan = solve_plan(&mp()?, FreeParamMode::TwoFreeAC, &alpha, 4)?;
        let (a, c) = cf::mp_twofree_ac(&lambda, &phi, &x);
        Ok(compare(&a, plan.a()).max(compare(&c, plan.c_order())))
    })());

    let (r, theta, phi3) = (v(20.0), v(1.2), v(0.5));
    record("meixner-pollaczek three-free A, B, C, c4", (|| {
        let forms = cf::mp_threefree(&r, &theta, &phi3)?;
        let s = spec(
            Family::MeixnerPollaczek { lambda: r.clone() * &theta.sin(), phi: phi3.clone() },
            &(r.clone() * &theta.cos()),
        )?
        .generating_series(5)?;
        let c = lemma_coefficients(&s, &forms.a, &forms.b, &(forms.c_plus_one.clone() - &v(1.0)))?;
        let scale = s.max_abs();
        let forced = (1..=3).map(|k| c.coeff(k).abs_f64() / scale).fold(0.0, f64::max);
        let c4 = cf::mp_threefree_c4(&r, &theta, &phi3, &forms.b);
        Ok(forced.max(compare(&c4, c.coeff(4))))
    })());

    let (xi, alpha, phi) = (v(2.0), v(1.0), v(0.4));
    record("meixner-pollaczek substitution A, C, c3", (|| {
        let (x, lambda) = cf::mp_limit_substitution(&xi, &alpha, &phi)?;
        let plan = solve_plan(&spec(Family::MeixnerPollaczek { lambda, phi: phi.clone() }, &x)?, FreeParamMode::TwoFreeAC, &alpha, 4)?;
        let c3 = cf::mp_limit_c3(&xi, &alpha, &phi);
        Ok(compare(&xi, plan.a()).max(compare(&alpha, plan.c_order())).max(compare(&c3, &plan.coeffs()[3])))
    })());

    let (alpha, beta, x) = (v(1.0), v(3.0), v(-0.4));
    record("jacobi A, c2", (|| {
        let plan = solve_plan(&spec(Family::Jacobi { alpha: alpha.clone(), beta: beta.clone() }, &x)?, FreeParamMode::OneFree, &alpha, 4)?;
        let a = cf::jacobi_onefree_a(&alpha, &beta, &x);
        let c2 = cf::jacobi_onefree_c2(&alpha, &beta, &x);
        Ok(compare(&a, plan.a()).max(compare(&c2, &plan.coeffs()[2])))
    })());

    let (alpha, beta, c, x) = (v(0.5), v(2.0), v(0.4), v(3.0));
    record("meixner A, c2", (|| {
        let plan = solve_plan(&spec(Family::Meixner { beta: beta.clone(), c: c.clone() }, &x)?, FreeParamMode::OneFree, &alpha, 4)?;
        let a = cf::meixner_onefree_a(&alpha, &beta, &c, &x);
        let c2 = cf::meixner_onefree_c2(&alpha, &beta, &c, &x);
        Ok(compare(&a, plan.a()).max(compare(&c2, &plan.coeffs()[2])))
    })());

    let (alpha, prob, x) = (v(0.5), v(0.35), v(5.0));
    record("krawtchouk A, c2", (|| {
        let plan = solve_plan(&spec(Family::Krawtchouk { size: 12, p: prob.clone() }, &x)?, FreeParamMode::OneFree, &alpha, 4)?;
        let a = cf::krawtchouk_onefree_a(&alpha, 12, &prob, &x);
        let c2 = cf::krawtchouk_onefree_c2(&alpha, 12, &prob, &x);
        Ok(compare(&a, plan.a()).max(compare(&c2, &plan.coeffs()[2])))
    })());
}

fn asymptotic_checks<T: Scalar>(p: Precision, checks: &mut Vec<Check>) {
    let n = 3;
    let cases = [
        (LimitCase::GegenbauerToHermite { n, x: 0.5 }, -1.0),
        (LimitCase::LaguerreToHermite { n, x: 0.5 }, -0.5),
        (LimitCase::GegenbauerExact { n, x: 0.5 }, -1.0),
        (LimitCase::MpLambdaHalf { n, alpha: 1.0, xi: 1.5 }, 2.0),
        (LimitCase::MpSubstitution { n, alpha: 1.0, xi: 1.5 }, 2.0),
        (LimitCase::JacobiToLaguerre { n, alpha: 1.0, xi: 2.0 }, -1.0),
        (LimitCase::JacobiToLaguerreAskey { n, alpha: 1.0, xi: 2.0 }, -1.0),
        (LimitCase::MeixnerToLaguerre { n, alpha: 1.0, xi: 2.0 }, 1.0),
    ];
    let judge = |name: String, est: Result<askey_core::OrderEstimate, Error>, expected: f64, monotone: bool| match est {
        Ok(est) => {
            let slope_ok = (est.slope - expected).abs() <= 0.3;
            let shape_ok = !monotone || est.is_strictly_decreasing();
            Check {
                name,
                pass: slope_ok && shape_ok,
                detail: format!(
                    "slope {:.3} (expected {expected:+}){}",
                    est.slope,
                    if shape_ok { "" } else { ", not strictly decreasing" }
                ),
            }
        }
        Err(e) => Check { name, pass: false, detail: e.to_string() },
    };
    for (case, expected) in cases {
        let est = run_limit::<T>(&case, &case.default_grid(), p);
        checks.push(judge(format!("limit {}", case.name()), est, expected, true));
    }
    // no limit relation reaches Krawtchouk; its first-term order stands in
    let study = TruncationStudy {
        setup: TruncationSetup::Krawtchouk { p: 0.3, s: 0.75 },
        mode: FreeParamMode::OneFree,
        alpha: 1.0,
        n: 4,
        up_to: 0,
    };
    let est = truncation_error_order::<T>(&study, &Grid::large_default(), p);
    checks.push(judge("truncation krawtchouk".to_string(), est, -1.0, false));
}

/// Aligned pass/fail table.
pub fn render(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!("{}  {:width$}  {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    out
}

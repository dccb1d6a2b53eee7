//! The eval, expand, order and limit subcommands, each producing a [`Table`].

use askey_core::asymptotics::{run_limit, truncation_error_order};
use askey_core::laguerre_expansion::PlanNote;
use askey_core::polyfamilies::recurrence;
use askey_core::{
    build_hermite_plan, solve_plan, FamilySpec, LimitCase, OrderEstimate, Precision, Result, Scalar,
    TruncationStudy,
};

use crate::args::{Command, FamilyArgs, PlanKind};
use crate::output::{real, scalar, Table};

/// A computed table plus human-readable remarks for standard error.
pub struct Report {
    pub table: Table,
    pub notes: Vec<String>,
}

fn spec<T: Scalar>(args: &FamilyArgs, precision: Precision) -> Result<FamilySpec<T>> {
    FamilySpec::new(args.family.lift::<T>(precision), T::from_parts(args.x.re, args.x.im, precision))
}

pub fn run<T: Scalar>(command: &Command, precision: Precision) -> Result<Report> {
    match command {
        Command::Eval { family, n } => eval::<T>(family, *n, precision),
        Command::Expand { family, plan, n, up_to } => expand::<T>(family, *plan, *n, *up_to, precision),
        Command::Order { setup, mode, target, n, up_to, grid } => {
            let study = TruncationStudy { setup: *setup, mode: *mode, alpha: *target, n: *n, up_to: *up_to };
            let est = truncation_error_order::<T>(&study, grid, precision)?;
            Ok(fit_report(&est, "param", precision))
        }
        Command::Limit { case, grid } => limit::<T>(case, grid, precision),
        Command::Selftest { .. } => unreachable!("selftest is dispatched separately"),
    }
}

fn eval<T: Scalar>(family: &FamilyArgs, n: usize, precision: Precision) -> Result<Report> {
    let spec = spec::<T>(family, precision)?;
    let series = spec.standard_values(n)?;
    let rec = recurrence::values(spec.family(), spec.x(), n);
    let mut table = Table::new(&["n", "series", "recurrence"]);
    for (k, (s, r)) in series.iter().zip(&rec).enumerate() {
        table.push(vec![k.to_string(), scalar(s), scalar(r)]);
    }
    Ok(Report { table, notes: Vec::new() })
}

fn expand<T: Scalar>(family: &FamilyArgs, plan: PlanKind, n: usize, up_to: usize, precision: Precision) -> Result<Report> {
    let spec = spec::<T>(family, precision)?;
    let mut table = Table::new(&["name", "value"]);
    let mut notes = Vec::new();
    let mut row = |name: String, v: &T| table.push(vec![name, scalar(v)]);
    let exact = spec.series_coefficient(n)?;
    match plan {
        PlanKind::Hermite => {
            let plan = build_hermite_plan(&spec, n)?;
            row("A".into(), plan.a());
            row("B".into(), plan.b());
            row("z".into(), plan.z());
            row("xi".into(), plan.xi());
            for (k, c) in plan.coeffs().iter().enumerate() {
                row(format!("c_{k}"), c);
            }
            for k in 0..=up_to {
                row(format!("approx_{k}"), &plan.eval(n, k)?);
            }
        }
        PlanKind::Laguerre { mode, target } => {
            let plan = solve_plan(&spec, mode, &T::from_f64(target, precision), n)?;
            row("A".into(), plan.a());
            row("B".into(), plan.b());
            row("C".into(), plan.c_order());
            row("xi".into(), plan.xi());
            for (k, c) in plan.coeffs().iter().enumerate().take(n + 1) {
                row(format!("c_{k}"), c);
            }
            for k in 0..=up_to {
                row(format!("approx_{k}"), &plan.eval(n, k)?);
            }
            for note in plan.notes() {
                notes.push(match note {
                    PlanNote::ComplexSquareRoot => "A is imaginary: the square-root argument was a negative real",
                    PlanNote::NonPrincipalRoot => "the nonprincipal square root gave the smaller |c_3|",
                    PlanNote::PolarClosedForm => "A, B, C from the polar closed forms",
                }
                .to_string());
            }
        }
    }
    row(format!("p_{n}"), &exact);
    Ok(Report { table, notes })
}

fn limit<T: Scalar>(case: &LimitCase, grid: &askey_core::Grid, precision: Precision) -> Result<Report> {
    let est = run_limit::<T>(case, grid, precision)?;
    Ok(fit_report(&est, case.parameter(), precision))
}

fn fit_report(est: &OrderEstimate, parameter: &str, precision: Precision) -> Report {
    let mut table = Table::new(&["param", "error"]);
    for &(p, e) in &est.points {
        table.push(vec![real(p, precision), real(e, precision)]);
    }
    let fit = if est.is_exact() {
        "exact: some error is zero".to_string()
    } else {
        format!("slope {:.4}, residual {:.4} decades", est.slope, est.residual)
    };
    Report { table, notes: vec![format!("{parameter}: {fit}")] }
}

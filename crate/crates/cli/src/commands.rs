use std::f64::consts::PI;

use pseudofermion::coherent::{CoherentSystem, Flavor};
use pseudofermion::evolution::{self, time_grid};
use pseudofermion::twolevel::{self, DEFAULT_TOL};
use pseudofermion::{CheckReport, Error, Regime, SystemParams, Vec2};
use thiserror::Error as ThisError;

use crate::output::{self, Cell, JsonReport, Table};
use crate::{Common, GridArgs, TimeArgs};

/// Times at which `verify` checks propagators and stability.
pub const VERIFY_TIMES: [f64; 3] = [0.0, 0.7, 3.1];

/// Default tolerance of `ode-check`, where RK4 truncation error dominates.
pub const ODE_TOL: f64 = 1e-6;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn tolerance(common: &Common, default: f64) -> Result<f64, Error> {
    let tol = common.tol.unwrap_or(default);
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Argument(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    Ok(tol)
}

/// Writes the error object for core errors before passing them on.
fn reported<T>(common: &Common, r: Result<T, Error>) -> Result<T, CliError> {
    r.or_else(|e| {
        output::emit_error(common, &e)?;
        Err(CliError::Core(e))
    })
}

/// The full identity suite at one parameter point.
pub fn verification_suite(p: &SystemParams, tol: f64) -> Result<CheckReport, Error> {
    let mut r = twolevel::system_report(p, tol)?;
    r.extend(CoherentSystem::new(p)?.report(tol)?);
    r.extend(evolution::propagator_report(p, &VERIFY_TIMES, tol)?);
    r.extend(evolution::stability_check(p, &VERIFY_TIMES, tol)?);
    Ok(r)
}

fn emit_report(common: &Common, report: &CheckReport) -> Result<Outcome, CliError> {
    output::emit(common, &output::to_json(&JsonReport::new(common, report)))?;
    Ok(Outcome::from_pass(report.all_pass()))
}

pub fn verify(common: &Common) -> Result<Outcome, CliError> {
    let report = reported(
        common,
        tolerance(common, DEFAULT_TOL).and_then(|tol| verification_suite(&common.params(), tol)),
    )?;
    emit_report(common, &report)
}

pub fn ode_check(common: &Common, time: &TimeArgs) -> Result<Outcome, CliError> {
    let report = reported(
        common,
        tolerance(common, ODE_TOL)
            .and_then(|tol| evolution::ode_check(&common.params(), time.t_max, time.dt, tol)),
    )?;
    emit_report(common, &report)
}

/// `steps` evenly spaced values from `lo` to `hi`, or `[single]` if `steps == 1`.
fn axis(steps: usize, lo: f64, hi: f64, single: f64) -> Vec<f64> {
    match steps {
        1 => vec![single],
        n => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn validate_grid(grid: &GridArgs) -> Result<(), Error> {
    if grid.grid_delta_steps == 0 || grid.grid_arg_steps == 0 {
        return Err(Error::Argument(
            "sweep grid must have at least one step per axis".into(),
        ));
    }
    if !(grid.grid_delta_max >= 0.0 && grid.grid_delta_max.is_finite()) {
        return Err(Error::Argument(format!(
            "grid-delta-max must be a nonnegative number, got {}",
            grid.grid_delta_max
        )));
    }
    Ok(())
}

/// Grid in `(δ/|ω|, arg ω)` at the configured `γb` and `|ω|`. An axis with
/// a single step keeps the configured value.
fn sweep_points(p: &SystemParams, grid: &GridArgs) -> Vec<(f64, f64)> {
    let omega_abs = p.omega_abs();
    let ratio = if omega_abs > 0.0 {
        p.delta() / omega_abs
    } else {
        0.0
    };
    let deltas = axis(grid.grid_delta_steps, 0.0, grid.grid_delta_max, ratio);
    let args: Vec<f64> = match grid.grid_arg_steps {
        1 => vec![p.omega().arg()],
        n => (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect(),
    };
    deltas
        .iter()
        .flat_map(|&d| args.iter().map(move |&a| (d, a)))
        .collect()
}

enum RowResult {
    Evaluated { omega_big: f64, report: CheckReport },
    Flagged(&'static str),
}

pub fn sweep(common: &Common, grid: &GridArgs) -> Result<Outcome, CliError> {
    let base = common.params();
    let tol = reported(common, tolerance(common, DEFAULT_TOL))?;
    reported(common, base.validate().and_then(|_| validate_grid(grid)))?;
    let single = grid.grid_delta_steps == 1 && grid.grid_arg_steps == 1;

    let mut rows = Vec::new();
    for (ratio, arg) in sweep_points(&base, grid) {
        let p = if single {
            base
        } else {
            SystemParams::from_ratio(base.gamma_b, base.omega_abs(), ratio, arg)
        };
        // The nominal ratio decides the regime on the grid, so that rounding
        // in |omega| cannot push the line ratio = 1 to either side.
        let nominal = if single { None } else { Some(ratio) };
        let result = match nominal.map(|r| r.partial_cmp(&1.0)) {
            Some(Some(std::cmp::Ordering::Equal)) => RowResult::Flagged("degenerate"),
            Some(Some(std::cmp::Ordering::Greater)) => RowResult::Flagged("strong_damping"),
            _ => match reported(common, p.regime())? {
                Regime::RealSpectrum { omega_big } => RowResult::Evaluated {
                    omega_big,
                    report: reported(common, verification_suite(&p, tol))?,
                },
                Regime::Degenerate => RowResult::Flagged("degenerate"),
                Regime::StrongDamping => RowResult::Flagged("strong_damping"),
            },
        };
        rows.push((ratio, arg, p, result));
    }

    let mut families: Vec<String> = Vec::new();
    for (_, _, _, r) in &rows {
        if let RowResult::Evaluated { report, .. } = r {
            for (f, _, _) in report.family_maxima() {
                if !families.contains(&f) {
                    families.push(f);
                }
            }
        }
    }

    let mut columns: Vec<String> = [
        "delta_over_omega",
        "arg_omega",
        "gamma_a",
        "gamma_b",
        "omega_re",
        "omega_im",
        "omega_big",
        "status",
        "pass",
    ]
    .map(String::from)
    .to_vec();
    columns.extend(families.iter().map(|f| format!("max_residual_{f}")));

    let mut all_pass = true;
    let table_rows = rows
        .iter()
        .map(|(ratio, arg, p, result)| {
            let mut row = vec![
                Cell::Num(*ratio),
                Cell::Num(*arg),
                Cell::Num(p.gamma_a),
                Cell::Num(p.gamma_b),
                Cell::Num(p.omega_re),
                Cell::Num(p.omega_im),
            ];
            match result {
                RowResult::Evaluated { omega_big, report } => {
                    let pass = report.all_pass();
                    all_pass &= pass;
                    row.extend([
                        Cell::Num(*omega_big),
                        Cell::Text("ok".into()),
                        Cell::Bool(pass),
                    ]);
                    let maxima = report.family_maxima();
                    row.extend(families.iter().map(|f| {
                        maxima
                            .iter()
                            .find(|(g, _, _)| g == f)
                            .map_or(Cell::Empty, |(_, m, _)| Cell::Num(*m))
                    }));
                }
                RowResult::Flagged(status) => {
                    let omega_big = if *status == "degenerate" {
                        Cell::Num(0.0)
                    } else {
                        Cell::Empty
                    };
                    row.extend([omega_big, Cell::Text((*status).into()), Cell::Empty]);
                    row.extend(families.iter().map(|_| Cell::Empty));
                }
            }
            row
        })
        .collect();

    output::emit_table(
        common,
        &Table {
            columns,
            rows: table_rows,
        },
    )?;
    Ok(Outcome::from_pass(all_pass))
}

pub fn evolve(common: &Common, time: &TimeArgs) -> Result<Outcome, CliError> {
    let p = common.params();
    let tol = reported(common, tolerance(common, DEFAULT_TOL))?;
    let (sys, times) = reported(
        common,
        CoherentSystem::new(&p).and_then(|sys| {
            if time.stride == 0 {
                return Err(Error::Argument("stride must be positive".into()));
            }
            Ok((sys, time_grid(time.t_max, time.dt)?))
        }),
    )?;

    let columns = [
        "t",
        "factor_re",
        "factor_im",
        "factor_abs",
        "ratio_re",
        "ratio_im",
        "primal_factorization_residual",
        "dual_factorization_residual",
        "stability_max_residual",
        "stability_pass",
        "amp_a_re",
        "amp_a_im",
        "amp_b_re",
        "amp_b_im",
        "bare_a_re",
        "bare_a_im",
        "bare_b_re",
        "bare_b_im",
    ]
    .map(String::from)
    .to_vec();

    let last = times.len() - 1;
    let mut all_pass = true;
    let mut rows = Vec::new();
    for (k, &t) in times.iter().enumerate() {
        if k % time.stride != 0 && k != last {
            continue;
        }
        let row = reported(common, evolve_row(&sys, t, tol))?;
        all_pass &= row.1;
        rows.push(row.0);
    }
    output::emit_table(common, &Table { columns, rows })?;
    Ok(Outcome::from_pass(all_pass))
}

fn evolve_row(sys: &CoherentSystem, t: f64, tol: f64) -> Result<(Vec<Cell>, bool), Error> {
    let p = &sys.params;
    let primal = evolution::evolve_cs_in(sys, Flavor::Primal, t)?;
    let dual = evolution::evolve_cs_in(sys, Flavor::Dual, t)?;
    let stability = evolution::stability_check(p, &[t], tol)?;
    let amp = evolution::propagator(p, t, false)?.apply(&Vec2::basis(0));
    let bare = evolution::exact_bare_amplitudes(p, Vec2::basis(0), t)?;
    let row = vec![
        Cell::Num(t),
        Cell::Num(primal.factor.re),
        Cell::Num(primal.factor.im),
        Cell::Num(primal.factor.norm()),
        Cell::Num(primal.extracted_phase.re),
        Cell::Num(primal.extracted_phase.im),
        Cell::Num(primal.residual),
        Cell::Num(dual.residual),
        Cell::Num(stability.max_residual()),
        Cell::Bool(stability.all_pass()),
        Cell::Num(amp[0].re),
        Cell::Num(amp[0].im),
        Cell::Num(amp[1].re),
        Cell::Num(amp[1].im),
        Cell::Num(bare[0].re),
        Cell::Num(bare[0].im),
        Cell::Num(bare[1].re),
        Cell::Num(bare[1].im),
    ];
    Ok((row, stability.all_pass()))
}

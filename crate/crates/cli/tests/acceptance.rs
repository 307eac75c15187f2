//! Acceptance suite: one pass/fail line per criterion. Runs without the test
//! harness so the lines always appear in `cargo test` output.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use pseudofermion::coherent::CoherentSystem;
use pseudofermion::evolution::{self, Representation, PHASE_TOL};
use pseudofermion::linalg::{C64, ONE};
use pseudofermion::twolevel::{self, DEFAULT_TOL};
use pseudofermion::{coherent, CheckReport, Error, Mat2, SystemParams, Vec2};

/// Tolerance for numeric closed-form identities.
const NUMERIC_TOL: f64 = 1e-12;
/// Tolerance for Hermitian-limit reductions.
const HERMITIAN_TOL: f64 = 1e-14;
/// Tolerance for RK4 against closed forms.
const ODE_TOL: f64 = 1e-6;
/// RK4 step for the oracle comparison.
const ODE_DT: f64 = 1e-3;
/// Coarse step for the convergence-order measurement.
const ORDER_DT: f64 = 0.1;
/// Allowed deviation of the measured order from 4.
const ORDER_TOL: f64 = 0.3;
/// Times for the stability criterion.
const STABILITY_TIMES: [f64; 3] = [0.0, 0.7, 3.1];

const GAMMA_B: f64 = 0.3;
const OMEGA_ABS: f64 = 1.0;

/// 10 values of `δ/|ω|` in `[0, 0.99]` times 8 values of `arg ω = kπ/4`.
fn grid() -> Vec<SystemParams> {
    let mut out = Vec::new();
    for i in 0..10 {
        let ratio = 0.99 * i as f64 / 9.0;
        for k in 0..8 {
            out.push(SystemParams::from_ratio(
                GAMMA_B,
                OMEGA_ABS,
                ratio,
                k as f64 * PI / 4.0,
            ));
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Self::new(false, format!("error: {e}"))
    }
}

/// Worst residual among `ids` over all points, and whether each passed.
fn worst_over_grid(
    ids: &[&str],
    tol: f64,
    report: impl Fn(&SystemParams) -> pseudofermion::Result<CheckReport>,
) -> Outcome {
    let mut worst = 0.0_f64;
    let mut pass = true;
    for p in grid() {
        let r = match report(&p) {
            Ok(r) => r,
            Err(e) => return Outcome::error(e),
        };
        for id in ids {
            match r.get(id) {
                Some(e) => {
                    worst = worst.max(e.residual);
                    pass &= e.residual <= tol;
                }
                None => return Outcome::new(false, format!("missing check {id}")),
            }
        }
    }
    Outcome::new(
        pass,
        format!(
            "max residual {worst:.3e} (tol {tol:.0e}) over {} points",
            grid().len()
        ),
    )
}

fn criterion_1() -> Outcome {
    worst_over_grid(
        &[
            "algebra.b_nilpotent",
            "algebra.b_sharp_nilpotent",
            "algebra.anticommutator",
            "ladder.b_annihilates_ground",
            "ladder.b_lowers",
            "ladder.b_sharp_annihilates_excited",
            "ladder.b_sharp_raises",
            "number.anticommutator_b",
            "number.anticommutator_b_sharp",
        ],
        NUMERIC_TOL,
        |p| twolevel::algebra_report(p, NUMERIC_TOL),
    )
}

fn criterion_2() -> Outcome {
    worst_over_grid(
        &[
            "factorization.hamiltonian",
            "metric.pseudo_hermiticity",
            "ladder.b_sharp_forms_agree",
        ],
        NUMERIC_TOL,
        |p| twolevel::algebra_report(p, NUMERIC_TOL),
    )
}

fn criterion_3() -> Outcome {
    worst_over_grid(
        &[
            "spectrum.eigenvectors",
            "spectrum.biorthonormal",
            "spectrum.completeness",
            "metric.eta_plus",
        ],
        NUMERIC_TOL,
        |p| twolevel::spectrum_report(p, NUMERIC_TOL),
    )
}

fn criterion_4() -> Outcome {
    worst_over_grid(
        &[
            "displacement.series_d",
            "displacement.series_d_sharp",
            "displacement.series_d_tilde",
            "unitarity.sharp_left",
            "unitarity.sharp_right",
            "unitarity.bi_left",
            "unitarity.bi_right",
        ],
        0.0,
        |p| {
            let sys = CoherentSystem::new(p)?;
            let mut r = sys.displacement_report(NUMERIC_TOL)?;
            r.extend(sys.pseudo_unitarity_check()?);
            Ok(r)
        },
    )
}

fn criterion_5() -> Outcome {
    worst_over_grid(&["eigenstate.primal", "eigenstate.dual"], 0.0, |p| {
        CoherentSystem::new(p)?.eigenstate_report()
    })
}

fn criterion_6() -> Outcome {
    let exact = worst_over_grid(
        &[
            "resolution.primal_dual_symbolic",
            "resolution.dual_primal_symbolic",
            "inner.two_parameter",
            "inner.cross",
        ],
        0.0,
        |p| {
            let sys = CoherentSystem::new(p)?;
            let mut r = sys.resolution_of_identity(NUMERIC_TOL)?;
            r.extend(sys.inner_product_report(NUMERIC_TOL)?);
            Ok(r)
        },
    );
    // Away from the Hermitian line both projector integrals must stay at
    // least sqrt(tol) away from the identity.
    let mut separated = true;
    let mut counted = 0;
    for p in grid().into_iter().filter(|p| p.delta() != 0.0) {
        let r = match coherent::resolution_of_identity(&p, NUMERIC_TOL) {
            Ok(r) => r,
            Err(e) => return Outcome::error(e),
        };
        for id in [
            "resolution.hermitian_projector_not_identity",
            "resolution.eta_projector_not_identity",
        ] {
            separated &= r.get(id).is_some_and(|e| e.pass);
        }
        counted += 1;
    }
    Outcome::new(
        exact.pass && separated && counted > 0,
        format!(
            "{}; projector integrals differ from identity at {counted} points",
            exact.detail
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut worst_phase = 0.0_f64;
    let mut worst_abs = 0.0_f64;
    let mut pass = true;
    for p in grid() {
        let r = match evolution::stability_check(&p, &STABILITY_TIMES, NUMERIC_TOL) {
            Ok(r) => r,
            Err(e) => return Outcome::error(e),
        };
        for e in &r.entries {
            if e.id.starts_with("stability.factor_unimodular") {
                worst_abs = worst_abs.max(e.residual);
                pass &= e.residual <= NUMERIC_TOL;
            } else if e.id.starts_with("stability.graded") {
                pass &= e.pass;
            } else {
                worst_phase = worst_phase.max(e.residual);
                pass &= e.residual <= PHASE_TOL;
            }
        }
    }
    Outcome::new(
        pass,
        format!(
            "factorization, eigenstates, resolution and factor product within {worst_phase:.3e} \
             (phase-rounding tol {PHASE_TOL:.0e}); ||factor| - 1| <= {worst_abs:.3e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let points: Vec<SystemParams> = grid()
        .into_iter()
        .filter(|p| p.delta() == 0.0)
        .chain([SystemParams::new(0.0, 0.0, ONE)])
        .collect();
    let mut worst = 0.0_f64;
    let mut pass = true;
    for p in &points {
        let check = || -> pseudofermion::Result<(f64, bool)> {
            let eta = twolevel::metric_eta(p)?.dist(&Mat2::identity());
            let sharp = twolevel::op_b_sharp(p)?.dist(&twolevel::op_b_dagger(p)?);
            let sys = CoherentSystem::new(p)?;
            let mut r = sys.hermitian_limit_report(HERMITIAN_TOL)?;
            r.extend(sys.resolution_of_identity(HERMITIAN_TOL)?);
            Ok((eta.max(sharp).max(r.max_residual()), r.all_pass()))
        };
        match check() {
            Ok((w, ok)) => {
                worst = worst.max(w);
                pass &= ok && w <= HERMITIAN_TOL;
            }
            Err(e) => return Outcome::error(e),
        }
    }
    Outcome::new(
        pass,
        format!(
            "max residual {worst:.3e} (tol {HERMITIAN_TOL:.0e}) over {} points",
            points.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    worst_over_grid(
        &[
            "symmetry.charge_closed_form",
            "symmetry.charge_commutes",
            "pt.commutes_with_h",
        ],
        NUMERIC_TOL,
        |p| twolevel::symmetry_report(p, NUMERIC_TOL),
    )
}

fn criterion_10() -> Outcome {
    let run = || -> pseudofermion::Result<Outcome> {
        let p = SystemParams::canonical();
        let c0 = Vec2::basis(0);
        let traj = evolution::ode_integrate(&p, c0, 10.0, ODE_DT, Representation::Unprimed)?;
        let mut dev = 0.0_f64;
        for (t, s) in traj.times.iter().zip(&traj.samples) {
            let exact = evolution::propagator(&p, *t, false)?.apply(&c0);
            dev = dev.max(s.unprimed.expect("unprimed").dist_max(&exact));
        }
        let order = evolution::rk4_convergence_order(&p, c0, 10.0, ORDER_DT)?;

        let deg = SystemParams::new(2.0, 0.0, ONE);
        let traj = evolution::ode_integrate(&deg, c0, 10.0, ODE_DT, Representation::Primed)?;
        let mut deg_dev = 0.0_f64;
        for (t, s) in traj.times.iter().zip(&traj.samples) {
            deg_dev = deg_dev.max(
                s.primed
                    .dist_max(&evolution::degenerate_amplitudes(&deg, *t)?),
            );
        }
        Ok(Outcome::new(
            dev <= ODE_TOL && (order - 4.0).abs() <= ORDER_TOL && deg_dev <= ODE_TOL,
            format!(
                "RK4 vs propagator {dev:.3e}, order {order:.3} (dt {ORDER_DT} -> {}), \
                 degenerate closed form {deg_dev:.3e} (tol {ODE_TOL:.0e})",
                ORDER_DT / 2.0
            ),
        ))
    };
    run().unwrap_or_else(Outcome::error)
}

fn criterion_11() -> Outcome {
    let points = [
        SystemParams::new(3.0, 0.0, ONE),
        SystemParams::from_ratio(GAMMA_B, OMEGA_ABS, 1.2, PI / 3.0),
        SystemParams::new(5.0, 1.0, C64::new(0.3, -1.1)),
    ];
    let is_sd = |r: Result<(), Error>| matches!(r, Err(Error::StrongDamping { .. }));
    let mut api_paths = 0;
    let mut pass = true;
    let mut offenders = Vec::new();
    for p in &points {
        let results = [
            twolevel::spectrum(p).map(drop),
            twolevel::op_b(p).map(drop),
            twolevel::op_b_sharp(p).map(drop),
            twolevel::op_b_tilde(p).map(drop),
            twolevel::number_operator(p).map(drop),
            twolevel::eta_plus_decomposition(p).map(drop),
            twolevel::symmetry_operators(p).map(drop),
            twolevel::algebra_report(p, DEFAULT_TOL).map(drop),
            twolevel::spectrum_report(p, DEFAULT_TOL).map(drop),
            twolevel::system_report(p, DEFAULT_TOL).map(drop),
            p.pseudo_rabi().map(drop),
            CoherentSystem::new(p).map(drop),
            coherent::coherent_state(p, coherent::Flavor::Primal).map(drop),
            coherent::displacement(p, coherent::DisplacementKind::D).map(drop),
            coherent::inner_products(p).map(drop),
            coherent::resolution_of_identity(p, DEFAULT_TOL).map(drop),
            coherent::pseudo_unitarity_check(p).map(drop),
            evolution::propagator(p, 1.0, false).map(drop),
            evolution::propagator(p, 1.0, true).map(drop),
            evolution::evolve_cs(p, coherent::Flavor::Dual, 1.0).map(drop),
            evolution::stability_check(p, &[1.0], DEFAULT_TOL).map(drop),
            evolution::ode_check(p, 1.0, 1e-2, ODE_TOL).map(drop),
        ];
        for (i, r) in results.into_iter().enumerate() {
            if !is_sd(r.clone()) {
                offenders.push(format!("api #{i} at {p:?}: {r:?}"));
            }
            api_paths += 1;
        }
    }

    let exe = env!("CARGO_BIN_EXE_pfcs");
    let mut cli_runs = 0;
    for sub in ["verify", "evolve", "ode-check"] {
        let out = Command::new(exe)
            .args([sub, "--gamma-a", "3", "--gamma-b", "0", "--omega-re", "1"])
            .args(if sub == "verify" {
                vec![]
            } else {
                vec!["--t-max", "1", "--dt", "0.01"]
            })
            .output();
        let ok = match out {
            Ok(o) => {
                let stdout = String::from_utf8_lossy(&o.stdout);
                o.status.code() == Some(2) && stdout.contains("\"kind\": \"StrongDamping\"")
            }
            Err(_) => false,
        };
        if !ok {
            offenders.push(format!("cli {sub}"));
        }
        cli_runs += 1;
    }
    pass &= offenders.is_empty();
    Outcome::new(
        pass,
        if offenders.is_empty() {
            format!("StrongDamping from {api_paths} API calls and exit code 2 from {cli_runs} CLI commands")
        } else {
            format!("not rejected: {}", offenders.join("; "))
        },
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("pseudo-fermion algebra on the grid", criterion_1),
        ("factorization and pseudo-Hermiticity", criterion_2),
        (
            "biorthonormality, completeness, metric decomposition",
            criterion_3,
        ),
        ("displacement expansion and pseudo-unitarity", criterion_4),
        ("coherent-state eigenvalue equations", criterion_5),
        ("bi-overcompleteness and overlaps", criterion_6),
        ("stability of the time evolution", criterion_7),
        ("Hermitian limit", criterion_8),
        ("charge and PT operators", criterion_9),
        ("ODE oracle", criterion_10),
        ("strong-damping regime policy", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

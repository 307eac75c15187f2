//! Time evolution: closed-form propagators, evolution of both coherent-state
//! families, the amplitudes at `Ω = 0`, and a fixed-step RK4 integrator for
//! the bare amplitude equation `i dC'/dt = M C'` with `M = H - iΓ`.
//!
//! The bare amplitudes `C'` carry the mean decay; `C = e^{Γt} C'` evolves
//! with `e^{-iHt}`.

use serde::{Deserialize, Serialize};

use crate::coherent::{CoherentState, CoherentSystem, Flavor};
use crate::error::{Error, Result};
use crate::graded::{
    gop_apply, gv_dagger, gv_pair, BasisKind, GradedOperator, GradedVector, PairingTable,
};
use crate::linalg::{Mat2, Vec2, C64, I, ONE};
use crate::report::CheckReport;
use crate::twolevel::{self, Regime, SystemParams};

/// Below this value of `|Ω t|` the propagator uses its Taylor expansion.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// Tolerance for identities that are exact except for rounding in the
/// evaluated phases `e^{±iEt}`.
pub const PHASE_TOL: f64 = 1e-14;

/// Default RK4 step.
pub const DEFAULT_DT: f64 = 1e-3;

/// Coarse step used to measure the RK4 convergence order. At the default
/// step the global error is already at rounding level.
pub const ORDER_DT: f64 = 0.1;

/// `exp(-i h t)` for a traceless `h`, using `h² = -det(h)·1`.
///
/// Works for any complex `√(-det h)`, so it also covers strong damping.
fn exp_traceless(h: &Mat2, t: f64) -> Mat2 {
    let half_freq = (-h.det()).sqrt();
    let x = half_freq * t;
    let (c, s_over) = if x.norm() < SERIES_THRESHOLD {
        let x2 = x * x;
        (ONE - x2 / 2.0, (ONE - x2 / 6.0) * t)
    } else {
        (x.cos(), x.sin() / half_freq)
    };
    Mat2::identity().scale(c) - h.scale(I * s_over)
}

/// `exp(-iHt)`, or `exp(-iH†t)` when `dual` is set.
///
/// Uses `cos(Ωt/2) - i sin(Ωt/2)(2H/Ω)` and reduces to `1 - iHt` at `Ω = 0`.
pub fn propagator(p: &SystemParams, t: f64, dual: bool) -> Result<Mat2> {
    if p.regime()? == Regime::StrongDamping {
        return Err(p.strong_damping());
    }
    let h = twolevel::build_hamiltonian(p)?;
    let h = if dual { h.dagger() } else { h };
    if p.regime()? == Regime::Degenerate {
        return Ok(Mat2::identity() - h.scale(I * t));
    }
    Ok(exp_traceless(&h, t))
}

/// Bare amplitudes `C'(t) = e^{-Γt} e^{-iHt} c0` in every damping regime.
pub fn exact_bare_amplitudes(p: &SystemParams, c0: Vec2, t: f64) -> Result<Vec2> {
    let h = twolevel::build_hamiltonian(p)?;
    Ok(exp_traceless(&h, t)
        .apply(&c0)
        .scale((-p.big_gamma() * t).exp().into()))
}

/// The graded propagator `Σ e^{-iE_i t}|psi_i><phi_i|`, or its dual
/// `Σ e^{-iE_i t}|phi_i><psi_i|`.
pub fn graded_propagator(sys: &CoherentSystem, t: f64, dual: bool) -> GradedOperator {
    let s = &sys.spectrum;
    let phase = |e: f64| (-I * e * t).exp();
    let (left, right) = if dual {
        (BasisKind::Phi, BasisKind::Psi)
    } else {
        (BasisKind::Psi, BasisKind::Phi)
    };
    let zero = C64::new(0.0, 0.0);
    GradedOperator::from_numeric(
        left,
        right,
        &sys.sig,
        [[phase(s.e1), zero], [zero, phase(s.e2)]],
    )
}

/// An evolved coherent state split as `factor · CS(ξ(t))`.
#[derive(Debug, Clone)]
pub struct CsEvolution {
    pub t: f64,
    /// `e^{iEt}`.
    pub factor: C64,
    /// `e^{-2iEt}`, so that `ξ(t) = phase · ξ`.
    pub parameter_phase: C64,
    /// `CS(ξ(t))`.
    pub state: CoherentState,
    /// The propagated state before factoring.
    pub evolved: GradedVector,
    /// Distance between `evolved` and `factor · state`.
    pub residual: f64,
    /// Phase of `ξ(t)` read off the evolved state.
    pub extracted_phase: C64,
}

pub fn evolve_cs_in(sys: &CoherentSystem, flavor: Flavor, t: f64) -> Result<CsEvolution> {
    let xi = sys.xi();
    let initial = sys.coherent_state(flavor)?;
    let u = graded_propagator(sys, t, flavor == Flavor::Dual);
    let evolved = gop_apply(&u, &initial.base)?;

    let energy = sys.spectrum.omega_big / 2.0;
    let factor = (I * energy * t).exp();
    let parameter_phase = (-2.0 * I * energy * t).exp();
    let state = CoherentState::closed_form(flavor, &xi.scale(parameter_phase))?;
    let residual = evolved.max_abs_diff(&state.base.scale(factor));
    let extracted_phase =
        -evolved.comp[1].coefficient(crate::grassmann::Monomial::generator(0)) / factor;
    Ok(CsEvolution {
        t,
        factor,
        parameter_phase,
        state,
        evolved,
        residual,
        extracted_phase,
    })
}

/// Evolves `|ξ>` with `e^{-iHt}` or `|ξ~>` with `e^{-iH†t}`.
pub fn evolve_cs(p: &SystemParams, flavor: Flavor, t: f64) -> Result<CsEvolution> {
    evolve_cs_in(&CoherentSystem::new(p)?, flavor, t)
}

/// Symbolic stability of both families along `t_grid`.
pub fn stability_check(p: &SystemParams, t_grid: &[f64], tol: f64) -> Result<CheckReport> {
    let sys = CoherentSystem::new(p)?;
    let xi = sys.xi();
    let id_psi = GradedOperator::identity(BasisKind::Psi, BasisKind::Phi, &sys.sig);
    let id_phi = GradedOperator::identity(BasisKind::Phi, BasisKind::Psi, &sys.sig);
    let one = crate::grassmann::GrassmannElement::one(&sys.sig);
    let mut r = CheckReport::new(*p);
    for &t in t_grid {
        let tag = format!("[t={t}]");
        let primal = evolve_cs_in(&sys, Flavor::Primal, t)?;
        let dual = evolve_cs_in(&sys, Flavor::Dual, t)?;
        let xi_t = xi.scale(primal.parameter_phase);

        r.push(
            format!("stability.primal_factorization{tag}"),
            "evolved primal state is a phase times a coherent state",
            "exp(-iHt)|xi> = e^{iEt}|xi(t)>",
            primal.residual,
            PHASE_TOL,
        );
        r.push(
            format!("stability.dual_factorization{tag}"),
            "evolved dual state is a phase times a coherent state",
            "exp(-iH^dagger t)|xi~> = e^{iEt}|xi~(t)>",
            dual.residual,
            PHASE_TOL,
        );
        r.push(
            format!("stability.parameter_law{tag}"),
            "Grassmann parameter rotates with twice the energy",
            "xi(t) = e^{-2iEt} xi",
            (primal.extracted_phase - primal.parameter_phase).norm(),
            PHASE_TOL,
        );
        let lhs = gop_apply(&sys.ladder.b, &primal.evolved)?;
        r.push(
            format!("stability.primal_eigenstate{tag}"),
            "evolved primal state stays an eigenstate of b",
            "b|xi;t> = xi(t)|xi;t>",
            lhs.max_abs_diff(&primal.evolved.left_mul(&xi_t)),
            PHASE_TOL,
        );
        let lhs = gop_apply(&sys.ladder.b_tilde, &dual.evolved)?;
        r.push(
            format!("stability.dual_eigenstate{tag}"),
            "evolved dual state stays an eigenstate of b~",
            "b~|xi~;t> = xi(t)|xi~;t>",
            lhs.max_abs_diff(&dual.evolved.left_mul(&xi_t)),
            PHASE_TOL,
        );
        let overlap = gv_pair(
            &gv_dagger(&primal.evolved),
            &dual.evolved,
            &PairingTable::biorthonormal(),
        )?;
        r.push(
            format!("stability.bi_normalization{tag}"),
            "evolved states stay bi-normalized",
            "<t;xi|xi~;t> = 1",
            overlap.max_abs_diff(&one),
            PHASE_TOL,
        );
        let p_state = CoherentState {
            base: primal.evolved.clone(),
            ..primal.state.clone()
        };
        let d_state = CoherentState {
            base: dual.evolved.clone(),
            ..dual.state.clone()
        };
        let (mixed, mixed_rev) = sys.resolution_integrals(&p_state, &d_state)?;
        r.push(
            format!("stability.resolution{tag}"),
            "evolved mixed projector integrates to the identity",
            "int dxi* dxi |xi;t><t;xi~| = 1",
            mixed.max_abs_diff(&id_psi),
            PHASE_TOL,
        );
        r.push(
            format!("stability.resolution_reversed{tag}"),
            "evolved reversed projector integrates to the identity",
            "int dxi* dxi |xi~;t><t;xi| = 1",
            mixed_rev.max_abs_diff(&id_phi),
            PHASE_TOL,
        );
        r.push(
            format!("stability.factor_product{tag}"),
            "overall phases of the two families cancel",
            "N*(t) N~(t) = 1",
            (primal.factor.conj() * dual.factor - ONE).norm(),
            PHASE_TOL,
        );
        r.push(
            format!("stability.factor_unimodular{tag}"),
            "overall factor is a pure phase",
            "|e^{iEt}| = 1",
            (primal.factor.norm() - 1.0).abs(),
            PHASE_TOL,
        );
        let basis = sys.basis();
        for (dual_flag, id, rel) in [
            (
                false,
                "stability.graded_propagator",
                "sum_i e^{-iE_i t}|psi_i><phi_i| = exp(-iHt)",
            ),
            (
                true,
                "stability.graded_dual_propagator",
                "sum_i e^{-iE_i t}|phi_i><psi_i| = exp(-iH^dagger t)",
            ),
        ] {
            let g = basis.operator_body(&graded_propagator(&sys, t, dual_flag));
            r.push(
                format!("{id}{tag}"),
                "spectral graded propagator agrees with the closed form",
                rel,
                g.dist(&propagator(p, t, dual_flag)?),
                tol,
            );
        }
    }
    Ok(r)
}

/// Closed-form propagator identities at the given times.
pub fn propagator_report(p: &SystemParams, times: &[f64], tol: f64) -> Result<CheckReport> {
    let s = twolevel::spectrum(p)?;
    let eta = twolevel::metric_eta(p)?;
    let eta_inv = eta
        .inverse()
        .ok_or_else(|| Error::Argument("metric is singular".into()))?;
    let mut r = CheckReport::new(*p);
    for &t in times {
        let tag = format!("[t={t}]");
        let u = propagator(p, t, false)?;
        let ud = propagator(p, t, true)?;
        r.push(
            format!("propagator.inverse{tag}"),
            "backward propagation inverts forward propagation",
            "exp(-iHt) exp(iHt) = 1",
            (u * propagator(p, -t, false)?).dist(&Mat2::identity()),
            tol,
        );
        r.push(
            format!("propagator.group{tag}"),
            "propagators compose additively in time",
            "exp(-iH(t1+t2)) = exp(-iHt1) exp(-iHt2)",
            propagator(p, 1.5 * t, false)?.dist(&(u * propagator(p, 0.5 * t, false)?)),
            tol,
        );
        let spectral = s
            .psi()
            .iter()
            .zip([s.e1, s.e2])
            .map(|(v, e)| u.apply(v).dist_max(&v.scale((-I * e * t).exp())))
            .fold(0.0, f64::max);
        r.push(
            format!("propagator.spectral{tag}"),
            "eigenvectors acquire their phases",
            "exp(-iHt)|psi_i> = e^{-iE_i t}|psi_i>",
            spectral,
            tol,
        );
        let spectral_dual = s
            .phi()
            .iter()
            .zip([s.e1, s.e2])
            .map(|(v, e)| ud.apply(v).dist_max(&v.scale((-I * e * t).exp())))
            .fold(0.0, f64::max);
        r.push(
            format!("propagator.dual_spectral{tag}"),
            "dual eigenvectors acquire their phases",
            "exp(-iH^dagger t)|phi_i> = e^{-iE_i t}|phi_i>",
            spectral_dual,
            tol,
        );
        r.push(
            format!("propagator.intertwining{tag}"),
            "metric intertwines the two propagators",
            "eta exp(-iHt) eta^-1 = exp(-iH^dagger t)",
            (eta * u * eta_inv).dist(&ud),
            tol,
        );
    }
    Ok(r)
}

/// `(1 - δt/2, -iωt/2) e^{-Γt}`, the solution at `Ω = 0` starting from the
/// upper level.
pub fn degenerate_amplitudes(p: &SystemParams, t: f64) -> Result<Vec2> {
    require_degenerate(p)?;
    let decay = (-p.big_gamma() * t).exp();
    Ok(Vec2::new(
        C64::from(1.0 - p.delta() * t / 2.0),
        -I * p.omega() * (t / 2.0),
    )
    .scale(decay.into()))
}

/// The alternative form `((1 - δt) e^{-Γt}, (iωt/2) e^{-Γt})`. It does not
/// solve the amplitude equation and is kept for comparison only.
pub fn quoted_degenerate_amplitudes(p: &SystemParams, t: f64) -> Result<Vec2> {
    require_degenerate(p)?;
    let decay = (-p.big_gamma() * t).exp();
    Ok(Vec2::new(C64::from(1.0 - p.delta() * t), I * p.omega() * (t / 2.0)).scale(decay.into()))
}

fn require_degenerate(p: &SystemParams) -> Result<()> {
    match p.regime()? {
        Regime::Degenerate => Ok(()),
        _ => {
            let gap = p.omega().norm_sqr() - p.delta() * p.delta();
            Err(Error::NotDegenerate(gap.abs().sqrt()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// Bare amplitudes `C'`.
    Primed,
    /// Bare amplitudes plus `C = e^{Γt} C'`.
    Unprimed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorSettings {
    pub method: &'static str,
    pub dt: f64,
    pub t_max: f64,
    pub representation: Representation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryMeta {
    pub params: SystemParams,
    pub settings: IntegratorSettings,
}

/// Amplitudes at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSample {
    pub primed: Vec2,
    pub unprimed: Option<Vec2>,
}

/// Samples on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub samples: Vec<S>,
    pub meta: TrajectoryMeta,
}

/// Coefficients of an evolved primal coherent state
/// `factor · ((1 - ½ξ(t)*ξ(t))|psi1> - ξ(t)|psi2>)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentSnapshot {
    pub factor: C64,
    /// Coefficient of `ξ` in `ξ(t)`.
    pub parameter: C64,
    pub residual: f64,
}

/// `n + 1` times `0, dt, ..., t_max`; the last step is shortened if `dt`
/// does not divide `t_max`.
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Argument(format!("dt must be positive, got {dt}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::Argument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let ratio = t_max / dt;
    let steps = (ratio - 1e-9 * ratio.max(1.0)).ceil().max(1.0) as usize;
    let mut times: Vec<f64> = (0..steps).map(|k| k as f64 * dt).collect();
    times.push(t_max);
    Ok(times)
}

fn rk4_step(m: &Mat2, c: Vec2, h: f64) -> Vec2 {
    let f = |v: &Vec2| m.apply(v).scale(-I);
    let k1 = f(&c);
    let k2 = f(&(c + k1.scale((h / 2.0).into())));
    let k3 = f(&(c + k2.scale((h / 2.0).into())));
    let k4 = f(&(c + k3.scale(h.into())));
    c + (k1 + k2.scale(2.0.into()) + k3.scale(2.0.into()) + k4).scale((h / 6.0).into())
}

/// Fixed-step RK4 for `i dC'/dt = M C'`. Valid in every damping regime.
pub fn ode_integrate(
    p: &SystemParams,
    c0: Vec2,
    t_max: f64,
    dt: f64,
    representation: Representation,
) -> Result<Trajectory<AmplitudeSample>> {
    let times = time_grid(t_max, dt)?;
    let m = twolevel::decay_matrix(p)?;
    let gamma = p.big_gamma();
    let sample = |t: f64, c: Vec2| AmplitudeSample {
        primed: c,
        unprimed: match representation {
            Representation::Primed => None,
            Representation::Unprimed => Some(c.scale((gamma * t).exp().into())),
        },
    };
    let mut samples = Vec::with_capacity(times.len());
    let mut c = c0;
    samples.push(sample(0.0, c));
    for w in times.windows(2) {
        c = rk4_step(&m, c, w[1] - w[0]);
        samples.push(sample(w[1], c));
    }
    Ok(Trajectory {
        times,
        samples,
        meta: TrajectoryMeta {
            params: *p,
            settings: IntegratorSettings {
                method: "rk4",
                dt,
                t_max,
                representation,
            },
        },
    })
}

/// Evolved primal coherent state sampled on `0, dt, ..., t_max`.
pub fn coherent_trajectory(
    p: &SystemParams,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory<CoherentSnapshot>> {
    let times = time_grid(t_max, dt)?;
    let sys = CoherentSystem::new(p)?;
    let samples = times
        .iter()
        .map(|&t| {
            evolve_cs_in(&sys, Flavor::Primal, t).map(|e| CoherentSnapshot {
                factor: e.factor,
                parameter: e.extracted_phase,
                residual: e.residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        times,
        samples,
        meta: TrajectoryMeta {
            params: *p,
            settings: IntegratorSettings {
                method: "spectral",
                dt,
                t_max,
                representation: Representation::Primed,
            },
        },
    })
}

/// Largest max-norm deviation of the RK4 bare amplitudes from the exact
/// solution.
pub fn max_deviation_from_exact(traj: &Trajectory<AmplitudeSample>, c0: Vec2) -> Result<f64> {
    let p = &traj.meta.params;
    traj.times
        .iter()
        .zip(&traj.samples)
        .try_fold(0.0_f64, |acc, (&t, s)| {
            Ok(acc.max(s.primed.dist_max(&exact_bare_amplitudes(p, c0, t)?)))
        })
}

/// `log2(err(dt) / err(dt/2))` for the global RK4 error over `[0, t_max]`.
pub fn rk4_convergence_order(p: &SystemParams, c0: Vec2, t_max: f64, dt: f64) -> Result<f64> {
    let coarse = ode_integrate(p, c0, t_max, dt, Representation::Primed)?;
    let fine = ode_integrate(p, c0, t_max, dt / 2.0, Representation::Primed)?;
    let e1 = max_deviation_from_exact(&coarse, c0)?;
    let e2 = max_deviation_from_exact(&fine, c0)?;
    Ok((e1 / e2).log2())
}

/// RK4 against the closed forms, starting from the upper level. The
/// comparison needs a real or vanishing `Ω`; [`ode_integrate`] itself does
/// not.
pub fn ode_check(p: &SystemParams, t_max: f64, dt: f64, tol: f64) -> Result<CheckReport> {
    let regime = p.regime()?;
    if regime == Regime::StrongDamping {
        return Err(p.strong_damping());
    }
    let c0 = Vec2::basis(0);
    let traj = ode_integrate(p, c0, t_max, dt, Representation::Unprimed)?;
    let mut r = CheckReport::new(*p);

    let mut dev = 0.0_f64;
    for (&t, s) in traj.times.iter().zip(&traj.samples) {
        let exact = propagator(p, t, false)?.apply(&c0);
        dev = dev.max(s.unprimed.expect("unprimed requested").dist_max(&exact));
    }
    r.push(
        "ode.vs_propagator",
        "RK4 amplitudes against the closed-form propagator",
        "C(t) = e^{Gamma t} C'(t) = exp(-iHt) C(0)",
        dev,
        tol,
    );
    if regime == Regime::Degenerate {
        let mut dev = 0.0_f64;
        for (&t, s) in traj.times.iter().zip(&traj.samples) {
            dev = dev.max(s.primed.dist_max(&degenerate_amplitudes(p, t)?));
        }
        r.push(
            "ode.degenerate_closed_form",
            "RK4 bare amplitudes against the Omega = 0 solution",
            "C'(t) = (1 - delta t/2, -i omega t/2) e^{-Gamma t}",
            dev,
            tol,
        );
    }
    let order = rk4_convergence_order(p, c0, t_max, ORDER_DT.min(t_max / 8.0))?;
    r.push(
        "ode.convergence_order",
        "measured RK4 order under step halving",
        "log2(err(dt)/err(dt/2)) = 4",
        (order - 4.0).abs(),
        0.3,
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn canonical() -> SystemParams {
        SystemParams::canonical()
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        assert_eq!(
            propagator(&canonical(), 0.0, false).unwrap(),
            Mat2::identity()
        );
        assert_eq!(
            propagator(&canonical(), 0.0, true).unwrap(),
            Mat2::identity()
        );
    }

    #[test]
    fn propagator_identities() {
        let r = propagator_report(&canonical(), &[0.0, 0.3, 1.7, 10.0], TOL).unwrap();
        let failures: Vec<_> = r.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn series_branch_matches_trig_branch() {
        let p = canonical();
        let h = twolevel::build_hamiltonian(&p).unwrap();
        let t = 2.4e-6;
        let series = exp_traceless(&h, t);
        let trig =
            Mat2::identity().scale((0.4 * t).cos().into()) - h.scale(I * ((0.4 * t).sin() / 0.4));
        assert!(series.dist(&trig) < 1e-15);
    }

    #[test]
    fn strong_damping_rejected_by_propagator() {
        let p = SystemParams::new(3.0, 0.0, ONE);
        assert!(matches!(
            propagator(&p, 1.0, false),
            Err(Error::StrongDamping { .. })
        ));
        assert!(matches!(
            evolve_cs(&p, Flavor::Primal, 1.0),
            Err(Error::StrongDamping { .. })
        ));
    }

    #[test]
    fn degenerate_propagator_is_linear() {
        let p = SystemParams::new(2.0, 0.0, ONE);
        let h = twolevel::build_hamiltonian(&p).unwrap();
        assert_eq!(
            propagator(&p, 2.0, false).unwrap(),
            Mat2::identity() - h.scale(I * 2.0)
        );
    }

    #[test]
    fn evolved_primal_factorizes() {
        let e = evolve_cs(&canonical(), Flavor::Primal, 0.7).unwrap();
        assert!((e.factor - (I * 0.4 * 0.7).exp()).norm() < 1e-16);
        assert!((e.parameter_phase - (-I * 0.8 * 0.7).exp()).norm() < 1e-16);
        assert!(e.residual < PHASE_TOL);
        assert!((e.factor.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evolution_at_zero_is_trivial() {
        let sys = CoherentSystem::new(&canonical()).unwrap();
        for flavor in [Flavor::Primal, Flavor::Dual] {
            let e = evolve_cs_in(&sys, flavor, 0.0).unwrap();
            assert_eq!(e.factor, ONE);
            assert_eq!(e.residual, 0.0);
            assert_eq!(e.evolved, sys.coherent_state(flavor).unwrap().base);
        }
    }

    #[test]
    fn stability_on_grid() {
        let r = stability_check(&canonical(), &[0.0, 0.7, 3.1], TOL).unwrap();
        let failures: Vec<_> = r.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let hermitian = SystemParams::new(0.5, 0.5, ONE);
        assert!(stability_check(&hermitian, &[0.0, 2.0], TOL)
            .unwrap()
            .all_pass());
    }

    #[test]
    fn degenerate_amplitudes_examples() {
        let p = SystemParams::new(2.0, 0.0, ONE);
        assert_eq!(degenerate_amplitudes(&p, 0.0).unwrap(), Vec2::basis(0));
        let q = quoted_degenerate_amplitudes(&p, 1.0).unwrap();
        let e = (-0.5f64).exp();
        assert!(q.dist_max(&Vec2::new(C64::new(0.0, 0.0), C64::new(0.0, 0.5 * e))) < 1e-16);
        let d = degenerate_amplitudes(&p, 1.0).unwrap();
        assert!(d.dist_max(&Vec2::new(C64::new(0.5 * e, 0.0), C64::new(0.0, -0.5 * e))) < 1e-16);
        assert!(matches!(
            degenerate_amplitudes(&canonical(), 1.0),
            Err(Error::NotDegenerate(_))
        ));
    }

    #[test]
    fn time_grid_shapes() {
        assert_eq!(time_grid(1.0, 0.5).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(time_grid(1.0, 0.4).unwrap(), vec![0.0, 0.4, 0.8, 1.0]);
        assert_eq!(time_grid(0.1, 1.0).unwrap(), vec![0.0, 0.1]);
        assert!(matches!(time_grid(1.0, 0.0), Err(Error::Argument(_))));
        assert!(matches!(time_grid(-1.0, 0.1), Err(Error::Argument(_))));
        assert_eq!(time_grid(10.0, 1e-3).unwrap().len(), 10_001);
    }
}

//! The damped two-level atom as a pseudo-Hermitian system.
//!
//! After removing the mean decay `Γ = (γa + γb)/4`, the Hamiltonian is the
//! traceless matrix `H = ½[[-iδ, ω*], [ω, iδ]]` with `δ = (γa - γb)/2`. For
//! `|ω|² > δ²` its spectrum `±Ω/2`, `Ω = √(|ω|² - δ²)`, is real and `H` is
//! pseudo-Hermitian with respect to a positive metric `η`. The ladder
//! operators `b`, `b#` built from the biorthonormal eigensystem obey the
//! fermion algebra with the pseudo-adjoint `b# = η⁻¹ b† η` in place of `b†`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::NumericBasis;
use crate::linalg::{Mat2, Vec2, C64, I, ONE, ZERO};
use crate::report::CheckReport;

/// Default tolerance for closed-form identities.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Physical inputs: decay rates of the upper and lower level and the complex
/// coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub omega_re: f64,
    pub omega_im: f64,
}

/// Damping regime of a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `|ω|² > δ²`: real spectrum `±Ω/2`.
    RealSpectrum { omega_big: f64 },
    /// `|ω|² = δ²`: `Ω = 0`, `H` nilpotent.
    Degenerate,
    /// `|ω|² < δ²`: imaginary spectrum.
    StrongDamping,
}

impl SystemParams {
    pub fn new(gamma_a: f64, gamma_b: f64, omega: C64) -> Self {
        Self {
            gamma_a,
            gamma_b,
            omega_re: omega.re,
            omega_im: omega.im,
        }
    }

    /// `γa = 1.6, γb = 0.4, ω = 1`, so `δ = 0.6`, `Ω = 0.8`.
    pub fn canonical() -> Self {
        Self::new(1.6, 0.4, ONE)
    }

    /// Parameters with the given `δ/|ω|`, `arg ω` and `|ω|`, keeping `γb`.
    pub fn from_ratio(gamma_b: f64, omega_abs: f64, delta_over_omega: f64, arg_omega: f64) -> Self {
        let delta = delta_over_omega * omega_abs;
        Self::new(
            gamma_b + 2.0 * delta,
            gamma_b,
            C64::from_polar(omega_abs, arg_omega),
        )
    }

    pub fn omega(&self) -> C64 {
        C64::new(self.omega_re, self.omega_im)
    }

    pub fn omega_abs(&self) -> f64 {
        self.omega().norm()
    }

    pub fn delta(&self) -> f64 {
        (self.gamma_a - self.gamma_b) / 2.0
    }

    /// Mean decay rate `Γ = (γa + γb)/4`.
    pub fn big_gamma(&self) -> f64 {
        (self.gamma_a + self.gamma_b) / 4.0
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.gamma_a, self.gamma_b, self.omega_re, self.omega_im]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::Argument("parameters must be finite".into()));
        }
        if self.gamma_a < 0.0 || self.gamma_b < 0.0 {
            return Err(Error::Argument(format!(
                "decay rates must be nonnegative (gamma_a = {}, gamma_b = {})",
                self.gamma_a, self.gamma_b
            )));
        }
        if self.omega() == ZERO {
            return Err(Error::ZeroCoupling);
        }
        Ok(())
    }

    pub fn regime(&self) -> Result<Regime> {
        self.validate()?;
        let omega_sq = self.omega().norm_sqr();
        let delta_sq = self.delta() * self.delta();
        Ok(if omega_sq > delta_sq {
            Regime::RealSpectrum {
                omega_big: (omega_sq - delta_sq).sqrt(),
            }
        } else if omega_sq == delta_sq {
            Regime::Degenerate
        } else {
            Regime::StrongDamping
        })
    }

    /// `Ω`, defined only for `|ω|² > δ²`.
    pub fn pseudo_rabi(&self) -> Result<f64> {
        match self.regime()? {
            Regime::RealSpectrum { omega_big } => Ok(omega_big),
            Regime::Degenerate => Err(Error::DegenerateOmega(self.omega().norm_sqr())),
            Regime::StrongDamping => Err(self.strong_damping()),
        }
    }

    pub(crate) fn strong_damping(&self) -> Error {
        Error::StrongDamping {
            omega_sq: self.omega().norm_sqr(),
            delta_sq: self.delta() * self.delta(),
        }
    }
}

/// `H = ½[[-iδ, ω*], [ω, iδ]]`.
pub fn build_hamiltonian(p: &SystemParams) -> Result<Mat2> {
    p.validate()?;
    let w = p.omega();
    let d = p.delta();
    Ok(Mat2::new(C64::new(0.0, -d), w.conj(), w, C64::new(0.0, d)).scale_real(0.5))
}

/// Generator of the bare amplitude equation `i dC'/dt = M C'`,
/// `M = ½[[-iγa, ω*], [ω, -iγb]] = H - iΓ`.
pub fn decay_matrix(p: &SystemParams) -> Result<Mat2> {
    p.validate()?;
    let w = p.omega();
    Ok(Mat2::new(
        C64::new(0.0, -p.gamma_a),
        w.conj(),
        w,
        C64::new(0.0, -p.gamma_b),
    )
    .scale_real(0.5))
}

/// Biorthonormal eigensystem of `H` in the real-spectrum regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub e1: f64,
    pub e2: f64,
    pub omega_big: f64,
    pub psi1: Vec2,
    pub psi2: Vec2,
    pub phi1: Vec2,
    pub phi2: Vec2,
}

impl Spectrum {
    pub fn psi(&self) -> [Vec2; 2] {
        [self.psi1, self.psi2]
    }

    pub fn phi(&self) -> [Vec2; 2] {
        [self.phi1, self.phi2]
    }

    pub fn numeric_basis(&self) -> NumericBasis {
        NumericBasis {
            psi: self.psi(),
            phi: self.phi(),
        }
    }

    /// `<psi_i|psi_j>`.
    pub fn gram_psi(&self) -> [[C64; 2]; 2] {
        gram(&self.psi())
    }

    /// `<phi_i|phi_j>`.
    pub fn gram_phi(&self) -> [[C64; 2]; 2] {
        gram(&self.phi())
    }

    /// `Σ_i |psi_i><phi_i|`.
    pub fn completeness(&self) -> Mat2 {
        self.psi1.outer(&self.phi1) + self.psi2.outer(&self.phi2)
    }
}

fn gram(v: &[Vec2; 2]) -> [[C64; 2]; 2] {
    [
        [v[0].dot(&v[0]), v[0].dot(&v[1])],
        [v[1].dot(&v[0]), v[1].dot(&v[1])],
    ]
}

/// Eigenvalues `∓Ω/2` and the eigenvectors of `H` and `H†`, evaluated
/// literally with principal square roots.
pub fn spectrum(p: &SystemParams) -> Result<Spectrum> {
    let omega_big = p.pseudo_rabi()?;
    let w = p.omega();
    let u = w.conj() / w.norm();
    let d = p.delta();
    let plus = C64::new(omega_big, d).sqrt();
    let minus = C64::new(omega_big, -d).sqrt();
    // Ω is real here, so Ω* = Ω in the dual vectors.
    let norm = 1.0 / (2.0 * omega_big).sqrt();
    let psi1 = Vec2::new(-u * plus, minus).scale(norm.into());
    let psi2 = Vec2::new(u * minus, plus).scale(norm.into());
    let phi1 = Vec2::new(-u * minus, plus).scale(norm.into());
    let phi2 = Vec2::new(u * plus, minus).scale(norm.into());
    Ok(Spectrum {
        e1: -omega_big / 2.0,
        e2: omega_big / 2.0,
        omega_big,
        psi1,
        psi2,
        phi1,
        phi2,
    })
}

/// `η = [[1, iδω*/|ω|²], [-iδω/|ω|², 1]]`.
pub fn metric_eta(p: &SystemParams) -> Result<Mat2> {
    p.validate()?;
    let w = p.omega();
    let d = p.delta();
    let off = I * w.conj() * (d / w.norm_sqr());
    Ok(Mat2::new(ONE, off, off.conj(), ONE))
}

/// `(Ω/|ω|) Σ |phi_i><phi_i|` and its distance from `η`.
pub fn eta_plus_decomposition(p: &SystemParams) -> Result<(Mat2, f64)> {
    let s = spectrum(p)?;
    let eta_plus = s.phi1.outer(&s.phi1) + s.phi2.outer(&s.phi2);
    let scaled = eta_plus.scale_real(s.omega_big / p.omega_abs());
    Ok((scaled, scaled.dist(&metric_eta(p)?)))
}

fn ladder_parts(p: &SystemParams) -> Result<(f64, f64, C64, C64)> {
    let omega_big = p.pseudo_rabi()?;
    let w = p.omega();
    Ok((omega_big, w.norm(), w, C64::new(omega_big, p.delta())))
}

/// Annihilation operator `b`, closed form.
pub fn op_b(p: &SystemParams) -> Result<Mat2> {
    let (om, wa, w, plus) = ladder_parts(p)?;
    let m = Mat2::new(
        C64::from(-wa),
        -w.conj() * plus / wa,
        w * plus.conj() / wa,
        C64::from(wa),
    );
    Ok(m.scale_real(1.0 / (2.0 * om)))
}

/// Hermitian adjoint `b†`, closed form.
pub fn op_b_dagger(p: &SystemParams) -> Result<Mat2> {
    let (om, wa, w, plus) = ladder_parts(p)?;
    let m = Mat2::new(
        C64::from(-wa),
        w.conj() * plus / wa,
        -w * plus.conj() / wa,
        C64::from(wa),
    );
    Ok(m.scale_real(1.0 / (2.0 * om)))
}

/// Pseudo-adjoint `b#`, closed form.
pub fn op_b_sharp(p: &SystemParams) -> Result<Mat2> {
    let (om, wa, w, plus) = ladder_parts(p)?;
    let m = Mat2::new(
        C64::from(-wa),
        w.conj() * plus.conj() / wa,
        -w * plus / wa,
        C64::from(wa),
    );
    Ok(m.scale_real(1.0 / (2.0 * om)))
}

/// Pseudo-adjoint `b# = η⁻¹ b† η` computed from the metric.
pub fn op_b_sharp_from_metric(p: &SystemParams) -> Result<Mat2> {
    let eta = metric_eta(p)?;
    let eta_inv = invert_metric(&eta)?;
    Ok(eta_inv * op_b(p)?.dagger() * eta)
}

/// `b̃ = η b η⁻¹`, annihilating `|phi_1>`.
pub fn op_b_tilde(p: &SystemParams) -> Result<Mat2> {
    let eta = metric_eta(p)?;
    Ok(eta * op_b(p)? * invert_metric(&eta)?)
}

/// `b̃#' = η' ⁻¹ b̃† η'` with `η' = η⁻¹`.
pub fn op_b_tilde_sharp_prime(p: &SystemParams) -> Result<Mat2> {
    let eta = metric_eta(p)?;
    Ok(eta * op_b_tilde(p)?.dagger() * invert_metric(&eta)?)
}

fn invert_metric(eta: &Mat2) -> Result<Mat2> {
    eta.inverse()
        .ok_or_else(|| Error::Argument("metric is singular".into()))
}

/// `N = b# b`.
pub fn number_operator(p: &SystemParams) -> Result<Mat2> {
    Ok(op_b_sharp(p)? * op_b(p)?)
}

/// Parity, generalized parity, charge conjugation and the unitary part of
/// the generalized time reversal `T = U K₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryOperators {
    pub parity: Mat2,
    pub parity_gen: Mat2,
    pub charge: Mat2,
    pub u_t: Mat2,
}

impl SymmetryOperators {
    /// `P_gen = [[0, -ω*/|ω|], [-ω/|ω|, 0]]`.
    pub fn parity_gen_closed_form(p: &SystemParams) -> Mat2 {
        let w = p.omega();
        let u = w / w.norm();
        Mat2::new(ZERO, -u.conj(), -u, ZERO)
    }
}

pub fn symmetry_operators(p: &SystemParams) -> Result<SymmetryOperators> {
    let s = spectrum(p)?;
    let w = p.omega();
    let phase = w / w.norm();
    Ok(SymmetryOperators {
        parity: Mat2::new(ZERO, ONE, ONE, ZERO),
        parity_gen: s.phi1.outer(&s.phi1) - s.phi2.outer(&s.phi2),
        charge: s.psi1.outer(&s.phi1) - s.psi2.outer(&s.phi2),
        u_t: Mat2::diag(phase, phase),
    })
}

/// `P K₀ H K₀⁻¹ P⁻¹ = H` and `(PT)² = 1` with `T = K₀`.
pub fn pt_commutation_check(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    let h = build_hamiltonian(p)?;
    let parity = Mat2::new(ZERO, ONE, ONE, ZERO);
    let mut report = CheckReport::new(*p);
    report.push(
        "pt.commutes_with_h",
        "PT symmetry with P = sigma_x and T = complex conjugation",
        "P conj(H) P^-1 = H",
        (parity * h.conj() * parity).dist(&h),
        tol,
    );
    // PT acts on vectors as v -> P conj(v); apply it twice to basis vectors
    // and to i·e0 to catch antilinear phase errors.
    let pt = |v: &Vec2| parity.apply(&v.conj());
    let probes = [Vec2::basis(0), Vec2::basis(1), Vec2::basis(0).scale(I)];
    let worst = probes
        .iter()
        .map(|v| pt(&pt(v)).dist_max(v))
        .fold(0.0, f64::max);
    report.push(
        "pt.involution",
        "PT squares to the identity",
        "(PT)^2 = 1",
        worst,
        tol,
    );
    Ok(report)
}

/// Fermion-algebra, factorization and pseudo-Hermiticity residuals.
pub fn algebra_report(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    let s = spectrum(p)?;
    let h = build_hamiltonian(p)?;
    let eta = metric_eta(p)?;
    let eta_inv = invert_metric(&eta)?;
    let b = op_b(p)?;
    let bs = op_b_sharp(p)?;
    let n = bs * b;
    let id = Mat2::identity();
    let mut r = CheckReport::new(*p);

    r.push(
        "algebra.b_nilpotent",
        "b squares to zero",
        "b^2 = 0",
        (b * b).norm(),
        tol,
    );
    r.push(
        "algebra.b_sharp_nilpotent",
        "b# squares to zero",
        "b#^2 = 0",
        (bs * bs).norm(),
        tol,
    );
    r.push(
        "algebra.anticommutator",
        "pseudo-fermion anticommutator",
        "{b, b#} = 1",
        b.anticommutator(&bs).dist(&id),
        tol,
    );
    r.push(
        "ladder.b_annihilates_ground",
        "b annihilates the ground state",
        "b|psi1> = 0",
        b.apply(&s.psi1).norm(),
        tol,
    );
    r.push(
        "ladder.b_lowers",
        "b lowers the excited state",
        "b|psi2> = |psi1>",
        (b.apply(&s.psi2) - s.psi1).norm(),
        tol,
    );
    r.push(
        "ladder.b_sharp_annihilates_excited",
        "b# annihilates the excited state",
        "b#|psi2> = 0",
        bs.apply(&s.psi2).norm(),
        tol,
    );
    r.push(
        "ladder.b_sharp_raises",
        "b# raises the ground state",
        "b#|psi1> = |psi2>",
        (bs.apply(&s.psi1) - s.psi2).norm(),
        tol,
    );
    r.push(
        "number.anticommutator_b",
        "number operator anticommutes into b",
        "{N, b} = b",
        n.anticommutator(&b).dist(&b),
        tol,
    );
    r.push(
        "number.anticommutator_b_sharp",
        "number operator anticommutes into b#",
        "{N, b#} = b#",
        n.anticommutator(&bs).dist(&bs),
        tol,
    );
    r.push(
        "number.idempotent",
        "number operator is a projector",
        "N^2 = N",
        (n * n).dist(&n),
        tol,
    );
    r.push(
        "factorization.hamiltonian",
        "oscillator factorization of H",
        "H = Omega (b# b - 1/2)",
        h.dist(&(n - id.scale_real(0.5)).scale_real(s.omega_big)),
        tol,
    );
    r.push(
        "metric.pseudo_hermiticity",
        "H is eta-pseudo-Hermitian",
        "H^dagger = eta H eta^-1",
        h.dagger().dist(&(eta * h * eta_inv)),
        tol,
    );
    r.push(
        "ladder.b_sharp_forms_agree",
        "pseudo-adjoint from the metric matches its closed form",
        "eta^-1 b^dagger eta = b# (closed form)",
        op_b_sharp_from_metric(p)?.dist(&bs),
        tol,
    );
    r.push(
        "ladder.b_dagger_closed_form",
        "closed form of b^dagger is the adjoint of b",
        "b^dagger (closed form) = (b)^dagger",
        op_b_dagger(p)?.dist(&b.dagger()),
        tol,
    );

    let bt = op_b_tilde(p)?;
    let bts = op_b_tilde_sharp_prime(p)?;
    r.push(
        "algebra.tilde_nilpotent",
        "dual annihilator squares to zero",
        "b~^2 = 0",
        (bt * bt).norm(),
        tol,
    );
    r.push(
        "algebra.tilde_sharp_nilpotent",
        "dual creator squares to zero",
        "(b~#')^2 = 0",
        (bts * bts).norm(),
        tol,
    );
    r.push(
        "algebra.tilde_anticommutator",
        "dual pseudo-fermion anticommutator with eta' = eta^-1",
        "b~ b~#' + b~#' b~ = 1",
        bt.anticommutator(&bts).dist(&id),
        tol,
    );
    r.push(
        "ladder.tilde_annihilates_dual_ground",
        "dual annihilator kills |phi1>",
        "b~|phi1> = 0",
        bt.apply(&s.phi1).norm(),
        tol,
    );
    r.push(
        "ladder.tilde_sharp_is_b_dagger",
        "b^dagger is the eta'-adjoint of b~",
        "b~#' = b^dagger",
        bts.dist(&b.dagger()),
        tol,
    );
    r.push(
        "algebra.tilde_anticommutes_b_dagger",
        "dual annihilator anticommutes with b^dagger",
        "{b~, b^dagger} = 1",
        bt.anticommutator(&b.dagger()).dist(&id),
        tol,
    );
    Ok(r)
}

/// Spectrum, biorthonormality, metric and `η₊` residuals.
pub fn spectrum_report(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    let s = spectrum(p)?;
    let h = build_hamiltonian(p)?;
    let eta = metric_eta(p)?;
    let id = Mat2::identity();
    let mut r = CheckReport::new(*p);

    r.push(
        "hamiltonian.traceless",
        "H is traceless",
        "tr H = 0",
        h.trace().norm(),
        tol,
    );
    let det_expected = (p.delta().powi(2) - p.omega().norm_sqr()) / 4.0;
    r.push(
        "hamiltonian.determinant",
        "determinant of H",
        "det H = (delta^2 - |omega|^2)/4",
        (h.det() - det_expected).norm(),
        tol,
    );
    r.push(
        "hamiltonian.square",
        "traceless 2x2 identity",
        "H^2 = (Omega^2/4) 1",
        (h * h).dist(&id.scale_real(s.omega_big.powi(2) / 4.0)),
        tol,
    );
    let eig = [(s.e1, s.psi1, s.phi1), (s.e2, s.psi2, s.phi2)]
        .iter()
        .map(|(e, psi, phi)| {
            let right = (h.apply(psi) - psi.scale((*e).into())).norm();
            let left = (h.dagger().apply(phi) - phi.scale((*e).into())).norm();
            right.max(left)
        })
        .fold(0.0, f64::max);
    r.push(
        "spectrum.eigenvectors",
        "psi_i are eigenvectors of H and phi_i of H^dagger with E = -/+ Omega/2",
        "H|psi_i> = E_i|psi_i>, H^dagger|phi_i> = E_i|phi_i>",
        eig,
        tol,
    );
    let mut bio: f64 = 0.0;
    for (i, phi) in s.phi().iter().enumerate() {
        for (j, psi) in s.psi().iter().enumerate() {
            let expected = if i == j { ONE } else { ZERO };
            bio = bio.max((phi.dot(psi) - expected).norm());
        }
    }
    r.push(
        "spectrum.biorthonormal",
        "biorthonormality of the eigensystem",
        "<phi_i|psi_j> = delta_ij",
        bio,
        tol,
    );
    r.push(
        "spectrum.completeness",
        "completeness of the eigensystem",
        "sum_i |psi_i><phi_i| = 1",
        s.completeness().dist(&id),
        tol,
    );
    r.push(
        "metric.hermitian",
        "metric is Hermitian",
        "eta = eta^dagger",
        eta.dist(&eta.dagger()),
        0.0,
    );
    let min_eig = eta.hermitian_eigenvalues()[0];
    r.push_separated(
        "metric.positive",
        "smallest metric eigenvalue is positive",
        "eta > 0",
        min_eig,
        f64::MIN_POSITIVE,
    );
    r.push(
        "metric.eta_plus",
        "metric from the dual eigenvectors",
        "eta = (Omega/|omega|) sum_i |phi_i><phi_i|",
        eta_plus_decomposition(p)?.1,
        tol,
    );
    let b_dyad = s.psi1.outer(&s.phi2);
    r.push(
        "ladder.b_spectral",
        "closed-form b equals the dyad |psi1><phi2|",
        "b = |psi1><phi2|",
        op_b(p)?.dist(&b_dyad),
        tol,
    );
    r.push(
        "ladder.b_sharp_spectral",
        "closed-form b# equals the dyad |psi2><phi1|",
        "b# = |psi2><phi1|",
        op_b_sharp(p)?.dist(&s.psi2.outer(&s.phi1)),
        tol,
    );
    Ok(r)
}

/// Charge conjugation, parity and PT residuals.
pub fn symmetry_report(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    let s = spectrum(p)?;
    let h = build_hamiltonian(p)?;
    let sym = symmetry_operators(p)?;
    let id = Mat2::identity();
    let mut r = CheckReport::new(*p);
    r.push(
        "symmetry.parity_involution",
        "parity squares to one",
        "P^2 = 1",
        (sym.parity * sym.parity).dist(&id),
        tol,
    );
    r.push(
        "symmetry.parity_gen_closed_form",
        "generalized parity from the dual eigenvectors",
        "|phi1><phi1| - |phi2><phi2| = [[0, -omega*/|omega|], [-omega/|omega|, 0]]",
        sym.parity_gen
            .dist(&SymmetryOperators::parity_gen_closed_form(p)),
        tol,
    );
    r.push(
        "symmetry.charge_closed_form",
        "charge conjugation is proportional to H",
        "C = -(2/Omega) H",
        sym.charge.dist(&h.scale_real(-2.0 / s.omega_big)),
        tol,
    );
    r.push(
        "symmetry.charge_commutes",
        "charge conjugation commutes with H",
        "[C, H] = 0",
        sym.charge.commutator(&h).norm(),
        tol,
    );
    r.push(
        "symmetry.charge_involution",
        "charge conjugation squares to one",
        "C^2 = 1",
        (sym.charge * sym.charge).dist(&id),
        tol,
    );
    r.extend(pt_commutation_check(p, tol)?);
    Ok(r)
}

/// All numeric two-level checks.
pub fn system_report(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    let mut r = spectrum_report(p, tol)?;
    r.extend(algebra_report(p, tol)?);
    r.extend(symmetry_report(p, tol)?);
    Ok(r)
}

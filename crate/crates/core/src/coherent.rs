//! Displacement operators and the two pseudo-fermionic coherent-state
//! families.
//!
//! In the biorthonormal eigenbasis the ladder operators are single dyads:
//! `b = |psi1><phi2|`, `b# = |psi2><phi1|`, `b~ = |phi1><psi2|` and
//! `b~#' = |phi2><psi1|`. All symbolic constructions here use these exact
//! 0/1 coefficients, so identities between them hold with zero residual.
//! [`NumericBasis`] turns them back into matrices for comparison with the
//! closed forms in [`crate::twolevel`].

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graded::{
    berezin_integrate_dyad, gb_apply, gop_apply, gop_compose, gop_dagger, gop_exp, gv_dagger,
    gv_outer, gv_pair, BasisKind, GradedBra, GradedOperator, GradedVector, NumericBasis,
    PairingTable,
};
use crate::grassmann::{GeneratorSignature, GrassmannElement, Parity};
use crate::linalg::Mat2;
use crate::report::CheckReport;
use crate::twolevel::{self, Spectrum, SystemParams};

/// Which coherent-state family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Flavor {
    /// Eigenstates of `b`, expanded over the `psi` basis.
    Primal,
    /// Eigenstates of `b~`, expanded over the `phi` basis.
    Dual,
}

impl Flavor {
    pub fn basis(self) -> BasisKind {
        match self {
            Flavor::Primal => BasisKind::Psi,
            Flavor::Dual => BasisKind::Phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementKind {
    /// `D(x) = exp(b# x - x* b)`.
    D,
    /// `D#(x) = exp(x* b - b# x)`.
    DSharp,
    /// `D~(x) = exp(b~#' x - x* b~)`.
    DTilde,
    /// `D~#'(x) = exp(x* b~ - b~#' x)`.
    DTildeSharp,
}

/// Ladder operators as graded dyads.
#[derive(Debug, Clone)]
pub struct LadderOperators {
    pub b: GradedOperator,
    pub b_sharp: GradedOperator,
    pub b_tilde: GradedOperator,
    pub b_tilde_sharp_prime: GradedOperator,
}

impl LadderOperators {
    pub fn new(sig: &Arc<GeneratorSignature>) -> Self {
        use BasisKind::{Phi, Psi};
        Self {
            b: GradedOperator::dyad(Psi, Phi, 0, 1, sig),
            b_sharp: GradedOperator::dyad(Psi, Phi, 1, 0, sig),
            b_tilde: GradedOperator::dyad(Phi, Psi, 0, 1, sig),
            b_tilde_sharp_prime: GradedOperator::dyad(Phi, Psi, 1, 0, sig),
        }
    }

    /// `(annihilator, creator)` for the given displacement family.
    fn pair(&self, kind: DisplacementKind) -> (&GradedOperator, &GradedOperator) {
        match kind {
            DisplacementKind::D | DisplacementKind::DSharp => (&self.b, &self.b_sharp),
            DisplacementKind::DTilde | DisplacementKind::DTildeSharp => {
                (&self.b_tilde, &self.b_tilde_sharp_prime)
            }
        }
    }
}

/// Pseudo-adjoint of an operator mapping one basis to its dual.
///
/// The metric is proportional to `Σ|phi_i><phi_i|` and its inverse to
/// `Σ|psi_i><psi_i|` with reciprocal factors, so conjugating the Hermitian
/// adjoint by the metric only swaps `psi` and `phi` slot for slot. The same
/// holds for the dual metric `η' = η⁻¹`.
pub fn pseudo_adjoint(a: &GradedOperator) -> Result<GradedOperator> {
    if a.left == a.right {
        return Err(Error::Basis(
            "pseudo-adjoint is defined for operators between dual bases".into(),
        ));
    }
    let mut out = gop_dagger(a);
    out.left = out.left.dual();
    out.right = out.right.dual();
    Ok(out)
}

/// A coherent state together with its explicit normalization factor.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub base: GradedVector,
    pub flavor: Flavor,
    /// `exp(-½ x* x)`.
    pub normalization_factor: GrassmannElement,
    /// The Grassmann eigenvalue `x`.
    pub parameter: GrassmannElement,
}

impl CoherentState {
    /// `exp(-½ x* x)(|e1> - x|e2>)` for an odd Grassmann parameter `x`.
    pub fn closed_form(flavor: Flavor, x: &GrassmannElement) -> Result<Self> {
        if x.parity() != Some(Parity::Odd) {
            return Err(Error::Argument(format!(
                "coherent-state parameter {x} is not odd"
            )));
        }
        let norm = (&x.star() * x).scale_real(-0.5).exp()?;
        let base = GradedVector::new(flavor.basis(), [norm.clone(), -(&norm * x)])?;
        Ok(Self {
            base,
            flavor,
            normalization_factor: norm,
            parameter: x.clone(),
        })
    }

    pub fn bra(&self) -> GradedBra {
        gv_dagger(&self.base)
    }
}

/// A displacement operator built from its exponential series, with the
/// deviation from the expanded closed form.
#[derive(Debug, Clone)]
pub struct Displacement {
    pub kind: DisplacementKind,
    pub operator: GradedOperator,
    pub closed_form_residual: f64,
}

/// Symbolic inner products of the coherent states.
#[derive(Debug, Clone)]
pub struct InnerProducts {
    /// `<x|x>`.
    pub primal_norm: GrassmannElement,
    /// Expected `<x|x>` from the Gram matrix of `psi`.
    pub primal_norm_expected: GrassmannElement,
    /// `<x~|x~>`.
    pub dual_norm: GrassmannElement,
    pub dual_norm_expected: GrassmannElement,
    /// `<x~|x>`.
    pub cross: GrassmannElement,
    /// `(|ω|/Ω) <x|η|x>`.
    pub cross_via_metric: GrassmannElement,
    /// `<xi|zeta~>` over four generators.
    pub cross_two_parameter: GrassmannElement,
    /// `xi* zeta + ¼(2 - xi* xi)(2 - zeta* zeta)`.
    pub cross_two_parameter_expected: GrassmannElement,
}

/// The symbolic coherent-state system at one parameter point.
#[derive(Debug, Clone)]
pub struct CoherentSystem {
    pub params: SystemParams,
    pub spectrum: Spectrum,
    pub sig: Arc<GeneratorSignature>,
    pub ladder: LadderOperators,
}

impl CoherentSystem {
    /// Builds the system over the signature `xi, xi*`.
    pub fn new(p: &SystemParams) -> Result<Self> {
        Self::with_signature(p, GeneratorSignature::xi())
    }

    pub fn with_signature(p: &SystemParams, sig: Arc<GeneratorSignature>) -> Result<Self> {
        let spectrum = twolevel::spectrum(p)?;
        Ok(Self {
            params: *p,
            spectrum,
            ladder: LadderOperators::new(&sig),
            sig,
        })
    }

    pub fn basis(&self) -> NumericBasis {
        self.spectrum.numeric_basis()
    }

    /// The generator with the given index as a Grassmann element.
    pub fn generator(&self, index: usize) -> Result<GrassmannElement> {
        GrassmannElement::generator(&self.sig, index)
    }

    /// `xi`, the first generator.
    pub fn xi(&self) -> GrassmannElement {
        self.generator(0)
            .expect("signature has at least one generator")
    }

    fn identity(&self, left: BasisKind) -> GradedOperator {
        GradedOperator::identity(left, left.dual(), &self.sig)
    }

    /// Exponent of the displacement operator for parameter `x`.
    pub fn displacement_exponent(
        &self,
        kind: DisplacementKind,
        x: &GrassmannElement,
    ) -> Result<GradedOperator> {
        let (ann, cre) = self.ladder.pair(kind);
        let create = cre.right_mul(x);
        let annihilate = ann.left_mul(&x.star());
        match kind {
            DisplacementKind::D | DisplacementKind::DTilde => create.try_sub(&annihilate),
            DisplacementKind::DSharp | DisplacementKind::DTildeSharp => annihilate.try_sub(&create),
        }
    }

    /// Expanded form `1 ± (c x - x* a) + (c a - ½) x* x`.
    pub fn displacement_closed_form(
        &self,
        kind: DisplacementKind,
        x: &GrassmannElement,
    ) -> Result<GradedOperator> {
        let (ann, cre) = self.ladder.pair(kind);
        let id = self.identity(ann.left);
        let linear = self.displacement_exponent(kind, x)?;
        let number = gop_compose(cre, ann)?.try_sub(&id.scale_real(0.5))?;
        let quadratic = number.right_mul(&(&x.star() * x));
        id.try_add(&linear)?.try_add(&quadratic)
    }

    /// Displacement operator from its series, checked against the expanded
    /// form.
    pub fn displacement_with(
        &self,
        kind: DisplacementKind,
        x: &GrassmannElement,
    ) -> Result<Displacement> {
        let operator = gop_exp(&self.displacement_exponent(kind, x)?)?;
        let closed = self.displacement_closed_form(kind, x)?;
        Ok(Displacement {
            kind,
            closed_form_residual: operator.max_abs_diff(&closed),
            operator,
        })
    }

    pub fn displacement(&self, kind: DisplacementKind) -> Result<Displacement> {
        self.displacement_with(kind, &self.xi())
    }

    /// `D(x)|psi1>` or `D~(x)|phi1>`.
    pub fn coherent_state_with(
        &self,
        flavor: Flavor,
        x: &GrassmannElement,
    ) -> Result<CoherentState> {
        let kind = match flavor {
            Flavor::Primal => DisplacementKind::D,
            Flavor::Dual => DisplacementKind::DTilde,
        };
        let d = self.displacement_with(kind, x)?.operator;
        let ground = GradedVector::basis(flavor.basis(), 0, &self.sig);
        let base = gop_apply(&d, &ground)?;
        let closed = CoherentState::closed_form(flavor, x)?;
        Ok(CoherentState { base, ..closed })
    }

    pub fn coherent_state(&self, flavor: Flavor) -> Result<CoherentState> {
        self.coherent_state_with(flavor, &self.xi())
    }

    /// The metric as a graded operator on `phi` dyads, projected from its
    /// numeric matrix.
    pub fn metric_graded(&self) -> Result<GradedOperator> {
        let eta = twolevel::metric_eta(&self.params)?;
        Ok(self
            .basis()
            .project(&eta, BasisKind::Phi, BasisKind::Phi, &self.sig))
    }

    /// `_η<x| = <x| η`.
    pub fn eta_bra(&self, state: &CoherentState) -> Result<GradedBra> {
        gb_apply(&state.bra(), &self.metric_graded()?)
    }

    fn pairing_table(&self) -> PairingTable {
        PairingTable {
            gram_psi: Some(self.spectrum.gram_psi()),
            gram_phi: Some(self.spectrum.gram_phi()),
        }
    }

    /// `g00 + (g11 - g00) x* x - 2i Im(x g01)`, with `Im z = (z - z*)/2i`.
    fn norm_formula(&self, gram: [[Complex64; 2]; 2], x: &GrassmannElement) -> GrassmannElement {
        let one = GrassmannElement::one(&self.sig);
        let z = x.scale(gram[0][1]);
        let im_times_2i = &z - &z.star();
        &(&one.scale(gram[0][0]) + &(&x.star() * x).scale(gram[1][1] - gram[0][0])) - &im_times_2i
    }

    pub fn inner_products(&self) -> Result<InnerProducts> {
        let xi = self.xi();
        let table = self.pairing_table();
        let primal = self.coherent_state(Flavor::Primal)?;
        let dual = self.coherent_state(Flavor::Dual)?;

        let primal_norm = gv_pair(&primal.bra(), &primal.base, &table)?;
        let dual_norm = gv_pair(&dual.bra(), &dual.base, &table)?;
        let cross = gv_pair(&dual.bra(), &primal.base, &table)?;
        let ratio = self.params.omega_abs() / self.spectrum.omega_big;
        let cross_via_metric =
            gv_pair(&self.eta_bra(&primal)?, &primal.base, &table)?.scale_real(ratio);

        let two = CoherentSystem::with_signature(&self.params, GeneratorSignature::xi_zeta())?;
        let (x4, z4) = (two.generator(0)?, two.generator(2)?);
        let bra_xi = two.coherent_state_with(Flavor::Primal, &x4)?.bra();
        let ket_zeta = two.coherent_state_with(Flavor::Dual, &z4)?.base;
        let cross_two_parameter = gv_pair(&bra_xi, &ket_zeta, &PairingTable::biorthonormal())?;
        let one4 = GrassmannElement::one(&two.sig);
        let two4 = one4.scale_real(2.0);
        let expected = &(&x4.star() * &z4)
            + &(&(&two4 - &(&x4.star() * &x4)) * &(&two4 - &(&z4.star() * &z4))).scale_real(0.25);

        Ok(InnerProducts {
            primal_norm_expected: self.norm_formula(self.spectrum.gram_psi(), &xi),
            dual_norm_expected: self.norm_formula(self.spectrum.gram_phi(), &xi),
            primal_norm,
            dual_norm,
            cross,
            cross_via_metric,
            cross_two_parameter,
            cross_two_parameter_expected: expected,
        })
    }

    /// `∫dx* dx |x><x~|` and `∫dx* dx |x~><x|`.
    pub fn resolution_integrals(
        &self,
        primal: &CoherentState,
        dual: &CoherentState,
    ) -> Result<(GradedOperator, GradedOperator)> {
        let gen = 0;
        let a = berezin_integrate_dyad(&gv_outer(&primal.base, &dual.bra())?, gen)?;
        let b = berezin_integrate_dyad(&gv_outer(&dual.base, &primal.bra())?, gen)?;
        Ok((a, b))
    }

    /// Both bi-overcompleteness integrals, and the two projector integrals
    /// that fail to resolve the identity away from the Hermitian limit.
    pub fn resolution_of_identity(&self, tol: f64) -> Result<CheckReport> {
        let primal = self.coherent_state(Flavor::Primal)?;
        let dual = self.coherent_state(Flavor::Dual)?;
        let basis = self.basis();
        let id = Mat2::identity();
        let mut r = CheckReport::new(self.params);

        let (mixed, mixed_rev) = self.resolution_integrals(&primal, &dual)?;
        r.push(
            "resolution.primal_dual_symbolic",
            "mixed projector integrates to the identity dyads",
            "int dxi* dxi |xi><xi~| = 1",
            mixed.max_abs_diff(&self.identity(BasisKind::Psi)),
            0.0,
        );
        r.push(
            "resolution.dual_primal_symbolic",
            "reversed mixed projector integrates to the identity dyads",
            "int dxi* dxi |xi~><xi| = 1",
            mixed_rev.max_abs_diff(&self.identity(BasisKind::Phi)),
            0.0,
        );
        let (m1, m2) = (basis.operator_body(&mixed), basis.operator_body(&mixed_rev));
        r.push(
            "resolution.primal_dual_numeric",
            "mixed projector integral as a matrix",
            "int dxi* dxi |xi><xi~| = 1",
            m1.dist(&id),
            tol,
        );
        r.push(
            "resolution.dual_primal_numeric",
            "reversed mixed projector integral as a matrix",
            "int dxi* dxi |xi~><xi| = 1",
            m2.dist(&id),
            tol,
        );
        r.push(
            "resolution.orderings_agree",
            "both orderings give the same matrix",
            "int |xi><xi~| = int |xi~><xi|",
            m1.dist(&m2),
            tol,
        );

        let hermitian = berezin_integrate_dyad(&gv_outer(&primal.base, &primal.bra())?, 0)?;
        let eta_proj =
            berezin_integrate_dyad(&gv_outer(&primal.base, &self.eta_bra(&primal)?)?, 0)?;
        let dev_h = basis.operator_body(&hermitian).dist(&id);
        let dev_eta = basis.operator_body(&eta_proj).dist(&id);
        if self.params.delta() == 0.0 {
            r.push(
                "resolution.hermitian_projector_reduces",
                "with equal decay rates the Hermitian projector resolves the identity",
                "int dxi* dxi |xi><xi| = 1 (delta = 0)",
                dev_h,
                tol,
            );
            r.push(
                "resolution.eta_projector_reduces",
                "with equal decay rates the eta projector resolves the identity",
                "int dxi* dxi |xi> _eta<xi| = 1 (delta = 0)",
                dev_eta,
                tol,
            );
        } else {
            let separation = tol.sqrt();
            r.push_separated(
                "resolution.hermitian_projector_not_identity",
                "Hermitian projector does not resolve the identity",
                "int dxi* dxi |xi><xi| != 1",
                dev_h,
                separation,
            );
            r.push_separated(
                "resolution.eta_projector_not_identity",
                "eta projector does not resolve the identity",
                "int dxi* dxi |xi> _eta<xi| != 1",
                dev_eta,
                separation,
            );
        }
        Ok(r)
    }

    /// Pseudo-unitarity, bi-unitarity and displacement relations.
    pub fn pseudo_unitarity_check(&self) -> Result<CheckReport> {
        let xi = self.xi();
        let d = self.displacement(DisplacementKind::D)?.operator;
        let ds = self.displacement(DisplacementKind::DSharp)?.operator;
        let dt = self.displacement(DisplacementKind::DTilde)?.operator;
        let dts = self.displacement(DisplacementKind::DTildeSharp)?.operator;
        let dt_dag = gop_dagger(&dt);
        let id_psi = self.identity(BasisKind::Psi);
        let id_phi = self.identity(BasisKind::Phi);
        let mut r = CheckReport::new(self.params);
        let mut exact =
            |id: &str, desc: &str, rel: &str, lhs: GradedOperator, rhs: &GradedOperator| {
                r.push(id, desc, rel, lhs.max_abs_diff(rhs), 0.0);
            };
        exact(
            "unitarity.sharp_left",
            "D is pseudo-unitary",
            "D# D = 1",
            gop_compose(&ds, &d)?,
            &id_psi,
        );
        exact(
            "unitarity.sharp_right",
            "D is pseudo-unitary",
            "D D# = 1",
            gop_compose(&d, &ds)?,
            &id_psi,
        );
        exact(
            "unitarity.bi_left",
            "D and D~ are bi-unitary",
            "D D~^dagger = 1",
            gop_compose(&d, &dt_dag)?,
            &id_psi,
        );
        exact(
            "unitarity.bi_right",
            "D and D~ are bi-unitary",
            "D~^dagger D = 1",
            gop_compose(&dt_dag, &d)?,
            &id_psi,
        );
        exact(
            "unitarity.tilde_sharp",
            "D~ is eta'-pseudo-unitary",
            "D~#' D~ = 1",
            gop_compose(&dts, &dt)?,
            &id_phi,
        );
        exact(
            "displacement.shift_b",
            "displacement shifts b by the Grassmann parameter",
            "D# b D = b + xi",
            gop_compose(&gop_compose(&ds, &self.ladder.b)?, &d)?,
            &self.ladder.b.try_add(&id_psi.left_mul(&xi))?,
        );
        exact(
            "displacement.shift_b_tilde",
            "dual displacement shifts b~ by the Grassmann parameter",
            "D~#' b~ D~ = b~ + xi",
            gop_compose(&gop_compose(&dts, &self.ladder.b_tilde)?, &dt)?,
            &self.ladder.b_tilde.try_add(&id_phi.left_mul(&xi))?,
        );
        exact(
            "displacement.sharp_is_pseudo_adjoint",
            "series D# equals the pseudo-adjoint of D",
            "D# = eta^-1 D^dagger eta",
            pseudo_adjoint(&d)?,
            &ds,
        );
        Ok(r)
    }

    /// Series-vs-expansion agreement and the numeric form of the dyads.
    pub fn displacement_report(&self, tol: f64) -> Result<CheckReport> {
        let mut r = CheckReport::new(self.params);
        for (kind, id, rel) in [
            (
                DisplacementKind::D,
                "displacement.series_d",
                "exp(b# xi - xi* b) = 1 + b# xi - xi* b + (b# b - 1/2) xi* xi",
            ),
            (
                DisplacementKind::DSharp,
                "displacement.series_d_sharp",
                "exp(xi* b - b# xi) = 1 + xi* b - b# xi + (b# b - 1/2) xi* xi",
            ),
            (
                DisplacementKind::DTilde,
                "displacement.series_d_tilde",
                "exp(b~#' xi - xi* b~) = 1 + b~#' xi - xi* b~ + (b~#' b~ - 1/2) xi* xi",
            ),
            (
                DisplacementKind::DTildeSharp,
                "displacement.series_d_tilde_sharp",
                "exp(xi* b~ - b~#' xi) = 1 + xi* b~ - b~#' xi + (b~#' b~ - 1/2) xi* xi",
            ),
        ] {
            let d = self.displacement(kind)?;
            r.push(
                id,
                "exponential series matches the expanded form",
                rel,
                d.closed_form_residual,
                0.0,
            );
        }
        let p = &self.params;
        let basis = self.basis();
        for (id, rel, graded, numeric) in [
            (
                "ladder.dyad_b",
                "|psi1><phi2| = b",
                &self.ladder.b,
                twolevel::op_b(p)?,
            ),
            (
                "ladder.dyad_b_sharp",
                "|psi2><phi1| = b#",
                &self.ladder.b_sharp,
                twolevel::op_b_sharp(p)?,
            ),
            (
                "ladder.dyad_b_tilde",
                "|phi1><psi2| = eta b eta^-1",
                &self.ladder.b_tilde,
                twolevel::op_b_tilde(p)?,
            ),
            (
                "ladder.dyad_b_tilde_sharp",
                "|phi2><psi1| = eta b~^dagger eta^-1",
                &self.ladder.b_tilde_sharp_prime,
                twolevel::op_b_tilde_sharp_prime(p)?,
            ),
        ] {
            r.push(
                id,
                "graded dyad agrees with the closed-form matrix",
                rel,
                basis.operator_body(graded).dist(&numeric),
                tol,
            );
        }
        let bs = pseudo_adjoint(&self.ladder.b)?;
        r.push(
            "ladder.dyad_pseudo_adjoint",
            "graded pseudo-adjoint of b is b#",
            "(|psi1><phi2|)# = |psi2><phi1|",
            bs.max_abs_diff(&self.ladder.b_sharp),
            0.0,
        );
        Ok(r)
    }

    /// Eigenvalue equations of both families.
    pub fn eigenstate_report(&self) -> Result<CheckReport> {
        let xi = self.xi();
        let mut r = CheckReport::new(self.params);
        for (flavor, ann, id, rel, eq) in [
            (
                Flavor::Primal,
                &self.ladder.b,
                "eigenstate.primal",
                "b|xi> = xi|xi>",
                "D(xi)|psi1> = exp(-xi* xi/2)(|psi1> - xi|psi2>)",
            ),
            (
                Flavor::Dual,
                &self.ladder.b_tilde,
                "eigenstate.dual",
                "b~|xi~> = xi|xi~>",
                "D~(xi)|phi1> = exp(-xi* xi/2)(|phi1> - xi|phi2>)",
            ),
        ] {
            let cs = self.coherent_state(flavor)?;
            let lhs = gop_apply(ann, &cs.base)?;
            r.push(
                id,
                "coherent state is an eigenstate of the annihilator",
                rel,
                lhs.max_abs_diff(&cs.base.left_mul(&xi)),
                0.0,
            );
            let closed = CoherentState::closed_form(flavor, &xi)?;
            r.push(
                format!("{id}_expansion"),
                "displaced ground state equals the expanded coherent state",
                eq,
                cs.base.max_abs_diff(&closed.base),
                0.0,
            );
        }
        Ok(r)
    }

    pub fn inner_product_report(&self, tol: f64) -> Result<CheckReport> {
        let ip = self.inner_products()?;
        let one = GrassmannElement::one(&self.sig);
        let mut r = CheckReport::new(self.params);
        r.push(
            "inner.primal_norm",
            "norm of the primal coherent state",
            "<xi|xi> = <psi1|psi1> + (<psi2|psi2> - <psi1|psi1>) xi* xi - 2i Im(xi <psi1|psi2>)",
            ip.primal_norm.max_abs_diff(&ip.primal_norm_expected),
            tol,
        );
        r.push(
            "inner.dual_norm",
            "norm of the dual coherent state",
            "<xi~|xi~> = <phi1|phi1> + (<phi2|phi2> - <phi1|phi1>) xi* xi - 2i Im(xi <phi1|phi2>)",
            ip.dual_norm.max_abs_diff(&ip.dual_norm_expected),
            tol,
        );
        r.push(
            "inner.cross",
            "bi-normalization",
            "<xi~|xi> = 1",
            ip.cross.max_abs_diff(&one),
            0.0,
        );
        r.push(
            "inner.cross_via_metric",
            "bi-normalization through the metric",
            "(|omega|/Omega) <xi|eta|xi> = 1",
            ip.cross_via_metric.max_abs_diff(&one),
            tol,
        );
        r.push(
            "inner.two_parameter",
            "overlap of a primal and a dual state with independent parameters",
            "<xi|zeta~> = xi* zeta + (2 - xi* xi)(2 - zeta* zeta)/4",
            ip.cross_two_parameter
                .max_abs_diff(&ip.cross_two_parameter_expected),
            0.0,
        );
        Ok(r)
    }

    /// Slotwise coincidence of the two families when `δ = 0`.
    pub fn hermitian_limit_report(&self, tol: f64) -> Result<CheckReport> {
        let mut r = CheckReport::new(self.params);
        let primal = self.coherent_state(Flavor::Primal)?;
        let dual = self.coherent_state(Flavor::Dual)?;
        let slotwise = primal.base.comp[0]
            .max_abs_diff(&dual.base.comp[0])
            .max(primal.base.comp[1].max_abs_diff(&dual.base.comp[1]));
        r.push(
            "hermitian.coefficients_coincide",
            "primal and dual states have identical coefficients",
            "|xi> and |xi~> agree slotwise",
            slotwise,
            0.0,
        );
        let s = &self.spectrum;
        let basis_dev = s.psi1.dist_max(&s.phi1).max(s.psi2.dist_max(&s.phi2));
        r.push(
            "hermitian.bases_coincide",
            "psi and phi bases coincide",
            "psi_i = phi_i (delta = 0)",
            basis_dev,
            tol,
        );
        Ok(r)
    }

    /// Every symbolic coherent-state check.
    pub fn report(&self, tol: f64) -> Result<CheckReport> {
        let mut r = self.displacement_report(tol)?;
        r.extend(self.pseudo_unitarity_check()?);
        r.extend(self.eigenstate_report()?);
        r.extend(self.inner_product_report(tol)?);
        r.extend(self.resolution_of_identity(tol)?);
        if self.params.delta() == 0.0 {
            r.extend(self.hermitian_limit_report(tol)?);
        }
        Ok(r)
    }
}

pub fn displacement(p: &SystemParams, which: DisplacementKind) -> Result<Displacement> {
    CoherentSystem::new(p)?.displacement(which)
}

pub fn coherent_state(p: &SystemParams, flavor: Flavor) -> Result<CoherentState> {
    CoherentSystem::new(p)?.coherent_state(flavor)
}

pub fn inner_products(p: &SystemParams) -> Result<InnerProducts> {
    CoherentSystem::new(p)?.inner_products()
}

pub fn resolution_of_identity(p: &SystemParams, tol: f64) -> Result<CheckReport> {
    CoherentSystem::new(p)?.resolution_of_identity(tol)
}

pub fn pseudo_unitarity_check(p: &SystemParams) -> Result<CheckReport> {
    CoherentSystem::new(p)?.pseudo_unitarity_check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn sys() -> CoherentSystem {
        CoherentSystem::new(&SystemParams::canonical()).unwrap()
    }

    #[test]
    fn displacement_series_matches_expansion() {
        let s = sys();
        for kind in [
            DisplacementKind::D,
            DisplacementKind::DSharp,
            DisplacementKind::DTilde,
            DisplacementKind::DTildeSharp,
        ] {
            assert_eq!(
                s.displacement(kind).unwrap().closed_form_residual,
                0.0,
                "{kind:?}"
            );
        }
    }

    #[test]
    fn displacement_at_zero_is_identity() {
        let s = sys();
        let zero = GrassmannElement::zero(&s.sig);
        let d = gop_exp(&s.displacement_exponent(DisplacementKind::D, &zero).unwrap());
        // A zero exponent has zero body and the series stops at once.
        assert_eq!(d.unwrap(), s.identity(BasisKind::Psi));
    }

    #[test]
    fn primal_state_expansion() {
        let s = sys();
        let cs = s.coherent_state(Flavor::Primal).unwrap();
        let xi = s.xi();
        let one = GrassmannElement::one(&s.sig);
        let half_xsxi = (&xi.star() * &xi).scale_real(0.5);
        assert_eq!(cs.base.comp[0], &one - &half_xsxi);
        assert_eq!(cs.base.comp[1], -&xi);
        assert_eq!(cs.normalization_factor, &one - &half_xsxi);
    }

    #[test]
    fn b_acts_on_coherent_state_as_xi() {
        let s = sys();
        let cs = s.coherent_state(Flavor::Primal).unwrap();
        let lhs = gop_apply(&s.ladder.b, &cs.base).unwrap();
        assert_eq!(lhs, cs.base.left_mul(&s.xi()));
    }

    #[test]
    fn ground_state_at_zero_parameter() {
        let s = sys();
        let odd_zero = s.xi().scale_real(0.0);
        // The zero element counts as even, so it is not a valid parameter.
        assert!(CoherentState::closed_form(Flavor::Primal, &odd_zero).is_err());
        let d = s
            .displacement_closed_form(DisplacementKind::D, &odd_zero)
            .unwrap();
        let ground = GradedVector::basis(BasisKind::Psi, 0, &s.sig);
        assert_eq!(gop_apply(&d, &ground).unwrap(), ground);
    }

    #[test]
    fn dagger_of_ket_gives_expected_bra() {
        let s = sys();
        let bra = s.coherent_state(Flavor::Primal).unwrap().bra();
        let xi = s.xi();
        let one = GrassmannElement::one(&s.sig);
        // exp(-½ξ*ξ)(<psi1| + ξ*<psi2|) has left coefficients (1 - ½ξ*ξ, ξ*).
        assert_eq!(
            bra.left_coefficient(0),
            &one - &(&xi.star() * &xi).scale_real(0.5)
        );
        assert_eq!(bra.left_coefficient(1), xi.star());
    }

    #[test]
    fn cross_products() {
        let ip = sys().inner_products().unwrap();
        assert_eq!(ip.cross, GrassmannElement::one(ip.cross.signature()));
        assert_eq!(ip.cross_two_parameter, ip.cross_two_parameter_expected);
        assert!(ip.primal_norm.max_abs_diff(&ip.primal_norm_expected) < 1e-15);
    }

    #[test]
    fn hermitian_limit_families_coincide() {
        let s = CoherentSystem::new(&SystemParams::new(0.3, 0.3, ONE)).unwrap();
        assert!(s.hermitian_limit_report(1e-14).unwrap().all_pass());
    }

    #[test]
    fn reports_pass() {
        for p in [SystemParams::canonical(), SystemParams::new(0.0, 0.0, ONE)] {
            let r = CoherentSystem::new(&p).unwrap().report(1e-12).unwrap();
            let failures: Vec<_> = r.failures().collect();
            assert!(failures.is_empty(), "{failures:#?}");
        }
    }

    #[test]
    fn pseudo_adjoint_rejects_same_basis() {
        let sig = GeneratorSignature::xi();
        let a = GradedOperator::identity(BasisKind::Psi, BasisKind::Psi, &sig);
        assert!(matches!(pseudo_adjoint(&a), Err(Error::Basis(_))));
    }

    #[test]
    fn strong_damping_is_rejected() {
        let p = SystemParams::new(3.0, 0.0, ONE);
        assert!(matches!(
            coherent_state(&p, Flavor::Primal),
            Err(Error::StrongDamping { .. })
        ));
        assert!(matches!(
            displacement(&p, DisplacementKind::D),
            Err(Error::StrongDamping { .. })
        ));
    }
}

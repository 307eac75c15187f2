//! Z₂-graded kets, bras and operators with Grassmann coefficients over a
//! two-slot biorthonormal basis.
//!
//! Slot 0 of either basis is even and slot 1 is odd. Kets keep their
//! coefficients to the left of the basis symbol, bras to the right, and
//! operators to the left of each dyad `|e_i><f_j|` (parity `i + j`). Moving a
//! Grassmann monomial of parity `q` across a basis object of parity `p`
//! costs `(-1)^{pq}`.
//!
//! Contractions between a `Psi` and a `Phi` basis symbol use the biorthonormal
//! pairing `<phi_i|psi_j> = δ_ij`. Same-basis contractions need an explicit
//! Gram matrix and are only available in [`gv_pair`], because such pairings do
//! not respect the grading.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorSignature, GrassmannElement, Parity};
use crate::linalg::{Mat2, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BasisKind {
    /// Right eigenvectors `|psi_i>` of `H`.
    Psi,
    /// Right eigenvectors `|phi_i>` of `H†`.
    Phi,
}

impl BasisKind {
    pub fn dual(self) -> Self {
        match self {
            BasisKind::Psi => BasisKind::Phi,
            BasisKind::Phi => BasisKind::Psi,
        }
    }
}

pub fn slot_parity(slot: usize) -> Parity {
    Parity::from_bits(slot as u32)
}

fn dyad_parity(i: usize, j: usize) -> Parity {
    Parity::from_bits((i + j) as u32)
}

fn require_biorthonormal(bra: BasisKind, ket: BasisKind) -> Result<()> {
    if bra == ket {
        Err(Error::Basis(format!(
            "cannot contract a {bra:?} bra with a {ket:?} ket without a Gram matrix"
        )))
    } else {
        Ok(())
    }
}

fn check_signatures<'a>(
    mut elems: impl Iterator<Item = &'a GrassmannElement>,
) -> Result<Arc<GeneratorSignature>> {
    let first = elems
        .next()
        .expect("at least one coefficient")
        .signature()
        .clone();
    for e in elems {
        if **e.signature() != *first {
            return Err(Error::Signature("graded object mixes signatures".into()));
        }
    }
    Ok(first)
}

/// `c_0 |e_0> + c_1 |e_1>` with coefficients on the left.
#[derive(Clone, PartialEq)]
pub struct GradedVector {
    pub kind: BasisKind,
    pub comp: [GrassmannElement; 2],
}

impl GradedVector {
    pub fn new(kind: BasisKind, comp: [GrassmannElement; 2]) -> Result<Self> {
        check_signatures(comp.iter())?;
        Ok(Self { kind, comp })
    }

    pub fn basis(kind: BasisKind, slot: usize, sig: &Arc<GeneratorSignature>) -> Self {
        let mut comp = [GrassmannElement::zero(sig), GrassmannElement::zero(sig)];
        comp[slot] = GrassmannElement::one(sig);
        Self { kind, comp }
    }

    pub fn signature(&self) -> &Arc<GeneratorSignature> {
        self.comp[0].signature()
    }

    /// Normal form. Coefficients are stored canonically already, so this only
    /// rebuilds them; kept as an explicit step for inputs built by hand.
    pub fn canonicalize(&self) -> Self {
        let comp = self
            .comp
            .clone()
            .map(|c| GrassmannElement::from_terms(c.signature(), c.terms()));
        Self {
            kind: self.kind,
            comp,
        }
    }

    /// `g · self`.
    pub fn left_mul(&self, g: &GrassmannElement) -> Self {
        Self {
            kind: self.kind,
            comp: [g * &self.comp[0], g * &self.comp[1]],
        }
    }

    /// `self · g`: `g` is moved left across each ket.
    pub fn right_mul(&self, g: &GrassmannElement) -> Self {
        Self {
            kind: self.kind,
            comp: [
                &self.comp[0] * &g.graded_shift(slot_parity(0)),
                &self.comp[1] * &g.graded_shift(slot_parity(1)),
            ],
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            kind: self.kind,
            comp: [self.comp[0].scale(c), self.comp[1].scale(c)],
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::Basis("adding kets over different bases".into()));
        }
        Ok(Self {
            kind: self.kind,
            comp: [
                self.comp[0].try_add(&other.comp[0])?,
                self.comp[1].try_add(&other.comp[1])?,
            ],
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(GrassmannElement::is_zero)
    }

    /// Largest coefficient deviation; infinite when the bases differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.kind != other.kind {
            return f64::INFINITY;
        }
        self.comp[0]
            .max_abs_diff(&other.comp[0])
            .max(self.comp[1].max_abs_diff(&other.comp[1]))
    }

    /// Total parity (coefficient parity plus slot parity), when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        combined_parity(
            self.comp
                .iter()
                .enumerate()
                .map(|(i, c)| (c, slot_parity(i))),
        )
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]|{:?}0> + [{}]|{:?}1>",
            self.comp[0], self.kind, self.comp[1], self.kind
        )
    }
}

fn combined_parity<'a>(
    parts: impl Iterator<Item = (&'a GrassmannElement, Parity)>,
) -> Option<Parity> {
    let mut found: Option<Parity> = None;
    for (c, p) in parts {
        if c.is_zero() {
            continue;
        }
        let q = c.parity()?;
        let total = Parity::from_bits(q.bit() + p.bit());
        match found {
            None => found = Some(total),
            Some(prev) if prev != total => return None,
            _ => {}
        }
    }
    Some(found.unwrap_or(Parity::Even))
}

/// One term `left · |e_slot> · right` of a ket written with coefficients on
/// both sides.
#[derive(Debug, Clone)]
pub struct KetTerm {
    pub left: GrassmannElement,
    pub slot: usize,
    pub right: GrassmannElement,
}

/// Collects raw ket terms into canonical form by moving every right-hand
/// factor across its ket.
pub fn gv_canonicalize(kind: BasisKind, terms: &[KetTerm]) -> Result<GradedVector> {
    let first = terms
        .first()
        .ok_or_else(|| Error::Argument("empty ket expression".into()))?;
    let sig = first.left.signature().clone();
    let mut out = GradedVector {
        kind,
        comp: [GrassmannElement::zero(&sig), GrassmannElement::zero(&sig)],
    };
    for t in terms {
        if t.slot > 1 {
            return Err(Error::Basis(format!("slot {} out of range", t.slot)));
        }
        let moved = t.left.try_mul(&t.right.graded_shift(slot_parity(t.slot)))?;
        out.comp[t.slot] = out.comp[t.slot].try_add(&moved)?;
    }
    Ok(out)
}

/// `<e_0| d_0 + <e_1| d_1` with coefficients on the right.
#[derive(Clone, PartialEq)]
pub struct GradedBra {
    pub kind: BasisKind,
    pub comp: [GrassmannElement; 2],
}

impl GradedBra {
    pub fn new(kind: BasisKind, comp: [GrassmannElement; 2]) -> Result<Self> {
        check_signatures(comp.iter())?;
        Ok(Self { kind, comp })
    }

    pub fn signature(&self) -> &Arc<GeneratorSignature> {
        self.comp[0].signature()
    }

    /// Coefficient of slot `i` after moving it to the left of `<e_i|`.
    pub fn left_coefficient(&self, i: usize) -> GrassmannElement {
        self.comp[i].graded_shift(slot_parity(i))
    }

    fn from_left(kind: BasisKind, left: [GrassmannElement; 2]) -> Self {
        let comp = [
            left[0].graded_shift(slot_parity(0)),
            left[1].graded_shift(slot_parity(1)),
        ];
        Self { kind, comp }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            kind: self.kind,
            comp: [self.comp[0].scale(c), self.comp[1].scale(c)],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.kind != other.kind {
            return f64::INFINITY;
        }
        self.comp[0]
            .max_abs_diff(&other.comp[0])
            .max(self.comp[1].max_abs_diff(&other.comp[1]))
    }
}

impl fmt::Debug for GradedBra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{:?}0|[{}] + <{:?}1|[{}]",
            self.kind, self.comp[0], self.kind, self.comp[1]
        )
    }
}

/// `Σ a_ij |e_i><f_j|` with `e` from `left` and `f` from `right`.
#[derive(Clone, PartialEq)]
pub struct GradedOperator {
    pub left: BasisKind,
    pub right: BasisKind,
    pub comp: [[GrassmannElement; 2]; 2],
}

impl GradedOperator {
    pub fn new(
        left: BasisKind,
        right: BasisKind,
        comp: [[GrassmannElement; 2]; 2],
    ) -> Result<Self> {
        check_signatures(comp.iter().flatten())?;
        Ok(Self { left, right, comp })
    }

    pub fn zero(left: BasisKind, right: BasisKind, sig: &Arc<GeneratorSignature>) -> Self {
        let z = || GrassmannElement::zero(sig);
        Self {
            left,
            right,
            comp: [[z(), z()], [z(), z()]],
        }
    }

    /// `Σ_i |e_i><f_i|`; the identity whenever `left != right`.
    pub fn identity(left: BasisKind, right: BasisKind, sig: &Arc<GeneratorSignature>) -> Self {
        Self::from_numeric(
            left,
            right,
            sig,
            [[1.0, 0.0], [0.0, 1.0]].map(|r| r.map(|x| x.into())),
        )
    }

    /// Single dyad `|e_i><f_j|`.
    pub fn dyad(
        left: BasisKind,
        right: BasisKind,
        i: usize,
        j: usize,
        sig: &Arc<GeneratorSignature>,
    ) -> Self {
        let mut op = Self::zero(left, right, sig);
        op.comp[i][j] = GrassmannElement::one(sig);
        op
    }

    /// Operator with body-only coefficients.
    pub fn from_numeric(
        left: BasisKind,
        right: BasisKind,
        sig: &Arc<GeneratorSignature>,
        m: [[Complex64; 2]; 2],
    ) -> Self {
        let s = |z| GrassmannElement::scalar(sig, z);
        Self {
            left,
            right,
            comp: [[s(m[0][0]), s(m[0][1])], [s(m[1][0]), s(m[1][1])]],
        }
    }

    pub fn signature(&self) -> &Arc<GeneratorSignature> {
        self.comp[0][0].signature()
    }

    fn map(&self, f: impl Fn(usize, usize, &GrassmannElement) -> GrassmannElement) -> Self {
        let comp = [
            [f(0, 0, &self.comp[0][0]), f(0, 1, &self.comp[0][1])],
            [f(1, 0, &self.comp[1][0]), f(1, 1, &self.comp[1][1])],
        ];
        Self {
            left: self.left,
            right: self.right,
            comp,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, _, a| a.scale(c))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map(|_, _, a| a.scale_real(c))
    }

    /// `g · self`.
    pub fn left_mul(&self, g: &GrassmannElement) -> Self {
        self.map(|_, _, a| g * a)
    }

    /// `self · g`: `g` is moved left across each dyad.
    pub fn right_mul(&self, g: &GrassmannElement) -> Self {
        self.map(|i, j, a| a * &g.graded_shift(dyad_parity(i, j)))
    }

    fn check_tags(&self, other: &Self) -> Result<()> {
        if self.left != other.left || self.right != other.right {
            Err(Error::Basis(format!(
                "operator tags ({:?},{:?}) and ({:?},{:?}) differ",
                self.left, self.right, other.left, other.right
            )))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_tags(other)?;
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.comp[i][j] = self.comp[i][j].try_add(&other.comp[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale_real(-1.0))
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().flatten().all(GrassmannElement::is_zero)
    }

    /// Largest coefficient deviation; infinite when the tags differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.check_tags(other).is_err() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max(self.comp[i][j].max_abs_diff(&other.comp[i][j]));
            }
        }
        worst
    }

    /// Total parity, when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        combined_parity(
            (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| (&self.comp[i][j], dyad_parity(i, j))),
        )
    }

    /// Keeps only the body (number-valued part) of every coefficient.
    pub fn body(&self) -> [[Complex64; 2]; 2] {
        [
            [self.comp[0][0].body(), self.comp[0][1].body()],
            [self.comp[1][0].body(), self.comp[1][1].body()],
        ]
    }
}

impl fmt::Debug for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (self.left, self.right);
        for i in 0..2 {
            for j in 0..2 {
                if i + j > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "[{}]|{l:?}{i}><{r:?}{j}|", self.comp[i][j])?;
            }
        }
        Ok(())
    }
}

/// `A |v>` under the biorthonormal pairing.
pub fn gop_apply(a: &GradedOperator, v: &GradedVector) -> Result<GradedVector> {
    require_biorthonormal(a.right, v.kind)?;
    let sig = check_signatures([&a.comp[0][0], &v.comp[0]].into_iter())?;
    let mut comp = [GrassmannElement::zero(&sig), GrassmannElement::zero(&sig)];
    for (i, out) in comp.iter_mut().enumerate() {
        for j in 0..2 {
            let moved = v.comp[j].graded_shift(dyad_parity(i, j));
            *out = out.try_add(&a.comp[i][j].try_mul(&moved)?)?;
        }
    }
    Ok(GradedVector { kind: a.left, comp })
}

/// `A ∘ B` under the biorthonormal pairing.
pub fn gop_compose(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    require_biorthonormal(a.right, b.left)?;
    let sig = check_signatures([&a.comp[0][0], &b.comp[0][0]].into_iter())?;
    let mut out = GradedOperator::zero(a.left, b.right, &sig);
    for i in 0..2 {
        for l in 0..2 {
            for j in 0..2 {
                let moved = b.comp[j][l].graded_shift(dyad_parity(i, j));
                out.comp[i][l] = out.comp[i][l].try_add(&a.comp[i][j].try_mul(&moved)?)?;
            }
        }
    }
    Ok(out)
}

/// `<v| A` under the biorthonormal pairing.
pub fn gb_apply(bra: &GradedBra, a: &GradedOperator) -> Result<GradedBra> {
    require_biorthonormal(bra.kind, a.left)?;
    let sig = check_signatures([&bra.comp[0], &a.comp[0][0]].into_iter())?;
    let mut left = [GrassmannElement::zero(&sig), GrassmannElement::zero(&sig)];
    for (k, out) in left.iter_mut().enumerate() {
        for i in 0..2 {
            let moved = a.comp[i][k].graded_shift(slot_parity(i));
            *out = out.try_add(&bra.left_coefficient(i).try_mul(&moved)?)?;
        }
    }
    Ok(GradedBra::from_left(a.right, left))
}

/// `|v><w|` as an operator.
pub fn gv_outer(v: &GradedVector, w: &GradedBra) -> Result<GradedOperator> {
    let sig = check_signatures([&v.comp[0], &w.comp[0]].into_iter())?;
    let mut out = GradedOperator::zero(v.kind, w.kind, &sig);
    for i in 0..2 {
        for j in 0..2 {
            let moved = w.comp[j].graded_shift(dyad_parity(i, j));
            out.comp[i][j] = v.comp[i].try_mul(&moved)?;
        }
    }
    Ok(out)
}

/// Gram matrices used for same-basis contractions.
#[derive(Debug, Clone, Default)]
pub struct PairingTable {
    /// `<psi_i|psi_j>`.
    pub gram_psi: Option<[[Complex64; 2]; 2]>,
    /// `<phi_i|phi_j>`.
    pub gram_phi: Option<[[Complex64; 2]; 2]>,
}

impl PairingTable {
    /// Only the biorthonormal pairing.
    pub fn biorthonormal() -> Self {
        Self::default()
    }

    pub fn pair(&self, bra: BasisKind, i: usize, ket: BasisKind, j: usize) -> Result<Complex64> {
        if bra != ket {
            return Ok(if i == j { 1.0.into() } else { 0.0.into() });
        }
        let gram = match bra {
            BasisKind::Psi => self.gram_psi,
            BasisKind::Phi => self.gram_phi,
        };
        gram.map(|g| g[i][j])
            .ok_or_else(|| Error::Pairing(format!("<{bra:?}|{ket:?}>")))
    }
}

/// `<w|v>`: all Grassmann factors are moved to the far left, then the basis
/// symbols are contracted with the pairing table.
pub fn gv_pair(
    bra: &GradedBra,
    v: &GradedVector,
    table: &PairingTable,
) -> Result<GrassmannElement> {
    let sig = check_signatures([&bra.comp[0], &v.comp[0]].into_iter())?;
    let mut acc = GrassmannElement::zero(&sig);
    for i in 0..2 {
        let li = bra.left_coefficient(i);
        for j in 0..2 {
            let g = table.pair(bra.kind, i, v.kind, j)?;
            if g == Complex64::new(0.0, 0.0) {
                continue;
            }
            let term = li.try_mul(&v.comp[j].graded_shift(slot_parity(i)))?;
            acc = acc.try_add(&term.scale(g))?;
        }
    }
    Ok(acc)
}

/// `(c|e>)† = <e| c*`.
pub fn gv_dagger(v: &GradedVector) -> GradedBra {
    GradedBra {
        kind: v.kind,
        comp: [v.comp[0].star(), v.comp[1].star()],
    }
}

/// `(<e| d)† = d* |e>`.
pub fn gb_dagger(b: &GradedBra) -> GradedVector {
    GradedVector {
        kind: b.kind,
        comp: [b.comp[0].star(), b.comp[1].star()],
    }
}

/// Conjugate transpose: `(a |e_i><f_j|)† = |f_j><e_i| a*`, with `a*` moved
/// back to the left of the dyad.
pub fn gop_dagger(a: &GradedOperator) -> GradedOperator {
    let t = |i: usize, j: usize| a.comp[j][i].star().graded_shift(dyad_parity(i, j));
    GradedOperator {
        left: a.right,
        right: a.left,
        comp: [[t(0, 0), t(0, 1)], [t(1, 0), t(1, 1)]],
    }
}

/// Applies the measure `∫dx* dx` over the complex pair containing `gen` to
/// every coefficient.
pub fn berezin_integrate_dyad(a: &GradedOperator, gen: usize) -> Result<GradedOperator> {
    let mut out = a.clone();
    for i in 0..2 {
        for j in 0..2 {
            out.comp[i][j] = a.comp[i][j].berezin_pair(gen)?;
        }
    }
    Ok(out)
}

/// Exponential of an operator whose coefficients are all body-free; the
/// series terminates exactly.
pub fn gop_exp(a: &GradedOperator) -> Result<GradedOperator> {
    if require_biorthonormal(a.right, a.left).is_err() {
        return Err(Error::Basis("exponent must map a basis to itself".into()));
    }
    for c in a.comp.iter().flatten() {
        if c.body() != Complex64::new(0.0, 0.0) {
            return Err(Error::NonNilpotent(c.body().to_string()));
        }
    }
    let sig = a.signature().clone();
    let mut result = GradedOperator::identity(a.left, a.right, &sig);
    let mut term = result.clone();
    for k in 1..=sig.len() {
        term = gop_compose(&term, a)?.scale_real(1.0 / k as f64);
        if term.is_zero() {
            break;
        }
        result = result.try_add(&term)?;
    }
    Ok(result)
}

/// Numeric basis vectors used to turn graded objects into matrices.
#[derive(Debug, Clone, Copy)]
pub struct NumericBasis {
    pub psi: [Vec2; 2],
    pub phi: [Vec2; 2],
}

impl NumericBasis {
    pub fn vectors(&self, kind: BasisKind) -> &[Vec2; 2] {
        match kind {
            BasisKind::Psi => &self.psi,
            BasisKind::Phi => &self.phi,
        }
    }

    /// Body part of a graded operator as a matrix in the canonical basis.
    pub fn operator_body(&self, a: &GradedOperator) -> Mat2 {
        let (e, f) = (self.vectors(a.left), self.vectors(a.right));
        let body = a.body();
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m = m + e[i].outer(&f[j]).scale(body[i][j]);
            }
        }
        m
    }

    /// Coefficients of `m` in the dyads `|e_i><f_j|`, using the biorthonormal
    /// partners of each basis: `a_ij = <e~_i| m |f~_j>`.
    pub fn project(
        &self,
        m: &Mat2,
        left: BasisKind,
        right: BasisKind,
        sig: &Arc<GeneratorSignature>,
    ) -> GradedOperator {
        let (e_dual, f_dual) = (self.vectors(left.dual()), self.vectors(right.dual()));
        let mut coeffs = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in coeffs.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = e_dual[i].dot(&m.apply(&f_dual[j]));
            }
        }
        GradedOperator::from_numeric(left, right, sig, coeffs)
    }

    /// Body of a graded ket as a numeric vector.
    pub fn vector_body(&self, v: &GradedVector) -> Vec2 {
        let e = self.vectors(v.kind);
        e[0].scale(v.comp[0].body()) + e[1].scale(v.comp[1].body())
    }
}

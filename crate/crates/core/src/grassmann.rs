//! Exact arithmetic in a finite complex Grassmann algebra.
//!
//! Elements are finite sums of monomials in anticommuting generators. A
//! monomial is stored as a bitmask over generator indices and always read in
//! ascending index order, so every element has a unique canonical form.
//! Coefficients are `Complex64`; only bit-exact zeros are pruned.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of generators a signature may carry.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bits(bits: u32) -> Self {
        if bits.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Ordered generator labels together with the star involution that pairs
/// each generator with its conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSignature {
    names: Vec<String>,
    star_pairing: Vec<usize>,
}

impl GeneratorSignature {
    pub fn new(names: Vec<String>, star_pairing: Vec<usize>) -> Result<Arc<Self>> {
        let n = names.len();
        if n > MAX_GENERATORS {
            return Err(Error::Signature(format!(
                "{n} generators exceeds the limit of {MAX_GENERATORS}"
            )));
        }
        if star_pairing.len() != n {
            return Err(Error::Signature(format!(
                "star pairing has {} entries for {n} generators",
                star_pairing.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::Signature(format!(
                    "duplicate generator name {name:?}"
                )));
            }
        }
        for (i, &j) in star_pairing.iter().enumerate() {
            if j >= n || star_pairing[j] != i {
                return Err(Error::Signature(format!(
                    "star pairing is not an involution at index {i}"
                )));
            }
        }
        Ok(Arc::new(Self {
            names,
            star_pairing,
        }))
    }

    /// Complex generators `x, x*` for every label, in the order
    /// `[x0, x0*, x1, x1*, ...]`.
    pub fn complex(labels: &[&str]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(2 * labels.len());
        let mut pairing = Vec::with_capacity(2 * labels.len());
        for (k, label) in labels.iter().enumerate() {
            names.push(label.to_string());
            names.push(format!("{label}*"));
            pairing.push(2 * k + 1);
            pairing.push(2 * k);
        }
        Self::new(names, pairing)
    }

    /// The single complex pair `xi, xi*`.
    pub fn xi() -> Arc<Self> {
        Self::complex(&["xi"]).expect("static signature is valid")
    }

    /// Two complex pairs `xi, xi*, zeta, zeta*`.
    pub fn xi_zeta() -> Arc<Self> {
        Self::complex(&["xi", "zeta"]).expect("static signature is valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn star_of(&self, index: usize) -> usize {
        self.star_pairing[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::Signature(format!(
                "generator index {index} out of range for {} generators",
                self.len()
            )))
        }
    }
}

/// A product of distinct generators in ascending index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u32) -> Self {
        Monomial(bits)
    }

    pub fn generator(index: usize) -> Self {
        Monomial(1 << index)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> Parity {
        Parity::from_bits(self.degree())
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn indices(self) -> impl DoubleEndedIterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Canonical product `self * other` with its reordering sign, or `None`
    /// when a generator repeats.
    pub fn times(self, other: Monomial) -> Option<(f64, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` passes every larger generator of `self`.
        let swaps: u32 = other
            .indices()
            .map(|j| (self.0 >> (j + 1)).count_ones())
            .sum();
        Some((sign(swaps), Monomial(self.0 | other.0)))
    }
}

fn sign(swaps: u32) -> f64 {
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Number of transpositions needed to sort a sequence of distinct indices.
fn inversions(seq: &[usize]) -> u32 {
    let mut count = 0;
    for (a, &x) in seq.iter().enumerate() {
        count += seq[a + 1..].iter().filter(|&&y| y < x).count() as u32;
    }
    count
}

/// Element of the complex Grassmann algebra over a fixed signature.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement {
    signature: Arc<GeneratorSignature>,
    terms: BTreeMap<Monomial, Complex64>,
}

impl GrassmannElement {
    pub fn zero(signature: &Arc<GeneratorSignature>) -> Self {
        Self {
            signature: Arc::clone(signature),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(signature: &Arc<GeneratorSignature>) -> Self {
        Self::scalar(signature, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(signature: &Arc<GeneratorSignature>, value: Complex64) -> Self {
        Self::from_terms(signature, [(Monomial::ONE, value)])
    }

    pub fn real(signature: &Arc<GeneratorSignature>, value: f64) -> Self {
        Self::scalar(signature, Complex64::new(value, 0.0))
    }

    pub fn generator(signature: &Arc<GeneratorSignature>, index: usize) -> Result<Self> {
        signature.check_index(index)?;
        Ok(Self::from_terms(
            signature,
            [(Monomial::generator(index), Complex64::new(1.0, 0.0))],
        ))
    }

    /// Generator looked up by name.
    pub fn named(signature: &Arc<GeneratorSignature>, name: &str) -> Result<Self> {
        let index = signature
            .index_of(name)
            .ok_or_else(|| Error::Signature(format!("no generator named {name:?}")))?;
        Self::generator(signature, index)
    }

    /// Builds an element from canonical monomials; repeated keys are summed.
    pub fn from_terms(
        signature: &Arc<GeneratorSignature>,
        terms: impl IntoIterator<Item = (Monomial, Complex64)>,
    ) -> Self {
        let mut out = Self::zero(signature);
        for (m, c) in terms {
            debug_assert!(
                m.bits() >> signature.len() == 0,
                "monomial outside signature"
            );
            out.accumulate(m, c);
        }
        out
    }

    /// Product of generators given in arbitrary order, e.g. `[1, 0]` for
    /// `xi* xi`. Repeated generators give zero.
    pub fn word(signature: &Arc<GeneratorSignature>, word: &[usize]) -> Result<Self> {
        let mut acc = Self::one(signature);
        for &g in word {
            acc = acc.try_mul(&Self::generator(signature, g)?)?;
        }
        Ok(acc)
    }

    fn accumulate(&mut self, m: Monomial, c: Complex64) {
        let entry = self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn signature(&self) -> &Arc<GeneratorSignature> {
        &self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or_default()
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Complex64 {
        self.coefficient(Monomial::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(parity)` when every monomial shares one parity. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|m| m.parity());
        match parities.next() {
            None => Some(Parity::Even),
            Some(p) => parities.all(|q| q == p).then_some(p),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    /// Part of the element with the given parity.
    pub fn part(&self, parity: Parity) -> Self {
        Self {
            signature: Arc::clone(&self.signature),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == parity)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Applies `(-1)^{deg(m) * p}` to each monomial `m`: the sign picked up
    /// when the element is moved across an object of parity `p`.
    pub fn graded_shift(&self, p: Parity) -> Self {
        if p == Parity::Even {
            return self.clone();
        }
        self.map_terms(|m, c| if m.parity() == Parity::Odd { -c } else { c })
    }

    fn map_terms(&self, f: impl Fn(Monomial, Complex64) -> Complex64) -> Self {
        Self::from_terms(
            &self.signature,
            self.terms.iter().map(|(&m, &c)| (m, f(m, c))),
        )
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature {
            Ok(())
        } else {
            Err(Error::Signature(format!(
                "mismatched signatures {:?} and {:?}",
                self.signature.names, other.signature.names
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.accumulate(m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_terms(|_, x| x * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map_terms(|_, x| x * c)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.signature);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if let Some((s, m)) = ma.times(mb) {
                    out.accumulate(m, ca * cb * s);
                }
            }
        }
        Ok(out)
    }

    /// Conjugation: coefficients are complex-conjugated, generators mapped to
    /// their star partners and every product reversed, so `(ab)* = b* a*`.
    pub fn star(&self) -> Self {
        let sig = &self.signature;
        Self::from_terms(
            sig,
            self.terms.iter().map(|(&m, &c)| {
                let reversed: Vec<usize> = m.indices().rev().map(|i| sig.star_of(i)).collect();
                let bits = reversed.iter().fold(0u32, |acc, &i| acc | (1 << i));
                (Monomial(bits), c.conj() * sign(inversions(&reversed)))
            }),
        )
    }

    /// Left derivative: the generator is anticommuted to the front of each
    /// monomial and removed.
    pub fn deriv_left(&self, gen: usize) -> Result<Self> {
        self.signature.check_index(gen)?;
        let below = (1u32 << gen) - 1;
        Ok(Self::from_terms(
            &self.signature,
            self.terms
                .iter()
                .filter(|(m, _)| m.contains(gen))
                .map(|(&m, &c)| {
                    let s = sign((m.bits() & below).count_ones());
                    (Monomial(m.bits() & !(1 << gen)), c * s)
                }),
        ))
    }

    /// Berezin integral over one generator; identical to the left derivative.
    pub fn berezin(&self, gen: usize) -> Result<Self> {
        self.deriv_left(gen)
    }

    /// Iterated integral `∫d g_1 ... d g_k f`, innermost (rightmost) measure
    /// applied first.
    pub fn berezin_measure(&self, measure: &[usize]) -> Result<Self> {
        measure
            .iter()
            .rev()
            .try_fold(self.clone(), |acc, &g| acc.berezin(g))
    }

    /// `∫dx* dx f` for a complex pair: integrate over `x` first, then `x*`.
    pub fn berezin_pair(&self, gen: usize) -> Result<Self> {
        self.signature.check_index(gen)?;
        self.berezin_measure(&[self.signature.star_of(gen), gen])
    }

    /// Exponential of a body-free element. The series terminates exactly at
    /// the nilpotency degree.
    pub fn exp(&self) -> Result<Self> {
        let body = self.body();
        if body != Complex64::new(0.0, 0.0) {
            return Err(Error::NonNilpotent(body.to_string()));
        }
        let mut result = Self::one(&self.signature);
        let mut term = Self::one(&self.signature);
        for k in 1..=self.signature.len() {
            term = term.try_mul(self)?.scale_real(1.0 / k as f64);
            if term.is_zero() {
                break;
            }
            result = result.try_add(&term)?;
        }
        Ok(result)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&m, &c) in &self.terms {
            worst = worst.max((c - other.coefficient(m)).norm());
        }
        for (&m, &c) in &other.terms {
            if !self.terms.contains_key(&m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc.max(c.norm()))
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for i in m.indices() {
                write!(f, "·{}", self.signature.names[i])?;
            }
        }
        Ok(())
    }
}

// Operator sugar; panics on signature mismatch. Use the `try_*` methods when
// the operands may come from different signatures.

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: Self) -> GrassmannElement {
        self.try_add(rhs).expect("grassmann signature mismatch")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: Self) -> GrassmannElement {
        self.try_sub(rhs).expect("grassmann signature mismatch")
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: Self) -> GrassmannElement {
        self.try_mul(rhs).expect("grassmann signature mismatch")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale_real(-1.0)
    }
}

impl Add for GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: Self) -> GrassmannElement {
        &self + &rhs
    }
}

impl Sub for GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: Self) -> GrassmannElement {
        &self - &rhs
    }
}

impl Mul for GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: Self) -> GrassmannElement {
        &self * &rhs
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    struct Xi {
        sig: Arc<GeneratorSignature>,
        one: GrassmannElement,
        xi: GrassmannElement,
        xs: GrassmannElement,
    }

    fn xi() -> Xi {
        let sig = GeneratorSignature::xi();
        Xi {
            one: GrassmannElement::one(&sig),
            xi: GrassmannElement::generator(&sig, 0).unwrap(),
            xs: GrassmannElement::generator(&sig, 1).unwrap(),
            sig,
        }
    }

    #[test]
    fn signature_validation() {
        assert!(GeneratorSignature::new(vec!["a".into(), "a".into()], vec![1, 0]).is_err());
        assert!(GeneratorSignature::new(vec!["a".into(), "b".into()], vec![1, 1]).is_err());
        assert!(GeneratorSignature::new(vec!["a".into()], vec![0]).is_ok());
        let s = GeneratorSignature::xi_zeta();
        assert_eq!(s.names(), ["xi", "xi*", "zeta", "zeta*"]);
        for i in 0..4 {
            assert_eq!(s.star_of(s.star_of(i)), i);
        }
    }

    #[test]
    fn nilpotent_generators() {
        let x = xi();
        assert!((&x.xi * &x.xi).is_zero());
        assert!((&x.xs * &x.xs).is_zero());
    }

    #[test]
    fn anticommuting_pair() {
        let x = xi();
        assert_eq!(&x.xi * &x.xs, -(&x.xs * &x.xi));
        let xixs = &x.xi * &x.xs;
        assert_eq!(xixs.coefficient(Monomial::from_bits(0b11)), c(1.0, 0.0));
    }

    #[test]
    fn product_of_binomials() {
        let x = xi();
        let lhs = &(&x.one + &x.xi) * &(&x.one + &x.xs);
        let rhs = &(&(&x.one + &x.xi) + &x.xs) + &(&x.xi * &x.xs);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn add_and_scale() {
        let x = xi();
        assert_eq!(&x.xi + &GrassmannElement::zero(&x.sig), x.xi);
        let twice = (&x.xi * &x.xs).scale_real(2.0);
        assert_eq!(twice.num_terms(), 1);
        assert_eq!(twice.coefficient(Monomial::from_bits(0b11)), c(2.0, 0.0));
        assert!((&x.xi + &x.xi.scale_real(-1.0)).is_zero());
    }

    #[test]
    fn signature_mismatch() {
        let a = GrassmannElement::one(&GeneratorSignature::xi());
        let b = GrassmannElement::one(&GeneratorSignature::xi_zeta());
        assert!(matches!(a.try_mul(&b), Err(Error::Signature(_))));
        assert!(matches!(a.try_add(&b), Err(Error::Signature(_))));
    }

    #[test]
    fn star_rules() {
        let x = xi();
        assert_eq!(x.xi.star(), x.xs);
        let xixs = &x.xi * &x.xs;
        assert_eq!(xixs.star(), xixs);
        let z = x.xi.scale(c(0.0, 2.0));
        assert_eq!(z.star(), x.xs.scale(c(0.0, -2.0)));
    }

    #[test]
    fn left_derivative() {
        let x = xi();
        assert!(x.one.deriv_left(0).unwrap().is_zero());
        assert_eq!(x.xi.deriv_left(0).unwrap(), x.one);
        let xsxi = &x.xs * &x.xi;
        assert_eq!(xsxi.deriv_left(0).unwrap(), -&x.xs);
        assert!(matches!(x.xi.deriv_left(2), Err(Error::Signature(_))));
    }

    #[test]
    fn berezin_rules() {
        let x = xi();
        assert!(x.one.berezin(0).unwrap().is_zero());
        assert_eq!(x.xi.berezin(0).unwrap(), x.one);
        assert_eq!(x.xs.berezin(1).unwrap(), x.one);
        assert_eq!((&x.xi * &x.xs).berezin_pair(0).unwrap(), x.one);
        assert_eq!((&x.xs * &x.xi).berezin_pair(0).unwrap(), -&x.one);
    }

    #[test]
    fn berezin_matches_derivative_on_all_patterns() {
        let x = xi();
        for mask in 0u32..16 {
            let a = GrassmannElement::from_terms(
                &x.sig,
                (0..4u32)
                    .filter(|m| mask & (1 << m) != 0)
                    .map(|m| (Monomial::from_bits(m), c(1.0 + m as f64, -(m as f64)))),
            );
            for g in 0..2 {
                assert_eq!(a.berezin(g).unwrap(), a.deriv_left(g).unwrap());
            }
        }
    }

    #[test]
    fn exponentials() {
        let x = xi();
        assert_eq!(GrassmannElement::zero(&x.sig).exp().unwrap(), x.one);
        let xsxi = &x.xs * &x.xi;
        let e = xsxi.scale_real(-0.5).exp().unwrap();
        assert_eq!(e, &x.one - &xsxi.scale_real(0.5));
        let sum = &x.xi + &x.xs;
        assert_eq!(sum.exp().unwrap(), &(&x.one + &x.xi) + &x.xs);
        assert!(matches!(x.one.exp(), Err(Error::NonNilpotent(_))));
    }

    #[test]
    fn word_builds_ordered_products() {
        let x = xi();
        assert_eq!(
            GrassmannElement::word(&x.sig, &[1, 0]).unwrap(),
            &x.xs * &x.xi
        );
        assert!(GrassmannElement::word(&x.sig, &[0, 0]).unwrap().is_zero());
    }
}

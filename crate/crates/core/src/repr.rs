//! One-dimensional characters of `Ḡ = C*·G`, the completed ring of
//! non-positive representations with `Exp`/`Log`, equivariant Poincaré series
//! and the map `Tau` into the extended Burnside group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{frac, Rational};
use crate::burnside::ExtBurnsideElement;
use crate::error::{Error, Result};
use crate::lattice::{FiniteDiagonalGroup, TorsionVector};
use crate::qhpoly::{ExtendedGroup, QuasiPolynomial};
use crate::strata::milnor::monomials_of_degree;

/// A character `α` of `Ḡ`: `λ ↦ λ^k` on `C*`, and on `G` the character whose
/// value on the `i`-th Smith generator is `chi[i] / factor_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtCharacter {
    k: i64,
    chi: Vec<BigInt>,
}

impl ExtCharacter {
    pub fn degree(&self) -> i64 {
        self.k
    }

    pub fn chi(&self) -> &[BigInt] {
        &self.chi
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0 && self.chi.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ExtCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chi: Vec<String> = self.chi.iter().map(ToString::to_string).collect();
        write!(f, "({}; {})", self.k, chi.join(","))
    }
}

/// The character group of a fixed `Ḡ`, with `G`'s Smith basis cached.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    ext: ExtendedGroup,
    factors: Vec<BigInt>,
    gens: Vec<TorsionVector>,
    line: TorsionVector,
    line_order: BigInt,
}

impl CharacterGroup {
    pub fn new(ext: &ExtendedGroup) -> Self {
        let g = ext.finite_part();
        let line_group = ext.line_intersection();
        let line_order = line_group.order().clone();
        let line = ext
            .weights()
            .line_point(&Rational::new(BigInt::from(1), line_order.clone()));
        CharacterGroup {
            ext: ext.clone(),
            factors: g.invariant_factors().to_vec(),
            gens: g.generators().to_vec(),
            line,
            line_order,
        }
    }

    pub fn ext(&self) -> &ExtendedGroup {
        &self.ext
    }

    fn finite(&self) -> &FiniteDiagonalGroup {
        self.ext.finite_part()
    }

    pub fn trivial(&self) -> ExtCharacter {
        ExtCharacter {
            k: 0,
            chi: vec![BigInt::zero(); self.factors.len()],
        }
    }

    /// Builds `(k, chi)`, checking that both parts agree on `C* ∩ G`.
    pub fn character(&self, k: i64, chi: Vec<BigInt>) -> Result<ExtCharacter> {
        if chi.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: chi.len(),
            });
        }
        let chi = chi
            .into_iter()
            .zip(&self.factors)
            .map(|(c, f)| c.mod_floor(f))
            .collect();
        let a = ExtCharacter { k, chi };
        if self.is_compatible(&a) {
            Ok(a)
        } else {
            Err(Error::IncompatibleCharacter)
        }
    }

    pub fn is_compatible(&self, a: &ExtCharacter) -> bool {
        let on_line = Rational::new(BigInt::from(a.k), self.line_order.clone());
        self.value_on_finite(a, &self.line) == Some(frac(&on_line))
    }

    /// `α(g)` in `[0, 1)` for `g ∈ G`.
    pub fn value_on_finite(&self, a: &ExtCharacter, g: &TorsionVector) -> Option<Rational> {
        self.finite().pair(&a.chi, g)
    }

    /// The character of the line spanned by `x^m`: `a·x^m = a^{−m} x^m`.
    pub fn of_monomial(&self, m: &[u32]) -> ExtCharacter {
        let k = -(self.ext.weights().degree(m) as i64);
        let chi = self
            .gens
            .iter()
            .zip(&self.factors)
            .map(|(g, f)| {
                let pairing: Rational = g
                    .coords()
                    .iter()
                    .zip(m)
                    .map(|(c, &e)| c * BigInt::from(e))
                    .sum();
                let v = frac(&-pairing) * f;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let a = ExtCharacter { k, chi };
        debug_assert!(self.is_compatible(&a));
        a
    }

    /// `α_{x_i}`.
    pub fn of_coordinate(&self, i: usize) -> ExtCharacter {
        let mut m = vec![0u32; self.ext.dim()];
        m[i] = 1;
        self.of_monomial(&m)
    }

    /// `α_f`, the character of any support monomial of `f`.
    pub fn of_polynomial(&self, p: &QuasiPolynomial) -> ExtCharacter {
        let m = p.support().next().expect("polynomials have support");
        self.of_monomial(m)
    }

    pub fn mul(&self, a: &ExtCharacter, b: &ExtCharacter) -> ExtCharacter {
        ExtCharacter {
            k: a.k + b.k,
            chi: a
                .chi
                .iter()
                .zip(&b.chi)
                .zip(&self.factors)
                .map(|((x, y), f)| (x + y).mod_floor(f))
                .collect(),
        }
    }

    pub fn inverse(&self, a: &ExtCharacter) -> ExtCharacter {
        ExtCharacter {
            k: -a.k,
            chi: a
                .chi
                .iter()
                .zip(&self.factors)
                .map(|(x, f)| (-x).mod_floor(f))
                .collect(),
        }
    }

    pub fn pow(&self, a: &ExtCharacter, j: i64) -> ExtCharacter {
        ExtCharacter {
            k: a.k * j,
            chi: a
                .chi
                .iter()
                .zip(&self.factors)
                .map(|(x, f)| (x * j).mod_floor(f))
                .collect(),
        }
    }

    /// `ker α`, generated by `q/k` and `g_i − (chi(g_i)/k)·q`.
    pub fn kernel(&self, a: &ExtCharacter) -> Result<FiniteDiagonalGroup> {
        if a.k == 0 {
            return Err(Error::NonNegativeCharacter(0));
        }
        let w = self.ext.weights();
        let k = BigInt::from(a.k);
        let mut gens = vec![w.line_point(&Rational::new(BigInt::from(1), k.abs()))];
        for ((g, c), f) in self.gens.iter().zip(&a.chi).zip(&self.factors) {
            let t = Rational::new(c.clone(), f * &k);
            gens.push(g.add(&w.line_point(&-t))?);
        }
        let ker = FiniteDiagonalGroup::generated_by(self.ext.dim(), &gens)?;
        let expected = k.abs() * self.finite().order() / &self.line_order;
        if ker.order() != &expected || !self.ext.contains_subgroup(&ker) {
            return Err(Error::IncompatibleCharacter);
        }
        Ok(ker)
    }
}

/// A finite integer combination of characters: an element of `R(Ḡ)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteRepElement {
    coeffs: BTreeMap<ExtCharacter, i64>,
}

impl FiniteRepElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExtCharacter, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (a, c) in terms {
            *coeffs.entry(a).or_insert(0) += c;
        }
        coeffs.retain(|_, v| *v != 0);
        FiniteRepElement { coeffs }
    }

    pub fn coeff(&self, a: &ExtCharacter) -> i64 {
        self.coeffs.get(a).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtCharacter, i64)> {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.coeffs.keys().map(|a| a.k).min().unwrap_or(0)
    }

    /// Views the element as a series truncated at `depth`.
    pub fn to_series(&self, depth: u32) -> Result<NegSeries> {
        NegSeries::from_terms(depth, self.terms().map(|(a, c)| (a.clone(), c)))
    }
}

/// An element of the completion of `R_−(Ḡ)`, known in degrees `0 ≥ k ≥ −depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegSeries {
    depth: u32,
    coeffs: BTreeMap<ExtCharacter, i64>,
}

impl NegSeries {
    pub fn zero(depth: u32) -> Self {
        NegSeries {
            depth,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &CharacterGroup, depth: u32) -> Self {
        let mut s = Self::zero(depth);
        s.coeffs.insert(group.trivial(), 1);
        s
    }

    /// Collects terms; positive degrees are rejected, degrees past the
    /// truncation dropped.
    pub fn from_terms(
        depth: u32,
        terms: impl IntoIterator<Item = (ExtCharacter, i64)>,
    ) -> Result<Self> {
        let mut s = Self::zero(depth);
        for (a, c) in terms {
            if a.k > 0 {
                return Err(Error::Unsupported(format!(
                    "character {a} has positive degree"
                )));
            }
            s.add_term(a, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, a: ExtCharacter, c: i64) {
        if -a.k > i64::from(self.depth) || c == 0 {
            return;
        }
        let e = self.coeffs.entry(a).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn coeff(&self, a: &ExtCharacter) -> i64 {
        self.coeffs.get(a).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtCharacter, i64)> {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn terms_of_degree(&self, k: i64) -> impl Iterator<Item = (&ExtCharacter, i64)> {
        self.terms().filter(move |(a, _)| a.k == k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = NegSeries::zero(self.depth.min(other.depth));
        for (a, c) in self.terms().chain(other.terms()) {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        NegSeries {
            depth: self.depth,
            coeffs: self.coeffs.iter().map(|(a, &c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self, group: &CharacterGroup) -> Self {
        let mut out = NegSeries::zero(self.depth.min(other.depth));
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if -(a.k + b.k) <= i64::from(out.depth) {
                    out.add_term(group.mul(a, b), x * y);
                }
            }
        }
        out
    }

    /// Multiplies by `(1 − [α])^{−s}`.
    fn mul_geometric(&mut self, a: &ExtCharacter, s: i64, group: &CharacterGroup) {
        debug_assert!(a.k < 0);
        let depth = i64::from(self.depth);
        for _ in 0..s.unsigned_abs() {
            let mut out = NegSeries::zero(self.depth);
            for (b, c) in self.terms() {
                if s < 0 {
                    out.add_term(b.clone(), c);
                    out.add_term(group.mul(a, b), -c);
                } else {
                    let mut j = 0;
                    while -(b.k + j * a.k) <= depth {
                        out.add_term(group.mul(&group.pow(a, j), b), c);
                        j += 1;
                    }
                }
            }
            *self = out;
        }
    }

    /// Forgets the `G`-part: the coefficients of `t^0, …, t^depth`.
    pub fn specialize(&self) -> Vec<i64> {
        let mut out = vec![0; self.depth as usize + 1];
        for (a, c) in self.terms() {
            out[(-a.k) as usize] += c;
        }
        out
    }
}

/// `Exp(Σ s_α[α]) = Π (1 − [α])^{−s_α}` for `s` supported in negative degrees.
pub fn exp_map(s: &NegSeries, group: &CharacterGroup) -> Result<NegSeries> {
    let mut out = NegSeries::one(group, s.depth);
    for (a, c) in s.terms() {
        if a.k >= 0 {
            return Err(Error::NonNegativeCharacter(a.k));
        }
        out.mul_geometric(a, c, group);
    }
    Ok(out)
}

/// The inverse of [`exp_map`], solved degree by degree: the degree `−k` part of
/// `Exp(s)` is `s_{−k}` plus terms built from lower degrees only.
pub fn log_map(p: &NegSeries, group: &CharacterGroup) -> Result<NegSeries> {
    let trivial = group.trivial();
    let constant = p.coeff(&trivial);
    if constant != 1 {
        return Err(Error::MalformedConstantTerm(constant));
    }
    if let Some((a, _)) = p.terms_of_degree(0).find(|(a, _)| **a != trivial) {
        return Err(Error::Unsupported(format!(
            "degree-zero character {a} in a series passed to Log"
        )));
    }
    let mut s = NegSeries::zero(p.depth);
    let mut current = NegSeries::one(group, p.depth);
    for k in 1..=i64::from(p.depth) {
        let mut layer: BTreeMap<ExtCharacter, i64> = BTreeMap::new();
        for (a, c) in p.terms_of_degree(-k) {
            *layer.entry(a.clone()).or_insert(0) += c;
        }
        for (a, c) in current.terms_of_degree(-k) {
            *layer.entry(a.clone()).or_insert(0) -= c;
        }
        for (a, c) in layer {
            if c != 0 {
                s.add_term(a.clone(), c);
                current.mul_geometric(&a, c, group);
            }
        }
    }
    Ok(s)
}

/// Which graded ring a counted Poincaré series describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoincareSpace {
    /// `C[x_1, …, x_n]`.
    Ambient,
    /// `C[x_1, …, x_n]/(f)`.
    Hypersurface,
}

/// The Poincaré series by enumerating monomials up to quasidegree `depth`.
pub fn poincare_counted(
    space: PoincareSpace,
    p: &QuasiPolynomial,
    group: &CharacterGroup,
    depth: u32,
    monomial_limit: usize,
) -> Result<NegSeries> {
    let q = group.ext.weights().q().to_vec();
    let mut ambient = NegSeries::zero(depth);
    let mut seen = 0usize;
    for deg in 0..=u64::from(depth) {
        let monomials = monomials_of_degree(&q, deg, monomial_limit.saturating_sub(seen).max(1))?;
        seen += monomials.len();
        if seen > monomial_limit {
            return Err(Error::ResourceLimit(format!(
                "more than {monomial_limit} monomials up to degree {depth}"
            )));
        }
        for m in monomials {
            ambient.add_term(group.of_monomial(&m), 1);
        }
    }
    match space {
        PoincareSpace::Ambient => Ok(ambient),
        PoincareSpace::Hypersurface => {
            // dim A_X^α = dim A^α − dim A^{α/α_f}
            let af = group.of_polynomial(p);
            let mut out = ambient.clone();
            for (a, c) in ambient.terms() {
                out.add_term(group.mul(a, &af), -c);
            }
            Ok(out)
        }
    }
}

/// `numerator / Π denominator` with factors `(1 − [α])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPoincare {
    pub numerator: Vec<ExtCharacter>,
    pub denominator: Vec<ExtCharacter>,
}

impl ClosedPoincare {
    pub fn expand(&self, group: &CharacterGroup, depth: u32) -> NegSeries {
        let mut out = NegSeries::one(group, depth);
        for a in &self.numerator {
            out.mul_geometric(a, -1, group);
        }
        for a in &self.denominator {
            out.mul_geometric(a, 1, group);
        }
        out
    }
}

/// `P_X = (1 − [α_f]) / Π (1 − [α_{x_i}])`.
pub fn poincare_closed(p: &QuasiPolynomial, group: &CharacterGroup) -> ClosedPoincare {
    ClosedPoincare {
        numerator: vec![group.of_polynomial(p)],
        denominator: (0..p.dim()).map(|i| group.of_coordinate(i)).collect(),
    }
}

/// `1 / Π (1 − [α_{x_i}])`.
pub fn poincare_closed_ambient(group: &CharacterGroup) -> ClosedPoincare {
    ClosedPoincare {
        numerator: Vec::new(),
        denominator: (0..group.ext.dim())
            .map(|i| group.of_coordinate(i))
            .collect(),
    }
}

/// `Log P_X = Σ [α_{x_i}] − [α_f]`.
pub fn log_poincare(p: &QuasiPolynomial, group: &CharacterGroup) -> FiniteRepElement {
    FiniteRepElement::from_terms(
        (0..p.dim())
            .map(|i| (group.of_coordinate(i), 1))
            .chain(std::iter::once((group.of_polynomial(p), -1))),
    )
}

/// `Tau[α] = [Ḡ/ker α]`, extended additively to elements of negative degree.
pub fn tau(a: &FiniteRepElement, group: &CharacterGroup) -> Result<ExtBurnsideElement> {
    let mut out = ExtBurnsideElement::zero(&group.ext);
    for (alpha, c) in a.terms() {
        if alpha.k >= 0 {
            return Err(Error::NonNegativeCharacter(alpha.k));
        }
        out = out.with_term(group.kernel(alpha)?, c)?;
    }
    Ok(out)
}

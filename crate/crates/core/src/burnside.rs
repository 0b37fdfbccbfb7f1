//! Burnside rings of finite diagonal groups, the extended Burnside group of
//! `C*·G`, and the equivariant invariants built from strata characteristics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::to_i64;
use crate::error::{Error, Result};
use crate::lattice::{FiniteDiagonalGroup, TorsionVector};
use crate::qhpoly::ExtendedGroup;
use crate::strata::StrataChi;

/// Character of a finite group as numerators on its Smith generators.
pub type CharacterValues = Vec<BigInt>;

/// An element `Σ a_H [G/H]` of the Burnside ring `K(G)` of a finite abelian
/// group `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    ambient: FiniteDiagonalGroup,
    coeffs: BTreeMap<FiniteDiagonalGroup, i64>,
}

impl BurnsideElement {
    pub fn zero(ambient: &FiniteDiagonalGroup) -> Self {
        BurnsideElement {
            ambient: ambient.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `[G/G]`, the class of a point.
    pub fn one(ambient: &FiniteDiagonalGroup) -> Self {
        Self::zero(ambient).plus_term(ambient.clone(), 1)
    }

    /// The class `[G/H]`.
    pub fn orbit(ambient: &FiniteDiagonalGroup, h: &FiniteDiagonalGroup) -> Result<Self> {
        if !ambient.contains(h) {
            return Err(Error::NotASubgroup(h.to_string()));
        }
        Ok(Self::zero(ambient).plus_term(h.clone(), 1))
    }

    pub fn from_terms(
        ambient: &FiniteDiagonalGroup,
        terms: impl IntoIterator<Item = (FiniteDiagonalGroup, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ambient);
        for (h, c) in terms {
            if !ambient.contains(&h) {
                return Err(Error::NotASubgroup(h.to_string()));
            }
            out = out.plus_term(h, c);
        }
        Ok(out)
    }

    fn plus_term(mut self, h: FiniteDiagonalGroup, c: i64) -> Self {
        let e = self.coeffs.entry(h).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
        self
    }

    pub fn ambient(&self) -> &FiniteDiagonalGroup {
        &self.ambient
    }

    pub fn coeff(&self, h: &FiniteDiagonalGroup) -> i64 {
        self.coeffs.get(h).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FiniteDiagonalGroup, i64)> {
        self.coeffs.iter().map(|(h, &c)| (h, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(other
            .coeffs
            .iter()
            .fold(self.clone(), |acc, (h, &c)| acc.plus_term(h.clone(), c)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|_| k != 0)
            .map(|(h, &c)| (h.clone(), c * k))
            .collect();
        BurnsideElement {
            ambient: self.ambient.clone(),
            coeffs,
        }
    }

    /// Product by cartesian product of `G`-sets. For abelian `G`,
    /// `[G/H]·[G/K] = (|G|·|H∩K|)/(|H|·|K|) · [G/(H∩K)]`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let g = self.ambient.order();
        let mut out = Self::zero(&self.ambient);
        for (h, a) in self.terms() {
            for (k, b) in other.terms() {
                let hk = h.intersect(k)?;
                let count = to_i64(&(g * hk.order() / (h.order() * k.order())))?;
                out = out.plus_term(hk, a * b * count);
            }
        }
        Ok(out)
    }

    /// Image in the representation ring: `[G/H]` goes to the sum of the
    /// characters trivial on `H` (the functions on `G/H`).
    pub fn to_repr_ring(&self) -> BTreeMap<CharacterValues, i64> {
        let chars = self.ambient.characters();
        let mut out: BTreeMap<CharacterValues, i64> = BTreeMap::new();
        for (h, c) in self.terms() {
            let gens = h.basis_elements();
            for chi in &chars {
                let trivial = gens
                    .iter()
                    .all(|x| self.ambient.pair(chi, x).is_some_and(|v| v.is_zero()));
                if trivial {
                    *out.entry(chi.clone()).or_insert(0) += c;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Restriction to a subgroup `H`: `G/K` splits into
    /// `(|G|·|H∩K|)/(|K|·|H|)` copies of `H/(H∩K)`.
    pub fn res(&self, h: &FiniteDiagonalGroup) -> Result<Self> {
        if !self.ambient.contains(h) {
            return Err(Error::NotASubgroup(h.to_string()));
        }
        let g = self.ambient.order();
        let mut out = Self::zero(h);
        for (k, c) in self.terms() {
            let hk = h.intersect(k)?;
            let copies = to_i64(&(g * hk.order() / (k.order() * h.order())))?;
            out = out.plus_term(hk, c * copies);
        }
        Ok(out)
    }

    /// Induction to a supergroup: `[H/H'] ↦ [G/H']`.
    pub fn ind(&self, g: &FiniteDiagonalGroup) -> Result<Self> {
        if !g.contains(&self.ambient) {
            return Err(Error::NotASubgroup(self.ambient.to_string()));
        }
        Ok(BurnsideElement {
            ambient: g.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// `Ind_G^Ḡ`: `[G/H] ↦ [Ḡ/H]`.
    pub fn ind_ext(&self, group: &ExtendedGroup) -> Result<ExtBurnsideElement> {
        if group.finite_part() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(ExtBurnsideElement {
            ambient: group.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// Total cardinality `Σ a_H·|G/H|`.
    pub fn cardinality(&self) -> Result<i64> {
        let g = self.ambient.order();
        self.terms()
            .map(|(h, c)| Ok(c * to_i64(&(g / h.order()))?))
            .sum()
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ambient.label();
        write_terms(
            f,
            self.terms()
                .map(|(h, c)| (format!("[{g}/{}]", h.label()), c)),
        )
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, i64)>,
) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if c.abs() != 1 {
            write!(f, "{}", c.abs())?;
        }
        write!(f, "{label}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// An element `Σ a_H [Ḡ/H]` of the Grothendieck group of `Ḡ`-sets with finitely
/// many orbits and finite isotropy. There is deliberately no product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtBurnsideElement {
    ambient: ExtendedGroup,
    coeffs: BTreeMap<FiniteDiagonalGroup, i64>,
}

impl ExtBurnsideElement {
    pub fn zero(ambient: &ExtendedGroup) -> Self {
        ExtBurnsideElement {
            ambient: ambient.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The class `[Ḡ/H]` of a finite subgroup `H ⊂ Ḡ`.
    pub fn orbit(ambient: &ExtendedGroup, h: &FiniteDiagonalGroup) -> Result<Self> {
        Self::zero(ambient).with_term(h.clone(), 1)
    }

    /// Adds `c·[Ḡ/H]`, certifying `H ⊂ Ḡ`.
    pub fn with_term(mut self, h: FiniteDiagonalGroup, c: i64) -> Result<Self> {
        if !self.ambient.contains_subgroup(&h) {
            return Err(Error::NotASubgroup(h.to_string()));
        }
        let e = self.coeffs.entry(h).or_insert(0);
        *e += c;
        self.coeffs.retain(|_, v| *v != 0);
        Ok(self)
    }

    pub fn ambient(&self) -> &ExtendedGroup {
        &self.ambient
    }

    pub fn coeff(&self, h: &FiniteDiagonalGroup) -> i64 {
        self.coeffs.get(h).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FiniteDiagonalGroup, i64)> {
        self.coeffs.iter().map(|(h, &c)| (h, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (h, &c) in &other.coeffs {
            *coeffs.entry(h.clone()).or_insert(0) += c;
        }
        coeffs.retain(|_, v| *v != 0);
        Ok(ExtBurnsideElement {
            ambient: self.ambient.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: i64) -> Self {
        ExtBurnsideElement {
            ambient: self.ambient.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|_| k != 0)
                .map(|(h, &c)| (h.clone(), c * k))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Reduction `[Ḡ/H] ↦ [G/(H∩G)]`, a left inverse of `ind_ext`.
    pub fn red(&self) -> Result<BurnsideElement> {
        let g = self.ambient.finite_part();
        let mut out = BurnsideElement::zero(g);
        for (h, c) in self.terms() {
            out = out.plus_term(h.intersect(g)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for ExtBurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms().map(|(h, c)| (format!("[Ḡ/{}]", h.label()), c)),
        )
    }
}

/// The `G`-equivariant zeta function `Σ_H χ(V_f^{(H)}/G)·[G/H]`.
///
/// Isotropy on the torus stratum `(C*)^J` is the coordinate kernel `G^J`, and
/// `G/G^J` acts freely there, so each stratum contributes
/// `χ_V[J]·|G^J|/|G|` to the coefficient of `[G/G^J]`.
pub fn zeta_equivariant(
    strata: &StrataChi,
    g: &FiniteDiagonalGroup,
    monodromy: &TorsionVector,
) -> Result<BurnsideElement> {
    if !g.contains_element(monodromy) {
        return Err(Error::MonodromyNotInGroup);
    }
    let mut out = BurnsideElement::zero(g);
    for s in strata.iter() {
        if s.chi_v == 0 {
            continue;
        }
        let iso = g.coordinate_kernel(&s.coords)?;
        let num = BigInt::from(s.chi_v) * iso.order();
        let (q, r) = num.div_rem(g.order());
        if !r.is_zero() {
            return Err(Error::NonIntegralCoefficient {
                num: s.chi_v,
                den: to_i64(&(g.order() / iso.order()))?,
                subgroup: iso.to_string(),
            });
        }
        out = out.plus_term(iso, to_i64(&q)?);
    }
    Ok(out)
}

/// `ζ̃ = ζ − 1`.
pub fn reduced(zeta: &BurnsideElement) -> BurnsideElement {
    zeta.clone().plus_term(zeta.ambient.clone(), -1)
}

/// The orbit invariant `Σ_{J≠∅} χ(Y^J)·[Ḡ/Ḡ^J]`.
pub fn orbit_invariant(strata: &StrataChi, group: &ExtendedGroup) -> Result<ExtBurnsideElement> {
    let mut out = ExtBurnsideElement::zero(group);
    for s in strata.iter().filter(|s| !s.coords.is_empty()) {
        if s.chi_y == 0 {
            continue;
        }
        let iso = group.coordinate_isotropy(&s.coords)?;
        out = out.with_term(iso, s.chi_y)?;
    }
    Ok(out)
}

/// A formal product `∏_{m | d} (1 − t^m)^{s_m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFunction {
    d: u64,
    exponents: BTreeMap<u64, i64>,
}

impl CyclotomicFunction {
    pub fn new(d: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut out = CyclotomicFunction {
            d,
            exponents: BTreeMap::new(),
        };
        for (m, s) in exponents {
            if m == 0 || !d.is_multiple_of(m) {
                return Err(Error::Unsupported(format!("{m} does not divide {d}")));
            }
            *out.exponents.entry(m).or_insert(0) += s;
        }
        out.exponents.retain(|_, s| *s != 0);
        Ok(out)
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn exponent(&self, m: u64) -> i64 {
        self.exponents.get(&m).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// `Σ m·s_m`, the degree of the product as a rational function.
    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|(&m, &s)| m as i64 * s).sum()
    }

    /// Divides by `(1 − t)`.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        *out.exponents.entry(1).or_insert(0) -= 1;
        out.exponents.retain(|_, s| *s != 0);
        out
    }

    /// Duality `∏(1 − t^m)^{s_m} ↦ ∏(1 − t^{d/m})^{−s_m}`.
    pub fn saito_dual(&self) -> Self {
        let mut out = CyclotomicFunction {
            d: self.d,
            exponents: BTreeMap::new(),
        };
        for (&m, &s) in &self.exponents {
            *out.exponents.entry(self.d / m).or_insert(0) -= s;
        }
        out.exponents.retain(|_, s| *s != 0);
        out
    }

    /// Power-series coefficients up to and including `t^depth`.
    pub fn expand(&self, depth: usize) -> Vec<i64> {
        let mut series = vec![0i64; depth + 1];
        series[0] = 1;
        for (&m, &s) in &self.exponents {
            let m = m as usize;
            for _ in 0..s.unsigned_abs() {
                if s > 0 {
                    // multiply by (1 − t^m)
                    for i in (m..=depth).rev() {
                        series[i] -= series[i - m];
                    }
                } else {
                    // divide by (1 − t^m)
                    for i in m..=depth {
                        series[i] += series[i - m];
                    }
                }
            }
        }
        series
    }
}

impl fmt::Display for CyclotomicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |m: u64, e: i64| {
            let base = if m == 1 {
                "(1-t)".to_string()
            } else {
                format!("(1-t^{m})")
            };
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        };
        let num: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, &s)| s > 0)
            .map(|(&m, &s)| factor(m, s))
            .collect();
        let den: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, &s)| s < 0)
            .map(|(&m, &s)| factor(m, -s))
            .collect();
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("")
        };
        match den.len() {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/{}", den[0]),
            _ => write!(f, "{num}/({})", den.join("")),
        }
    }
}

/// `Σ s_m [Z_d/Z_{d/m}] ↦ ∏ (1 − t^m)^{s_m}` on a cyclic ambient group.
pub fn to_cyclotomic(a: &BurnsideElement) -> Result<CyclotomicFunction> {
    let g = a.ambient();
    if !g.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let d = g.order().to_u64().ok_or(Error::NotCyclic)?;
    CyclotomicFunction::new(
        d,
        a.terms()
            .map(|(h, c)| ((g.order() / h.order()).to_u64().unwrap(), c)),
    )
}

/// Inverse of [`to_cyclotomic`]: exponent slot `m` becomes the subgroup of
/// index `m`.
pub fn from_cyclotomic(
    cf: &CyclotomicFunction,
    g: &FiniteDiagonalGroup,
) -> Result<BurnsideElement> {
    if !g.is_cyclic() || g.order() != &BigInt::from(cf.modulus()) {
        return Err(Error::NotCyclic);
    }
    let mut out = BurnsideElement::zero(g);
    for (&m, &s) in cf.exponents() {
        out = out.plus_term(subgroup_of_index(g, m)?, s);
    }
    Ok(out)
}

/// The unique subgroup of index `m` in a cyclic group.
pub fn subgroup_of_index(g: &FiniteDiagonalGroup, m: u64) -> Result<FiniteDiagonalGroup> {
    if !g.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let gens: Vec<TorsionVector> = g
        .generators()
        .iter()
        .map(|x| x.mul_int(&BigInt::from(m)))
        .collect();
    FiniteDiagonalGroup::generated_by(g.dim(), &gens)
}

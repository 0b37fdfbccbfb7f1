//! Quasihomogeneous polynomials, their weight systems and diagonal symmetry
//! groups, and the extended group `C*·G`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, lcm_all, Rational};
use crate::error::{Error, Result};
use crate::lattice::{FiniteDiagonalGroup, IntMatrix, TorsionVector};
use crate::linalg;

pub type Exponent = Vec<u32>;

/// Weights `(q_1, …, q_n; d)` of a quasihomogeneous polynomial.
///
/// Weights inferred from a polynomial are primitive (`gcd(q) = 1`); weights
/// induced on a coordinate restriction need not be.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    q: Vec<u64>,
    d: u64,
}

impl WeightSystem {
    pub fn new(q: Vec<u64>, d: u64) -> Result<Self> {
        if d == 0 || q.contains(&0) {
            return Err(Error::NonPositiveWeight);
        }
        Ok(WeightSystem { q, d })
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn is_primitive(&self) -> bool {
        self.q.iter().fold(0u64, |g, &w| g.gcd(&w)) == 1
    }

    /// Quasidegree `<q, k>` of a monomial.
    pub fn degree(&self, k: &[u32]) -> u64 {
        self.q.iter().zip(k).map(|(&w, &e)| w * u64::from(e)).sum()
    }

    /// The element `t·q mod 1` of the additive C*-line.
    pub fn line_point(&self, t: &Rational) -> TorsionVector {
        TorsionVector::new(
            self.q
                .iter()
                .map(|&w| Rational::from_integer(BigInt::from(w)) * t)
                .collect(),
        )
    }

    /// The monodromy element `h = q/d mod 1`.
    pub fn monodromy(&self) -> TorsionVector {
        self.line_point(&Rational::new(BigInt::one(), BigInt::from(self.d)))
    }

    fn restricted(&self, coords: &[usize]) -> WeightSystem {
        WeightSystem {
            q: coords.iter().map(|&i| self.q[i]).collect(),
            d: self.d,
        }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.q.iter().map(u64::to_string).collect();
        write!(f, "({}; {})", q.join(", "), self.d)
    }
}

/// A polynomial `Σ c_k x^k` with rational coefficients together with its
/// weight system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
    weights: WeightSystem,
}

/// Result of setting the coordinates outside an index set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    Zero,
    Poly(QuasiPolynomial),
}

impl QuasiPolynomial {
    /// Builds a polynomial and infers its weights. Repeated exponents are
    /// summed and zero coefficients dropped.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let terms = collect_terms(n, terms)?;
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let weights = infer_weights(n, terms.keys())?;
        Ok(QuasiPolynomial { n, terms, weights })
    }

    /// Convenience constructor with unit coefficients.
    pub fn from_support(n: usize, support: &[Vec<u32>]) -> Result<Self> {
        Self::new(n, support.iter().map(|k| (k.clone(), Rational::one())))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn exponent_matrix(&self) -> IntMatrix {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// The symmetry group `G_f = {r : <r, k> ≡ 0 mod 1 for k ∈ supp f}`.
    pub fn symmetry_group(&self) -> Result<FiniteDiagonalGroup> {
        FiniteDiagonalGroup::kernel_mod_1(&self.exponent_matrix(), self.n)
    }

    pub fn monodromy_element(&self) -> TorsionVector {
        self.weights.monodromy()
    }

    /// `true` iff the diagonal element fixes every monomial of `f`.
    pub fn is_symmetry(&self, a: &TorsionVector) -> bool {
        a.dim() == self.n
            && self.terms.keys().all(|k| {
                let s: Rational = a
                    .coords()
                    .iter()
                    .zip(k)
                    .map(|(c, &e)| c * Rational::from_integer(BigInt::from(e)))
                    .sum();
                s.is_integer()
            })
    }

    /// `f` with `x_i := 0` for `i ∉ coords`, as a polynomial in the variables
    /// listed in `coords` (0-based, increasing) with the induced weights.
    pub fn restrict(&self, coords: &[usize]) -> Restriction {
        let terms: BTreeMap<Exponent, Rational> = self
            .terms
            .iter()
            .filter(|(k, _)| (0..self.n).all(|i| coords.contains(&i) || k[i] == 0))
            .map(|(k, c)| (coords.iter().map(|&i| k[i]).collect(), c.clone()))
            .collect();
        if terms.is_empty() {
            return Restriction::Zero;
        }
        Restriction::Poly(QuasiPolynomial {
            n: coords.len(),
            terms,
            weights: self.weights.restricted(coords),
        })
    }

    /// Formats with the given variable names (falls back to `x1, x2, …`).
    pub fn format_with(&self, names: &[String]) -> String {
        let name = |i: usize| {
            names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{}", i + 1))
        };
        let mut out = String::new();
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let abs = c.abs();
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        name(i)
                    } else {
                        format!("{}^{e}", name(i))
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = match self.n {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            _ => Vec::new(),
        };
        f.write_str(&self.format_with(&names))
    }
}

fn collect_terms(
    n: usize,
    terms: impl IntoIterator<Item = (Exponent, Rational)>,
) -> Result<BTreeMap<Exponent, Rational>> {
    let mut out: BTreeMap<Exponent, Rational> = BTreeMap::new();
    for (k, c) in terms {
        if k.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: k.len(),
            });
        }
        *out.entry(k).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// The unique primitive weight system with `<q, k> = d` on the support.
pub fn infer_weights<'a>(
    n: usize,
    support: impl IntoIterator<Item = &'a Exponent>,
) -> Result<WeightSystem> {
    let rows: Vec<Vec<Rational>> = support
        .into_iter()
        .map(|k| {
            k.iter()
                .map(|&e| Rational::from_integer(BigInt::from(e)))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let ones = vec![Rational::one(); rows.len()];
    // normalise d = 1 and solve <q, k> = 1
    let (q, rank) = linalg::solve(&rows, &ones).ok_or(Error::NotQuasihomogeneous)?;
    if rank < n {
        return Err(Error::WeightsNotUnique {
            span: rank.saturating_sub(1),
            needed: n.saturating_sub(1),
        });
    }
    if q.iter().any(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight);
    }
    let den = lcm_all(q.iter().map(|w| w.denom()));
    let scaled: Vec<BigInt> = q
        .iter()
        .map(|w| (w * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let to_u64 = |v: BigInt| {
        v.to_u64()
            .ok_or_else(|| Error::ResourceLimit("weight exceeds 64 bits".into()))
    };
    let q = scaled
        .into_iter()
        .map(|v| to_u64(v / &g))
        .collect::<Result<Vec<_>>>()?;
    let d = to_u64(den / &g)?;
    WeightSystem::new(q, d)
}

/// The group `C*·G` for a finite `G ⊆ G_f` containing the monodromy.
///
/// Only the finite part and the weights are stored; the group itself is
/// infinite and never enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedGroup {
    weights: WeightSystem,
    finite: FiniteDiagonalGroup,
}

impl ExtendedGroup {
    pub fn new(weights: WeightSystem, finite: FiniteDiagonalGroup) -> Result<Self> {
        if finite.dim() != weights.dim() {
            return Err(Error::DimensionMismatch {
                expected: weights.dim(),
                found: finite.dim(),
            });
        }
        if !finite.contains_element(&weights.monodromy()) {
            return Err(Error::MonodromyNotInGroup);
        }
        Ok(ExtendedGroup { weights, finite })
    }

    /// `C*` alone, i.e. `G = <h>`.
    pub fn torus(weights: WeightSystem) -> Self {
        let finite = FiniteDiagonalGroup::generated_by(weights.dim(), &[weights.monodromy()])
            .expect("dimension matches");
        ExtendedGroup { weights, finite }
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn finite_part(&self) -> &FiniteDiagonalGroup {
        &self.finite
    }

    pub fn dim(&self) -> usize {
        self.weights.dim()
    }

    /// `G + <q/m>`, the part of `C*·G` whose line parameter has denominator
    /// dividing `m`.
    pub fn slice(&self, m: &BigInt) -> FiniteDiagonalGroup {
        let u = self
            .weights
            .line_point(&Rational::new(BigInt::one(), m.clone()));
        let line = FiniteDiagonalGroup::generated_by(self.dim(), &[u]).expect("dimension matches");
        self.finite.join(&line).expect("dimension matches")
    }

    /// Whether `a` lies in `C*·G`, i.e. `a − t·q ∈ G` for some rational `t`.
    ///
    /// With `Σ u_i q_i = 1`, any such `t` is `Σ u_i (a_i − g_i)` mod 1, so its
    /// denominator divides `lcm(order of a, exponent of G)`.
    pub fn contains_element(&self, a: &TorsionVector) -> bool {
        if a.dim() != self.dim() {
            return false;
        }
        let m = a.order().lcm(self.finite.exponent());
        self.slice(&m).contains_element(a)
    }

    /// Whether the finite group `h` is a subgroup of `C*·G`.
    pub fn contains_subgroup(&self, h: &FiniteDiagonalGroup) -> bool {
        h.dim() == self.dim() && h.basis_elements().iter().all(|g| self.contains_element(g))
    }

    /// Isotropy `{a ∈ C*·G : a_i = 0 for i ∈ coords}` of the coordinate torus
    /// on a non-empty index set.
    pub fn coordinate_isotropy(&self, coords: &[usize]) -> Result<FiniteDiagonalGroup> {
        let Some(&i0) = coords.iter().min_by_key(|&&i| self.weights.q.get(i)) else {
            return Err(Error::Unsupported(
                "isotropy of the origin is infinite".into(),
            ));
        };
        if i0 >= self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: i0 + 1,
            });
        }
        // t·q_{i0} + g_{i0} ∈ Z forces t ∈ (1/(N·q_{i0}))Z.
        let m = self.finite.exponent() * BigInt::from(self.weights.q[i0]);
        self.slice(&m).coordinate_kernel(coords)
    }

    /// The finite group `C* ∩ G`, which contains `<h>`.
    pub fn line_intersection(&self) -> FiniteDiagonalGroup {
        let m = BigInt::from(self.weights.d) * self.finite.exponent();
        let line = FiniteDiagonalGroup::generated_by(
            self.dim(),
            &[self.weights.line_point(&Rational::new(BigInt::one(), m))],
        )
        .expect("dimension matches");
        line.intersect(&self.finite).expect("dimension matches")
    }
}

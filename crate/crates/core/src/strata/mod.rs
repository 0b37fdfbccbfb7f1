//! Euler characteristics of the Milnor fibre and of the orbit spaces of the
//! zero set, stratum by stratum over the coordinate tori `(C*)^J`.
//!
//! Two independent routes give `χ(V_f ∩ (C*)^J)`: Möbius inversion of the
//! affine fibre characteristics `1 + (−1)^{|J|−1}·μ(f_J)`, and the Newton
//! polytope of `f_J − 1`. Orbit-space characteristics `χ((X ∩ (C*)^J)/Ḡ)` come
//! from the quotient torus `(C*)^J/Ḡ`, without using either of the above.

pub mod milnor;
pub mod polytope;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{sign_pow, to_i64};
use crate::error::{Error, Result};
use crate::lattice::{intmat, FiniteDiagonalGroup, IntMatrix};
use crate::qhpoly::{ExtendedGroup, QuasiPolynomial, Restriction};
use milnor::{milnor_algebra_dimension, milnor_number, MilnorAlgebra};

/// Sorted 0-based coordinate indices.
pub type IndexSet = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Milnor–Orlik formula plus Möbius inversion over subsets.
    MilnorOrlik,
    /// Newton polytope of `f_J − 1`; assumes non-degenerate coefficients.
    Polytope,
    /// Newton polytope of `f_J / x^{m₀}` in the quotient torus.
    QuotientPolytope,
    /// Forced by the shape of `f_J` (empty index set, `f_J ≡ 0`, monomial).
    Structural,
    /// User-supplied value.
    Override,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::MilnorOrlik => "milnor-orlik",
            Provenance::Polytope => "polytope",
            Provenance::QuotientPolytope => "quotient-polytope",
            Provenance::Structural => "structural",
            Provenance::Override => "override",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChiOverrides {
    pub chi_v: BTreeMap<IndexSet, i64>,
    pub chi_y: BTreeMap<IndexSet, i64>,
}

impl ChiOverrides {
    pub fn is_empty(&self) -> bool {
        self.chi_v.is_empty() && self.chi_y.is_empty()
    }
}

/// The characteristics attached to one coordinate torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumChi {
    pub coords: IndexSet,
    /// `χ(V_f ∩ (C*)^J)`.
    pub chi_v: i64,
    pub chi_v_source: Provenance,
    pub chi_v_milnor: Option<i64>,
    pub chi_v_polytope: Option<i64>,
    /// `χ((X ∩ (C*)^J)/Ḡ)`; zero and unused for `J = ∅`.
    pub chi_y: i64,
    pub chi_y_source: Provenance,
}

impl StratumChi {
    /// Both χ_V routes ran and disagree.
    pub fn routes_disagree(&self) -> bool {
        matches!((self.chi_v_milnor, self.chi_v_polytope), (Some(a), Some(b)) if a != b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataChi {
    n: usize,
    entries: BTreeMap<IndexSet, StratumChi>,
}

impl StrataChi {
    /// Fills every stratum. χ_V prefers an override, then the Milnor route,
    /// then the polytope route; χ_Y prefers an override, then the quotient
    /// torus.
    pub fn compute(
        p: &QuasiPolynomial,
        group: &ExtendedGroup,
        overrides: &ChiOverrides,
        monomial_limit: usize,
    ) -> Result<StrataChi> {
        let n = p.dim();
        let subsets = all_subsets(n);
        let affine: Vec<Result<i64>> = subsets
            .par_iter()
            .map(|j| chi_affine_fibre(p, j, monomial_limit))
            .collect();
        let affine: BTreeMap<IndexSet, Result<i64>> = subsets.iter().cloned().zip(affine).collect();

        let entries: Vec<Result<StratumChi>> = subsets
            .par_iter()
            .map(|j| {
                let milnor = mobius_from(&affine, j).ok();
                let polytope = if j.is_empty() {
                    None
                } else {
                    match p.restrict(j) {
                        Restriction::Zero => None,
                        Restriction::Poly(_) => Some(chi_polytope_oracle(p, j)?),
                    }
                };
                let (chi_v, chi_v_source) = if let Some(&v) = overrides.chi_v.get(j) {
                    (v, Provenance::Override)
                } else if j.is_empty() || matches!(p.restrict(j), Restriction::Zero) {
                    (0, Provenance::Structural)
                } else if let Some(v) = milnor {
                    (v, Provenance::MilnorOrlik)
                } else if let Some(v) = polytope {
                    (v, Provenance::Polytope)
                } else {
                    return Err(Error::UnsupportedRestriction(j.clone()));
                };
                let (chi_y, chi_y_source) = if let Some(&v) = overrides.chi_y.get(j) {
                    (v, Provenance::Override)
                } else if j.is_empty() {
                    (0, Provenance::Structural)
                } else {
                    chi_orbit_space(p, group, j)?
                };
                Ok(StratumChi {
                    coords: j.clone(),
                    chi_v,
                    chi_v_source,
                    chi_v_milnor: milnor,
                    chi_v_polytope: polytope,
                    chi_y,
                    chi_y_source,
                })
            })
            .collect();
        let entries = entries
            .into_iter()
            .map(|e| e.map(|s| (s.coords.clone(), s)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(StrataChi { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, coords: &[usize]) -> Option<&StratumChi> {
        self.entries.get(coords)
    }

    pub fn iter(&self) -> impl Iterator<Item = &StratumChi> {
        self.entries.values()
    }

    /// `χ(V_f)`, the sum over all strata.
    pub fn milnor_fibre_chi(&self) -> i64 {
        self.entries.values().map(|s| s.chi_v).sum()
    }

    pub fn uses_overrides(&self) -> bool {
        self.entries.values().any(|s| {
            s.chi_v_source == Provenance::Override || s.chi_y_source == Provenance::Override
        })
    }

    /// Every stratum where both χ_V routes ran agrees.
    pub fn routes_agree(&self) -> bool {
        self.entries.values().all(|s| !s.routes_disagree())
    }

    /// `χ_V[J]·|G^J| ≡ 0 mod |G|`: `G/G^J` acts freely on each stratum.
    pub fn divisibility_violations(&self, g: &FiniteDiagonalGroup) -> Result<Vec<IndexSet>> {
        let order = g.order();
        let mut bad = Vec::new();
        for s in self.entries.values() {
            let iso = g.coordinate_kernel(&s.coords)?;
            if !(BigInt::from(s.chi_v) * iso.order() % order).is_zero() {
                bad.push(s.coords.clone());
            }
        }
        Ok(bad)
    }
}

pub fn all_subsets(n: usize) -> Vec<IndexSet> {
    let mut out: Vec<IndexSet> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn subsets_of(j: &[usize]) -> Vec<IndexSet> {
    (0u64..1 << j.len())
        .map(|mask| {
            j.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn mobius_from(affine: &BTreeMap<IndexSet, Result<i64>>, j: &[usize]) -> Result<i64> {
    let mut total = 0;
    for k in subsets_of(j) {
        let v = affine[&k].clone()?;
        total += sign_pow(j.len() - k.len()) * v;
    }
    Ok(total)
}

/// `χ(V_{f_J} ∩ C^J) = 1 + (−1)^{|J|−1}·μ(f_J)` when `f_J` is isolated,
/// 0 when `f_J ≡ 0` or `J = ∅`.
///
/// Isolation is certified by the graded Milnor algebra, whose dimension must
/// match the weight formula.
pub fn chi_affine_fibre(
    p: &QuasiPolynomial,
    coords: &[usize],
    monomial_limit: usize,
) -> Result<i64> {
    if coords.is_empty() {
        return Ok(0);
    }
    let fj = match p.restrict(coords) {
        Restriction::Zero => return Ok(0),
        Restriction::Poly(fj) => fj,
    };
    let mu = milnor_number(&fj);
    match milnor_algebra_dimension(&fj, monomial_limit)? {
        MilnorAlgebra::Finite(dim) if mu.is_integer() && mu.to_integer() == BigInt::from(dim) => {
            let mu = dim as i64;
            Ok(1 + sign_pow(coords.len() - 1) * mu)
        }
        MilnorAlgebra::Finite(dim) => Err(Error::Unsupported(format!(
            "Milnor algebra of restriction {coords:?} has dimension {dim} but the weight formula gives {mu}"
        ))),
        MilnorAlgebra::NotIsolated => Err(Error::UnsupportedRestriction(coords.to_vec())),
    }
}

/// `χ_V[J] = Σ_{K⊆J} (−1)^{|J∖K|} χ(V_{f_K} ∩ C^K)` for every `J`.
pub fn chi_torus_strata(
    p: &QuasiPolynomial,
    monomial_limit: usize,
) -> Result<BTreeMap<IndexSet, i64>> {
    let subsets = all_subsets(p.dim());
    let affine: BTreeMap<IndexSet, Result<i64>> = subsets
        .iter()
        .map(|j| (j.clone(), chi_affine_fibre(p, j, monomial_limit)))
        .collect();
    subsets
        .iter()
        .map(|j| mobius_from(&affine, j).map(|v| (j.clone(), v)))
        .collect()
}

/// `(−1)^{|J|−1}·|J|!·vol(conv(supp f_J ∪ {0}))`, the Euler characteristic of
/// `{f_J = 1}` in `(C*)^J` for non-degenerate coefficients.
pub fn chi_polytope_oracle(p: &QuasiPolynomial, coords: &[usize]) -> Result<i64> {
    if coords.is_empty() {
        return Err(Error::Unsupported(
            "polytope route needs a non-empty index set".into(),
        ));
    }
    let Restriction::Poly(fj) = p.restrict(coords) else {
        return Err(Error::Unsupported(format!(
            "f vanishes on the torus {coords:?}"
        )));
    };
    let mut points: Vec<Vec<BigInt>> = fj
        .support()
        .map(|k| k.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    points.push(vec![BigInt::zero(); coords.len()]);
    Ok(polytope::torus_hypersurface_chi(&points))
}

/// `χ((X ∩ (C*)^J)/Ḡ)` through the quotient torus `(C*)^J/Ḡ`.
///
/// Its character lattice is `M_J = {m ∈ Z^J : <q, m> = 0, <r_g, m> ∈ Z}`;
/// the orbit space is the zero set of `f_J/x^{m₀}` there, whose Newton
/// polytope gives the characteristic.
pub fn chi_orbit_space(
    p: &QuasiPolynomial,
    group: &ExtendedGroup,
    coords: &[usize],
) -> Result<(i64, Provenance)> {
    if coords.is_empty() {
        return Err(Error::Unsupported(
            "the origin is not an orbit stratum".into(),
        ));
    }
    let fj = match p.restrict(coords) {
        Restriction::Zero => {
            // the whole torus: (C*)^J/Ḡ is a point or a positive-dimensional torus
            return Ok((i64::from(coords.len() == 1), Provenance::Structural));
        }
        Restriction::Poly(fj) => fj,
    };
    if fj.is_monomial() {
        return Ok((0, Provenance::Structural));
    }
    let (basis, pivots) = quotient_character_lattice(group, coords);
    let rank = basis.len();
    debug_assert_eq!(rank, coords.len() - 1);
    let support: Vec<&Vec<u32>> = fj.support().collect();
    let m0 = support[0];
    let points = support
        .iter()
        .map(|k| {
            let diff: Vec<BigInt> = k
                .iter()
                .zip(m0)
                .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
                .collect();
            intmat::lattice_coordinates(&basis, &pivots, &diff).ok_or_else(|| {
                Error::Unsupported(format!(
                    "monomial ratio {diff:?} is not invariant; is the group inside G_f?"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        polytope::torus_hypersurface_chi(&points),
        Provenance::QuotientPolytope,
    ))
}

/// Echelon basis of `M_J`, the characters of `(C*)^J` trivial on `Ḡ`.
pub fn quotient_character_lattice(
    group: &ExtendedGroup,
    coords: &[usize],
) -> (IntMatrix, Vec<usize>) {
    let g = group.finite_part();
    let modulus = g.modulus();
    let gens: Vec<Vec<BigInt>> = g
        .basis_elements()
        .iter()
        .map(|e| e.scaled_integers(modulus).expect("element of G"))
        .collect();
    let q = group.weights().q();
    let s = gens.len();
    // rows: one per m_j, then one per slack variable t_i; columns: the
    // constraint <q,m> = 0 and <b_i,m> + N·t_i = 0
    let mut w: IntMatrix = coords
        .iter()
        .map(|&j| {
            let mut row = vec![BigInt::from(q[j])];
            row.extend(gens.iter().map(|b| b[j].clone()));
            row
        })
        .collect();
    for i in 0..s {
        let mut row = vec![BigInt::zero(); s + 1];
        row[i + 1] = modulus.clone();
        w.push(row);
    }
    let projected: IntMatrix = intmat::left_kernel(&w)
        .into_iter()
        .map(|k| k[..coords.len()].to_vec())
        .collect();
    intmat::lattice_basis(&projected)
}

/// Converts a 1-based index list from user input.
pub fn index_set_from_one_based(raw: &[usize], n: usize) -> Result<IndexSet> {
    let mut out: Vec<usize> = raw
        .iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Error::Parse(format!(
                    "coordinate index {i} out of range 1..={n}"
                )))
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn to_one_based(coords: &[usize]) -> Vec<usize> {
    coords.iter().map(|i| i + 1).collect()
}

/// Orbit-space characteristic `χ_V[J]·|G^J|/|G|`, or `None` if not integral.
pub fn orbit_quotient(
    chi: i64,
    isotropy: &FiniteDiagonalGroup,
    g: &FiniteDiagonalGroup,
) -> Result<Option<i64>> {
    let num = BigInt::from(chi) * isotropy.order();
    if (&num % g.order()).is_zero() {
        Ok(Some(to_i64(&(num / g.order()))?))
    } else {
        Ok(None)
    }
}

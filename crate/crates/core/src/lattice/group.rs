use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::intmat::{self, IntMatrix};
use super::torsion::{check_dim, TorsionVector};
use crate::arith::{gcd_all, lcm_all};
use crate::error::{Error, Result};

/// A finite subgroup of `(Q/Z)^n`.
///
/// Stored as `L / (N·Z^n)` where `L` is an integer lattice with
/// `N·Z^n ⊆ L ⊆ Z^n`, mapped into `(Q/Z)^n` by division by `N`. After
/// construction `N` is the exponent of the group and `basis` is the
/// lower-triangular Hermite normal form of `L`, so `(N, basis)` is a canonical
/// key: two generating sets of the same subgroup give identical keys.
#[derive(Debug, Clone)]
pub struct FiniteDiagonalGroup {
    n: usize,
    modulus: BigInt,
    basis: IntMatrix,
    structure: Structure,
}

/// Smith-form decomposition of the group, cached at construction.
#[derive(Debug, Clone)]
struct Structure {
    order: BigInt,
    /// Orders of the non-trivial cyclic factors; each divides the next.
    factors: Vec<BigInt>,
    generators: Vec<TorsionVector>,
    /// Column transform `V` and diagonal `d` with `(N·x)·V = (c_i·d_i)`.
    v: IntMatrix,
    diag: Vec<BigInt>,
    /// Positions in `diag` of the non-trivial factors.
    active: Vec<usize>,
}

impl FiniteDiagonalGroup {
    pub fn trivial(n: usize) -> Self {
        Self::from_lattice(n, &BigInt::one(), &[])
    }

    /// Canonical form of the subgroup generated by `generators`.
    pub fn generated_by(n: usize, generators: &[TorsionVector]) -> Result<Self> {
        for g in generators {
            check_dim(n, g.dim())?;
        }
        let modulus = lcm_all(
            generators
                .iter()
                .flat_map(|g| g.coords().iter().map(|c| c.denom())),
        );
        let rows: IntMatrix = generators
            .iter()
            .map(|g| {
                g.scaled_integers(&modulus)
                    .expect("modulus clears denominators")
            })
            .collect();
        Ok(Self::from_lattice(n, &modulus, &rows))
    }

    /// The group `(rows + modulus·Z^n) / (modulus·Z^n)`, canonicalized.
    pub(crate) fn from_lattice(n: usize, modulus: &BigInt, rows: &[Vec<BigInt>]) -> Self {
        let mut gens: IntMatrix = rows.to_vec();
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = modulus.clone();
            gens.push(e);
        }
        let basis = intmat::hnf_lower(&gens, n).expect("lattice contains modulus·Z^n");
        let g = gcd_all(basis.iter().flatten().chain(std::iter::once(modulus)));
        let modulus = modulus / &g;
        let basis: IntMatrix = basis
            .into_iter()
            .map(|r| r.into_iter().map(|v| v / &g).collect())
            .collect();
        let structure = Structure::compute(n, &modulus, &basis);
        FiniteDiagonalGroup {
            n,
            modulus,
            basis,
            structure,
        }
    }

    /// The finite group `{r ∈ (Q/Z)^n : E·r ≡ 0 mod 1}` for an `m × n`
    /// integer matrix `E`.
    pub fn kernel_mod_1(e: &IntMatrix, n: usize) -> Result<Self> {
        for row in e {
            check_dim(n, row.len())?;
        }
        if e.is_empty() {
            return if n == 0 {
                Ok(Self::trivial(0))
            } else {
                Err(Error::InfiniteKernel)
            };
        }
        let s = intmat::smith_normal_form(e);
        let diag = s.diagonal();
        if diag.len() < n || diag.iter().take(n).any(Zero::is_zero) {
            return Err(Error::InfiniteKernel);
        }
        // r = V·s with d_i·s_i ∈ Z: generators are the columns of V over d_i.
        let gens: Vec<TorsionVector> = (0..n)
            .map(|i| {
                let col: Vec<BigInt> = s.v.iter().map(|row| row[i].clone()).collect();
                TorsionVector::from_integers(&col, &diag[i])
            })
            .collect();
        Self::generated_by(n, &gens)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The stored common denominator, equal to the exponent of the group.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn exponent(&self) -> &BigInt {
        &self.modulus
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn order(&self) -> &BigInt {
        &self.structure.order
    }

    pub fn order_u64(&self) -> u64 {
        self.structure
            .order
            .to_u64()
            .expect("group orders handled here fit in 64 bits")
    }

    pub fn is_trivial(&self) -> bool {
        self.structure.order.is_one()
    }

    /// Orders of the cyclic factors in Smith order (each divides the next one).
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.structure.factors
    }

    /// Generators matching `invariant_factors`, one per cyclic factor.
    pub fn generators(&self) -> &[TorsionVector] {
        &self.structure.generators
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure.factors.len() <= 1
    }

    /// Rows of the HNF basis as group elements.
    pub fn basis_elements(&self) -> Vec<TorsionVector> {
        self.basis
            .iter()
            .map(|r| TorsionVector::from_integers(r, &self.modulus))
            .filter(|v| !v.is_zero())
            .collect()
    }

    pub fn contains_element(&self, x: &TorsionVector) -> bool {
        if x.dim() != self.n {
            return false;
        }
        let Some(v) = x.scaled_integers(&self.modulus) else {
            return false;
        };
        lower_hnf_member(&self.basis, v)
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        other.n == self.n
            && other
                .basis_elements()
                .iter()
                .all(|g| self.contains_element(g))
    }

    /// Coordinates of `x` on `generators()`, each reduced modulo its factor.
    pub fn coordinates(&self, x: &TorsionVector) -> Option<Vec<BigInt>> {
        if !self.contains_element(x) {
            return None;
        }
        let scaled = x.scaled_integers(&self.modulus)?;
        let w = intmat::row_times(&scaled, &self.structure.v);
        Some(
            self.structure
                .active
                .iter()
                .zip(&self.structure.factors)
                .map(|(&i, ord)| (&w[i] / &self.structure.diag[i]).mod_floor(ord))
                .collect(),
        )
    }

    pub fn element_from_coordinates(&self, coords: &[BigInt]) -> TorsionVector {
        self.structure
            .generators
            .iter()
            .zip(coords)
            .fold(TorsionVector::zero(self.n), |acc, (g, c)| {
                acc.add(&g.mul_int(c)).expect("same dimension")
            })
    }

    /// All elements, in mixed-radix order over `generators()`.
    pub fn elements(&self) -> Vec<TorsionVector> {
        let factors: Vec<u64> = self
            .structure
            .factors
            .iter()
            .map(|f| f.to_u64().expect("small factor"))
            .collect();
        let total = self.order_u64();
        (0..total)
            .map(|mut idx| {
                let coords: Vec<BigInt> = factors
                    .iter()
                    .map(|&f| {
                        let c = idx % f;
                        idx /= f;
                        BigInt::from(c)
                    })
                    .collect();
                self.element_from_coordinates(&coords)
            })
            .collect()
    }

    /// Lattice of `self` written over the denominator `m` (a multiple of the
    /// exponent).
    fn lattice_at(&self, m: &BigInt) -> IntMatrix {
        let s = m / &self.modulus;
        self.basis
            .iter()
            .map(|r| r.iter().map(|v| v * &s).collect())
            .collect()
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let m = self.modulus.lcm(&other.modulus);
        let mut rows = self.lattice_at(&m);
        rows.extend(other.lattice_at(&m));
        Ok(Self::from_lattice(self.n, &m, &rows))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let m = self.modulus.lcm(&other.modulus);
        let a = self.lattice_at(&m);
        let mut stacked = a.clone();
        stacked.extend(other.lattice_at(&m));
        let rows: IntMatrix = intmat::left_kernel(&stacked)
            .into_iter()
            .map(|k| intmat::row_times(&k[..self.n], &a))
            .collect();
        Ok(Self::from_lattice(self.n, &m, &rows))
    }

    /// `{a ∈ self : a_i = 0 for every i in coords}` (0-based coordinate
    /// indices): the isotropy of points of the coordinate torus on `coords`.
    pub fn coordinate_kernel(&self, coords: &[usize]) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&i| i >= self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: bad + 1,
            });
        }
        let rows: IntMatrix = (0..self.n)
            .filter(|i| !coords.contains(i))
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.n];
                e[i] = BigInt::one();
                e
            })
            .collect();
        let axes = Self::from_lattice(self.n, &self.modulus, &rows);
        self.intersect(&axes)
    }

    /// Every character, as numerators `c_i` with `χ(g_i) = c_i / factor_i`
    /// on `generators()`.
    pub fn characters(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for f in &self.structure.factors {
            let f = f.to_u64().expect("small factor");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..f).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(c));
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Value in `[0, 1)` of the character with numerators `chi` at `x`.
    pub fn pair(&self, chi: &[BigInt], x: &TorsionVector) -> Option<crate::arith::Rational> {
        let coords = self.coordinates(x)?;
        let total: crate::arith::Rational = chi
            .iter()
            .zip(&coords)
            .zip(&self.structure.factors)
            .map(|((c, a), f)| crate::arith::Rational::new(c * a, f.clone()))
            .sum();
        Some(crate::arith::frac(&total))
    }

    pub fn label(&self) -> String {
        if self.is_trivial() {
            return "{e}".to_string();
        }
        self.structure
            .factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// Membership of an integer vector in the lattice spanned by a lower-triangular
/// basis with non-zero diagonal.
fn lower_hnf_member(basis: &IntMatrix, mut v: Vec<BigInt>) -> bool {
    for i in (0..basis.len()).rev() {
        let (q, r) = v[i].div_rem(&basis[i][i]);
        if !r.is_zero() {
            return false;
        }
        for (x, b) in v.iter_mut().zip(&basis[i]) {
            *x -= &q * b;
        }
    }
    true
}

impl Structure {
    fn compute(n: usize, modulus: &BigInt, basis: &IntMatrix) -> Structure {
        let order = modulus.pow(n as u32)
            / basis
                .iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (i, r)| acc * &r[i]);
        let s = intmat::smith_normal_form(basis);
        let diag = s.diagonal();
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        let mut active = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            let ord = modulus / d;
            if ord.is_one() {
                continue;
            }
            let row: Vec<BigInt> = s.v_inv[i].iter().map(|x| x * d).collect();
            generators.push(TorsionVector::from_integers(&row, modulus));
            factors.push(ord);
            active.push(i);
        }
        // Smith order has d_i increasing, so factor orders decrease; flip them.
        factors.reverse();
        generators.reverse();
        active.reverse();
        Structure {
            order,
            factors,
            generators,
            v: s.v,
            diag,
            active,
        }
    }
}

impl PartialEq for FiniteDiagonalGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus && self.basis == other.basis
    }
}

impl Eq for FiniteDiagonalGroup {}

impl Hash for FiniteDiagonalGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.modulus.hash(state);
        self.basis.hash(state);
    }
}

impl Ord for FiniteDiagonalGroup {
    /// Orders by group order first, then by the canonical key.
    fn cmp(&self, other: &Self) -> Ordering {
        self.structure
            .order
            .cmp(&other.structure.order)
            .then_with(|| self.n.cmp(&other.n))
            .then_with(|| self.modulus.cmp(&other.modulus))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for FiniteDiagonalGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteDiagonalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<", self.label())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

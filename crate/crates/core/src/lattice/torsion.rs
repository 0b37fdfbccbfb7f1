use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{format_rational, frac, lcm_all, Rational};
use crate::error::{Error, Result};

/// An element of `(Q/Z)^n`, i.e. a diagonal matrix of roots of unity written
/// additively: coordinate `r` stands for `exp(2πi r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionVector {
    coords: Vec<Rational>,
}

impl TorsionVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        TorsionVector {
            coords: coords.iter().map(frac).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        TorsionVector {
            coords: vec![Rational::zero(); n],
        }
    }

    pub fn from_fractions(pairs: &[(i64, i64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(p, q)| crate::arith::rat(p, q))
                .collect(),
        )
    }

    /// `row / denominator` reduced mod 1.
    pub fn from_integers(row: &[BigInt], denominator: &BigInt) -> Self {
        Self::new(
            row.iter()
                .map(|v| Rational::new(v.clone(), denominator.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Order of the element: the lcm of the coordinate denominators.
    pub fn order(&self) -> BigInt {
        lcm_all(self.coords.iter().map(|c| c.denom()))
    }

    /// `scale · self` as an integer vector; `None` unless every coordinate
    /// denominator divides `scale`.
    pub fn scaled_integers(&self, scale: &BigInt) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| {
                let v = c * Rational::from_integer(scale.clone());
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c * factor).collect())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    pub fn one_hot(n: usize, i: usize, value: Rational) -> Self {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = value;
        Self::new(coords)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl fmt::Display for TorsionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

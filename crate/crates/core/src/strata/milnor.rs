//! Milnor numbers of quasihomogeneous polynomials: the weight formula and a
//! brute-force graded Milnor-algebra computation used to check it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg;
use crate::qhpoly::{Exponent, QuasiPolynomial};

/// Default bound on the number of monomials in one graded piece.
pub const DEFAULT_MONOMIAL_LIMIT: usize = 200_000;

/// `∏ (d − q_i)/q_i`. A non-integral value proves the singularity is not
/// isolated; an integral one proves nothing by itself.
pub fn milnor_number(p: &QuasiPolynomial) -> Rational {
    let w = p.weights();
    w.q()
        .iter()
        .map(|&q| Rational::new(BigInt::from(w.d()) - BigInt::from(q), BigInt::from(q)))
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorAlgebra {
    Finite(u64),
    NotIsolated,
}

/// A partial derivative as its quasidegree and terms.
type Partial = (u64, Vec<(Exponent, Rational)>);

/// Dimension of `C[x]/(∂f/∂x_1, …, ∂f/∂x_n)` computed degree by degree.
///
/// Every graded piece up to quasidegree `Σ(d − 2q_i)` is summed; the next
/// `max q_i` degrees form a guard window that must vanish, otherwise the
/// algebra is reported as infinite-dimensional.
pub fn milnor_algebra_dimension(
    p: &QuasiPolynomial,
    monomial_limit: usize,
) -> Result<MilnorAlgebra> {
    let w = p.weights();
    let n = p.dim();
    let d = w.d() as i64;
    let top: i64 = w.q().iter().map(|&q| d - 2 * q as i64).sum();
    let guard = *w.q().iter().max().unwrap_or(&1) as i64;

    let partials: Vec<Option<Partial>> = (0..n)
        .map(|i| {
            let terms: Vec<(Exponent, Rational)> = p
                .terms()
                .iter()
                .filter(|(k, _)| k[i] > 0)
                .map(|(k, c)| {
                    let mut k2 = k.clone();
                    k2[i] -= 1;
                    (k2, c * Rational::from_integer(BigInt::from(k[i])))
                })
                .collect();
            (!terms.is_empty()).then(|| (w.d() - w.q()[i], terms))
        })
        .collect();

    let mut total = 0u64;
    for degree in 0..=top.max(-1) + guard {
        let monomials = monomials_of_degree(w.q(), degree as u64, monomial_limit)?;
        if monomials.is_empty() {
            continue;
        }
        let column: HashMap<&Exponent, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (deg_i, terms) in partials.iter().flatten() {
            let Some(rest) = (degree as u64).checked_sub(*deg_i) else {
                continue;
            };
            for m in monomials_of_degree(w.q(), rest, monomial_limit)? {
                let mut row = vec![Rational::zero(); monomials.len()];
                for (k, c) in terms {
                    let prod: Exponent = k.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[column[&prod]] += c;
                }
                rows.push(row);
            }
        }
        let dim = monomials.len()
            - if rows.is_empty() {
                0
            } else {
                linalg::rank(&rows)
            };
        if degree > top {
            if dim > 0 {
                return Ok(MilnorAlgebra::NotIsolated);
            }
        } else {
            total += dim as u64;
        }
    }
    Ok(MilnorAlgebra::Finite(total))
}

/// All exponent vectors of quasidegree exactly `degree`.
pub fn monomials_of_degree(q: &[u64], degree: u64, limit: usize) -> Result<Vec<Exponent>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; q.len()];
    fn rec(
        q: &[u64],
        i: usize,
        remaining: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Exponent>,
        limit: usize,
    ) -> Result<()> {
        if i == q.len() {
            if remaining == 0 {
                if out.len() >= limit {
                    return Err(Error::ResourceLimit(format!(
                        "more than {limit} monomials in one degree"
                    )));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        for e in 0..=remaining / q[i] {
            cur[i] = e as u32;
            rec(q, i + 1, remaining - e * q[i], cur, out, limit)?;
        }
        cur[i] = 0;
        Ok(())
    }
    rec(q, 0, degree, &mut cur, &mut out, limit)?;
    Ok(out)
}

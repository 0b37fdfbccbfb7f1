//! Dense integer matrices: Hermite and Smith normal forms, left kernels.
//!
//! Matrices are plain row-major `Vec<Vec<BigInt>>`. Everything here is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn row_times(row: &[BigInt], m: &IntMatrix) -> Vec<BigInt> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            row.iter()
                .zip(m)
                .fold(BigInt::zero(), |acc, (r, mrow)| acc + r * &mrow[j])
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn axpy_row(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= factor * s;
    }
}

/// Row-style lower-triangular Hermite normal form of a full-rank lattice in `Z^n`.
///
/// Pivots sit on the diagonal and are positive; every entry below a pivot is
/// reduced into `[0, pivot)`. Returns `None` if the generators do not span a
/// rank-`n` lattice.
pub fn hnf_lower(generators: &[Vec<BigInt>], n: usize) -> Option<IntMatrix> {
    let mut active: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for col in (0..n).rev() {
        loop {
            let mut nonzero: Vec<usize> = (0..active.len())
                .filter(|&i| !active[i][col].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&a, &b| active[a][col].abs().cmp(&active[b][col].abs()));
            let p = nonzero[0];
            for &i in &nonzero[1..] {
                let q = &active[i][col] / &active[p][col];
                axpy_row(&mut active, i, p, &q);
            }
        }
        let pos = (0..active.len()).find(|&i| !active[i][col].is_zero())?;
        let mut row = active.swap_remove(pos);
        if row[col].is_negative() {
            row.iter_mut().for_each(|v| *v = -v.clone());
        }
        basis[col] = Some(row);
        active.retain(|r| r.iter().any(|v| !v.is_zero()));
    }
    let mut b: IntMatrix = basis.into_iter().map(Option::unwrap).collect();
    for i in (0..n).rev() {
        for r in i + 1..n {
            let q = b[r][i].div_floor(&b[i][i]);
            axpy_row(&mut b, r, i, &q);
        }
    }
    Some(b)
}

/// Upper row-echelon form `H = T·M` with `T` unimodular.
///
/// Returns `(H, T, pivots)` where `pivots[i]` is the leading column of row `i`
/// of `H` for the first `pivots.len()` rows; the remaining rows of `H` are zero.
pub fn echelon_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut t = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = best else { break };
            h.swap(p, r);
            t.swap(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = &h[i][c] / &h[r][c];
                axpy_row(&mut h, i, r, &q);
                axpy_row(&mut t, i, r, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                h[r].iter_mut().for_each(|v| *v = -v.clone());
                t[r].iter_mut().for_each(|v| *v = -v.clone());
            }
            pivots.push(c);
            r += 1;
        }
    }
    (h, t, pivots)
}

/// Basis of the left kernel `{x : x·M = 0}` of an integer matrix.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (_, t, pivots) = echelon_with_transform(m);
    t.into_iter().skip(pivots.len()).collect()
}

/// Echelon basis of the lattice spanned by `generators` (zero rows dropped).
pub fn lattice_basis(generators: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    if generators.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (h, _, pivots) = echelon_with_transform(generators);
    (h.into_iter().take(pivots.len()).collect(), pivots)
}

/// Integer coordinates of `v` in an echelon basis, or `None` if `v` is not in
/// the lattice.
pub fn lattice_coordinates(
    basis: &IntMatrix,
    pivots: &[usize],
    v: &[BigInt],
) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for (row, &p) in basis.iter().zip(pivots) {
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Smith normal form `U·M·V = D`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...` (including trailing zeros).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // column j -= q * column t, mirrored on V and V^{-1}
    fn col_axpy(
        a: &mut IntMatrix,
        v: &mut IntMatrix,
        v_inv: &mut IntMatrix,
        j: usize,
        t: usize,
        q: &BigInt,
    ) {
        if q.is_zero() {
            return;
        }
        for row in a.iter_mut() {
            let s = row[t].clone();
            row[j] -= q * s;
        }
        for row in v.iter_mut() {
            let s = row[t].clone();
            row[j] -= q * s;
        }
        let src = v_inv[j].clone();
        for (x, s) in v_inv[t].iter_mut().zip(src.iter()) {
            *x += q * s;
        }
    }
    fn col_swap(a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(pi, t);
        u.swap(pi, t);
        col_swap(&mut a, &mut v, &mut v_inv, pj, t);

        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                axpy_row(&mut a, i, t, &q);
                axpy_row(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                col_axpy(&mut a, &mut v, &mut v_inv, j, t, &q);
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                // move the smallest remaining entry of row/column t onto the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap(bi, t);
                u.swap(bi, t);
                col_swap(&mut a, &mut v, &mut v_inv, bj, t);
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].mod_floor(&a[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    axpy_row(&mut a, t, i, &minus_one);
                    axpy_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -x.clone());
            u[t].iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    Smith { u, d: a, v, v_inv }
}

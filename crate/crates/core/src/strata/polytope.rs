//! Normalized lattice volumes of convex hulls of integer point sets.
//!
//! The hull is triangulated by pulling from a point: `P` is the union of the
//! cones from the apex over the facets of `P` not containing it, and each facet
//! is triangulated recursively in its own affine coordinates. Facets are found
//! by brute force over affinely independent point subsets, which is fine for
//! the small supports handled here.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{factorial, sign_pow, Rational};
use crate::lattice::intmat;
use crate::linalg;

/// `k!·vol(conv(points))` in `Z^k`, zero when the hull is not full-dimensional.
pub fn normalized_volume(points: &[Vec<BigInt>]) -> BigInt {
    let pts: Vec<Vec<BigInt>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let Some(k) = pts.first().map(Vec::len) else {
        return BigInt::zero();
    };
    if k == 0 {
        return BigInt::zero();
    }
    let rational: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| {
            p.iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let local = affine_coordinates(&rational);
    if local.first().map_or(0, Vec::len) < k {
        return BigInt::zero();
    }
    let all: Vec<usize> = (0..pts.len()).collect();
    triangulate(&all, &local)
        .iter()
        .map(|s| {
            let base = &pts[s[0]];
            let m: Vec<Vec<BigInt>> = s[1..]
                .iter()
                .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            intmat::determinant(&m).abs()
        })
        .sum()
}

/// Euler characteristic `(-1)^{k-1}·k!·vol(P)` of a Newton-nondegenerate
/// hypersurface in the `k`-torus with Newton polytope `P = conv(points)`.
pub fn torus_hypersurface_chi(points: &[Vec<BigInt>]) -> i64 {
    let k = points.first().map_or(0, Vec::len);
    if k == 0 {
        return 0;
    }
    let vol = normalized_volume(points);
    let vol = crate::arith::to_i64(&vol).expect("volume fits in 64 bits");
    -sign_pow(k) * vol
}

/// Plain Euclidean volume, for cross-checks.
pub fn euclidean_volume(points: &[Vec<BigInt>]) -> Rational {
    let k = points.first().map_or(0, Vec::len);
    Rational::new(normalized_volume(points), BigInt::from(factorial(k)))
}

/// Coordinates of the points in an affine basis of their hull, based at the
/// first point. The output dimension is the affine dimension.
fn affine_coordinates(pts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let base = &pts[0];
    let diffs: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for d in &diffs {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if linalg::rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    if basis.is_empty() {
        return vec![Vec::new(); pts.len()];
    }
    // solve Bᵀ·c = p − base
    let ambient = base.len();
    let bt: Vec<Vec<Rational>> = (0..ambient)
        .map(|j| basis.iter().map(|b| b[j].clone()).collect())
        .collect();
    diffs
        .iter()
        .map(|d| {
            linalg::solve(&bt, d)
                .expect("point lies in its affine hull")
                .0
        })
        .collect()
}

/// Triangulation of `conv(pts[idx])`, given full-dimensional local
/// coordinates. Returns simplices as lists of indices into `idx`'s range.
fn triangulate(idx: &[usize], local: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let dim = local[0].len();
    if dim == 0 {
        return vec![vec![idx[0]]];
    }
    if idx.len() == dim + 1 {
        return vec![idx.to_vec()];
    }
    if dim == 1 {
        let lo = (0..idx.len())
            .min_by(|&a, &b| local[a][0].cmp(&local[b][0]))
            .unwrap();
        let hi = (0..idx.len())
            .max_by(|&a, &b| local[a][0].cmp(&local[b][0]))
            .unwrap();
        return vec![vec![idx[lo], idx[hi]]];
    }
    let apex = 0;
    let mut out = Vec::new();
    for facet in facets(local) {
        if facet.contains(&apex) {
            continue;
        }
        let sub: Vec<Vec<Rational>> = facet.iter().map(|&i| local[i].clone()).collect();
        let sub_local = affine_coordinates(&sub);
        let sub_idx: Vec<usize> = facet.iter().map(|&i| idx[i]).collect();
        for mut s in triangulate(&sub_idx, &sub_local) {
            s.insert(0, idx[apex]);
            out.push(s);
        }
    }
    out
}

/// Facets of a full-dimensional point configuration, as sorted index sets.
fn facets(pts: &[Vec<Rational>]) -> BTreeSet<Vec<usize>> {
    let dim = pts[0].len();
    let mut found = BTreeSet::new();
    for combo in combinations(pts.len(), dim) {
        let p0 = &pts[combo[0]];
        let rows: Vec<Vec<Rational>> = combo[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let Some(normal) = null_vector(&rows, dim) else {
            continue;
        };
        let side: Vec<Rational> = pts
            .iter()
            .map(|p| {
                p.iter()
                    .zip(p0)
                    .zip(&normal)
                    .map(|((a, b), n)| (a - b) * n)
                    .sum()
            })
            .collect();
        let pos = side.iter().any(|s| s.is_positive());
        let neg = side.iter().any(|s| s.is_negative());
        if pos && neg {
            continue;
        }
        let facet: Vec<usize> = (0..pts.len()).filter(|&i| side[i].is_zero()).collect();
        found.insert(facet);
    }
    found
}

/// A non-zero vector orthogonal to the rows, if the rows have rank `dim − 1`.
fn null_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = linalg::rref(&mut m);
    if pivots.len() + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); dim];
    v[free] = Rational::from_integer(BigInt::from(1));
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    Some(v)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

//! Independent oracles for the integration and acceptance tests.
//!
//! Nothing here calls the Hermite form, the simplex code or the base-closure
//! enumeration; the oracles use determinants, Carathéodory enumeration and
//! brute force instead.

#![allow(dead_code)]

use std::collections::BTreeSet;

use strata_core::{RootSystem, Subsystem};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion (matrices here are at most 4×4).
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// All k-subsets of 0..n, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn minor(vectors: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i128 {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| vectors[r][c] as i128).collect())
        .collect();
    det(&m)
}

/// Rank and gcd of the maximal nonvanishing minors of a set of vectors.
/// Two lattices L ⊆ L' of equal rank coincide iff these gcds agree.
pub fn rank_and_minor_gcd(vectors: &[Vec<i64>], dim: usize) -> (usize, i128) {
    for t in (1..=dim.min(vectors.len())).rev() {
        let mut g = 0;
        for rows in subsets(vectors.len(), t) {
            for cols in subsets(dim, t) {
                g = gcd(g, minor(vectors, &rows, &cols));
            }
        }
        if g != 0 {
            return (t, g);
        }
    }
    (0, 1)
}

/// Lattice membership from determinants alone.
pub fn lattice_member(generators: &[Vec<i64>], v: &[i64], dim: usize) -> bool {
    let (r0, g0) = rank_and_minor_gcd(generators, dim);
    let mut ext = generators.to_vec();
    ext.push(v.to_vec());
    let (r1, g1) = rank_and_minor_gcd(&ext, dim);
    r0 == r1 && g0 == g1
}

/// Exhaustive search for integer coefficients with |c| ≤ bound.
pub fn bounded_combination_exists(generators: &[Vec<i64>], v: &[i64], bound: i64) -> bool {
    let order: Vec<i64> = std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k])).collect();
    fn go(gens: &[Vec<i64>], rest: &[i64], order: &[i64]) -> bool {
        match gens.split_first() {
            None => rest.iter().all(|&x| x == 0),
            Some((g, tail)) => order.iter().any(|&c| {
                let next: Vec<i64> = rest.iter().zip(g).map(|(r, x)| r - c * x).collect();
                go(tail, &next, order)
            }),
        }
    }
    go(generators, v, &order)
}

/// −target ∈ cone(points)? Carathéodory: check every linearly independent
/// subset of size ≤ dim by Cramer's rule.
fn in_cone(points: &[Vec<i64>], target: &[i64], dim: usize) -> bool {
    if target.iter().all(|&x| x == 0) {
        return true;
    }
    for k in 1..=dim.min(points.len()) {
        for rows in subsets(points.len(), k) {
            let basis: Vec<&Vec<i64>> = rows.iter().map(|&r| &points[r]).collect();
            // pick k coordinates with a nonzero minor
            let Some(cols) = subsets(dim, k)
                .into_iter()
                .find(|cols| minor(points, &rows, cols) != 0)
            else {
                continue;
            };
            let d = minor(points, &rows, &cols);
            // coefficient j is det with row j replaced by the target, over d
            let coeffs: Vec<i128> = (0..k)
                .map(|j| {
                    let m: Vec<Vec<i128>> = (0..k)
                        .map(|i| {
                            cols.iter()
                                .map(|&c| if i == j { target[c] as i128 } else { basis[i][c] as i128 })
                                .collect()
                        })
                        .collect();
                    det(&m)
                })
                .collect();
            if coeffs.iter().any(|&c| c * d.signum() < 0) {
                continue;
            }
            // the chosen coordinates agree by construction; check all of them
            let ok = (0..dim).all(|c| {
                let lhs: i128 = coeffs.iter().zip(&basis).map(|(&a, b)| a * b[c] as i128).sum();
                lhs == d * target[c] as i128
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// 0 in the relative interior of conv(points) iff −p ∈ cone(points) for
/// every p.
pub fn zero_in_relint_oracle(points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = points[0].len();
    let uniq: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    uniq.iter().all(|p| {
        let neg: Vec<i64> = p.iter().map(|x| -x).collect();
        in_cone(&uniq, &neg, dim)
    })
}

/// Every symmetric subset of Φ that is closed under root sums and
/// saturated, found by trying all 2^|Φ⁺| sign-pair supports.
pub fn brute_force_subsystems(rs: &RootSystem) -> Vec<Subsystem> {
    let npos = rs.n_positive();
    assert!(npos <= 16, "brute force is for small systems");
    let dim = rs.rank();
    let mut out = Vec::new();
    for bits in 0u32..(1 << npos) {
        let pos: Vec<usize> = (0..npos).filter(|&i| bits >> i & 1 == 1).collect();
        let set: BTreeSet<usize> = pos.iter().flat_map(|&i| [i, rs.neg(i)]).collect();
        let closed = set.iter().all(|&a| {
            set.iter().all(|&b| {
                let v: Vec<i64> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x + y).collect();
                rs.index_of(&v).map_or(true, |s| set.contains(&s))
            })
        });
        if !closed {
            continue;
        }
        let gens: Vec<Vec<i64>> = pos.iter().map(|&i| rs.root(i).to_vec()).collect();
        let (r0, g0) = rank_and_minor_gcd(&gens, dim);
        let saturated = (0..npos).filter(|i| !set.contains(i)).all(|i| {
            let mut ext = gens.clone();
            ext.push(rs.root(i).to_vec());
            rank_and_minor_gcd(&ext, dim) != (r0, g0)
        });
        if saturated {
            out.push(Subsystem::from_indices(set));
        }
    }
    out.sort();
    out
}

/// Cover relation by the definition: i < j with no k strictly between.
pub fn brute_force_covers(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq[i][j] {
                continue;
            }
            let between = (0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::Matrix;

/// Each pair present with probability `density`.
pub fn relation(rng: &mut impl Rng, n: usize, density: f64) -> Matrix {
    (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density)).collect()).collect()
}

/// A relation whose asymmetric interior is acyclic: arcs point forward
/// along a hidden permutation, plus some symmetric pairs and loops.
pub fn aa_relation(rng: &mut impl Rng, n: usize, density: f64) -> Matrix {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut m = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                m[a][a] = rng.gen_bool(0.5);
            } else if rank[a] < rank[b] && rng.gen_bool(density) {
                m[a][b] = true;
                if rng.gen_bool(0.15) {
                    m[b][a] = true;
                }
            }
        }
    }
    m
}

/// Keys drawn from a small range so that ties are common.
pub fn keys(rng: &mut impl Rng, n: usize, range: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..range)).collect()
}

/// Random assignment of `0..n` to at most `blocks` nonempty blocks.
pub fn partition(rng: &mut impl Rng, n: usize, blocks: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); blocks.max(1)];
    for i in 0..n {
        let k = rng.gen_range(0..out.len());
        out[k].push(i);
    }
    out.retain(|b| !b.is_empty());
    out
}

/// Pairwise distinct points with small integer coordinates.
pub fn distinct_points(rng: &mut impl Rng, n: usize, range: i32) -> Vec<(f64, f64)> {
    assert!((range as usize).pow(2) >= n, "grid too small for {n} points");
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    while out.len() < n {
        let p = (rng.gen_range(0..range) as f64, rng.gen_range(0..range) as f64);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Subsets of `0..ground` given as sorted index lists.
pub fn family(rng: &mut impl Rng, ground: usize, members: usize) -> Vec<Vec<usize>> {
    (0..members)
        .map(|_| (0..ground).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

//! Brute-force reference implementations.
//!
//! Everything here works on plain matrices and vectors, straight from the
//! definitions, and shares no code with the `altiset` crate. The point is
//! to be obviously right, not fast.

pub mod gen;

/// Dense boolean matrix, `m[a][b]` meaning `a R b`.
pub type Matrix = Vec<Vec<bool>>;

/// `a` is significant iff every step `a R b` inside `subset` has `b R a`.
pub fn altiset_within(m: &Matrix, subset: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &a in subset {
        let mut significant = true;
        for &b in subset {
            if m[a][b] && !m[b][a] {
                significant = false;
            }
        }
        if significant {
            out.push(a);
        }
    }
    out.sort_unstable();
    out
}

pub fn altiset(m: &Matrix) -> Vec<usize> {
    let all: Vec<usize> = (0..m.len()).collect();
    altiset_within(m, &all)
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| m[a][b] == m[b][a]))
}

pub fn inverse(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|a| (0..n).map(|b| m[b][a]).collect()).collect()
}

/// `R*`: inverse of the complement.
pub fn complementary_inversion(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|a| (0..n).map(|b| !m[b][a]).collect()).collect()
}

pub fn asym(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|a| (0..n).map(|b| m[a][b] && !m[b][a]).collect()).collect()
}

pub fn union(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x || *y).collect())
        .collect()
}

/// Vertices reachable from `a` by one or more steps.
fn reachable(m: &Matrix, a: usize) -> Vec<bool> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&b| m[a][b]).collect();
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        stack.extend((0..n).filter(|&b| m[v][b] && !seen[b]));
    }
    seen
}

pub fn transitive_closure(m: &Matrix) -> Matrix {
    (0..m.len()).map(|a| reachable(m, a)).collect()
}

pub fn is_acyclic(m: &Matrix) -> bool {
    (0..m.len()).all(|a| !reachable(m, a)[a])
}

/// Number of vertices on the longest directed path, found by enumerating
/// every simple path. The graph must be acyclic.
pub fn longest_path(m: &Matrix) -> usize {
    fn extend(m: &Matrix, v: usize, on_path: &mut Vec<bool>) -> usize {
        on_path[v] = true;
        let mut best = 0;
        for w in 0..m.len() {
            if m[v][w] && !on_path[w] {
                best = best.max(extend(m, w, on_path));
            }
        }
        on_path[v] = false;
        best + 1
    }
    let mut on_path = vec![false; m.len()];
    (0..m.len()).map(|v| extend(m, v, &mut on_path)).max().unwrap_or(0)
}

/// Chromatic number of the graph underlying `m` (arcs taken in both
/// directions, loops ignored), by trying `k = 1, 2, …` exhaustively.
pub fn chromatic_number(m: &Matrix) -> usize {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let adjacent = |a: usize, b: usize| a != b && (m[a][b] || m[b][a]);
    // colours are opened in order, so vertex v never needs more than `used + 1`
    fn colour(v: usize, k: usize, colours: &mut Vec<usize>, adjacent: &dyn Fn(usize, usize) -> bool) -> bool {
        if v == colours.len() {
            return true;
        }
        let used = colours[..v].iter().map(|&c| c + 1).max().unwrap_or(0);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !adjacent(u, v) || colours[u] != c) {
                colours[v] = c;
                if colour(v + 1, k, colours, adjacent) {
                    return true;
                }
            }
        }
        false
    }
    (1..=n)
        .find(|&k| colour(0, k, &mut vec![0; n], &adjacent))
        .expect("n colours always suffice")
}

/// Is `colours` a proper colouring of the graph underlying `m`?
pub fn is_proper_colouring(m: &Matrix, colours: &[usize]) -> bool {
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| a == b || !(m[a][b] || m[b][a]) || colours[a] != colours[b]))
}

pub const PARTITION_CAP: usize = 8;

/// Least number of blocks in a partition of `points` into subsets on which
/// `compatible` holds pairwise, by enumerating set partitions with pruning.
pub fn min_partition(points: &[(f64, f64)], compatible: impl Fn((f64, f64), (f64, f64)) -> bool) -> usize {
    assert!(points.len() <= PARTITION_CAP, "partition oracle capped at {PARTITION_CAP} points");
    fn place(
        i: usize,
        points: &[(f64, f64)],
        blocks: &mut Vec<Vec<usize>>,
        best: &mut usize,
        ok: &dyn Fn((f64, f64), (f64, f64)) -> bool,
    ) {
        if blocks.len() >= *best {
            return;
        }
        if i == points.len() {
            *best = blocks.len();
            return;
        }
        for k in 0..blocks.len() {
            if blocks[k].iter().all(|&j| ok(points[i], points[j])) {
                blocks[k].push(i);
                place(i + 1, points, blocks, best, ok);
                blocks[k].pop();
            }
        }
        blocks.push(vec![i]);
        place(i + 1, points, blocks, best, ok);
        blocks.pop();
    }
    let mut best = points.len().max(1);
    if points.is_empty() {
        return 0;
    }
    place(0, points, &mut Vec::new(), &mut best, &compatible);
    best
}

pub fn strictly_increasing_pair(p: (f64, f64), q: (f64, f64)) -> bool {
    (p.0 < q.0 && p.1 < q.1) || (p.0 > q.0 && p.1 > q.1)
}

pub fn strictly_decreasing_pair(p: (f64, f64), q: (f64, f64)) -> bool {
    (p.0 < q.0 && p.1 > q.1) || (p.0 > q.0 && p.1 < q.1)
}

/// Summits that no other summit beats on altitude (higher is better) and
/// distance (smaller is better) at once, with at least one strict.
pub fn skyline<H: PartialOrd, D: PartialOrd>(altitude: &[H], distance: &[D]) -> Vec<usize> {
    let n = altitude.len();
    let mut out = Vec::new();
    'summit: for a in 0..n {
        for b in 0..n {
            let higher_or_equal = altitude[b] >= altitude[a];
            let closer_or_equal = distance[b] <= distance[a];
            let strictly = altitude[b] > altitude[a] || distance[b] < distance[a];
            if higher_or_equal && closer_or_equal && strictly {
                continue 'summit;
            }
        }
        out.push(a);
    }
    out
}

/// Squared Euclidean distances from `reference`.
pub fn squared_distances(points: &[(f64, f64)], reference: (f64, f64)) -> Vec<f64> {
    points
        .iter()
        .map(|&(x, y)| (x - reference.0).powi(2) + (y - reference.1).powi(2))
        .collect()
}

/// Times at which the series sets a new strict record.
pub fn records(values: &[f64]) -> Vec<usize> {
    (0..values.len())
        .filter(|&i| values[..i].iter().all(|&v| v < values[i]))
        .collect()
}

/// `M R_h N`: for some value `t` of `h`, fewer members of `M` than of `N`
/// have value at least `t`.
pub fn rh(h: &[f64], m: &[usize], n: &[usize]) -> bool {
    h.iter().any(|&t| {
        let count = |s: &[usize]| s.iter().filter(|&&i| h[i] >= t).count();
        count(m) < count(n)
    })
}

/// Definitional altiset of a subset family under `R_h`.
pub fn collective_altiset(h: &[f64], family: &[Vec<usize>]) -> Vec<usize> {
    let k = family.len();
    let m: Matrix = (0..k).map(|a| (0..k).map(|b| rh(h, &family[a], &family[b])).collect()).collect();
    altiset(&m)
}

/// Number of grid centres at least as close to `summits[x]` as to every
/// summit outside `excluded` (and other than `x`).
pub fn voronoi_count(summits: &[(f64, f64)], x: usize, excluded: &[usize], centres: &[(f64, f64)]) -> usize {
    centres
        .iter()
        .filter(|&&c| {
            let d = squared_distances(summits, c);
            (0..summits.len()).all(|a| a == x || excluded.contains(&a) || d[a] >= d[x])
        })
        .count()
}

/// Centres of an `nx × ny` grid over `[x0, x1] × [y0, y1]`.
pub fn grid_centres(x0: f64, y0: f64, x1: f64, y1: f64, nx: usize, ny: usize) -> Vec<(f64, f64)> {
    let (w, h) = ((x1 - x0) / nx as f64, (y1 - y0) / ny as f64);
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            out.push((x0 + (i as f64 + 0.5) * w, y0 + (j as f64 + 0.5) * h));
        }
    }
    out
}

//! Significance domains and the evolution of valuation.
//!
//! The measure on the plane is realised as a count of cell centres of a
//! fixed lattice over a bounding box, times the cell area. That makes every
//! measure an exact multiple of the cell area, so the valuation recursion
//!
//! ```text
//! M_i(x)     = { y : h_i(y) < h_i(x) }
//! h_{i+1}(x) = μ(x, M_i(x))
//! ```
//!
//! ranges over a finite set and its stopping point is detected by exact
//! equality. `μ(x, M)` is the measure of the region weakly closer to `x`
//! than to every summit outside `M`; grid centres equidistant to several
//! summits count for each of them.

use crate::error::{Error, Result};
use crate::geoalt::{DistanceMode, Point, Space, SummitField};
use crate::relation::ElementSet;

pub const DEFAULT_RESOLUTION: usize = 128;
pub const DEFAULT_INFLATE: f64 = 0.25;

/// A regular lattice of cells over an axis-aligned box.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMeasure {
    min: Point,
    max: Point,
    nx: usize,
    ny: usize,
}

impl GridMeasure {
    pub fn new(min: Point, max: Point, nx: usize, ny: usize) -> Result<Self> {
        let coords = [min.x, min.y, max.x, max.y];
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Grid("bounding box must be finite".into()));
        }
        if !(min.x < max.x && min.y < max.y) {
            return Err(Error::Grid(format!(
                "degenerate box [{}, {}] x [{}, {}]",
                min.x, max.x, min.y, max.y
            )));
        }
        if nx == 0 || ny == 0 {
            return Err(Error::Grid("resolution must be at least 1 per axis".into()));
        }
        Ok(GridMeasure { min, max, nx, ny })
    }

    /// Bounding box of `summits`, padded by `inflate` times its span on
    /// every side. A zero span borrows the other axis' span (or 1).
    pub fn around(summits: &[Point], inflate: f64, nx: usize, ny: usize) -> Result<Self> {
        if summits.is_empty() {
            return Err(Error::Grid("cannot fit a box around no summits".into()));
        }
        if !(inflate.is_finite() && inflate >= 0.0) {
            return Err(Error::Grid(format!("inflation {inflate} must be finite and non-negative")));
        }
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&Point) -> f64| {
            summits.iter().map(pick).fold(init, f)
        };
        let (x0, x1) = (fold(f64::min, f64::INFINITY, |p| p.x), fold(f64::max, f64::NEG_INFINITY, |p| p.x));
        let (y0, y1) = (fold(f64::min, f64::INFINITY, |p| p.y), fold(f64::max, f64::NEG_INFINITY, |p| p.y));
        let fallback = match (x1 - x0).max(y1 - y0) {
            s if s > 0.0 => s,
            _ => 1.0,
        };
        let span = |s: f64| if s > 0.0 { s } else { fallback };
        let (sx, sy) = (span(x1 - x0), span(y1 - y0));
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let (hx, hy) = (sx * (0.5 + inflate), sy * (0.5 + inflate));
        GridMeasure::new(Point::new(cx - hx, cy - hy), Point::new(cx + hx, cy + hy), nx, ny)
    }

    pub fn min(&self) -> Point {
        self.min
    }

    pub fn max(&self) -> Point {
        self.max
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn cell_area(&self) -> f64 {
        (self.max.x - self.min.x) / self.nx as f64 * ((self.max.y - self.min.y) / self.ny as f64)
    }

    pub fn box_area(&self) -> f64 {
        self.cell_area() * self.cell_count() as f64
    }

    /// Cell centres, row by row from the bottom-left corner.
    pub fn centers(&self) -> impl Iterator<Item = Point> + '_ {
        let w = (self.max.x - self.min.x) / self.nx as f64;
        let h = (self.max.y - self.min.y) / self.ny as f64;
        (0..self.ny).flat_map(move |j| {
            (0..self.nx).map(move |i| {
                Point::new(self.min.x + (i as f64 + 0.5) * w, self.min.y + (j as f64 + 0.5) * h)
            })
        })
    }

    fn measure(&self, count: usize) -> f64 {
        count as f64 * self.cell_area()
    }
}

fn plane_field(summits: &[Point], altitudes: &[f64], reference: Point) -> Result<SummitField> {
    SummitField::new(Space::Euclidean2d, summits.to_vec(), altitudes.to_vec(), reference)
}

fn dominated(a: usize, altitudes: &[f64], dist: &[i128]) -> bool {
    (0..altitudes.len()).any(|b| {
        altitudes[b] >= altitudes[a]
            && dist[b] <= dist[a]
            && (altitudes[b] > altitudes[a] || dist[b] < dist[a])
    })
}

/// Is summit `a` significant for the reference point `x`?
pub fn inverse_altiset_member(summits: &[Point], altitudes: &[f64], a: usize, x: Point) -> Result<bool> {
    check_index(a, summits.len())?;
    let field = plane_field(summits, altitudes, x)?;
    Ok(!dominated(a, altitudes, &field.distances().keys))
}

/// Measure of the region of reference points for which `a` is significant.
pub fn inverse_altiset_measure(
    summits: &[Point],
    altitudes: &[f64],
    a: usize,
    grid: &GridMeasure,
) -> Result<f64> {
    check_index(a, summits.len())?;
    let field = plane_field(summits, altitudes, grid.min)?;
    let count = grid
        .centers()
        .filter(|&c| {
            let keys = field.with_reference(c).expect("finite centre").distances().keys;
            !dominated(a, altitudes, &keys)
        })
        .count();
    Ok(grid.measure(count))
}

fn check_index(a: usize, size: usize) -> Result<()> {
    if a < size {
        Ok(())
    } else {
        Err(Error::Index { index: a, size })
    }
}

/// Distance keys from every grid centre to every summit, computed once.
#[derive(Clone, Debug)]
pub struct VoronoiMeasure {
    grid: GridMeasure,
    keys: Vec<Vec<i128>>,
    summit_count: usize,
    exact: bool,
}

impl VoronoiMeasure {
    pub fn new(summits: &[Point], grid: &GridMeasure) -> Result<Self> {
        let zeros = vec![0.0; summits.len()];
        let field = plane_field(summits, &zeros, grid.min)?;
        let mut exact = true;
        let keys = grid
            .centers()
            .map(|c| {
                let profile = field.with_reference(c).expect("finite centre").distances();
                exact &= profile.mode == DistanceMode::Exact;
                profile.keys
            })
            .collect();
        Ok(VoronoiMeasure { grid: grid.clone(), keys, summit_count: summits.len(), exact })
    }

    pub fn grid(&self) -> &GridMeasure {
        &self.grid
    }

    /// False when some distance comparison fell back to the 1e-9 tolerance.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Number of centres weakly closer to `x` than to every competitor.
    fn count_where(&self, x: usize, competitor: impl Fn(usize) -> bool) -> usize {
        self.keys
            .iter()
            .filter(|d| (0..self.summit_count).all(|a| !competitor(a) || d[a] >= d[x]))
            .count()
    }

    /// `μ(x, M)`: measure of the centres weakly closer to `x` than to every
    /// summit of `A ∖ M`.
    pub fn mu(&self, x: usize, excluded: &ElementSet) -> Result<f64> {
        check_index(x, self.summit_count)?;
        if excluded.contains(&x) {
            return Err(Error::Argument(format!("summit {x} must not belong to M")));
        }
        Ok(self.grid.measure(self.count_where(x, |a| !excluded.contains(&a))))
    }

    /// One step of the recursion `h_{i+1}(x) = μ(x, {y : h_i(y) < h_i(x)})`.
    pub fn step(&self, valuation: &[f64]) -> Vec<f64> {
        (0..self.summit_count)
            .map(|x| {
                let count = self.count_where(x, |a| valuation[a] >= valuation[x]);
                self.grid.measure(count)
            })
            .collect()
    }
}

pub fn voronoi_mu(x: usize, excluded: &ElementSet, summits: &[Point], grid: &GridMeasure) -> Result<f64> {
    VoronoiMeasure::new(summits, grid)?.mu(x, excluded)
}

/// Valuations `h₀, h₁, …` up to and including the first repeat.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationTrace {
    pub valuations: Vec<Vec<f64>>,
    /// `k` with `h_k = h_{k+1}`.
    pub stop_index: usize,
}

impl ValuationTrace {
    /// The limit valuation.
    pub fn potential(&self) -> &[f64] {
        &self.valuations[self.stop_index]
    }
}

pub fn evolve(summits: &[Point], initial: &[f64], grid: &GridMeasure, max_steps: usize) -> Result<ValuationTrace> {
    if max_steps == 0 {
        return Err(Error::Argument("max_steps must be at least 1".into()));
    }
    if initial.len() != summits.len() {
        return Err(Error::Dimension { expected: summits.len(), found: initial.len() });
    }
    if initial.iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("initial valuation must be finite".into()));
    }
    let measure = VoronoiMeasure::new(summits, grid)?;
    evolve_with(&measure, initial, max_steps)
}

pub fn evolve_with(measure: &VoronoiMeasure, initial: &[f64], max_steps: usize) -> Result<ValuationTrace> {
    let mut valuations = vec![initial.to_vec()];
    for _ in 0..max_steps {
        let current = valuations.last().expect("nonempty trace");
        let next = measure.step(current);
        let stopped = next == *current;
        valuations.push(next);
        if stopped {
            let stop_index = valuations.len() - 2;
            return Ok(ValuationTrace { valuations, stop_index });
        }
    }
    Err(Error::NonTermination { max_steps })
}

//! Direction of dependence between two variables.
//!
//! A planar point set is covered by strictly increasing subsets (plots of
//! strictly increasing functions); the least number needed is the index of
//! increasingness `ι₊`, and dually `ι₋` for decreasing subsets. Both are
//! computed as the class count of successive altisets:
//!
//! * `ι₊ = d(<_y ∪ >_x)`
//! * `ι₋ = d(<_y ∪ <_x)`
//!
//! and combine into `ε = log_n(ι₋ / ι₊) ∈ [-1, 1]`.

use ordered_float::NotNan;

use crate::error::{Error, Result};
use crate::layers::upper_layers;
use crate::relation::{FiniteRelation, Universe};

/// Pairwise distinct points of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet2D {
    points: Vec<(f64, f64)>,
}

impl PointSet2D {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::Argument(format!("point {i} has a non-finite coordinate")));
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::Injectivity { first: j, second: i });
                }
            }
        }
        Ok(PointSet2D { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn coords(&self) -> (Vec<NotNan<f64>>, Vec<NotNan<f64>>) {
        let nn = |v: f64| NotNan::new(v).expect("finite coordinate");
        self.points.iter().map(|&(x, y)| (nn(x), nn(y))).unzip()
    }

    /// `<_y ∪ >_x`: `(i, j)` iff `y_i < y_j` or `x_i > x_j`.
    pub fn increasing_relation(&self) -> FiniteRelation {
        let (x, y) = self.coords();
        FiniteRelation::from_fn(Universe::new(self.len()), |i, j| y[i] < y[j] || x[i] > x[j])
    }

    /// `<_y ∪ <_x`: `(i, j)` iff `y_i < y_j` or `x_i < x_j`.
    pub fn decreasing_relation(&self) -> FiniteRelation {
        let (x, y) = self.coords();
        FiniteRelation::from_fn(Universe::new(self.len()), |i, j| y[i] < y[j] || x[i] < x[j])
    }

    /// True iff the subset is the plot of a strictly increasing function.
    pub fn is_increasing(&self, subset: &[usize]) -> bool {
        pairwise(subset, |i, j| {
            let (a, b) = (self.points[i], self.points[j]);
            (a.0 < b.0 && a.1 < b.1) || (a.0 > b.0 && a.1 > b.1)
        })
    }

    /// True iff the subset is the plot of a strictly decreasing function.
    pub fn is_decreasing(&self, subset: &[usize]) -> bool {
        pairwise(subset, |i, j| {
            let (a, b) = (self.points[i], self.points[j]);
            (a.0 < b.0 && a.1 > b.1) || (a.0 > b.0 && a.1 < b.1)
        })
    }

    fn check_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::Degenerate("empty point set".into()))
        } else {
            Ok(())
        }
    }
}

fn pairwise(subset: &[usize], ok: impl Fn(usize, usize) -> bool) -> bool {
    subset
        .iter()
        .enumerate()
        .all(|(k, &i)| subset[k + 1..].iter().all(|&j| ok(i, j)))
}

/// `ι₊`: the least number of strictly increasing subsets covering `S`.
pub fn increasingness_index(points: &PointSet2D) -> Result<usize> {
    points.check_nonempty()?;
    Ok(upper_layers(&points.increasing_relation())?.class_count)
}

/// `ι₋`: the least number of strictly decreasing subsets covering `S`.
pub fn decreasingness_index(points: &PointSet2D) -> Result<usize> {
    points.check_nonempty()?;
    Ok(upper_layers(&points.decreasing_relation())?.class_count)
}

/// `ε = ln(ι₋ / ι₊) / ln(n)`; undefined for fewer than two points.
pub fn epsilon(points: &PointSet2D) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::Degenerate(format!(
            "correlation coefficient needs at least 2 points, got {n}"
        )));
    }
    let plus = increasingness_index(points)? as f64;
    let minus = decreasingness_index(points)? as f64;
    Ok((minus / plus).ln() / (n as f64).ln())
}

/// A minimal increasing decomposition: the upper layers of `<_y ∪ >_x`.
pub fn increasing_decomposition(points: &PointSet2D) -> Result<Vec<Vec<usize>>> {
    points.check_nonempty()?;
    let layers = upper_layers(&points.increasing_relation())?;
    Ok(layers.upper_layers().into_iter().map(|s| s.into_iter().collect()).collect())
}

/// A minimal decreasing decomposition: the upper layers of `<_y ∪ <_x`.
pub fn decreasing_decomposition(points: &PointSet2D) -> Result<Vec<Vec<usize>>> {
    points.check_nonempty()?;
    let layers = upper_layers(&points.decreasing_relation())?;
    Ok(layers.upper_layers().into_iter().map(|s| s.into_iter().collect()).collect())
}

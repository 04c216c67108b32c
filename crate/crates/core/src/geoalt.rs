//! Geometric altisets: summits that are both high and close.
//!
//! Given summits with altitudes and a reference point, a summit is
//! significant unless another one is at least as high and at least as close
//! with one of the two strict. This is the altiset of `<_h ∪ >_d`.
//!
//! Distances are compared exactly whenever the coordinates are decimal
//! numbers of bounded precision (their squared distances are then computed
//! in scaled 128-bit integers); otherwise they are bucketed with an absolute
//! tolerance of [`DISTANCE_TOLERANCE`] and the field reports it.

use ordered_float::NotNan;

use crate::error::{Error, Result};
use crate::relation::ElementSet;

pub const DISTANCE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Euclidean2d,
    RealLine,
    /// The real line with every summit at or left of the reference point.
    RealLineLeftRestricted,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Euclidean2d => "euclidean-2d",
            Space::RealLine => "real-line",
            Space::RealLineLeftRestricted => "real-line-left-restricted",
        }
    }

    pub fn is_line(self) -> bool {
        !matches!(self, Space::Euclidean2d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn on_line(x: f64) -> Self {
        Point { x, y: 0.0 }
    }

    pub fn squared_distance(self, other: Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistanceMode {
    Exact,
    Tolerance(f64),
}

/// Totally ordered distance keys, one per summit.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceProfile {
    pub keys: Vec<i128>,
    pub mode: DistanceMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummitField {
    space: Space,
    summits: Vec<Point>,
    altitude: Vec<NotNan<f64>>,
    reference: Point,
}

impl SummitField {
    pub fn new(space: Space, summits: Vec<Point>, altitude: Vec<f64>, reference: Point) -> Result<Self> {
        if summits.len() != altitude.len() {
            return Err(Error::Dimension { expected: summits.len(), found: altitude.len() });
        }
        let finite = |p: &Point| p.x.is_finite() && p.y.is_finite();
        if !finite(&reference) {
            return Err(Error::Argument("reference point must be finite".into()));
        }
        for (i, p) in summits.iter().enumerate() {
            if !finite(p) {
                return Err(Error::Argument(format!("summit {i} has a non-finite coordinate")));
            }
            if space.is_line() && p.y != 0.0 {
                return Err(Error::Argument(format!("summit {i} is off the real line")));
            }
            if space == Space::RealLineLeftRestricted && p.x > reference.x {
                return Err(Error::Argument(format!(
                    "summit {i} lies right of the reference point"
                )));
            }
        }
        if space.is_line() && reference.y != 0.0 {
            return Err(Error::Argument("reference point is off the real line".into()));
        }
        let altitude = altitude
            .into_iter()
            .enumerate()
            .map(|(i, h)| {
                if h.is_finite() {
                    Ok(NotNan::new(h).expect("finite"))
                } else {
                    Err(Error::Argument(format!("summit {i} has a non-finite altitude")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SummitField { space, summits, altitude, reference })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn summits(&self) -> &[Point] {
        &self.summits
    }

    pub fn altitudes(&self) -> Vec<f64> {
        self.altitude.iter().map(|h| h.into_inner()).collect()
    }

    pub fn reference(&self) -> Point {
        self.reference
    }

    pub fn len(&self) -> usize {
        self.summits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summits.is_empty()
    }

    /// Same summits seen from another reference point (space kept).
    pub fn with_reference(&self, reference: Point) -> Result<Self> {
        SummitField::new(self.space, self.summits.clone(), self.altitudes(), reference)
    }

    pub fn distances(&self) -> DistanceProfile {
        match exact_squared_distances(&self.summits, self.reference) {
            Some(keys) => DistanceProfile { keys, mode: DistanceMode::Exact },
            None => DistanceProfile {
                keys: self
                    .summits
                    .iter()
                    .map(|p| {
                        let d = p.squared_distance(self.reference).sqrt();
                        (d / DISTANCE_TOLERANCE).round() as i128
                    })
                    .collect(),
                mode: DistanceMode::Tolerance(DISTANCE_TOLERANCE),
            },
        }
    }
}

/// `v = mantissa · 10^exponent`, read off the shortest round-trip decimal.
fn decimal_parts(v: f64) -> (i128, i32) {
    let text = format!("{v:e}");
    let (mantissa, exp) = text.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: i128 = format!("{int_part}{frac_part}").parse().expect("mantissa digits");
    (digits, exp - frac_part.len() as i32)
}

const EXACT_LIMIT: i128 = 1 << 60;

fn exact_squared_distances(summits: &[Point], reference: Point) -> Option<Vec<i128>> {
    let coords: Vec<f64> = summits
        .iter()
        .flat_map(|p| [p.x, p.y])
        .chain([reference.x, reference.y])
        .collect();
    let parts: Vec<(i128, i32)> = coords.iter().map(|&v| decimal_parts(v)).collect();
    let scale = parts.iter().map(|&(_, e)| (-e).max(0)).max().unwrap_or(0);
    if scale > 30 {
        return None;
    }
    let scaled: Vec<i128> = parts
        .iter()
        .map(|&(m, e)| {
            let shift = u32::try_from(e + scale).ok()?;
            let v = 10i128.checked_pow(shift)?.checked_mul(m)?;
            (v.abs() <= EXACT_LIMIT).then_some(v)
        })
        .collect::<Option<_>>()?;
    let (rx, ry) = (scaled[scaled.len() - 2], scaled[scaled.len() - 1]);
    Some(
        scaled[..scaled.len() - 2]
            .chunks(2)
            .map(|c| {
                let (dx, dy) = (c[0] - rx, c[1] - ry);
                dx * dx + dy * dy
            })
            .collect(),
    )
}

/// Definitional altiset of `<_h ∪ >_d`: `a` is out iff some `b` is at least
/// as high and at least as close, with one of the two strict.
pub fn altiset_by_keys<H: Ord, D: Ord>(altitude: &[H], distance: &[D]) -> ElementSet {
    let n = altitude.len();
    (0..n)
        .filter(|&a| {
            !(0..n).any(|b| {
                altitude[b] >= altitude[a]
                    && distance[b] <= distance[a]
                    && (altitude[b] > altitude[a] || distance[b] < distance[a])
            })
        })
        .collect()
}

pub fn geo_altiset_oracle(field: &SummitField) -> ElementSet {
    altiset_by_keys(&field.altitude, &field.distances().keys)
}

/// Shrinking-disc sweep shared by the circular and contour methods.
///
/// `outer` is to be minimised and `inner` maximised. Repeatedly take, among
/// the summits strictly inside the current bound on `outer`, those with the
/// best `inner` and, among them, the best `outer`; then shrink the bound to
/// their `outer` value.
fn shrinking_sweep<A: Ord, B: Ord>(outer: &[A], inner: &[B]) -> ElementSet {
    let n = outer.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| outer[a].cmp(&outer[b]).then_with(|| inner[b].cmp(&inner[a])));

    // first sorted position achieving the running best `inner`
    let mut best_at = Vec::with_capacity(n);
    // first sorted position sharing this position's `outer`
    let mut group_start = Vec::with_capacity(n);
    for pos in 0..n {
        let v = order[pos];
        let best = match pos {
            0 => 0,
            _ => {
                let prev = best_at[pos - 1];
                if inner[v] > inner[order[prev]] { pos } else { prev }
            }
        };
        best_at.push(best);
        let start = if pos > 0 && outer[order[pos - 1]] == outer[v] { group_start[pos - 1] } else { pos };
        group_start.push(start);
    }

    let mut out = ElementSet::new();
    let mut limit = n;
    while limit > 0 {
        let first = best_at[limit - 1];
        let lead = order[first];
        out.extend(
            order[first..limit]
                .iter()
                .take_while(|&&v| outer[v] == outer[lead] && inner[v] == inner[lead]),
        );
        limit = group_start[first];
    }
    out
}

/// Circles around the reference point, shrinking past each added summit.
pub fn skyline_circular(field: &SummitField) -> ElementSet {
    shrinking_sweep(&field.distances().keys, &field.altitude)
}

/// Contour levels rising past each added summit.
pub fn skyline_contour(field: &SummitField) -> ElementSet {
    use std::cmp::Reverse;
    let distance: Vec<Reverse<i128>> = field.distances().keys.into_iter().map(Reverse).collect();
    let altitude: Vec<Reverse<NotNan<f64>>> = field.altitude.iter().copied().map(Reverse).collect();
    shrinking_sweep(&altitude, &distance)
}

/// Block-wise altisets merged level by level.
///
/// Summits are cut into consecutive blocks of `block_size` in input order;
/// the altisets of the blocks are merged and the process repeats on the
/// merged list. When a level removes nothing the block size doubles, so the
/// recursion always ends in a single block.
pub fn skyline_recursive(field: &SummitField, block_size: usize) -> Result<ElementSet> {
    if block_size == 0 {
        return Err(Error::Argument("block size must be at least 1".into()));
    }
    let dist = field.distances().keys;
    let block_altiset = |block: &[usize]| -> Vec<usize> {
        let h: Vec<_> = block.iter().map(|&i| field.altitude[i]).collect();
        let d: Vec<_> = block.iter().map(|&i| dist[i]).collect();
        altiset_by_keys(&h, &d).into_iter().map(|k| block[k]).collect()
    };
    let mut current: Vec<usize> = (0..field.len()).collect();
    let mut size = block_size;
    while current.len() > size {
        let merged: Vec<usize> = current.chunks(size).flat_map(block_altiset).collect();
        if merged.len() == current.len() {
            size = size.saturating_mul(2);
        }
        current = merged;
    }
    Ok(block_altiset(&current).into_iter().collect())
}

/// Record-setting events: the limit of a one-dimensional field whose
/// reference point recedes to `-∞`, where time plays the role of distance.
pub fn record_events(field: &SummitField) -> Result<ElementSet> {
    if !field.space.is_line() {
        return Err(Error::Space { expected: "real-line", found: field.space.name() });
    }
    let time: Vec<NotNan<f64>> = field
        .summits
        .iter()
        .map(|p| NotNan::new(p.x).expect("finite"))
        .collect();
    Ok(shrinking_sweep(&time, &field.altitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn line_field(xs: &[f64], h: &[f64]) -> SummitField {
        SummitField::new(
            Space::RealLine,
            xs.iter().map(|&x| Point::on_line(x)).collect(),
            h.to_vec(),
            Point::on_line(0.0),
        )
        .unwrap()
    }

    fn all_methods(field: &SummitField) -> Vec<ElementSet> {
        vec![
            geo_altiset_oracle(field),
            skyline_circular(field),
            skyline_contour(field),
            skyline_recursive(field, 1).unwrap(),
            skyline_recursive(field, 2).unwrap(),
            skyline_recursive(field, 100).unwrap(),
        ]
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(geo_altiset_oracle(&line_field(&[3.0], &[1.0])), set(&[0]));
        assert_eq!(geo_altiset_oracle(&line_field(&[3.0, 1.0], &[1.0, 2.0])), set(&[1]));
        let f = line_field(&[1.0, 2.0, 3.0], &[10.0, 30.0, 20.0]);
        for got in all_methods(&f) {
            assert_eq!(got, set(&[0, 1]));
        }
    }

    #[test]
    fn equal_distance_field() {
        let f = SummitField::new(
            Space::Euclidean2d,
            vec![Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), Point::new(0.0, -1.0)],
            vec![5.0, 7.0, 7.0, 2.0],
            Point::new(0.0, 0.0),
        )
        .unwrap();
        for got in all_methods(&f) {
            assert_eq!(got, set(&[1, 2]));
        }
    }

    #[test]
    fn chain_field_keeps_everything() {
        let f = line_field(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]);
        for got in all_methods(&f) {
            assert_eq!(got, set(&[0, 1, 2, 3]));
        }
    }

    #[test]
    fn indistinguishable_summits_travel_together() {
        let f = line_field(&[2.0, -2.0, 1.0, 5.0], &[4.0, 4.0, 1.0, 4.0]);
        for got in all_methods(&f) {
            assert_eq!(got, set(&[0, 1, 2]));
        }
    }

    #[test]
    fn decimal_distances_are_exact() {
        // 0.1 and 0.3 are equidistant from 0.2 in exact arithmetic only
        let f = SummitField::new(
            Space::RealLine,
            vec![Point::on_line(0.1), Point::on_line(0.3)],
            vec![1.0, 1.0],
            Point::on_line(0.2),
        )
        .unwrap();
        let d = f.distances();
        assert_eq!(d.mode, DistanceMode::Exact);
        assert_eq!(d.keys[0], d.keys[1]);
        assert_eq!(geo_altiset_oracle(&f), set(&[0, 1]));
    }

    #[test]
    fn tolerance_fallback() {
        let f = SummitField::new(
            Space::Euclidean2d,
            vec![Point::new(1e300, 0.0), Point::new(1.0, 2.0)],
            vec![1.0, 0.0],
            Point::new(0.0, 0.0),
        )
        .unwrap();
        let d = f.distances();
        assert_eq!(d.mode, DistanceMode::Tolerance(DISTANCE_TOLERANCE));
        assert!(d.keys[0] > d.keys[1]);
        assert_eq!(geo_altiset_oracle(&f), set(&[0, 1]));
    }

    #[test]
    fn decimal_parts_of_floats() {
        assert_eq!(decimal_parts(0.1), (1, -1));
        assert_eq!(decimal_parts(123.45), (12345, -2));
        assert_eq!(decimal_parts(-2.0), (-2, 0));
        assert_eq!(decimal_parts(1e20), (1, 20));
        assert_eq!(decimal_parts(0.0), (0, 0));
    }

    #[test]
    fn record_events_examples() {
        let f = line_field(&[0.0, 1.0, 2.0, 3.0], &[1.0, 3.0, 2.0, 5.0]);
        assert_eq!(record_events(&f).unwrap(), set(&[0, 1, 3]));
        let f = line_field(&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0]);
        assert_eq!(record_events(&f).unwrap(), set(&[0, 1, 2]));
        let f = line_field(&[0.0, 1.0, 2.0], &[3.0, 2.0, 1.0]);
        assert_eq!(record_events(&f).unwrap(), set(&[0]));
        let plane = SummitField::new(Space::Euclidean2d, vec![], vec![], Point::new(0.0, 0.0)).unwrap();
        assert!(matches!(record_events(&plane), Err(Error::Space { .. })));
    }

    #[test]
    fn field_validation() {
        let p = Point::on_line(1.0);
        assert!(SummitField::new(Space::RealLine, vec![p], vec![], p).is_err());
        assert!(SummitField::new(Space::RealLine, vec![Point::new(0.0, 1.0)], vec![1.0], p).is_err());
        assert!(SummitField::new(Space::RealLineLeftRestricted, vec![Point::on_line(2.0)], vec![1.0], p).is_err());
        assert!(SummitField::new(Space::RealLineLeftRestricted, vec![Point::on_line(0.5)], vec![1.0], p).is_ok());
        assert!(SummitField::new(Space::RealLine, vec![p], vec![f64::NAN], p).is_err());
        assert!(skyline_recursive(&line_field(&[1.0], &[1.0]), 0).is_err());
    }

    #[test]
    fn empty_field() {
        let f = line_field(&[], &[]);
        for got in all_methods(&f) {
            assert!(got.is_empty());
        }
    }
}

use altiset::geoalt::{
    geo_altiset_oracle, record_events, skyline_circular, skyline_contour, skyline_recursive, DistanceMode, Point,
    Space, SummitField,
};
use altiset::ElementSet;
use altiset_oracles as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Field = (Vec<(f64, f64)>, Vec<f64>, (f64, f64));

/// Integer-lattice field with many repeated distances and altitudes.
fn random_field(rng: &mut impl Rng, max: usize) -> Field {
    let n = rng.gen_range(0..=max);
    let spread = rng.gen_range(2..=30);
    let levels = rng.gen_range(1..=12);
    let reference = (rng.gen_range(-spread..=spread) as f64, rng.gen_range(-spread..=spread) as f64);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let p = if !pts.is_empty() && rng.gen_bool(0.2) {
            // mirror an earlier summit through the reference: same distance
            let (x, y): (f64, f64) = pts[rng.gen_range(0..pts.len())];
            (2.0 * reference.0 - x, 2.0 * reference.1 - y)
        } else {
            (rng.gen_range(-spread..=spread) as f64, rng.gen_range(-spread..=spread) as f64)
        };
        pts.push(p);
    }
    let h = (0..n).map(|_| rng.gen_range(0..levels) as f64).collect();
    (pts, h, reference)
}

fn field(pts: &[(f64, f64)], h: &[f64], r: (f64, f64)) -> SummitField {
    SummitField::new(
        Space::Euclidean2d,
        pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        h.to_vec(),
        Point::new(r.0, r.1),
    )
    .unwrap()
}

fn expected(pts: &[(f64, f64)], h: &[f64], r: (f64, f64)) -> ElementSet {
    oracle::skyline(h, &oracle::squared_distances(pts, r)).into_iter().collect()
}

#[test]
fn methods_agree_with_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..500 {
        let (pts, h, r) = random_field(&mut rng, 200);
        let f = field(&pts, &h, r);
        assert_eq!(f.distances().mode, DistanceMode::Exact);
        let want = expected(&pts, &h, r);
        assert_eq!(geo_altiset_oracle(&f), want);
        assert_eq!(skyline_circular(&f), want);
        assert_eq!(skyline_contour(&f), want);
        let block = rng.gen_range(1..=pts.len().max(1) + 2);
        assert_eq!(skyline_recursive(&f, block).unwrap(), want);
    }
}

#[test]
fn sweeps_agree_on_large_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..20 {
        let (pts, h, r) = random_field(&mut rng, 1000);
        let f = field(&pts, &h, r);
        let want = geo_altiset_oracle(&f);
        assert_eq!(skyline_circular(&f), want);
        assert_eq!(skyline_contour(&f), want);
        assert_eq!(skyline_recursive(&f, 16).unwrap(), want);
    }
}

#[test]
fn order_only_dependence_and_overcharge() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..200 {
        let (pts, h, r) = random_field(&mut rng, 60);
        let f = field(&pts, &h, r);
        let v = geo_altiset_oracle(&f);

        let rescaled: Vec<f64> = h.iter().map(|a| 2.0 * a * a * a + 1.0).collect();
        assert_eq!(geo_altiset_oracle(&field(&pts, &rescaled, r)), v);
        // doubling every offset from the reference scales all distances by 2
        let stretched: Vec<(f64, f64)> =
            pts.iter().map(|&(x, y)| (2.0 * x - r.0, 2.0 * y - r.1)).collect();
        assert_eq!(geo_altiset_oracle(&field(&stretched, &h, r)), v);

        let d = f.distances().keys;
        for a in (0..pts.len()).filter(|a| !v.contains(a)) {
            assert!(v.iter().any(|&s| h[s] >= h[a] && d[s] <= d[a]));
        }
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                if h[a] == h[b] && d[a] == d[b] {
                    assert_eq!(v.contains(&a), v.contains(&b));
                }
            }
        }
    }
}

#[test]
fn records_match_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..200 {
        let n = rng.gen_range(0..=100);
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0..20) as f64).collect();
        let times: Vec<Point> = (0..n).map(|t| Point::on_line(t as f64)).collect();
        let reference = Point::on_line(n as f64);
        let f = SummitField::new(Space::RealLineLeftRestricted, times, values.clone(), reference).unwrap();
        let want: ElementSet = oracle::records(&values).into_iter().collect();
        assert_eq!(record_events(&f).unwrap(), want);
    }
}

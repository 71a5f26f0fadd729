use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use squares_core::geometry::{
    count_axis_parallel_squares, count_rit, count_rit_by_rotation, count_rit_through, count_squares,
    count_squares_through,
};
use squares_core::oss::{is_realizable, oss_from_labeled};
use squares_core::similarity::{canonical_key, canonical_key_of_set, class_key, normalize_to_grid, pointed_class_key};
use squares_core::{GridPoint, GridSet, Point, RatPoint};

fn grid_set(max_n: usize, side: i64) -> impl Strategy<Value = GridSet> {
    prop::collection::btree_set((0..side, 0..side), 1..=max_n)
        .prop_map(|s| GridSet::new(s.into_iter().map(|(x, y)| Point::new(x, y)).collect()))
}

/// Squares by checking every 4-subset: four equal sides, two diagonals of twice the squared side.
fn brute_squares(p: &[GridPoint]) -> u64 {
    let d = |a: GridPoint, b: GridPoint| (a.x - b.x).pow(2) + (a.y - b.y).pow(2);
    let n = p.len();
    let mut c = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let q = [p[i], p[j], p[k], p[l]];
                    let mut ds: Vec<i64> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).map(|(a, b)| d(q[a], q[b])).collect();
                    ds.sort_unstable();
                    if ds[0] > 0 && ds[0] == ds[3] && ds[4] == ds[5] && ds[4] == 2 * ds[0] {
                        c += 1;
                    }
                }
            }
        }
    }
    c
}

/// Triangles by checking every 3-subset for a vertex with perpendicular legs of equal length.
fn brute_rit(p: &[GridPoint]) -> u64 {
    let n = p.len();
    let mut c = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [p[i], p[j], p[k]];
                let hit = (0..3).any(|a| {
                    let (u, v) = (t[(a + 1) % 3], t[(a + 2) % 3]);
                    let (ux, uy, vx, vy) = (u.x - t[a].x, u.y - t[a].y, v.x - t[a].x, v.y - t[a].y);
                    ux * vx + uy * vy == 0 && ux * ux + uy * uy == vx * vx + vy * vy
                });
                c += hit as u64;
            }
        }
    }
    c
}

fn brute_axis(p: &[GridPoint]) -> u64 {
    let has = |x: i64, y: i64| p.contains(&Point::new(x, y));
    p.iter()
        .map(|a| (1..20).filter(|&s| has(a.x + s, a.y) && has(a.x, a.y + s) && has(a.x + s, a.y + s)).count() as u64)
        .sum()
}

/// Random points plus one square, so square structures are never empty.
fn with_square() -> impl Strategy<Value = GridSet> {
    (0i64..3, 0i64..3, 0i64..3, 1i64..3, prop::collection::vec((0i64..6, 0i64..6), 0..5)).prop_map(|(x, y, u, v, extra)| {
        let mut pts = vec![Point::new(x, y), Point::new(x + v, y + u), Point::new(x + v - u, y + u + v), Point::new(x - u, y + v)];
        pts.extend(extra.into_iter().map(|(a, b)| Point::new(a, b)));
        pts.sort();
        pts.dedup();
        GridSet::new(pts)
    })
}

/// `z -> a z + b` or `a conj(z) + b` with rational Gaussian `a != 0` and rational `b`.
fn similarity(pts: &[GridPoint], a: (i64, i64, i64), b: (i64, i64, i64), reflect: bool) -> Vec<RatPoint> {
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let (ar, ai) = (r(a.0) / r(a.2), r(a.1) / r(a.2));
    let (br, bi) = (r(b.0) / r(b.2), r(b.1) / r(b.2));
    pts.iter()
        .map(|p| {
            let (x, y) = (r(p.x), if reflect { -r(p.y) } else { r(p.y) });
            Point::new(&ar * &x - &ai * &y + &br, &ar * &y + &ai * &x + &bi)
        })
        .collect()
}

fn gaussian() -> impl Strategy<Value = ((i64, i64, i64), (i64, i64, i64), bool)> {
    (
        (-9i64..=9, -9i64..=9, 1i64..=7).prop_filter("nonzero scale", |a| a.0 != 0 || a.1 != 0),
        (-20i64..=20, -20i64..=20, 1i64..=5),
        any::<bool>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn counting_matches_subset_scans(set in grid_set(12, 10)) {
        let p = set.points();
        prop_assert_eq!(count_squares(&set).unwrap(), brute_squares(p));
        prop_assert_eq!(count_rit_by_rotation(&set).unwrap(), brute_rit(p));
        prop_assert_eq!(count_rit(&set).unwrap(), brute_rit(p));
        prop_assert_eq!(count_axis_parallel_squares(&set).unwrap(), brute_axis(p));
    }

    #[test]
    fn adding_a_point_adds_the_counts_through_it(set in grid_set(10, 8), x in 0i64..8, y in 0i64..8) {
        let pt = Point::new(x, y);
        prop_assume!(!set.contains(&pt));
        let mut bigger = set.clone();
        bigger.insert(pt);
        prop_assert_eq!(bigger.square_count() - set.square_count(), count_squares_through(&set, &pt).unwrap());
        prop_assert_eq!(bigger.rit_count() - set.rit_count(), count_rit_through(&set, &pt).unwrap());
    }

    #[test]
    fn keys_are_similarity_invariant(set in grid_set(9, 8), (a, b, reflect) in gaussian()) {
        let image = similarity(set.points(), a, b, reflect);
        prop_assert_eq!(canonical_key_of_set(&set), canonical_key(&image));
        let lattice = normalize_to_grid(&image).unwrap();
        prop_assert_eq!(class_key(set.points()).unwrap(), class_key(lattice.points()).unwrap());
    }

    #[test]
    fn fast_key_agrees_with_full_key(a in grid_set(7, 5), b in grid_set(7, 5)) {
        let fast = class_key(a.points()).unwrap() == class_key(b.points()).unwrap();
        let full = canonical_key_of_set(&a) == canonical_key_of_set(&b);
        prop_assert_eq!(fast, full);
    }

    #[test]
    fn pointed_keys_follow_the_marked_point(set in grid_set(7, 6), (a, b, reflect) in gaussian(), pick in any::<prop::sample::Index>()) {
        let i = pick.index(set.len());
        let image = similarity(set.points(), a, b, reflect);
        let lattice = normalize_to_grid(&image).unwrap();
        // normalizing translates and scales by a positive factor, so sorted positions carry over
        let marked = image.iter().filter(|q| **q < image[i]).count();
        prop_assert_eq!(pointed_class_key(set.points(), i).unwrap(), pointed_class_key(lattice.points(), marked).unwrap());
    }

    #[test]
    fn relabeling_keeps_realizability(set in with_square(), seed in any::<u64>()) {
        let mut pts: Vec<GridPoint> = set.points().to_vec();
        let base = is_realizable(&oss_from_labeled(&pts).unwrap()).unwrap();
        let mut s = seed;
        for i in (1..pts.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pts.swap(i, (s >> 33) as usize % (i + 1));
        }
        let other = is_realizable(&oss_from_labeled(&pts).unwrap()).unwrap();
        prop_assert!(base.realizable && other.realizable);
        prop_assert_eq!(base.free_dimension, other.free_dimension);
        prop_assert_eq!(base.dimension, other.dimension);
    }
}

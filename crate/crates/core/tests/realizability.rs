use num_bigint::BigInt;
use num_rational::BigRational;
use squares_core::geometry::count_squares;
use squares_core::oss::{
    forced_squares, free_space, grid_embed, is_realizable, oss_from_labeled, oss_from_pointset, solve_gauged,
    strict_realizability, verify_witness, OrientedSquareSet,
};
use squares_core::{GridPoint, GridSet, Point, PointSet};

fn oss(n: usize, sq: &[[usize; 4]]) -> OrientedSquareSet {
    OrientedSquareSet::new(n, sq.to_vec()).unwrap()
}

fn pts(c: &[(i64, i64)]) -> Vec<GridPoint> {
    c.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

fn s_nine() -> Vec<[usize; 4]> {
    vec![[1, 3, 4, 2], [2, 5, 9, 8], [4, 7, 6, 5]]
}

fn s_ten() -> Vec<[usize; 4]> {
    let mut s = s_nine();
    s.push([3, 6, 8, 10]);
    s
}

fn s_ten_closed() -> Vec<[usize; 4]> {
    let mut s = s_ten();
    s.push([1, 10, 7, 9]);
    s
}

#[test]
fn seven_point_set_has_two_gauged_dimensions() {
    let o = oss(7, &[[1, 4, 3, 2], [4, 7, 6, 5]]);
    let g = solve_gauged(&o).unwrap().unwrap();
    assert_eq!(g.dimension(), 2);
    assert_eq!(free_space(&o).dimension(), 6);
    let r = is_realizable(&o).unwrap();
    assert!(r.realizable);
    assert!(verify_witness(&o, r.witness.as_ref().unwrap()));
}

#[test]
fn nine_point_set_has_six_free_dimensions() {
    let o = oss(9, &s_nine());
    assert_eq!(free_space(&o).dimension(), 6);
    assert_eq!(solve_gauged(&o).unwrap().unwrap().dimension(), 2);
}

#[test]
fn ten_point_set_free_dimension_and_witness() {
    let o = oss(10, &s_ten());
    assert_eq!(free_space(&o).dimension(), 4);
    assert_eq!(solve_gauged(&o).unwrap().unwrap().dimension(), 0);
    let r = is_realizable(&o).unwrap();
    assert!(r.realizable);
    assert_eq!(r.dimension, Some(0));
    let known = pts(&[(0, 5), (5, 5), (0, 0), (5, 0), (7, 1), (8, -1), (6, -2), (9, 7), (11, 3), (1, 8)]);
    assert!(verify_witness(&o, &known));
    let grid = r.grid.unwrap();
    assert!(verify_witness(&o, &grid));
}

#[test]
fn closing_square_collapses_everything() {
    let o = oss(10, &s_ten_closed());
    assert_eq!(free_space(&o).dimension(), 2);
    assert!(solve_gauged(&o).unwrap().is_none());
    let r = is_realizable(&o).unwrap();
    assert!(!r.realizable);
    assert_eq!(r.dimension, None);
    assert_eq!(r.certificate, Some((1, 2)));
    assert_eq!(r.merged, vec![(1..=10).collect::<Vec<_>>()]);
    assert!(r.witness.is_none());
}

#[test]
fn forced_square_of_the_ten_point_example() {
    let o = oss(10, &[[1, 2, 3, 4], [4, 5, 6, 7], [3, 8, 9, 7], [2, 10, 9, 5]]);
    assert!(is_realizable(&o).unwrap().realizable);
    assert_eq!(forced_squares(&o), vec![[3, 9, 4, 6]]);
    let strict = strict_realizability(&o).unwrap();
    assert!(!strict.realizable);
    assert_eq!(strict.forced, vec![[3, 9, 4, 6]]);
}

#[test]
fn strict_witness_has_no_extra_squares() {
    let o = oss(7, &[[1, 4, 3, 2], [4, 7, 6, 5]]);
    let strict = strict_realizability(&o).unwrap();
    assert!(strict.realizable);
    let grid = strict.grid.unwrap();
    assert!(verify_witness(&o, &grid));
    let set: PointSet<BigInt> = PointSet::new(grid);
    assert_eq!(count_squares(&set).unwrap(), 2);
}

#[test]
fn labeled_nine_point_configuration() {
    let p = pts(&[(0, 1), (1, 1), (0, 0), (1, 0), (2, 1), (3, 0), (2, -1), (1, 2), (2, 2)]);
    let o = oss_from_labeled(&p).unwrap();
    // the drawn coordinates also carry the tilted square (1, 4, 5, 8)
    let mut want = s_nine();
    want.push([1, 4, 5, 8]);
    want.sort();
    assert_eq!(o.squares(), want.as_slice());
    assert!(verify_witness(&oss(9, &s_nine()), &p));
}

#[test]
fn grid_embedding_stays_small() {
    let o = oss(10, &s_ten());
    let e = grid_embed(&o).unwrap();
    assert!(!e.exceeds_bound);
    assert!(verify_witness(&o, &e.points));
}

#[test]
fn witness_avoids_the_excluded_parameters() {
    // the free parameters with z1 = 0, z2 = i, written as z5 = 1 + u + v i
    let o = oss(7, &[[1, 4, 3, 2], [4, 7, 6, 5]]);
    let w = is_realizable(&o).unwrap().witness.unwrap();
    let (z1, z2, z5) = (&w[0], &w[1], &w[4]);
    // the similarity z -> (z - z1) * i / (z2 - z1)
    let (ax, ay) = (&z2.x - &z1.x, &z2.y - &z1.y);
    let norm = &ax * &ax + &ay * &ay;
    let (px, py) = (&z5.x - &z1.x, &z5.y - &z1.y);
    let re = (&px * &ax + &py * &ay) / &norm;
    let im = (&py * &ax - &px * &ay) / &norm;
    let (u, v) = (-im - BigRational::from_integer(1.into()), re);
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let excluded = [
        (r(-1, 1), r(0, 1)),
        (r(-1, 1), r(1, 1)),
        (r(0, 1), r(1, 1)),
        (r(0, 1), r(0, 1)),
        (r(-1, 2), r(-1, 2)),
        (r(-1, 2), r(1, 2)),
        (r(-1, 1), r(-1, 1)),
        (r(0, 1), r(-1, 1)),
    ];
    for (eu, ev) in excluded {
        assert!(!(u == eu && v == ev));
    }
}

#[test]
fn every_point_set_round_trips() {
    let sets = [
        GridSet::from_coords(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]),
        GridSet::from_coords(&[(0, 0), (0, 1), (1, 0), (2, 2), (1, 1), (1, 2), (2, 1)]),
        GridSet::from_coords(&[(2, 0), (2, 2), (0, 0), (0, 2), (4, 0), (4, 2), (1, 1), (3, 1)]),
    ];
    for s in sets {
        let o = oss_from_pointset(&s);
        let r = is_realizable(&o).unwrap();
        assert!(r.realizable);
        assert!(verify_witness(&o, s.points()));
    }
}

use squares_core::bounds::{
    a_n_6_4, averaging_rit, averaging_square_subconfig, averaging_square_upper, bound_report, degree_bounds,
    mixed_square_upper, one_ext_maximal_bound, rit_upper, square_upper, Family,
};
use squares_core::corpus::{shipped_corpus, Family as CorpusFamily};
use squares_core::geometry::square_degrees;
use squares_core::ilp::{ilp_assignment_from_pointset, Ilp, Variant};
use squares_core::tables::{rit_lower, s_rit_exact, s_square_exact, square_lower};
use squares_core::GridSet;

#[test]
fn known_values_respect_the_closed_forms() {
    for n in 3..=14 {
        assert!(s_rit_exact(n).unwrap() <= rit_upper(n).improved.unwrap(), "n={n}");
    }
    for n in 4..=17 {
        assert!(s_square_exact(n).unwrap() <= square_upper(n).eighth, "n={n}");
    }
    for n in 4..=100 {
        assert!(square_lower(n).unwrap() <= square_upper(n).eighth, "n={n}");
    }
    for n in 3..=50 {
        assert!(rit_lower(n).unwrap() <= rit_upper(n).improved.unwrap(), "n={n}");
    }
}

#[test]
fn averaging_steps() {
    // ten points from nine-point subsets with at most 18 triangles
    assert_eq!(averaging_rit(10, 9, 18), Ok(25));
    // the stated 9 and 13 follow from the sharper computed values
    let thirteen = averaging_square_upper(13, 12, 6).unwrap();
    assert_eq!(thirteen, 8);
    assert!(thirteen <= 9);
    let fourteen = averaging_square_upper(14, 13, 9).unwrap();
    assert_eq!(fourteen, 12);
    assert!(fourteen <= 13);
    assert_eq!(averaging_square_upper(14, 13, 8), Ok(11));
    // the inversion is the largest m whose guaranteed subconfiguration stays within b
    for (n, k, b) in [(13, 12, 6), (14, 13, 9), (14, 13, 8), (20, 15, 30), (9, 6, 2)] {
        let m = averaging_square_upper(n, k, b).unwrap();
        assert!(averaging_square_subconfig(n, k, m).unwrap() <= b);
        assert!(averaging_square_subconfig(n, k, m + 1).unwrap() > b);
    }
}

#[test]
fn maximal_subconfiguration_bounds() {
    // eight points with a six-point maximal part, nine points with a seven-point one
    assert_eq!(one_ext_maximal_bound(s_rit_exact(6).unwrap(), 2), Ok(13));
    assert_eq!(one_ext_maximal_bound(s_rit_exact(7).unwrap(), 2), Ok(17));
    assert_eq!(one_ext_maximal_bound(0, 3), Ok(7));
}

#[test]
fn mixed_recursion_rules_out_large_parts() {
    assert_eq!(mixed_square_upper(13, 6..=13), Ok(13));
    assert!(mixed_square_upper(14, 7..=14).unwrap() < 16);
    assert!(mixed_square_upper(13, 0..=14).is_err());
}

#[test]
fn code_bound_covers_pair_free_records() {
    for rec in shipped_corpus().iter().filter(|r| r.family == CorpusFamily::HammingFree) {
        assert!(rec.expected as u64 <= a_n_6_4(rec.n).unwrap(), "{}", rec.id);
    }
    for (n, v) in [(10, 4), (11, 5), (12, 6)] {
        assert!(v <= a_n_6_4(n).unwrap());
    }
}

#[test]
fn degree_bounds_hold_on_square_records() {
    for rec in shipped_corpus().iter().filter(|r| r.family == CorpusFamily::Square) {
        let set = rec.points();
        let deg = square_degrees(&set).unwrap();
        let (lo, hi) = degree_bounds(rec.n, rec.expected as u64);
        assert!(*deg.iter().min().unwrap() as u64 <= lo, "{}", rec.id);
        assert!(*deg.iter().max().unwrap() as u64 >= hi, "{}", rec.id);
    }
}

#[test]
fn reports_pick_the_tightest_values() {
    let r = bound_report(Family::Square, 17);
    assert_eq!(r.best_upper, Some(22));
    assert_eq!(r.best_lower, Some(22));
    assert_eq!(r.upper["eighth"], 36);
    assert_eq!(r.upper["pairs"], 68);
    let r = bound_report(Family::Rit, 20);
    assert_eq!(r.best_upper, rit_upper(20).improved);
    assert_eq!(r.best_lower, rit_lower(20));
}

#[test]
fn ilp_counts_for_five_eight_nine() {
    let c = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
    for (n, v) in [(5, Variant::Base), (8, Variant::Base), (8, Variant::Mod8), (9, Variant::Base), (9, Variant::Mod9)] {
        let ilp = Ilp::build(n, v).unwrap();
        assert_eq!(ilp.x_vars.len(), c(n, 3));
        assert_eq!(ilp.y_vars.len(), (1usize << n) - 1 - n - c(n, 2) - c(n, 3));
        let rows: usize = (4..n).map(|k| c(n, k)).sum::<usize>() + c(n, 4) + (5..=n).map(|k| k * c(n, k)).sum::<usize>();
        let extra = match v {
            Variant::Base => 0,
            Variant::Mod8 => c(8, 6) + c(8, 7) + 1 + c(8, 5),
            Variant::Mod9 => c(9, 7) + c(9, 8) + 1 + c(9, 6),
        };
        assert_eq!(ilp.constraints.len(), rows + extra, "n={n} {v:?}");
    }
}

#[test]
fn induced_assignments_are_feasible_on_rit_records() {
    let mut checked = 0;
    for rec in shipped_corpus().iter().filter(|r| r.family == CorpusFamily::Rit && r.n <= 12) {
        let a = ilp_assignment_from_pointset(&rec.points(), rec.n, Variant::Base).unwrap();
        assert!(a.feasible, "{}", rec.id);
        assert_eq!(a.objective as i64, rec.expected, "{}", rec.id);
        if rec.n == 8 {
            assert_eq!(a.objective, 20);
        }
        checked += 1;
    }
    assert_eq!(checked, 16);
    let line = GridSet::from_coords(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
    assert_eq!(ilp_assignment_from_pointset(&line, 4, Variant::Base).unwrap().objective, 0);
}

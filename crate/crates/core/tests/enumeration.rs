use std::time::Instant;

use squares_core::extension::{enumerate, EnumConfig, ExtMode};
use squares_core::tables::{NEIGHBORHOOD_CLASSES, RIT_1EXT_CLASSES, SQUARE_2EXT_CLASSES};

fn check(mode: ExtMode, n_max: usize, rows: &[(usize, u64, u64, Option<usize>)]) {
    let start = Instant::now();
    let t = enumerate(&EnumConfig::new(mode, n_max)).unwrap();
    eprintln!("{} up to n={n_max}: {:.1?}", mode.name(), start.elapsed());
    let mut bad = Vec::new();
    for &(n, m, classes, delta) in rows.iter().filter(|r| r.0 <= n_max) {
        let c = t.cell(n, m);
        if c.classes != classes || delta.is_some_and(|d| d != c.delta_max) {
            bad.push(format!("({n},{m}): got {} / {}, want {classes} / {delta:?}", c.classes, c.delta_max));
        }
    }
    // no class may appear outside the published rows
    for (n, row) in &t.cells {
        for (m, c) in row {
            if c.classes > 0 && !rows.iter().any(|r| r.0 == *n && r.1 == *m) {
                bad.push(format!("({n},{m}): unexpected {}", c.classes));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn rit_classes_up_to_seven() {
    let rows: Vec<_> = RIT_1EXT_CLASSES.iter().map(|&(n, m, c)| (n, m, c, None)).collect();
    check(ExtMode::Rit1Ext, 7, &rows);
}

#[test]
fn square_classes_up_to_eleven() {
    let rows: Vec<_> = SQUARE_2EXT_CLASSES.iter().map(|&(n, m, c)| (n, m, c, None)).collect();
    check(ExtMode::Square2Ext, 11, &rows);
}

// Cells with n = 2 * delta_max + 2 hold sets grown by two-point steps only.
#[test]
fn neighborhood_two_point_cells_up_to_twelve() {
    let t = enumerate(&EnumConfig::new(ExtMode::Neighborhood2Ext, 12)).unwrap();
    let mut checked = 0;
    for &(n, m, classes, delta) in NEIGHBORHOOD_CLASSES.iter().filter(|r| r.0 <= 12 && r.0 == 2 * r.3 + 2) {
        let c = t.cell(n, m);
        assert_eq!((c.classes, c.delta_max), (classes, delta), "cell ({n},{m})");
        checked += 1;
    }
    assert_eq!(checked, 6);
}

#[test]
fn pinned_vertex_lies_on_every_step() {
    // the pinned enumeration only ever produces neighborhoods of the pin
    let t = enumerate(&EnumConfig::new(ExtMode::Neighborhood2Ext, 10)).unwrap();
    for n in [4, 6, 7, 8, 9, 10] {
        let row = &t.cells[&n];
        let (m, _) = row.iter().next_back().unwrap();
        assert!(t.cell(n, *m).delta_max * 2 + 2 >= n);
    }
}

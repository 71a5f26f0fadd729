use std::collections::BTreeMap;

use squares_core::beam::{beam_search, BeamConfig, BeamMode};
use squares_core::tables::{s_rit_exact, s_square_exact};

fn run(mode: BeamMode, width: usize, n: usize) -> BTreeMap<usize, u64> {
    beam_search(&BeamConfig::new(mode, width, n)).best
}

#[test]
fn wider_beams_never_do_worse() {
    for (mode, n) in [(BeamMode::Rit, 13), (BeamMode::Square, 15)] {
        let runs: Vec<(usize, BTreeMap<usize, u64>)> = [1, 3, 10, 30, 100, 300].iter().map(|&w| (w, run(mode, w, n))).collect();
        for pair in runs.windows(2) {
            let ((w1, a), (w2, b)) = (&pair[0], &pair[1]);
            for (k, v) in a {
                assert!(b[k] >= *v, "{} n={k}: width {w2} gives {}, width {w1} gives {v}", mode.name(), b[k]);
            }
        }
    }
}

#[test]
fn results_never_exceed_exact_values() {
    for (k, v) in run(BeamMode::Rit, 100, 14) {
        assert!(v <= s_rit_exact(k).unwrap(), "n={k}");
    }
    for (k, v) in run(BeamMode::Square, 100, 17) {
        assert!(v <= s_square_exact(k).unwrap(), "n={k}");
    }
}

#[test]
fn runs_are_reproducible() {
    let a = beam_search(&BeamConfig::new(BeamMode::Square, 200, 14));
    let b = beam_search(&BeamConfig::new(BeamMode::Square, 200, 14));
    assert_eq!(a, b);
}

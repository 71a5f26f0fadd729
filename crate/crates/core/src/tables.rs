//! Published reference values: exact extremal counts, class counts of the
//! exhaustive enumerations, and lower bounds from constructions.
//!
//! Everything here is transcribed data. Each block names the quantity and the
//! range of its rows so a transcription slip can be traced back.

/// Exact maximum number of isosceles right triangles, indexed by `n` for `n <= 14`.
pub const S_RIT_EXACT: [u64; 15] = [0, 0, 0, 1, 4, 8, 11, 15, 20, 28, 35, 43, 52, 64, 74];

/// Exact maximum number of squares, indexed by `n` for `n <= 17`.
pub const S_SQUARE_EXACT: [u64; 18] = [0, 0, 0, 0, 1, 1, 2, 3, 4, 6, 7, 8, 11, 13, 15, 17, 20, 22];

/// Exact maximum of `rit - 3 * squares`, indexed by `n` for `n <= 9`.
pub const S_MIXED_EXACT: [u64; 10] = [0, 0, 0, 1, 3, 5, 7, 10, 14, 18];

/// `A(n, 6, 4)`, the largest constant weight 4 code of length `n` and distance 6, for `n <= 17`.
pub const A_N_6_4: [u64; 18] = [0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 5, 6, 9, 13, 14, 15, 20, 20];

/// Maximum number of squares with no pair of points on two squares, indexed by `n` for `n <= 13`.
pub const S_SQUARE_PAIR_FREE: [u64; 14] = [0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 4, 5, 6, 7];

/// Lower bounds for triangle counts, `n = 15..=50`.
pub const RIT_LOWER: [(usize, u64); 36] = [
    (15, 85), (16, 97), (17, 112), (18, 124), (19, 139), (20, 156), (21, 176), (22, 192), (23, 210),
    (24, 229), (25, 252), (26, 271), (27, 291), (28, 314), (29, 338), (30, 363), (31, 389), (32, 417),
    (33, 448), (34, 473), (35, 501), (36, 531), (37, 564), (38, 594), (39, 626), (40, 659), (41, 696),
    (42, 728), (43, 763), (44, 799), (45, 836), (46, 874), (47, 914), (48, 955), (49, 1000), (50, 1038),
];

/// Lower bounds for square counts, `n = 4..=100`, indexed by `n - 4`.
pub const SQUARE_LOWER: [u64; 97] = [
    1, 1, 2, 3, 4, 6, 7, 8, 11, 13, 15, 17, 20, 22, 25, 28, 32, 37, // 4..=21
    40, 43, 47, 51, 56, 60, 65, 70, 75, 81, 88, 92, 97, 103, 109, 117, // 22..=37
    123, 130, 137, 144, 151, 158, 166, 175, 182, 189, 198, 207, 216, // 38..=50
    226, 237, 245, 254, 263, 272, 282, 293, 303, 314, 324, 334, 346, // 51..=63
    358, 370, 382, 394, 407, 421, 431, 442, 454, 466, 480, 493, 507, // 64..=76
    521, 535, 549, 564, 578, 593, 608, 623, 638, 653, 669, 686, 700, // 77..=89
    715, 731, 748, 765, 782, 799, 817, 836, 853, 870, 887, // 90..=100
];

/// Number of known dissimilar triangle record sets, `n = 3..=50`, indexed by `n - 3`.
pub const RIT_RECORD_CLASSES: [usize; 48] = [
    1, 1, 1, 1, 2, 5, 1, 1, 1, 2, 2, 1, 1, 1, 1, 2, 2, 1, 1, // 3..=21
    2, 1, 1, 1, 1, 3, 2, 2, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, // 22..=39
    1, 1, 1, 2, 2, 3, 3, 1, 2, 1, 1, // 40..=50
];

/// Number of known dissimilar square record sets for `n = 4` and `n = 6..=100`.
pub const SQUARE_RECORD_CLASSES: [(usize, usize); 96] = {
    const TAIL: [usize; 95] = [
        2, 2, 2, 1, 1, 5, 1, 1, 2, 2, 2, 4, 3, 5, 1, 1, 1, 3, // 6..=23
        1, 1, 1, 2, 2, 1, 4, 1, 1, 2, 4, 2, 3, 1, 1, 2, 1, 2, // 24..=41
        2, 6, 2, 1, 1, 7, 2, 1, 4, 1, 1, 1, 2, 1, 5, 3, 1, 1, // 42..=59
        1, 1, 9, 3, 2, 2, 1, 4, 1, 1, 2, 4, 2, 8, 1, 3, 2, 1, // 60..=77
        3, 4, 2, 4, 3, 2, 2, 1, 4, 1, 1, 1, 2, 2, 1, 2, 2, 5, // 78..=95
        1, 1, 1, 2, 2, // 96..=100
    ];
    let mut out = [(4, 1); 96];
    let mut i = 0;
    while i < 95 {
        out[i + 1] = (i + 6, TAIL[i]);
        i += 1;
    }
    out
};

/// Classes reached by recursive 1-extension from a triangle: `(n, m, classes)`.
pub const RIT_1EXT_CLASSES: &[(usize, u64, u64)] = &[
    (3, 1, 1),
    (4, 2, 2), (4, 3, 1), (4, 4, 1),
    (5, 3, 16), (5, 4, 4), (5, 5, 2), (5, 6, 1), (5, 7, 0), (5, 8, 1),
    (6, 4, 232), (6, 5, 88), (6, 6, 38), (6, 7, 16), (6, 8, 6), (6, 9, 1), (6, 10, 3), (6, 11, 1),
    (7, 5, 5383), (7, 6, 2397), (7, 7, 1051), (7, 8, 490), (7, 9, 164), (7, 10, 50), (7, 11, 39),
    (7, 12, 17), (7, 13, 7), (7, 14, 6), (7, 15, 2),
    (8, 6, 172408), (8, 7, 89266), (8, 8, 41475), (8, 9, 19925), (8, 10, 7123), (8, 11, 2488),
    (8, 12, 1513), (8, 13, 685), (8, 14, 253), (8, 15, 137), (8, 16, 75), (8, 17, 31), (8, 18, 17),
    (8, 19, 2), (8, 20, 5),
    (9, 9, 1623291), (9, 10, 878770), (9, 11, 379869), (9, 12, 142722), (9, 13, 77106),
    (9, 14, 36226), (9, 15, 14662), (9, 16, 7194), (9, 17, 3475), (9, 18, 1474), (9, 19, 856),
    (9, 20, 310), (9, 21, 186), (9, 22, 94), (9, 23, 33), (9, 24, 20), (9, 25, 5), (9, 26, 4),
    (9, 27, 1), (9, 28, 1),
];

/// Classes reached by recursive 2-extension from the unit square: `(n, m, classes)`.
pub const SQUARE_2EXT_CLASSES: &[(usize, u64, u64)] = &[
    (4, 1, 1), (6, 2, 2), (7, 3, 2), (8, 3, 15), (8, 4, 2),
    (9, 4, 34), (9, 5, 1), (9, 6, 1),
    (10, 4, 340), (10, 5, 74), (10, 6, 5), (10, 7, 1),
    (11, 5, 1405), (11, 6, 159), (11, 7, 15), (11, 8, 5),
    (12, 5, 15621), (12, 6, 4729), (12, 7, 476), (12, 8, 80), (12, 9, 11), (12, 10, 3), (12, 11, 1),
    (13, 6, 90573), (13, 7, 15955), (13, 8, 1836), (13, 9, 482), (13, 10, 43), (13, 11, 14),
    (13, 12, 1), (13, 13, 1),
    (14, 6, 1088332), (14, 7, 403295), (14, 8, 61386), (14, 9, 9319), (14, 10, 2301), (14, 11, 356),
    (14, 12, 83), (14, 13, 10), (14, 14, 4), (14, 15, 2),
    (15, 7, 8143021), (15, 8, 1745837), (15, 9, 273037), (15, 10, 60632), (15, 11, 10982),
    (15, 12, 2693), (15, 13, 460), (15, 14, 122), (15, 15, 26), (15, 16, 7), (15, 17, 2),
    (16, 7, 101999759), (16, 8, 44513294), (16, 9, 8155822), (16, 10, 1445326), (16, 11, 360147),
    (16, 12, 69230), (16, 13, 19076), (16, 14, 3488), (16, 15, 1017), (16, 16, 239), (16, 17, 55),
    (16, 18, 17), (16, 19, 3), (16, 20, 2),
    (17, 8, 919429357), (17, 9, 215082508), (17, 10, 37029433), (17, 11, 7414942),
    (17, 12, 1419401), (17, 13, 281512), (17, 14, 52643), (17, 15, 10546), (17, 16, 2137),
    (17, 17, 511), (17, 18, 89), (17, 19, 11), (17, 20, 2), (17, 21, 0), (17, 22, 1),
];

/// Neighborhood classes of a pinned vertex under 2-extension: `(n, m, classes, delta_max)`.
pub const NEIGHBORHOOD_CLASSES: &[(usize, u64, u64, usize)] = &[
    (4, 1, 1, 1), (6, 2, 2, 2), (7, 3, 2, 3), (8, 3, 5, 3), (8, 4, 1, 3),
    (9, 4, 12, 4), (9, 5, 1, 4), (9, 6, 1, 4),
    (10, 4, 11, 4), (10, 5, 10, 5), (10, 6, 5, 5), (10, 7, 1, 5),
    (11, 5, 79, 5), (11, 6, 14, 5), (11, 7, 3, 6), (11, 8, 2, 6),
    (12, 5, 26, 5), (12, 6, 79, 6), (12, 7, 18, 6), (12, 8, 10, 6), (12, 9, 2, 7),
    (13, 6, 398, 6), (13, 7, 159, 7), (13, 8, 41, 7), (13, 9, 11, 7), (13, 10, 4, 8), (13, 11, 2, 8),
    (14, 6, 64, 6), (14, 7, 533, 7), (14, 8, 251, 7), (14, 9, 131, 8), (14, 10, 42, 8),
    (14, 11, 4, 9), (14, 12, 4, 9),
    (15, 7, 1594, 7), (15, 8, 1191, 8), (15, 9, 500, 8), (15, 10, 202, 8), (15, 11, 77, 9),
    (15, 12, 41, 10), (15, 13, 8, 10), (15, 14, 4, 8), (15, 15, 1, 7),
    (16, 7, 159, 7), (16, 8, 2812, 8), (16, 9, 2146, 9), (16, 10, 1204, 9), (16, 11, 591, 9),
    (16, 12, 160, 10), (16, 13, 87, 10), (16, 14, 25, 11), (16, 15, 3, 9), (16, 16, 3, 9),
    (16, 17, 3, 8), (16, 18, 1, 8),
    (17, 8, 5539, 8), (17, 9, 6358, 9), (17, 10, 4130, 9), (17, 11, 2099, 10), (17, 12, 1107, 10),
    (17, 13, 528, 11), (17, 14, 224, 11), (17, 15, 121, 12), (17, 16, 40, 12), (17, 17, 11, 10),
    (17, 18, 11, 10), (17, 19, 3, 7), (17, 20, 3, 8), (17, 21, 0, 0), (17, 22, 1, 8),
    (18, 8, 392, 8), (18, 9, 12293, 9), (18, 10, 12568, 10), (18, 11, 8840, 10), (18, 12, 5276, 10),
    (18, 13, 2272, 11), (18, 14, 1223, 12), (18, 15, 480, 12), (18, 16, 227, 13), (18, 17, 102, 13),
    (18, 18, 63, 11), (18, 19, 29, 11), (18, 20, 19, 11), (18, 21, 7, 9), (18, 22, 5, 10),
    (18, 23, 2, 9), (18, 24, 0, 0), (18, 25, 1, 9),
];

pub fn s_rit_exact(n: usize) -> Option<u64> {
    S_RIT_EXACT.get(n).copied()
}

pub fn s_square_exact(n: usize) -> Option<u64> {
    S_SQUARE_EXACT.get(n).copied()
}

pub fn s_mixed_exact(n: usize) -> Option<u64> {
    S_MIXED_EXACT.get(n).copied()
}

pub fn a_n_6_4(n: usize) -> Option<u64> {
    A_N_6_4.get(n).copied()
}

/// Best known lower bound on the triangle count: exact for `n <= 14`, constructions above.
pub fn rit_lower(n: usize) -> Option<u64> {
    s_rit_exact(n).or_else(|| RIT_LOWER.iter().find(|(k, _)| *k == n).map(|(_, v)| *v))
}

/// Best known lower bound on the square count for `n <= 100`.
pub fn square_lower(n: usize) -> Option<u64> {
    if n < 4 {
        return Some(0);
    }
    SQUARE_LOWER.get(n - 4).copied()
}

pub fn rit_record_classes(n: usize) -> Option<usize> {
    n.checked_sub(3).and_then(|i| RIT_RECORD_CLASSES.get(i)).copied()
}

pub fn square_record_classes(n: usize) -> Option<usize> {
    SQUARE_RECORD_CLASSES.iter().find(|(k, _)| *k == n).map(|(_, v)| *v)
}

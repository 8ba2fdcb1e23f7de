//! Published class counts for orders 2 through 29, used as reference data
//! for reports and for checking computed census rows.

/// `(order, cube classes, projection array classes, array classes)`.
pub const CUBE_CENSUS: [(usize, usize, usize, usize); 28] = [
    (2, 1, 1, 1),
    (3, 1, 1, 1),
    (4, 2, 1, 2),
    (5, 13, 6, 6),
    (6, 47, 17, 17),
    (7, 30, 26, 30),
    (8, 42, 44, 60),
    (9, 46, 61, 100),
    (10, 69, 133, 277),
    (11, 66, 126, 555),
    (12, 34, 74, 990),
    (13, 11, 22, 1616),
    (14, 6, 6, 2168),
    (15, 33, 19, 2467),
    (16, 6, 6, 2648),
    (17, 19, 12, 2294),
    (18, 0, 0, 1892),
    (19, 0, 0, 1283),
    (20, 2, 3, 810),
    (21, 50, 20, 446),
    (22, 4, 9, 259),
    (23, 11, 7, 114),
    (24, 2, 1, 25),
    (25, 20, 7, 12),
    (26, 1, 2, 8),
    (27, 77, 27, 29),
    (28, 3, 4, 89),
    (29, 33, 18, 23),
];

/// `(order, G2x3 classes, W2/W2/G2 classes, G3 classes)`, with 0 where the
/// construction yields nothing. Orders absent here have no constructed cubes.
pub const CONSTRUCTED_CLASSES: [(usize, usize, usize, usize); 18] = [
    (2, 1, 0, 0),
    (3, 1, 1, 0),
    (4, 0, 0, 2),
    (5, 1, 1, 2),
    (6, 4, 0, 0),
    (7, 2, 0, 0),
    (9, 4, 3, 0),
    (11, 4, 3, 0),
    (14, 5, 0, 0),
    (15, 20, 10, 0),
    (17, 10, 6, 0),
    (20, 0, 0, 2),
    (21, 35, 15, 0),
    (23, 10, 0, 0),
    (24, 0, 0, 2),
    (25, 20, 0, 0),
    (27, 56, 21, 0),
    (29, 20, 10, 2),
];

/// Published census row for an order, if listed.
pub fn census(order: usize) -> Option<(usize, usize, usize)> {
    CUBE_CENSUS
        .iter()
        .find(|row| row.0 == order)
        .map(|&(_, c, p, t)| (c, p, t))
}

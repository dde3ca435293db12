use cubres::quadint::{validate_i64, QuadInt};

/// The fixed test catalog: one element per radicand 2..7 plus the running
/// example, the counterexample element, and the fundamental unit of
/// Q(sqrt(2)).
pub fn catalog() -> Vec<QuadInt> {
    [
        (19, 3, 2),
        (1342, 99, 3),
        (3047, 176, 5),
        (1633, 437, 6),
        (232, 319, 7),
        (6, 3, 7),
        (17, 51, 2),
        (1, 1, 2),
    ]
    .into_iter()
    .map(|(a, b, d)| {
        validate_i64(a, b, d).unwrap_or_else(|r| panic!("catalog ({a},{b},{d}): {r}"))
    })
    .collect()
}

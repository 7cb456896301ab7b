//! Shared inputs for the criterion benches.

use jordan_tensor::Params;

/// `(p, m, n)` triples spanning small to moderately large blocks.
pub const CASES: &[(u64, usize, usize)] = &[
    (7, 12, 13),
    (5, 24, 40),
    (3, 48, 60),
    (2, 64, 100),
    (101, 80, 90),
];

pub fn params(case: (u64, usize, usize)) -> Params {
    Params::new(case.0, case.1, case.2).expect("bench parameters are valid")
}

//! Shared fixtures and independent oracles for the integration tests.
//!
//! Each test target compiles its own copy, so not every helper is used
//! everywhere.
#![allow(dead_code)]

use expmat::{Budget, Entry, ExponentMatrix, NatMatrix};

/// The 4x4 worked-example matrix used throughout the tests.
pub fn reference_4x4() -> ExponentMatrix {
    ExponentMatrix::from_rows(&[
        &[0, 2, 5, 5],
        &[4, 0, 3, 3],
        &[6, 2, 0, 2],
        &[4, 4, 2, 0],
    ])
    .unwrap()
}

/// A 9x9 matrix whose first row is the worked-example row; remaining rows are
/// zero, which the row-term construction never reads.
pub fn nine_dim_first_row() -> NatMatrix {
    let mut rows = vec![vec![0u64; 9]; 9];
    rows[0] = vec![0, 5, 0, 0, 1, 3, 3, 3, 5];
    NatMatrix::from_rows(&rows).unwrap()
}

pub fn big_budget() -> Budget {
    Budget::new(1_000_000_000)
}

/// Unpruned odometer over every zero-diagonal matrix with entries at most
/// `bound`; kept independent of the library's pruned search so it can serve
/// as an oracle for it.
pub fn for_each_zero_diag(n: usize, bound: Entry, f: &mut dyn FnMut(&NatMatrix)) {
    let positions: Vec<usize> = (0..n * n).filter(|p| p / n != p % n).collect();
    let mut flat = vec![0u64; n * n];
    'odometer: loop {
        f(&NatMatrix::new(n, flat.clone()).unwrap());
        let mut t = positions.len();
        loop {
            if t == 0 {
                break 'odometer;
            }
            t -= 1;
            if flat[positions[t]] < bound {
                flat[positions[t]] += 1;
                break;
            }
            flat[positions[t]] = 0;
        }
    }
}

//! The eight degree-24 cover representations used throughout: the four
//! sigma_{i,j} and their orientation-reversed partners sigma'_{i,j}.

use crate::perm::{PermRep, Permutation};

pub const SIGMA_2_1: [[usize; 24]; 4] = [
    [1, 2, 0, 12, 10, 19, 18, 3, 20, 8, 16, 6, 7, 17, 13, 5, 4, 14, 11, 15, 9, 22, 23, 21],
    [3, 6, 10, 4, 0, 20, 7, 1, 19, 14, 11, 2, 18, 15, 23, 22, 12, 8, 16, 17, 21, 5, 13, 9],
    [2, 8, 5, 13, 17, 0, 22, 12, 9, 1, 4, 18, 23, 14, 3, 19, 15, 10, 20, 16, 11, 6, 21, 7],
    [1, 0, 9, 15, 18, 8, 12, 22, 5, 2, 20, 17, 6, 16, 19, 3, 13, 11, 4, 14, 10, 23, 7, 21],
];

pub const SIGMA_2_2: [[usize; 24]; 4] = [
    [1, 2, 0, 13, 11, 17, 12, 3, 14, 8, 6, 15, 10, 7, 9, 4, 23, 18, 5, 20, 21, 19, 16, 22],
    [3, 6, 11, 4, 0, 19, 7, 1, 20, 16, 2, 10, 15, 12, 5, 13, 18, 23, 9, 14, 22, 17, 8, 21],
    [2, 8, 5, 14, 16, 0, 20, 19, 9, 1, 22, 4, 6, 3, 13, 18, 11, 15, 17, 21, 12, 7, 23, 10],
    [6, 10, 12, 11, 13, 20, 0, 15, 23, 22, 1, 3, 2, 4, 16, 7, 14, 19, 21, 17, 5, 18, 9, 8],
];

pub const SIGMA_3_1: [[usize; 24]; 4] = [
    [1, 2, 0, 13, 10, 18, 21, 3, 14, 8, 15, 6, 23, 7, 9, 4, 20, 16, 19, 5, 17, 11, 12, 22],
    [3, 6, 10, 4, 0, 20, 7, 1, 5, 17, 11, 2, 19, 21, 12, 13, 18, 22, 23, 14, 8, 15, 9, 16],
    [2, 8, 5, 7, 16, 0, 19, 14, 9, 1, 23, 21, 22, 12, 3, 10, 17, 4, 6, 18, 11, 20, 13, 15],
    [6, 3, 12, 1, 7, 21, 0, 4, 15, 16, 14, 19, 2, 20, 10, 8, 9, 23, 22, 11, 13, 5, 18, 17],
];

pub const SIGMA_3_2: [[usize; 24]; 4] = [
    [1, 2, 0, 13, 10, 17, 19, 3, 14, 8, 15, 6, 20, 7, 9, 4, 23, 18, 5, 11, 21, 12, 16, 22],
    [3, 6, 10, 4, 0, 12, 7, 1, 20, 16, 11, 2, 14, 19, 5, 13, 18, 23, 9, 15, 22, 17, 8, 21],
    [2, 8, 5, 14, 16, 0, 20, 12, 9, 1, 4, 22, 21, 3, 13, 18, 10, 15, 17, 6, 19, 7, 23, 11],
    [6, 3, 12, 1, 7, 10, 0, 4, 18, 22, 5, 14, 2, 17, 11, 23, 20, 13, 8, 21, 16, 19, 9, 15],
];

pub const SIGMA_2_1_PRIME: [[usize; 24]; 4] = [
    [1, 2, 0, 12, 10, 14, 20, 3, 21, 8, 16, 6, 7, 5, 13, 23, 4, 19, 17, 18, 11, 9, 15, 22],
    [3, 6, 10, 4, 0, 19, 7, 1, 22, 5, 11, 2, 20, 8, 15, 17, 12, 14, 23, 9, 16, 18, 13, 21],
    [2, 8, 5, 13, 17, 0, 11, 12, 9, 1, 22, 21, 19, 14, 3, 20, 10, 18, 4, 7, 23, 6, 16, 15],
    [1, 0, 9, 15, 12, 8, 16, 17, 5, 2, 21, 22, 4, 23, 20, 3, 6, 7, 19, 18, 14, 10, 11, 13],
];

pub const SIGMA_2_2_PRIME: [[usize; 24]; 4] = [
    [1, 2, 0, 10, 11, 17, 3, 16, 22, 8, 6, 14, 7, 20, 4, 19, 12, 18, 5, 23, 21, 13, 9, 15],
    [3, 7, 11, 4, 0, 19, 1, 6, 15, 18, 16, 12, 2, 23, 10, 17, 14, 8, 21, 20, 5, 9, 13, 22],
    [2, 8, 5, 6, 14, 0, 13, 21, 9, 1, 23, 18, 16, 3, 15, 4, 22, 11, 17, 10, 7, 20, 12, 19],
    [6, 10, 3, 2, 16, 13, 0, 11, 19, 23, 1, 7, 14, 5, 12, 22, 4, 21, 20, 8, 18, 17, 15, 9],
];

pub const SIGMA_3_1_PRIME: [[usize; 24]; 4] = [
    [1, 2, 0, 13, 10, 17, 20, 3, 14, 8, 15, 6, 16, 7, 9, 4, 23, 18, 5, 21, 11, 22, 19, 12],
    [3, 6, 10, 4, 0, 9, 7, 1, 12, 19, 11, 2, 22, 20, 17, 13, 18, 23, 21, 5, 15, 16, 8, 14],
    [2, 8, 5, 7, 15, 0, 11, 14, 9, 1, 18, 21, 23, 19, 3, 16, 4, 10, 17, 22, 12, 6, 13, 20],
    [6, 3, 12, 1, 7, 13, 0, 4, 10, 15, 8, 22, 2, 5, 18, 9, 17, 16, 14, 20, 19, 23, 11, 21],
];

pub const SIGMA_3_2_PRIME: [[usize; 24]; 4] = [
    [1, 2, 0, 13, 10, 17, 3, 19, 20, 8, 15, 7, 14, 6, 22, 4, 23, 18, 5, 11, 9, 16, 12, 21],
    [3, 7, 10, 4, 0, 9, 1, 6, 21, 14, 11, 2, 8, 19, 5, 13, 18, 23, 22, 15, 17, 12, 16, 20],
    [2, 8, 5, 14, 15, 0, 18, 11, 9, 1, 12, 20, 22, 3, 13, 16, 4, 6, 17, 21, 7, 23, 10, 19],
    [6, 4, 12, 7, 1, 19, 0, 3, 11, 13, 21, 8, 2, 9, 15, 14, 20, 22, 23, 5, 16, 10, 17, 18],
];

fn rep_from(table: &[[usize; 24]; 4]) -> PermRep {
    let mut perms = table
        .iter()
        .map(|row| Permutation::from_images(row.to_vec()).expect("fixture rows are bijections"));
    PermRep::new(
        perms.next().unwrap(),
        perms.next().unwrap(),
        perms.next().unwrap(),
        perms.next().unwrap(),
    )
    .expect("fixture reps are well-formed")
}

/// The cover representation sigma_{i,j}, i in {2,3}, j in {1,2}.
pub fn sigma(i: u32, j: u32) -> PermRep {
    match (i, j) {
        (2, 1) => rep_from(&SIGMA_2_1),
        (2, 2) => rep_from(&SIGMA_2_2),
        (3, 1) => rep_from(&SIGMA_3_1),
        (3, 2) => rep_from(&SIGMA_3_2),
        _ => panic!("no fixture sigma_{i},{j}"),
    }
}

/// The orientation-reversed partner sigma'_{i,j}.
pub fn sigma_prime(i: u32, j: u32) -> PermRep {
    match (i, j) {
        (2, 1) => rep_from(&SIGMA_2_1_PRIME),
        (2, 2) => rep_from(&SIGMA_2_2_PRIME),
        (3, 1) => rep_from(&SIGMA_3_1_PRIME),
        (3, 2) => rep_from(&SIGMA_3_2_PRIME),
        _ => panic!("no fixture sigma'_{i},{j}"),
    }
}

/// All eight fixtures with names, in a stable order.
pub fn all_fixtures() -> Vec<(String, u32, PermRep)> {
    let mut out = Vec::new();
    for (i, j) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push((format!("sigma_{i}_{j}"), i, sigma(i, j)));
    }
    for (i, j) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push((format!("sigma_{i}_{j}_prime"), i, sigma_prime(i, j)));
    }
    out
}

//! The worked 4x4 example: a real pair `(A, H)` with a double eigenvalue pair
//! `±i`, together with three Jordan bases of `A`.
//!
//! - `t` is flipped orthogonal but not conjugate symmetric.
//! - `r` is conjugate symmetric (`gamma = 1`) but not flipped orthogonal;
//!   its Gram matrix is `g`.
//! - `m` is both, with `gamma = 1`.

use alloc::vec::Vec;

use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;

pub struct WorkedExample {
    pub a: ExactMatrix,
    pub h: ExactMatrix,
    pub j: ExactMatrix,
    pub p: ExactMatrix,
    pub t: ExactMatrix,
    pub r: ExactMatrix,
    pub g: ExactMatrix,
    pub m: ExactMatrix,
}

fn parse(rows: &[[&str; 4]], denominator: i64) -> ExactMatrix {
    let scale = Scalar::from_ratio(1, denominator);
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| row.iter().map(|s| s.parse::<Scalar>().expect("fixture scalar") * &scale).collect())
        .collect();
    ExactMatrix::from_rows(rows).expect("square fixture")
}

pub fn worked_example() -> WorkedExample {
    WorkedExample {
        a: ExactMatrix::from_ints(&[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, -2, 0]]),
        h: ExactMatrix::from_ints(&[[0, 2, 0, 1], [2, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        j: parse(&[["i", "1", "0", "0"], ["0", "i", "0", "0"], ["0", "0", "-i", "1"], ["0", "0", "0", "-i"]], 1),
        p: ExactMatrix::from_ints(&[[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        t: parse(
            &[["-i", "0", "i", "1"], ["1", "-i", "1", "0"], ["i", "2", "-i", "1"], ["-1", "3i", "-1", "-2i"]],
            2,
        ),
        r: parse(
            &[["-i", "2", "i", "2"], ["1", "i", "1", "-i"], ["i", "0", "-i", "0"], ["-1", "i", "-1", "-i"]],
            2,
        ),
        g: parse(&[["0", "0", "0", "1"], ["0", "0", "1", "-3i"], ["0", "1", "0", "0"], ["1", "3i", "0", "0"]], 1),
        m: parse(
            &[["-2i", "1", "2i", "1"], ["2", "-i", "2", "i"], ["2i", "3", "-2i", "3"], ["-2", "5i", "-2", "-5i"]],
            4,
        ),
    }
}

//! The four worked example matrices, entered as exact rationals where the
//! entries are simple fractions.
//!
//! Examples 1 and 2 are Nekrasov matrices with positive diagonal. Examples
//! 3 and 4 are B-Nekrasov matrices that are not Nekrasov.

use crate::linalg::Matrix;

fn build(rows: [[f64; 4]; 4]) -> Matrix {
    Matrix::from_rows(&rows).expect("fixture is a finite square matrix")
}

/// Nekrasov matrix with non-unit diagonal; every row has upper-triangular mass.
pub fn example_1() -> Matrix {
    build([
        [5.0, -1.0 / 5.0, -2.0 / 5.0, -1.0 / 2.0],
        [-1.0 / 10.0, 2.0, -1.0 / 2.0, -1.0 / 10.0],
        [-1.0 / 2.0, -1.0 / 10.0, 1.5, -1.0 / 10.0],
        [-2.0 / 5.0, -2.0 / 5.0, -4.0 / 5.0, 1.2],
    ])
}

/// Nekrasov matrix with unit diagonal and `m_34 = 0`.
pub fn example_2() -> Matrix {
    build([
        [1.0, -2.0 / 5.0, -2.0 / 5.0, 0.0],
        [-1.0 / 2.0, 1.0, -1.0 / 4.0, -1.0 / 4.0],
        [-2.0 / 5.0, -2.0 / 5.0, 1.0, 0.0],
        [-1.0 / 5.0, -2.0 / 5.0, -2.0 / 5.0, 1.0],
    ])
}

/// B-Nekrasov matrix that is neither an H-matrix nor a B-matrix.
pub fn example_3() -> Matrix {
    build([
        [1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 2.0],
        [1.0 / 5.0, 1.0, -2.0 / 5.0, 1.0 / 5.0],
        [-1.0, 0.0, 1.0, -1.0 / 6.0],
        [3.0 / 4.0, 3.0 / 4.0, 1.0 / 2.0, 1.0],
    ])
}

/// B-Nekrasov matrix whose first row is constant off the diagonal.
pub fn example_4() -> Matrix {
    build([
        [1.0, 1.0 / 2.0, 1.0 / 2.0, 1.0 / 2.0],
        [1.0 / 5.0, 1.0, -2.0 / 5.0, 1.0 / 5.0],
        [-1.0, 0.0, 1.0, -1.0 / 6.0],
        [3.0 / 4.0, 3.0 / 4.0, 1.0 / 2.0, 1.0],
    ])
}

/// All four fixtures with short names.
pub fn all() -> [(&'static str, Matrix); 4] {
    [
        ("example_1", example_1()),
        ("example_2", example_2()),
        ("example_3", example_3()),
        ("example_4", example_4()),
    ]
}

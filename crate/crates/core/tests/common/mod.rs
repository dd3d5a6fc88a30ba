#![allow(dead_code)]

use rdlrc::constructions::{build_h1, build_h2, build_h3, FPolynomial, LrcDesign};
use rdlrc::fqmatrix::FqMatrix;
use rdlrc::gf::FieldSpec;

pub fn gf(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

/// Block-diagonal matrix with the same block repeated `m` times, plus
/// optional trailing rows spanning every column.
pub fn block_diagonal(field: &FieldSpec, block: &[Vec<u32>], m: usize, tail: &[Vec<u32>]) -> FqMatrix {
    let width = block[0].len();
    let mut rows = Vec::new();
    for b in 0..m {
        for row in block {
            let mut full = vec![0; width * m];
            full[b * width..(b + 1) * width].copy_from_slice(row);
            rows.push(full);
        }
    }
    rows.extend(tail.iter().cloned());
    FqMatrix::from_rows(field, &rows).unwrap()
}

/// Reference 4x12 matrix over GF(5).
pub fn expected_h1() -> FqMatrix {
    block_diagonal(&gf(5), &[vec![1, 1, 1, 1, 1, 0], vec![2, 4, 3, 1, 0, 1]], 2, &[])
}

/// Reference 6x12 matrix over GF(4); 2 = a, 3 = a+1.
pub fn expected_h2() -> FqMatrix {
    block_diagonal(&gf(4), &[vec![1, 1, 1, 1, 0, 0], vec![2, 3, 1, 0, 1, 0], vec![3, 2, 1, 0, 0, 1]], 2, &[])
}

/// Reference 5x10 matrix over GF(4).
pub fn expected_h3() -> FqMatrix {
    block_diagonal(&gf(4), &[vec![1, 1, 1, 1, 0], vec![2, 3, 1, 0, 1]], 2, &[vec![3, 2, 1, 0, 0, 3, 2, 1, 0, 0]])
}

pub fn h1() -> LrcDesign {
    let f = gf(5);
    build_h1(&f, 4, 2, &FPolynomial::one(&f).unwrap()).unwrap()
}

pub fn h2() -> LrcDesign {
    build_h2(&gf(4), 3, 2).unwrap()
}

pub fn h3() -> LrcDesign {
    build_h3(&gf(4), 3, 2).unwrap()
}

//! The general block builder: any U_i, V_i with U_i and [U_i; V_i] MDS give
//! an optimal code. Vandermonde rows supply such pairs.

use rdlrc::analysis::full_report;
use rdlrc::constructions::{build_general, vandermonde_pair, ConstructionError};
use rdlrc::fqmatrix::FqMatrix;
use rdlrc::gf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_order(8)?;
    for (r, delta, d, m) in [(4, 3, 3, 2), (5, 3, 5, 2), (5, 4, 6, 2), (6, 3, 4, 1)] {
        let (u, v) = vandermonde_pair(&f, r, delta, d)?;
        let design = build_general(&vec![u; m], &vec![v; m], r, delta, d)?;
        let report = full_report(&design)?;
        println!("{} -> {}", design.summary(), report.headline());
    }

    // different pairs per block are fine too
    let f7 = FieldSpec::prime(7)?;
    let (u0, v0) = vandermonde_pair(&f7, 3, 3, 4)?;
    let points = [3u32, 5, 6, 2, 4];
    let full = FqMatrix::vandermonde(&f7, &points, 3)?;
    let (u1, v1) = (full.select_rows(0..2)?, full.select_rows(2..3)?);
    let design = build_general(&[u0, u1], &[v0, v1], 3, 3, 4)?;
    println!("{} -> {}", design.summary(), full_report(&design)?.headline());

    // a pair that is not MDS is rejected with the failing columns
    let bad = FqMatrix::from_rows(&f7, &[vec![1, 1, 1, 1, 1], vec![1, 2, 2, 3, 4]])?;
    let v = FqMatrix::from_rows(&f7, &[vec![1, 4, 4, 2, 2]])?;
    match build_general(&[bad], &[v], 3, 3, 4) {
        Err(e @ ConstructionError::NotMds { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

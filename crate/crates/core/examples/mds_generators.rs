//! The four small MDS matrices behind the explicit families, each checked
//! by exhaustive column-subset search.

use rdlrc::constructions::{build_g1, build_g2, build_g3_g4, check_f_conditions, FPolynomial};
use rdlrc::fqmatrix::MdsVerdict;
use rdlrc::gf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f5 = FieldSpec::prime(5)?;
    let g1 = build_g1(&f5, &FPolynomial::one(&f5)?)?;
    println!("G1 over {f5}, f = 1:\n{g1}");
    assert!(g1.has_mds_property()?);

    // f must not vanish and y f(x) != x f(y) for distinct nonzero x, y
    println!("f = x over GF(5): {:?}", check_f_conditions(&f5, &[0, 1])?);
    let f4 = FieldSpec::with_order(4)?;
    let g1 = build_g1(&f4, &FPolynomial::new(&f4, &[0, 0, 1])?)?;
    println!("G1 over {f4}, f = x^2:\n{g1}");

    let g2 = build_g2(&f4)?;
    println!("G2 over {f4} (3 x {}):\n{g2}", g2.cols());
    let (g3, g4) = build_g3_g4(&f4)?;
    for (name, m) in [("G2", &g2), ("G3", &g3), ("G4", &g4)] {
        match m.mds_check()? {
            MdsVerdict::Holds => println!("{name}: every {} columns independent", m.rows()),
            MdsVerdict::Fails { witness } => println!("{name}: dependent columns {witness:?}"),
        }
    }
    Ok(())
}

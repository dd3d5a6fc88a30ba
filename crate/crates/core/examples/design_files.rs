//! Designs and matrices round-trip through JSON; codes are stored as plain
//! integers next to the field description.

use rdlrc::constructions::{build_h2, LrcDesign};
use rdlrc::fqmatrix::FqMatrix;
use rdlrc::gf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_order(4)?;
    let design = build_h2(&f, 3, 1)?;
    let text = design.to_json();
    println!("{text}");
    let back = LrcDesign::from_json(&text)?;
    assert_eq!(back.parity_check(), design.parity_check());

    let dir = std::env::temp_dir().join("rdlrc-design-files");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("h2.json");
    std::fs::write(&path, &text)?;
    println!("wrote {}", path.display());

    let m = FqMatrix::from_rows(&f, &[vec![1, 2, 3]])?;
    println!("{}", m.to_json());

    // a code outside the field is refused on load
    let bad = text.replacen("\"data\": [\n    [\n      1", "\"data\": [\n    [\n      7", 1);
    match LrcDesign::from_json(&bad) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

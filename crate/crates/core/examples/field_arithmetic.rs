//! Arithmetic in GF(p^e): element codes, the default modulus, primitive
//! elements and a few identities checked on the spot.

use rdlrc::gf::{default_modulus, FieldSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [5u64, 4, 8, 9] {
        let f = FieldSpec::with_order(q)?;
        let alpha = f.primitive_element()?;
        let powers: Vec<String> = (1..q).map(|i| f.format(f.alpha_pow(i))).collect();
        println!("{f}: alpha = {}, powers [{}]", f.format(alpha.code()), powers.join(", "));
    }

    // elements are integers: base-p digits, constant term lowest
    let f = FieldSpec::with_order(8)?;
    let (a, b) = (f.element(5)?, f.element(3)?);
    println!("in {f}: ({}) * ({}) = {}", f.format(a.code()), f.format(b.code()), f.format(a.mul(&b)?.code()));
    println!("inverse of {} is {}", f.format(a.code()), f.format(a.inv()?.code()));
    assert_eq!(a.mul(&a.inv()?)?.code(), 1);

    // Frobenius is additive in characteristic p
    let f9 = FieldSpec::with_order(9)?;
    for x in f9.elements() {
        for y in f9.elements() {
            assert_eq!(f9.pow(f9.add(x, y), 3), f9.add(f9.pow(x, 3), f9.pow(y, 3)));
        }
    }
    println!("(x+y)^3 = x^3 + y^3 holds on all of {f9}");

    // a custom modulus gives an isomorphic but differently coded field
    println!("default modulus for GF(2^4): {:?}", default_modulus(2, 4));
    let g = FieldSpec::new(2, 4, Some(&[1, 0, 0, 1, 1]))?;
    println!("{g}, primitive element {}", g.format(g.primitive_element()?.code()));
    Ok(())
}

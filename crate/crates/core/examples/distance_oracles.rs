//! Two independent minimum-distance oracles: smallest dependent column set
//! of H, and direct enumeration of all codewords.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdlrc::analysis::{min_distance_by_codewords, min_distance_with, singleton_rd_bound, Budget};
use rdlrc::fqmatrix::FqMatrix;
use rdlrc::gf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u64, 3, 4, 5] {
        let f = FieldSpec::with_order(q)?;
        let (rows, cols) = (3, 8);
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q as u32)).collect();
        let h = FqMatrix::new(&f, rows, cols, data)?;
        let mut budget = Budget::default();
        let by_columns = min_distance_with(&h, &mut budget)?;
        let by_words = min_distance_by_codewords(&h)?;
        println!(
            "{f}: rank {} d = {} (support {:?}, {} steps), enumeration says {}",
            h.rank(),
            by_columns.value,
            by_columns.support,
            budget.spent(),
            by_words
        );
        assert_eq!(by_columns.value, by_words);
    }

    for (n, k, r, delta) in [(12, 8, 4, 3), (12, 6, 3, 4), (10, 5, 3, 3)] {
        println!("bound for n={n} k={k} r={r} delta={delta}: {}", singleton_rd_bound(n, k, r, delta)?);
    }
    Ok(())
}

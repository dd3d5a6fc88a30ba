//! Encode, erase, repair. Local repair touches one group; heavier patterns
//! fall back to the full parity-check system.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rdlrc::constructions::build_h3;
use rdlrc::gf::FieldSpec;
use rdlrc::repair::{erasure_sweep, repair_auto, repair_local, Codec, ErasurePattern};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_order(4)?;
    let design = build_h3(&f, 3, 2)?;
    let codec = Codec::new(&design);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let codeword = codec.encode(&codec.random_message(&mut rng))?;
    println!("{}\ncodeword {codeword:?}", design.summary());

    let word = ErasurePattern::new(&[5, 8], design.n())?.apply(&codeword);
    let fix = repair_local(&design, &word, 1)?;
    println!("local: {:?} from {:?}", fix.symbols, fix.read);

    for erased in [&[0, 7][..], &[0, 1, 2], &[0, 1, 2, 9], &[0, 1, 2, 3]] {
        let word = ErasurePattern::new(erased, design.n())?.apply(&codeword);
        match repair_auto(&design, &word) {
            Ok(res) => {
                assert_eq!(res.codeword, codeword);
                println!("{erased:?}: {:?}, read {} symbols", res.modes, res.symbols_read());
            }
            Err(e) => println!("{erased:?}: {e}"),
        }
    }

    let sweep = erasure_sweep(&design, design.claimed_d() - 1, 0)?;
    for (mode, tallies) in [("local", &sweep.local), ("global", &sweep.global)] {
        for t in tallies {
            println!("{mode} {} erasures: {}/{}", t.erasures, t.recovered, t.patterns);
        }
    }
    assert!(sweep.all_recovered());
    Ok(())
}

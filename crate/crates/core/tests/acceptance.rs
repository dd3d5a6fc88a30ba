//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdlrc::analysis::{full_report, min_distance, min_distance_by_codewords, CodeReport};
use rdlrc::constructions::{
    build_g1, build_g2, build_g3_g4, build_general, build_h1, check_f_conditions, vandermonde_pair, BlockPart,
    ConstructionError, FPolynomial, FViolation, LrcDesign,
};
use rdlrc::fqmatrix::FqMatrix;
use rdlrc::repair::erasure_sweep;

type Outcome = Result<String, String>;
type SweepCase = ((u64, usize, usize, usize, usize), Result<(LrcDesign, CodeReport), String>);

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:.0?}"))
    }
}

fn worked_example(design: LrcDesign, expected: FqMatrix, nkd: (usize, usize, usize), bound: i64) -> Outcome {
    let start = Instant::now();
    if design.parity_check() != &expected {
        return Err(format!("matrix differs:\n{}\nexpected\n{}", design.parity_check(), expected));
    }
    let rep = full_report(&design).map_err(|e| e.to_string())?;
    let got = (rep.n, rep.k, rep.d_exact);
    if got != nkd || rep.bound != bound || !rep.is_optimal() {
        return Err(format!("got {got:?} bound {} verdict {:?}", rep.bound, rep.verdict));
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:?} bound {} optimal in {:.2?}", got, rep.bound, start.elapsed()))
}

fn mds_families() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for q in [3u64, 4, 5, 7, 8, 9] {
        let f = gf(q);
        let g1 = build_g1(&f, &FPolynomial::one(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if g1.cols() != q as usize + 1 || !g1.has_mds_property().map_err(|e| e.to_string())? {
            return Err(format!("G1 over GF({q}) fails"));
        }
        checked += 1;
    }
    for q in [4u64, 8, 16] {
        let f = gf(q);
        let g2 = build_g2(&f).map_err(|e| e.to_string())?;
        let (g3, g4) = build_g3_g4(&f).map_err(|e| e.to_string())?;
        if g2.cols() != q as usize + 2 {
            return Err(format!("G2 over GF({q}) has {} columns", g2.cols()));
        }
        for (name, m) in [("G2", g2), ("G3", g3), ("G4", g4)] {
            if !m.has_mds_property().map_err(|e| e.to_string())? {
                return Err(format!("{name} over GF({q}) fails"));
            }
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{checked} matrices MDS in {:.2?}", start.elapsed()))
}

/// Every (q, δ, d, r, m) of the generality sweep, with the outcome of each.
fn generality_sweep() -> Vec<SweepCase> {
    let mut out = Vec::new();
    for q in [7u64, 8] {
        let f = gf(q);
        for delta in 2..=4 {
            for d in delta..=2 * delta {
                for r in (d - delta + 1)..=5 {
                    for m in 1..=3 {
                        let res = vandermonde_pair(&f, r, delta, d)
                            .and_then(|(u, v)| build_general(&vec![u; m], &vec![v; m], r, delta, d))
                            .map_err(|e| e.to_string())
                            .and_then(|design| {
                                let rep = full_report(&design).map_err(|e| e.to_string())?;
                                if rep.k != r * m - (d - delta) || rep.d_exact != d || !rep.is_optimal() {
                                    return Err(format!("k={} d={} {}", rep.k, rep.d_exact, rep.headline()));
                                }
                                Ok((design, rep))
                            });
                        out.push(((q, delta, d, r, m), res));
                    }
                }
            }
        }
    }
    out
}

fn oracle_agreement() -> Outcome {
    let mut compared = 0;
    for design in [h1(), h2(), h3()] {
        let h = design.parity_check();
        let (a, b) =
            (min_distance(h).map_err(|e| e.to_string())?, min_distance_by_codewords(h).map_err(|e| e.to_string())?);
        if a != b {
            return Err(format!("{}: {a} vs {b}", design.summary()));
        }
        compared += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let q = [2u64, 3, 4, 5][rng.gen_range(0..4)];
        let n = rng.gen_range(2..=10);
        let rows = rng.gen_range(1..n);
        let data = (0..rows * n).map(|_| rng.gen_range(0..q as u32)).collect();
        let h = FqMatrix::new(&gf(q), rows, n, data).map_err(|e| e.to_string())?;
        let (a, b) =
            (min_distance(&h).map_err(|e| e.to_string())?, min_distance_by_codewords(&h).map_err(|e| e.to_string())?);
        if a != b {
            return Err(format!("disagreement on\n{h}\n{a} vs {b}"));
        }
        compared += 1;
    }
    Ok(format!("{compared} codes, zero disagreements"))
}

fn repair_exhaustion() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for design in [h1(), h2(), h3()] {
        let rep = erasure_sweep(&design, design.claimed_d() - 1, 7).map_err(|e| e.to_string())?;
        if !rep.all_recovered() {
            return Err(format!("{}: {:?}", design.summary(), rep));
        }
        let local: usize = rep.local.iter().map(|t| t.patterns).sum();
        lines.push(format!("{} local + {} global", local, rep.global_patterns()));
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("[{}] all recovered in {:.2?}", lines.join(", "), start.elapsed()))
}

fn rank_formula(accepted: &[LrcDesign]) -> Outcome {
    for design in accepted {
        let want = design.groups() * (design.delta() - 1) + (design.claimed_d() - design.delta());
        if design.parity_check().rank() != want {
            return Err(format!("{}: rank {} != {want}", design.summary(), design.parity_check().rank()));
        }
    }
    Ok(format!("{} designs", accepted.len()))
}

fn negative_controls() -> Outcome {
    let f5 = gf(5);
    let pair = match check_f_conditions(&f5, &[0, 1]) {
        Ok(Some(FViolation::Collision(x, y))) => format!("f=x pair ({x}, {y})"),
        other => return Err(format!("f=x: {other:?}")),
    };
    let one = FPolynomial::one(&f5).map_err(|e| e.to_string())?;
    match build_h1(&f5, 5, 1, &one) {
        Err(ConstructionError::FieldTooSmall { .. }) => {}
        other => return Err(format!("H1 with r=q: {other:?}")),
    }
    let u = FqMatrix::from_rows(&f5, &[vec![1, 1, 1, 1], vec![1, 2, 2, 3]]).map_err(|e| e.to_string())?;
    let v = FqMatrix::zeros(&f5, 0, 4);
    let subset = match build_general(&[u], &[v], 2, 3, 3) {
        Err(ConstructionError::NotMds { block: 0, part: BlockPart::U, witness }) if witness == [1, 2] => witness,
        other => return Err(format!("duplicated columns: {other:?}")),
    };
    Ok(format!("{pair}; r=q rejected; duplicated columns {subset:?} named"))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("PASS criterion {n} ({name}): {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL criterion {n} ({name}): {msg}");
        }
    };

    report(1, "H1 over GF(5)", worked_example(h1(), expected_h1(), (12, 8, 3), 3));
    report(2, "H2 over GF(4)", worked_example(h2(), expected_h2(), (12, 6, 4), 4));
    report(3, "H3 over GF(4)", worked_example(h3(), expected_h3(), (10, 5, 4), 4));
    report(4, "MDS families", mds_families());

    let start = Instant::now();
    let sweep = generality_sweep();
    let elapsed = start.elapsed();
    let failures: Vec<String> = sweep
        .iter()
        .filter_map(|((q, delta, d, r, m), res)| {
            res.as_ref().err().map(|e| format!("q={q} delta={delta} d={d} r={r} m={m}: {e}"))
        })
        .collect();
    let outcome = if failures.is_empty() {
        within(elapsed, Duration::from_secs(300)).map(|_| format!("{} cases optimal in {elapsed:.2?}", sweep.len()))
    } else {
        Err(format!("{} of {} cases failed\n    {}", failures.len(), sweep.len(), failures.join("\n    ")))
    };
    report(5, "general construction sweep", outcome);

    report(6, "distance oracles agree", oracle_agreement());
    report(7, "repair exhaustion", repair_exhaustion());

    let mut accepted = vec![h1(), h2(), h3()];
    accepted.extend(sweep.into_iter().filter_map(|(_, res)| res.ok().map(|(design, _)| design)));
    report(8, "rank formula", rank_formula(&accepted));
    report(9, "negative controls", negative_controls());

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

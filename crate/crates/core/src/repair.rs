//! Encoding and erasure repair.
//!
//! Erasures are known-location missing symbols. Local repair solves the
//! `U_i` equations of one group and reads only that group's survivors;
//! global repair solves the full parity-check system.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::LrcDesign;
use crate::fqmatrix::{FqMatrix, MatrixError, Solution};

#[derive(Debug, Error)]
pub enum RepairError {
    #[error("expected {expected} symbols, got {got}")]
    Length { expected: usize, got: usize },
    #[error("symbol {code} at position {position} is not an element of the field")]
    InvalidSymbol { position: usize, code: u32 },
    #[error("erasure position {0} listed twice")]
    DuplicateErasure(usize),
    #[error("erasure position {position} out of range for length {n}")]
    ErasureOutOfRange { position: usize, n: usize },
    #[error("group {group} does not exist (design has {groups})")]
    NoSuchGroup { group: usize, groups: usize },
    #[error("erasure at {position} lies outside group {group}")]
    OutsideGroup { position: usize, group: usize },
    #[error("{erasures} erasures exceed the local capacity delta-1 = {capacity}; escalate to global repair")]
    EscalateToGlobal { erasures: usize, capacity: usize },
    #[error("erasure pattern {erased:?} is unrecoverable (nullity {nullity})")]
    Unrecoverable { erased: Vec<usize>, nullity: usize },
    #[error("surviving symbols are inconsistent with every codeword")]
    Inconsistent,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A set of erased coordinates, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErasurePattern {
    positions: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(positions: &[usize], n: usize) -> Result<Self, RepairError> {
        let mut seen = BTreeSet::new();
        for &p in positions {
            if p >= n {
                return Err(RepairError::ErasureOutOfRange { position: p, n });
            }
            if !seen.insert(p) {
                return Err(RepairError::DuplicateErasure(p));
            }
        }
        Ok(ErasurePattern { positions: seen.into_iter().collect() })
    }

    pub fn of_word(word: &[Option<u32>]) -> Self {
        ErasurePattern { positions: word.iter().positions(Option::is_none).collect() }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn apply(&self, codeword: &[u32]) -> Vec<Option<u32>> {
        let mut word: Vec<Option<u32>> = codeword.iter().copied().map(Some).collect();
        for &p in &self.positions {
            word[p] = None;
        }
        word
    }
}

/// Systematic encoder for a design.
///
/// The generator is the reduced row echelon form of a null-space basis of H,
/// so an identity sits on the pivot columns (the information set) and the
/// message appears verbatim there.
#[derive(Debug, Clone)]
pub struct Codec {
    generator: FqMatrix,
    information_set: Vec<usize>,
}

impl Codec {
    pub fn new(design: &LrcDesign) -> Self {
        let (generator, information_set) = design.parity_check().null_space_basis().rref();
        Codec { generator, information_set }
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    pub fn information_set(&self) -> &[usize] {
        &self.information_set
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>, RepairError> {
        if message.len() != self.dimension() {
            return Err(RepairError::Length { expected: self.dimension(), got: message.len() });
        }
        let f = self.generator.field();
        if let Some(position) = message.iter().position(|&c| !f.contains(c)) {
            return Err(RepairError::InvalidSymbol { position, code: message[position] });
        }
        Ok(self.generator.transpose().mul_vec(message)?)
    }

    pub fn random_message(&self, rng: &mut impl Rng) -> Vec<u32> {
        let q = self.generator.field().order();
        (0..self.dimension()).map(|_| rng.gen_range(0..q)).collect()
    }
}

pub fn encode(design: &LrcDesign, message: &[u32]) -> Result<Vec<u32>, RepairError> {
    Codec::new(design).encode(message)
}

fn check_word(design: &LrcDesign, word: &[Option<u32>]) -> Result<(), RepairError> {
    if word.len() != design.n() {
        return Err(RepairError::Length { expected: design.n(), got: word.len() });
    }
    let f = design.field();
    for (position, s) in word.iter().enumerate() {
        if let Some(code) = *s {
            if !f.contains(code) {
                return Err(RepairError::InvalidSymbol { position, code });
            }
        }
    }
    Ok(())
}

/// Solves `a[:, erased] x = -a[:, others] w[others]`, where `others` are the
/// non-erased columns of `a` and `values(c)` reads column `c`'s symbol.
fn solve_erased(a: &FqMatrix, erased: &[usize], values: impl Fn(usize) -> u32) -> Result<Vec<u32>, RepairError> {
    let f = a.field();
    let mut syndrome = vec![0u32; a.rows()];
    let erased_set: BTreeSet<usize> = erased.iter().copied().collect();
    for c in (0..a.cols()).filter(|c| !erased_set.contains(c)) {
        let v = values(c);
        if v == 0 {
            continue;
        }
        for (r, s) in syndrome.iter_mut().enumerate() {
            *s = f.add(*s, f.mul(a.get(r, c), v));
        }
    }
    let rhs: Vec<u32> = syndrome.iter().map(|&s| f.neg(s)).collect();
    match a.select_columns(erased)?.solve(&rhs)? {
        Solution::Unique(x) => Ok(x),
        Solution::Inconsistent => Err(RepairError::Inconsistent),
        Solution::Underdetermined { nullity, .. } => {
            Err(RepairError::Unrecoverable { erased: erased.to_vec(), nullity })
        }
    }
}

/// Recovered symbols and the coordinates read to obtain them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRepair {
    pub symbols: Vec<(usize, u32)>,
    pub read: Vec<usize>,
}

/// Repairs up to δ-1 erasures inside one group from that group's survivors.
pub fn repair_local(design: &LrcDesign, word: &[Option<u32>], group: usize) -> Result<LocalRepair, RepairError> {
    check_word(design, word)?;
    if group >= design.groups() {
        return Err(RepairError::NoSuchGroup { group, groups: design.groups() });
    }
    let cols = design.block_columns(group);
    let erased = ErasurePattern::of_word(word);
    if let Some(&position) = erased.positions().iter().find(|p| !cols.contains(p)) {
        return Err(RepairError::OutsideGroup { position, group });
    }
    if erased.is_empty() {
        return Ok(LocalRepair { symbols: Vec::new(), read: Vec::new() });
    }
    let capacity = design.delta() - 1;
    if erased.len() > capacity {
        return Err(RepairError::EscalateToGlobal { erasures: erased.len(), capacity });
    }
    let start = cols.start;
    let local_erased: Vec<usize> = erased.positions().iter().map(|p| p - start).collect();
    let values = solve_erased(&design.local_matrix(group), &local_erased, |c| word[start + c].expect("survivor"))?;
    let read = cols.filter(|p| word[*p].is_some()).collect();
    Ok(LocalRepair { symbols: erased.positions().iter().copied().zip(values).collect(), read })
}

/// Repairs all erasures at once through the full parity-check matrix.
/// Any d-1 erasures are recovered; larger patterns succeed exactly when the
/// erased columns of H are independent.
pub fn repair_global(design: &LrcDesign, word: &[Option<u32>]) -> Result<Vec<u32>, RepairError> {
    check_word(design, word)?;
    let erased = ErasurePattern::of_word(word);
    let values = solve_erased(design.parity_check(), erased.positions(), |c| word[c].expect("survivor"))?;
    let mut out: Vec<u32> = word.iter().map(|s| s.unwrap_or(0)).collect();
    for (&p, v) in erased.positions().iter().zip(values) {
        out[p] = v;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepairMode {
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairResult {
    pub codeword: Vec<u32>,
    /// Mode used for each erased coordinate, in coordinate order.
    pub modes: Vec<(usize, RepairMode)>,
    pub groups_touched: Vec<usize>,
    /// Distinct surviving coordinates read.
    pub read: Vec<usize>,
}

impl RepairResult {
    pub fn symbols_read(&self) -> usize {
        self.read.len()
    }

    pub fn used_global(&self) -> bool {
        self.modes.iter().any(|(_, m)| *m == RepairMode::Global)
    }
}

/// Local-first repair: every group holding between 1 and δ-1 erasures is
/// repaired from its own survivors; whatever remains goes to one joint
/// global solve.
pub fn repair_auto(design: &LrcDesign, word: &[Option<u32>]) -> Result<RepairResult, RepairError> {
    check_word(design, word)?;
    let mut current = word.to_vec();
    let mut modes = Vec::new();
    let mut touched = BTreeSet::new();
    let mut read = BTreeSet::new();
    for group in 0..design.groups() {
        let cols = design.block_columns(group);
        let count = cols.clone().filter(|&p| word[p].is_none()).count();
        if count == 0 || count > design.delta() - 1 {
            continue;
        }
        let mut restricted: Vec<Option<u32>> = word.iter().map(|s| Some(s.unwrap_or(0))).collect();
        for p in cols.clone() {
            restricted[p] = word[p];
        }
        let local = repair_local(design, &restricted, group)?;
        for &(p, v) in &local.symbols {
            current[p] = Some(v);
            modes.push((p, RepairMode::Local));
        }
        touched.insert(group);
        read.extend(local.read);
    }
    let residual = ErasurePattern::of_word(&current);
    let codeword = if residual.is_empty() {
        current.iter().map(|s| s.expect("all repaired")).collect()
    } else {
        let full = repair_global(design, &current)?;
        for &p in residual.positions() {
            modes.push((p, RepairMode::Global));
            touched.insert(design.block_of(p));
        }
        read.extend(word.iter().positions(Option::is_some));
        full
    };
    modes.sort_unstable_by_key(|(p, _)| *p);
    Ok(RepairResult {
        codeword,
        modes,
        groups_touched: touched.into_iter().collect(),
        read: read.into_iter().collect(),
    })
}

/// Patterns tried and recovered for one erasure count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub erasures: usize,
    pub patterns: usize,
    pub recovered: usize,
}

impl Tally {
    pub fn complete(&self) -> bool {
        self.patterns == self.recovered
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    /// Single-group patterns of size 1..=δ-1 through [`repair_local`].
    pub local: Vec<Tally>,
    /// All patterns of size 1..=max through [`repair_global`].
    pub global: Vec<Tally>,
    /// Local repairs that read a symbol outside their group (must be 0).
    pub locality_violations: usize,
}

impl SweepReport {
    pub fn all_recovered(&self) -> bool {
        self.locality_violations == 0 && self.local.iter().chain(&self.global).all(Tally::complete)
    }

    pub fn global_patterns(&self) -> usize {
        self.global.iter().map(|t| t.patterns).sum()
    }
}

/// Exhaustive erasure sweep. Every pattern gets a fresh random message
/// (seeded), is erased, repaired and compared bit for bit.
pub fn erasure_sweep(design: &LrcDesign, max_erasures: usize, seed: u64) -> Result<SweepReport, RepairError> {
    let codec = Codec::new(design);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = design.n();
    let mut local = Vec::new();
    let mut violations = 0;
    for size in 1..design.delta() {
        let mut tally = Tally { erasures: size, patterns: 0, recovered: 0 };
        for group in 0..design.groups() {
            let cols = design.block_columns(group);
            for pattern in cols.clone().combinations(size) {
                tally.patterns += 1;
                let codeword = codec.encode(&codec.random_message(&mut rng))?;
                let word = ErasurePattern::new(&pattern, n)?.apply(&codeword);
                if let Ok(fix) = repair_local(design, &word, group) {
                    if fix.read.iter().any(|p| !cols.contains(p)) {
                        violations += 1;
                    }
                    if fix.symbols.iter().all(|&(p, v)| codeword[p] == v) {
                        tally.recovered += 1;
                    }
                }
            }
        }
        local.push(tally);
    }
    let mut global = Vec::new();
    for size in 1..=max_erasures.min(n) {
        let mut tally = Tally { erasures: size, patterns: 0, recovered: 0 };
        for pattern in (0..n).combinations(size) {
            tally.patterns += 1;
            let codeword = codec.encode(&codec.random_message(&mut rng))?;
            let word = ErasurePattern::new(&pattern, n)?.apply(&codeword);
            if repair_global(design, &word).is_ok_and(|fixed| fixed == codeword) {
                tally.recovered += 1;
            }
        }
        global.push(tally);
    }
    Ok(SweepReport { local, global, locality_violations: violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h1, build_h2, build_h3, FPolynomial};
    use crate::gf::FieldSpec;

    fn h1() -> LrcDesign {
        let f = FieldSpec::prime(5).unwrap();
        build_h1(&f, 4, 2, &FPolynomial::one(&f).unwrap()).unwrap()
    }

    fn h2() -> LrcDesign {
        build_h2(&FieldSpec::with_order(4).unwrap(), 3, 2).unwrap()
    }

    fn h3() -> LrcDesign {
        build_h3(&FieldSpec::with_order(4).unwrap(), 3, 2).unwrap()
    }

    fn sample(design: &LrcDesign, seed: u64) -> Vec<u32> {
        let codec = Codec::new(design);
        codec.encode(&codec.random_message(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap()
    }

    fn erase(codeword: &[u32], positions: &[usize]) -> Vec<Option<u32>> {
        ErasurePattern::new(positions, codeword.len()).unwrap().apply(codeword)
    }

    #[test]
    fn encoding_is_systematic_and_annihilated() {
        let design = h1();
        let codec = Codec::new(&design);
        assert_eq!(codec.dimension(), 8);
        assert_eq!(codec.encode(&[0; 8]).unwrap(), vec![0; 12]);
        let msg = [1, 2, 3, 4, 0, 1, 2, 3];
        let c = codec.encode(&msg).unwrap();
        assert!(design.parity_check().mul_vec(&c).unwrap().iter().all(|&s| s == 0));
        let info: Vec<u32> = codec.information_set().iter().map(|&i| c[i]).collect();
        assert_eq!(info, msg);
        assert_ne!(c, codec.encode(&[1, 2, 3, 4, 0, 1, 2, 4]).unwrap());
        assert!(matches!(codec.encode(&[1, 2]), Err(RepairError::Length { expected: 8, got: 2 })));
        assert!(matches!(codec.encode(&[5, 0, 0, 0, 0, 0, 0, 0]), Err(RepairError::InvalidSymbol { .. })));
    }

    #[test]
    fn local_repair_reads_only_its_group() {
        let design = h1();
        let c = sample(&design, 1);
        let fix = repair_local(&design, &erase(&c, &[0, 1]), 0).unwrap();
        assert_eq!(fix.symbols, vec![(0, c[0]), (1, c[1])]);
        assert_eq!(fix.read, vec![2, 3, 4, 5]);
        let fix = repair_local(&design, &erase(&c, &[]), 1).unwrap();
        assert!(fix.symbols.is_empty() && fix.read.is_empty());
    }

    #[test]
    fn local_repair_errors() {
        let design = h1();
        let c = sample(&design, 2);
        assert!(matches!(
            repair_local(&design, &erase(&c, &[0, 1, 2]), 0),
            Err(RepairError::EscalateToGlobal { erasures: 3, capacity: 2 })
        ));
        assert!(matches!(
            repair_local(&design, &erase(&c, &[0, 7]), 0),
            Err(RepairError::OutsideGroup { position: 7, group: 0 })
        ));
        assert!(matches!(repair_local(&design, &erase(&c, &[0]), 2), Err(RepairError::NoSuchGroup { .. })));
        let mut bad = erase(&c, &[0]);
        bad[3] = Some(bad[3].unwrap() ^ 1);
        // one erasure, two local checks: the extra equation exposes corruption
        assert!(matches!(repair_local(&design, &bad, 0), Err(RepairError::Inconsistent)));
    }

    #[test]
    fn global_repair_of_h3_patterns() {
        let design = h3();
        let c = sample(&design, 3);
        for pattern in (0..10).combinations(3) {
            assert_eq!(repair_global(&design, &erase(&c, &pattern)).unwrap(), c, "{pattern:?}");
        }
        assert_eq!(repair_global(&design, &erase(&c, &[])).unwrap(), c);
    }

    #[test]
    fn whole_group_erasure_is_unrecoverable() {
        let design = h1();
        let c = sample(&design, 4);
        match repair_global(&design, &erase(&c, &[0, 1, 2, 3, 4, 5])) {
            Err(RepairError::Unrecoverable { nullity, erased }) => {
                assert_eq!(nullity, 6 - 2);
                assert_eq!(erased, vec![0, 1, 2, 3, 4, 5]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn global_repair_detects_inconsistent_words() {
        let design = h1();
        let mut word: Vec<Option<u32>> = sample(&design, 5).into_iter().map(Some).collect();
        word[0] = Some((word[0].unwrap() + 1) % 5);
        assert!(matches!(repair_global(&design, &word), Err(RepairError::Inconsistent)));
    }

    #[test]
    fn auto_repair_dispatch() {
        let design = h2();
        let c = sample(&design, 6);
        let res = repair_auto(&design, &erase(&c, &[0, 1, 2])).unwrap();
        assert_eq!(res.codeword, c);
        assert!(!res.used_global());
        assert_eq!(res.groups_touched, vec![0]);
        assert_eq!(res.read, vec![3, 4, 5]);

        let design = h3();
        let c = sample(&design, 7);
        let res = repair_auto(&design, &erase(&c, &[1, 6, 8])).unwrap();
        assert_eq!(res.codeword, c);
        assert_eq!(res.modes, vec![(1, RepairMode::Local), (6, RepairMode::Local), (8, RepairMode::Local)]);
        assert_eq!(res.groups_touched, vec![0, 1]);

        let res = repair_auto(&design, &erase(&c, &[0, 2, 4])).unwrap();
        assert_eq!(res.codeword, c);
        assert!(res.modes.iter().all(|(_, m)| *m == RepairMode::Global));
        assert_eq!(res.symbols_read(), 7);
    }

    #[test]
    fn auto_repair_mixes_local_and_global() {
        // group 0 overloaded (3 > δ-1), group 1 light: local first, then global
        let design = h3();
        let c = sample(&design, 8);
        let res = repair_auto(&design, &erase(&c, &[0, 1, 2, 7])).unwrap();
        assert_eq!(res.codeword, c);
        assert_eq!(
            res.modes,
            vec![(0, RepairMode::Global), (1, RepairMode::Global), (2, RepairMode::Global), (7, RepairMode::Local)]
        );
        assert_eq!(res.groups_touched, vec![0, 1]);
        // 4 > d-1 erasures: global alone is not guaranteed to succeed
        assert!(design.claimed_d() - 1 < 4);
    }

    #[test]
    fn auto_repair_of_unrecoverable_pattern() {
        let design = h1();
        let c = sample(&design, 9);
        assert!(matches!(repair_auto(&design, &erase(&c, &[0, 1, 2])), Err(RepairError::Unrecoverable { .. })));
    }

    #[test]
    fn erasure_pattern_validation() {
        assert!(matches!(ErasurePattern::new(&[1, 1], 4), Err(RepairError::DuplicateErasure(1))));
        assert!(matches!(ErasurePattern::new(&[4], 4), Err(RepairError::ErasureOutOfRange { .. })));
        assert_eq!(ErasurePattern::new(&[3, 0], 4).unwrap().positions(), &[0, 3]);
    }

    #[test]
    fn sweep_counts() {
        let report = erasure_sweep(&h3(), 3, 0).unwrap();
        assert!(report.all_recovered());
        assert_eq!(report.global_patterns(), 175);
        assert_eq!(report.global.last().unwrap().patterns, 120);
        // two groups of five, single-group patterns of size 1 and 2
        assert_eq!(report.local.iter().map(|t| t.patterns).collect::<Vec<_>>(), vec![10, 20]);
    }
}

//! Brute-force verification of code parameters.
//!
//! Nothing here trusts the constructions: dimension comes from the rank of
//! H, the minimum distance from exhaustive column-subset search (or, as a
//! second opinion, from enumerating every codeword), and locality from the
//! distance of each repair group's punctured code.

use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{DesignKind, LrcDesign};
use crate::fqmatrix::{ColumnBasis, FqMatrix, MatrixError};
use crate::gf::FieldFragment;

/// Default cap on column insertions performed by the distance search.
pub const DEFAULT_WORK_BUDGET: u64 = 2_000_000_000;

/// Codeword enumeration refuses instances with more than this many codewords.
pub const MAX_ENUMERATED_CODEWORDS: u64 = 1 << 24;

/// Largest length accepted by [`search_repair_groups`].
pub const MAX_EXHAUSTIVE_LOCALITY_LENGTH: usize = 14;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("the code has dimension 0; minimum distance is undefined")]
    ZeroDimensional,
    #[error("distance search exceeded its work budget of {limit} column insertions")]
    BudgetExceeded { limit: u64 },
    #[error("codeword enumeration needs q^k = {q}^{k} words, above the limit of {MAX_ENUMERATED_CODEWORDS}")]
    TooLarge { q: u32, k: usize },
    #[error("exhaustive locality search is limited to n <= {MAX_EXHAUSTIVE_LOCALITY_LENGTH}, got n = {0}")]
    TooLong(usize),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Work budget for exhaustive searches, counted in column insertions.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn charge(&mut self) -> Result<(), AnalysisError> {
        self.spent += 1;
        if self.spent > self.limit {
            Err(AnalysisError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_WORK_BUDGET)
    }
}

/// `n - rank(H)`.
pub fn dimension(h: &FqMatrix) -> usize {
    h.cols() - h.rank()
}

/// Minimum distance and the support of one minimum-weight codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distance {
    pub value: usize,
    pub support: Vec<usize>,
}

/// Exact minimum distance of the code with parity-check matrix `h`.
pub fn min_distance(h: &FqMatrix) -> Result<usize, AnalysisError> {
    Ok(min_distance_with(h, &mut Budget::default())?.value)
}

/// Smallest `w` such that some `w` columns of `h` are dependent, searched in
/// increasing `w` over lexicographically ordered subsets. The returned
/// support is the lexicographically first minimal dependent set.
pub fn min_distance_with(h: &FqMatrix, budget: &mut Budget) -> Result<Distance, AnalysisError> {
    let rank = h.rank();
    if rank == h.cols() {
        return Err(AnalysisError::ZeroDimensional);
    }
    let columns: Vec<Vec<u32>> = (0..h.cols()).map(|c| h.column(c)).collect();
    for w in 1..=rank + 1 {
        let mut basis = ColumnBasis::new(h.field(), h.rows());
        let mut chosen = Vec::with_capacity(w);
        if let Some(support) = dependent_of_size(&columns, w, 0, &mut basis, &mut chosen, budget)? {
            return Ok(Distance { value: w, support });
        }
    }
    unreachable!("any rank+1 columns are dependent")
}

/// Looks for a `size`-subset whose first `size-1` members are independent
/// and whose last member lies in their span.
fn dependent_of_size(
    columns: &[Vec<u32>],
    size: usize,
    start: usize,
    basis: &mut ColumnBasis,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, AnalysisError> {
    let remaining = size - chosen.len();
    if start + remaining > columns.len() {
        return Ok(None);
    }
    for c in start..=columns.len() - remaining {
        budget.charge()?;
        chosen.push(c);
        let independent = basis.push(columns[c].clone());
        if !independent {
            if remaining == 1 {
                return Ok(Some(chosen.clone()));
            }
            // Smaller dependent sets were ruled out by earlier rounds.
        } else if remaining > 1 {
            let found = dependent_of_size(columns, size, c + 1, basis, chosen, budget)?;
            basis.pop();
            if found.is_some() {
                return Ok(found);
            }
        } else {
            basis.pop();
        }
        chosen.pop();
    }
    Ok(None)
}

/// Minimum nonzero Hamming weight over all `q^k` codewords.
pub fn min_distance_by_codewords(h: &FqMatrix) -> Result<usize, AnalysisError> {
    let f = h.field();
    let basis = h.null_space_basis();
    let k = basis.rows();
    if k == 0 {
        return Err(AnalysisError::ZeroDimensional);
    }
    let q = f.order();
    match (q as u64).checked_pow(k as u32) {
        Some(total) if total <= MAX_ENUMERATED_CODEWORDS => {}
        _ => return Err(AnalysisError::TooLarge { q, k }),
    }
    let n = h.cols();
    // multiples[i][a] = a * basis_row_i
    let multiples: Vec<Vec<Vec<u32>>> =
        (0..k).map(|i| f.elements().map(|a| basis.row(i).iter().map(|&x| f.mul(a, x)).collect()).collect()).collect();
    let mut digits = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best = n;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == k {
                break 'outer;
            }
            let old = digits[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[i] = new;
            for (w, (&o, &nw)) in
                word.iter_mut().zip(multiples[i][old as usize].iter().zip(&multiples[i][new as usize]))
            {
                *w = f.add(f.sub(*w, o), nw);
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        let weight = word.iter().filter(|&&x| x != 0).count();
        if weight > 0 {
            best = best.min(weight);
        }
    }
    Ok(best)
}

/// The Singleton-type bound `n - k + 1 - (ceil(k/r) - 1)(δ - 1)` for codes
/// with (r, δ)-locality. With δ = 2 this is `n - k - ceil(k/r) + 2`.
pub fn singleton_rd_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<i64, AnalysisError> {
    if k < 1 || k > n {
        return Err(AnalysisError::Parameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if r < 1 {
        return Err(AnalysisError::Parameters("need r >= 1".into()));
    }
    if delta < 2 {
        return Err(AnalysisError::Parameters(format!("need delta >= 2, got {delta}")));
    }
    let groups = k.div_ceil(r) as i64;
    Ok(n as i64 - k as i64 + 1 - (groups - 1) * (delta as i64 - 1))
}

/// A certified repair group for one coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairGroup {
    pub coordinate: usize,
    pub members: Vec<usize>,
    /// Minimum distance of the punctured code on `members`.
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalityFailure {
    pub coordinate: usize,
    pub members: Vec<usize>,
    pub distance: usize,
    /// Support of a low-weight word in the group's local code.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locality {
    Certified(Vec<RepairGroup>),
    Failed(LocalityFailure),
}

impl Locality {
    pub fn is_certified(&self) -> bool {
        matches!(self, Locality::Certified(_))
    }
}

/// Checks (r, δ)-locality using the design's blocks as the repair groups.
///
/// The punctured distance of a block is measured on the code cut out by the
/// block's own `U` rows; that code contains the true punctured code, so a
/// distance of at least δ there certifies the group.
pub fn certify_locality(design: &LrcDesign) -> Result<Locality, AnalysisError> {
    certify_locality_with(design, &mut Budget::default())
}

pub fn certify_locality_with(design: &LrcDesign, budget: &mut Budget) -> Result<Locality, AnalysisError> {
    let max_size = design.locality() + design.delta() - 1;
    let mut groups = Vec::with_capacity(design.n());
    for block in 0..design.groups() {
        let members: Vec<usize> = design.block_columns(block).collect();
        let local = design.local_matrix(block);
        let (distance, witness) = match min_distance_with(&local, budget) {
            Ok(d) => (d.value, d.support.into_iter().map(|c| members[c]).collect()),
            // Only the zero word survives: no erasure pattern can hurt.
            Err(AnalysisError::ZeroDimensional) => (members.len() + 1, Vec::new()),
            Err(e) => return Err(e),
        };
        for &coordinate in &members {
            if members.len() > max_size || distance < design.delta() {
                return Ok(Locality::Failed(LocalityFailure { coordinate, members, distance, witness }));
            }
            groups.push(RepairGroup { coordinate, members: members.clone(), distance });
        }
    }
    Ok(Locality::Certified(groups))
}

/// Exhaustive locality search over all subsets, for short codes.
///
/// For each coordinate returns the smallest (then lexicographically first)
/// set `S` containing it with `|S| <= r+δ-1` whose true punctured code has
/// distance at least δ, or `None` if there is none. Punctured codes equal to
/// `{0}` do not count.
pub fn search_repair_groups(design: &LrcDesign) -> Result<Vec<Option<RepairGroup>>, AnalysisError> {
    let n = design.n();
    if n > MAX_EXHAUSTIVE_LOCALITY_LENGTH {
        return Err(AnalysisError::TooLong(n));
    }
    let generator = design.parity_check().null_space_basis();
    let max_size = design.locality() + design.delta() - 1;
    let mut budget = Budget::default();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut found = None;
        'sizes: for size in 1..=max_size.min(n) {
            for rest in others.iter().copied().combinations(size - 1) {
                let mut members = rest;
                members.push(i);
                members.sort_unstable();
                let punctured = generator.select_columns(&members)?;
                let parity = punctured.null_space_basis();
                match min_distance_with(&parity, &mut budget) {
                    Ok(d) if d.value >= design.delta() => {
                        found = Some(RepairGroup { coordinate: i, members, distance: d.value });
                        break 'sizes;
                    }
                    Ok(_) | Err(AnalysisError::ZeroDimensional) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        out.push(found);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Optimal,
    Suboptimal,
    LocalityFailed,
}

/// Verified parameters of a design.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub version: String,
    pub field: FieldFragment,
    pub kind: DesignKind,
    pub n: usize,
    pub k: usize,
    pub d_exact: usize,
    /// Support of a minimum-weight codeword.
    pub d_witness: Vec<usize>,
    pub r: usize,
    pub delta: usize,
    pub claimed_d: usize,
    pub locality: Vec<RepairGroup>,
    pub locality_failure: Option<LocalityFailure>,
    pub bound: i64,
    pub verdict: Verdict,
    pub elapsed_ms: f64,
    pub work: u64,
}

impl CodeReport {
    pub fn is_optimal(&self) -> bool {
        self.verdict == Verdict::Optimal
    }

    /// One-line human summary, e.g. `OPTIMAL: d=3 = bound 3`.
    pub fn headline(&self) -> String {
        match self.verdict {
            Verdict::Optimal => format!("OPTIMAL: d={} = bound {}", self.d_exact, self.bound),
            Verdict::Suboptimal => format!("SUBOPTIMAL: d={} < bound {}", self.d_exact, self.bound),
            Verdict::LocalityFailed => {
                let f = self.locality_failure.as_ref().expect("failure recorded");
                format!(
                    "LOCALITY FAILED: coordinate {} group {:?} has punctured distance {} < delta {}",
                    f.coordinate, f.members, f.distance, self.delta
                )
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn full_report(design: &LrcDesign) -> Result<CodeReport, AnalysisError> {
    full_report_with(design, &mut Budget::default())
}

/// Dimension, exact distance, locality, bound and verdict in one pass.
pub fn full_report_with(design: &LrcDesign, budget: &mut Budget) -> Result<CodeReport, AnalysisError> {
    let start = Instant::now();
    let h = design.parity_check();
    let k = dimension(h);
    let distance = min_distance_with(h, budget)?;
    let locality = certify_locality_with(design, budget)?;
    let bound = singleton_rd_bound(h.cols(), k, design.locality(), design.delta())?;
    let (groups, failure) = match locality {
        Locality::Certified(groups) => (groups, None),
        Locality::Failed(f) => (Vec::new(), Some(f)),
    };
    let verdict = match (&failure, distance.value as i64 == bound) {
        (Some(_), _) => Verdict::LocalityFailed,
        (None, true) => Verdict::Optimal,
        (None, false) => Verdict::Suboptimal,
    };
    debug_assert!(failure.is_some() || distance.value as i64 <= bound, "bound violated by a local code");
    Ok(CodeReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        field: design.field().fragment(),
        kind: design.kind(),
        n: h.cols(),
        k,
        d_exact: distance.value,
        d_witness: distance.support,
        r: design.locality(),
        delta: design.delta(),
        claimed_d: design.claimed_d(),
        locality: groups,
        locality_failure: failure,
        bound,
        verdict,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        work: budget.spent(),
    })
}

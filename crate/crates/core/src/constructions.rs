//! Parity-check constructions for (r, δ)-locally repairable codes.
//!
//! Every design has the block shape
//!
//! ```text
//!     U_1  0   ...  0
//!     0    U_2 ...  0
//!     ...
//!     0    0   ...  U_m
//!     V_1  V_2 ...  V_m
//! ```
//!
//! where each `U_i` is `(δ-1) x (r+δ-1)` and each `V_i` is `(d-δ) x (r+δ-1)`.
//! When every `U_i` and every stacked `[U_i; V_i]` has the MDS property and
//! `δ <= d <= 2δ`, `r > d-δ`, the code with this parity-check matrix is an
//! `[m(r+δ-1), rm-(d-δ), d]` code with (r, δ)-locality meeting the
//! Singleton-type bound.
//!
//! The explicit families reuse one block for all groups:
//!
//! | kind | block `U`            | `V`              | δ | d | block width |
//! |------|----------------------|------------------|---|---|-------------|
//! | H1   | f-row / α-row + I₂   | none             | 3 | 3 | r + 2       |
//! | H2   | 1 / α^j / α^2j + I₃  | none             | 4 | 4 | r + 3       |
//! | H3   | 1 / α^j + (e₁, e₂)   | α^2j, then 0, 0  | 3 | 4 | r + 2       |
//!
//! Column `j = 1..r` of each block carries `α^j` (not `α^0`).

use std::fmt;
use std::ops::Range;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fqmatrix::{FqMatrix, MatrixError, MatrixFile, MdsVerdict};
use crate::gf::{format_poly, FieldSpec, GfError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("parameter hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("requires q >= r+1 (q = {q}, r = {r})")]
    FieldTooSmall { q: u32, r: usize },
    #[error("requires a field of characteristic 2 with q >= 4, got {0}")]
    NeedsBinaryField(String),
    #[error("requires q > 2, got GF({0})")]
    FieldOrderTwo(u32),
    #[error("block {block}: {part} is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { block: usize, part: BlockPart, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("block {block}: {part} lacks the MDS property; columns {witness:?} are dependent")]
    NotMds { block: usize, part: BlockPart, witness: Vec<usize> },
    #[error("f(x) = {poly} violates the f-conditions: {violation}")]
    BadPolynomial { poly: String, violation: FViolation },
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("design invariant violated: {0}")]
    Invalid(String),
    #[error("no MDS block pair of width {width} with {rows} rows found over {field}")]
    NoBlockPair { width: usize, rows: usize, field: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockPart {
    U,
    Stacked,
}

impl fmt::Display for BlockPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockPart::U => "U",
            BlockPart::Stacked => "[U; V]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DesignKind {
    #[serde(rename = "general")]
    General,
    H1,
    H2,
    H3,
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignKind::General => "general",
            DesignKind::H1 => "H1",
            DesignKind::H2 => "H2",
            DesignKind::H3 => "H3",
        })
    }
}

/// Builder options. Explicit families are proven MDS, so re-verification can
/// be switched off; by default it runs.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub verify_mds: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { verify_mds: true }
    }
}

/// A parity-check matrix with its repair-group layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrcDesign {
    h: FqMatrix,
    m: usize,
    r: usize,
    delta: usize,
    claimed_d: usize,
    kind: DesignKind,
}

fn check_hypotheses(r: usize, delta: usize, d: usize, m: usize) -> Result<(), ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::Hypothesis("m must be at least 1".into()));
    }
    if delta < 2 {
        return Err(ConstructionError::Hypothesis(format!("delta must be at least 2, got {delta}")));
    }
    if d < delta || d > 2 * delta {
        return Err(ConstructionError::Hypothesis(format!("need delta <= d <= 2*delta, got delta={delta}, d={d}")));
    }
    if r <= d - delta {
        return Err(ConstructionError::Hypothesis(format!("need r > d - delta, got r={r}, d-delta={}", d - delta)));
    }
    Ok(())
}

impl LrcDesign {
    /// Wraps an assembled matrix, checking the shape and parameter
    /// invariants (not the MDS conditions; see [`build_general`]).
    pub fn new(
        h: FqMatrix,
        m: usize,
        r: usize,
        delta: usize,
        claimed_d: usize,
        kind: DesignKind,
    ) -> Result<Self, ConstructionError> {
        check_hypotheses(r, delta, claimed_d, m)?;
        let want = (m * (delta - 1) + claimed_d - delta, m * (r + delta - 1));
        if (h.rows(), h.cols()) != want {
            return Err(ConstructionError::Invalid(format!(
                "H is {}x{}, expected {}x{} for m={m}, r={r}, delta={delta}, d={claimed_d}",
                h.rows(),
                h.cols(),
                want.0,
                want.1
            )));
        }
        Ok(LrcDesign { h, m, r, delta, claimed_d, kind })
    }

    pub fn parity_check(&self) -> &FqMatrix {
        &self.h
    }

    pub fn field(&self) -> &FieldSpec {
        self.h.field()
    }

    pub fn groups(&self) -> usize {
        self.m
    }

    pub fn locality(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn claimed_d(&self) -> usize {
        self.claimed_d
    }

    pub fn kind(&self) -> DesignKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn claimed_k(&self) -> usize {
        self.r * self.m - (self.claimed_d - self.delta)
    }

    pub fn block_width(&self) -> usize {
        self.r + self.delta - 1
    }

    pub fn block_columns(&self, block: usize) -> Range<usize> {
        let w = self.block_width();
        block * w..(block + 1) * w
    }

    /// Rows of H holding the block's own `U` part.
    pub fn local_rows(&self, block: usize) -> Range<usize> {
        let t = self.delta - 1;
        block * t..(block + 1) * t
    }

    /// The trailing `d - δ` rows shared by all blocks.
    pub fn global_rows(&self) -> Range<usize> {
        self.m * (self.delta - 1)..self.h.rows()
    }

    pub fn block_of(&self, coordinate: usize) -> usize {
        coordinate / self.block_width()
    }

    /// `(start, width)` per group.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        (0..self.m).map(|b| (b * self.block_width(), self.block_width())).collect()
    }

    /// `U_i` restricted to its own columns.
    pub fn local_matrix(&self, block: usize) -> FqMatrix {
        let cols: Vec<usize> = self.block_columns(block).collect();
        self.h
            .select_rows(self.local_rows(block))
            .and_then(|u| u.select_columns(&cols))
            .expect("block ranges lie inside H")
    }

    /// `V_i` restricted to its own columns (zero rows when d = δ).
    pub fn global_part(&self, block: usize) -> FqMatrix {
        let cols: Vec<usize> = self.block_columns(block).collect();
        self.h.select_rows(self.global_rows()).and_then(|v| v.select_columns(&cols)).expect("block ranges lie inside H")
    }

    pub fn summary(&self) -> String {
        format!(
            "[{},{},{}] r={} δ={} block width {} ({}, {} groups over {})",
            self.n(),
            self.claimed_k(),
            self.claimed_d,
            self.r,
            self.delta,
            self.block_width(),
            self.kind,
            self.m,
            self.field()
        )
    }

    pub fn to_file(&self) -> DesignFile {
        DesignFile {
            matrix: self.h.to_file(),
            m: self.m,
            r: self.r,
            delta: self.delta,
            claimed_d: self.claimed_d,
            blocks: self.blocks().into_iter().map(|(s, w)| [s, w]).collect(),
            kind: self.kind,
        }
    }

    pub fn from_file(file: &DesignFile) -> Result<Self, ConstructionError> {
        let h = FqMatrix::from_file(&file.matrix)?;
        let design = Self::new(h, file.m, file.r, file.delta, file.claimed_d, file.kind)?;
        let expected: Vec<[usize; 2]> = design.blocks().into_iter().map(|(s, w)| [s, w]).collect();
        if file.blocks != expected {
            return Err(ConstructionError::Invalid(format!(
                "blocks {:?} do not partition the columns into consecutive groups of width {}",
                file.blocks,
                design.block_width()
            )));
        }
        Ok(design)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("design serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ConstructionError> {
        let file: DesignFile = serde_json::from_str(s).map_err(MatrixError::from)?;
        Self::from_file(&file)
    }
}

/// On-disk design: the matrix fields plus the group layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    #[serde(flatten)]
    pub matrix: MatrixFile,
    pub m: usize,
    pub r: usize,
    pub delta: usize,
    pub claimed_d: usize,
    pub blocks: Vec<[usize; 2]>,
    pub kind: DesignKind,
}

/// First violation of the two f-conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FViolation {
    /// `f(x) = 0` for this nonzero `x`.
    Vanishes(u32),
    /// `y f(x) - x f(y) = 0` for these distinct nonzero `x < y`.
    Collision(u32, u32),
}

impl fmt::Display for FViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FViolation::Vanishes(x) => write!(f, "f({x}) = 0"),
            FViolation::Collision(x, y) => write!(f, "y f(x) = x f(y) at (x, y) = ({x}, {y})"),
        }
    }
}

/// Exhaustively checks `f(x) != 0` on F_q^* and `y f(x) != x f(y)` for all
/// distinct nonzero `x, y`. Returns the first violation in code order.
pub fn check_f_conditions(field: &FieldSpec, coeffs: &[u32]) -> Result<Option<FViolation>, ConstructionError> {
    if coeffs.is_empty() {
        return Err(ConstructionError::EmptyPolynomial);
    }
    if field.order() < 3 {
        return Err(ConstructionError::FieldOrderTwo(field.order()));
    }
    for &c in coeffs {
        field.check(c as u64)?;
    }
    let values: Vec<(u32, u32)> = (1..field.order()).map(|x| (x, field.eval_poly(coeffs, x))).collect();
    if let Some(&(x, _)) = values.iter().find(|(_, fx)| *fx == 0) {
        return Ok(Some(FViolation::Vanishes(x)));
    }
    for (i, &(x, fx)) in values.iter().enumerate() {
        for &(y, fy) in &values[i + 1..] {
            if field.mul(y, fx) == field.mul(x, fy) {
                return Ok(Some(FViolation::Collision(x, y)));
            }
        }
    }
    Ok(None)
}

/// A polynomial over GF(q) known to satisfy both f-conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolynomial {
    coeffs: Vec<u32>,
}

impl FPolynomial {
    pub fn new(field: &FieldSpec, coeffs: &[u32]) -> Result<Self, ConstructionError> {
        let mut coeffs = coeffs.to_vec();
        match check_f_conditions(field, &coeffs)? {
            None => {
                while coeffs.len() > 1 && coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                Ok(FPolynomial { coeffs })
            }
            Some(violation) => Err(ConstructionError::BadPolynomial { poly: format_poly(&coeffs), violation }),
        }
    }

    /// `f ≡ 1`, valid over every field with q > 2.
    pub fn one(field: &FieldSpec) -> Result<Self, ConstructionError> {
        Self::new(field, &[1])
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn eval(&self, field: &FieldSpec, x: u32) -> u32 {
        field.eval_poly(&self.coeffs, x)
    }
}

fn require_binary(field: &FieldSpec) -> Result<(), ConstructionError> {
    if field.is_binary() && field.order() >= 4 {
        Ok(())
    } else {
        Err(ConstructionError::NeedsBinaryField(field.to_string()))
    }
}

fn alpha(field: &FieldSpec) -> Result<u32, ConstructionError> {
    if field.order() <= 2 {
        return Err(ConstructionError::FieldOrderTwo(field.order()));
    }
    Ok(field.primitive_element()?.code())
}

/// Rows `f(α^j)` and `α^j` for j = 1..=len, followed by an identity on the
/// trailing `2` columns.
fn g1_block(field: &FieldSpec, f: &FPolynomial, len: usize) -> Result<FqMatrix, ConstructionError> {
    alpha(field)?;
    let mut m = FqMatrix::zeros(field, 2, len + 2);
    for j in 1..=len {
        let a = field.alpha_pow(j as u64);
        m.set(0, j - 1, f.eval(field, a))?;
        m.set(1, j - 1, a)?;
    }
    m.set(0, len, 1)?;
    m.set(1, len + 1, 1)?;
    Ok(m)
}

/// Rows `1, α^j, α^2j` for j = 1..=len followed by the first `tail` columns
/// of I₃.
fn g2_block(field: &FieldSpec, len: usize, tail: usize) -> Result<FqMatrix, ConstructionError> {
    alpha(field)?;
    let mut m = FqMatrix::zeros(field, 3, len + tail);
    for j in 1..=len {
        let a = field.alpha_pow(j as u64);
        m.set(0, j - 1, 1)?;
        m.set(1, j - 1, a)?;
        m.set(2, j - 1, field.mul(a, a))?;
    }
    for t in 0..tail {
        m.set(t, len + t, 1)?;
    }
    Ok(m)
}

/// The `2 x (q+1)` matrix with columns `(f(α^j), α^j)` for j = 1..q-1, then
/// `(1, 0)` and `(0, 1)`.
pub fn build_g1(field: &FieldSpec, f: &FPolynomial) -> Result<FqMatrix, ConstructionError> {
    g1_block(field, f, field.order() as usize - 1)
}

/// The `3 x (q+2)` matrix with columns `(1, α^j, α^2j)` for j = 1..q-1, then
/// the three unit vectors. Characteristic 2 only.
pub fn build_g2(field: &FieldSpec) -> Result<FqMatrix, ConstructionError> {
    require_binary(field)?;
    g2_block(field, field.order() as usize - 1, 3)
}

/// `G₃` is `G₂` without its last column; `G₄` is the first two rows of `G₃`.
pub fn build_g3_g4(field: &FieldSpec) -> Result<(FqMatrix, FqMatrix), ConstructionError> {
    require_binary(field)?;
    let g3 = g2_block(field, field.order() as usize - 1, 2)?;
    let g4 = g3.select_rows(0..2)?;
    Ok((g3, g4))
}

/// Assembles and checks a block design from per-group U and V parts.
///
/// Every `U_i` must be `(δ-1) x (r+δ-1)` and every `V_i` `(d-δ) x (r+δ-1)`;
/// the MDS conditions on `U_i` and `[U_i; V_i]` are verified exhaustively.
pub fn build_general(
    us: &[FqMatrix],
    vs: &[FqMatrix],
    r: usize,
    delta: usize,
    d: usize,
) -> Result<LrcDesign, ConstructionError> {
    assemble(us, vs, r, delta, d, DesignKind::General, BuildOptions::default())
}

pub fn build_general_with(
    us: &[FqMatrix],
    vs: &[FqMatrix],
    r: usize,
    delta: usize,
    d: usize,
    opts: BuildOptions,
) -> Result<LrcDesign, ConstructionError> {
    assemble(us, vs, r, delta, d, DesignKind::General, opts)
}

fn assemble(
    us: &[FqMatrix],
    vs: &[FqMatrix],
    r: usize,
    delta: usize,
    d: usize,
    kind: DesignKind,
    opts: BuildOptions,
) -> Result<LrcDesign, ConstructionError> {
    let m = us.len();
    check_hypotheses(r, delta, d, m)?;
    if vs.len() != m {
        return Err(ConstructionError::Invalid(format!("{m} U blocks but {} V blocks", vs.len())));
    }
    let field = us[0].field().clone();
    let width = r + delta - 1;
    let (u_rows, v_rows) = (delta - 1, d - delta);
    let mut h = FqMatrix::zeros(&field, m * u_rows + v_rows, m * width);
    for (i, (u, v)) in us.iter().zip(vs).enumerate() {
        for (part, mat, want_rows) in [(BlockPart::U, u, u_rows), (BlockPart::Stacked, v, v_rows)] {
            if (mat.rows(), mat.cols()) != (want_rows, width) {
                return Err(ConstructionError::Shape {
                    block: i,
                    part,
                    rows: mat.rows(),
                    cols: mat.cols(),
                    want_rows,
                    want_cols: width,
                });
            }
        }
        if opts.verify_mds {
            if let MdsVerdict::Fails { witness } = u.mds_check()? {
                return Err(ConstructionError::NotMds { block: i, part: BlockPart::U, witness });
            }
            if let MdsVerdict::Fails { witness } = u.vstack(v)?.mds_check()? {
                return Err(ConstructionError::NotMds { block: i, part: BlockPart::Stacked, witness });
            }
        }
        h.place(i * u_rows, i * width, u)?;
        h.place(m * u_rows, i * width, v)?;
    }
    LrcDesign::new(h, m, r, delta, d, kind)
}

fn explicit_params(field: &FieldSpec, r: usize, m: usize) -> Result<(), ConstructionError> {
    if r <= 1 {
        return Err(ConstructionError::Hypothesis(format!("explicit constructions need r > 1, got r={r}")));
    }
    if m == 0 {
        return Err(ConstructionError::Hypothesis("m must be at least 1".into()));
    }
    if (field.order() as usize) < r + 1 {
        return Err(ConstructionError::FieldTooSmall { q: field.order(), r });
    }
    Ok(())
}

/// `m` copies of `U₁` on the diagonal: an `[(r+2)m, rm, 3]` code with
/// (r, 3)-locality. Block width reaches `q+1` at `r = q-1`.
pub fn build_h1(field: &FieldSpec, r: usize, m: usize, f: &FPolynomial) -> Result<LrcDesign, ConstructionError> {
    build_h1_with(field, r, m, f, BuildOptions::default())
}

pub fn build_h1_with(
    field: &FieldSpec,
    r: usize,
    m: usize,
    f: &FPolynomial,
    opts: BuildOptions,
) -> Result<LrcDesign, ConstructionError> {
    if field.order() <= 2 {
        return Err(ConstructionError::FieldOrderTwo(field.order()));
    }
    explicit_params(field, r, m)?;
    // Re-check here so a hand-built FPolynomial for another field is caught.
    if let Some(violation) = check_f_conditions(field, f.coefficients())? {
        return Err(ConstructionError::BadPolynomial { poly: format_poly(f.coefficients()), violation });
    }
    let u = g1_block(field, f, r)?;
    let v = FqMatrix::zeros(field, 0, r + 2);
    assemble(&vec![u; m], &vec![v; m], r, 3, 3, DesignKind::H1, opts)
}

/// `m` copies of `U₂` on the diagonal: an `[(r+3)m, rm, 4]` code with
/// (r, 4)-locality over GF(2^e). Block width reaches `q+2` at `r = q-1`.
pub fn build_h2(field: &FieldSpec, r: usize, m: usize) -> Result<LrcDesign, ConstructionError> {
    build_h2_with(field, r, m, BuildOptions::default())
}

pub fn build_h2_with(
    field: &FieldSpec,
    r: usize,
    m: usize,
    opts: BuildOptions,
) -> Result<LrcDesign, ConstructionError> {
    require_binary(field)?;
    explicit_params(field, r, m)?;
    let u = g2_block(field, r, 3)?;
    let v = FqMatrix::zeros(field, 0, r + 3);
    assemble(&vec![u; m], &vec![v; m], r, 4, 4, DesignKind::H2, opts)
}

/// Diagonal `U₃` blocks plus one shared `V₃` row: an `[(r+2)m, rm-1, 4]`
/// code with (r, 3)-locality over GF(2^e).
pub fn build_h3(field: &FieldSpec, r: usize, m: usize) -> Result<LrcDesign, ConstructionError> {
    build_h3_with(field, r, m, BuildOptions::default())
}

pub fn build_h3_with(
    field: &FieldSpec,
    r: usize,
    m: usize,
    opts: BuildOptions,
) -> Result<LrcDesign, ConstructionError> {
    require_binary(field)?;
    explicit_params(field, r, m)?;
    let g3 = g2_block(field, r, 2)?;
    let u = g3.select_rows(0..2)?;
    let v = g3.select_rows(2..3)?;
    assemble(&vec![u; m], &vec![v; m], r, 3, 4, DesignKind::H3, opts)
}

/// A `(U, V)` pair of width `r+δ-1` built from Vandermonde rows
/// `x^0 .. x^(d-2)`, with `U` the first `δ-1` rows.
///
/// Evaluation points are `α^1, α^2, ..`, then `0`, so widths up to `q` are
/// plain Vandermonde. Width `q+1` adds the point at infinity (column
/// `(0, .., 0, 1)`); there the top rows are no longer MDS on their own when
/// `d > δ`, so `U` and `V` are taken as a deterministic row-basis change of
/// the same `(d-1)`-row matrix that keeps `[U; V]` spanning the same rows.
pub fn vandermonde_pair(
    field: &FieldSpec,
    r: usize,
    delta: usize,
    d: usize,
) -> Result<(FqMatrix, FqMatrix), ConstructionError> {
    check_hypotheses(r, delta, d, 1)?;
    let q = field.order() as usize;
    let width = r + delta - 1;
    let rows = d - 1;
    if width > q + 1 || (width == q + 1 && rows < 1) {
        return Err(ConstructionError::NoBlockPair { width, rows, field: field.to_string() });
    }
    let mut points: Vec<u32> = (1..q.min(width + 1)).map(|j| field.alpha_pow(j as u64)).collect();
    if width >= q {
        points.push(0);
    }
    let mut full = FqMatrix::vandermonde(field, &points, rows)?;
    if width <= q {
        return Ok((full.select_rows(0..delta - 1)?, full.select_rows(delta - 1..rows)?));
    }
    let mut ext = FqMatrix::zeros(field, rows, width);
    ext.place(0, 0, &full)?;
    ext.set(rows - 1, width - 1, 1)?;
    full = ext;
    if d == delta {
        return Ok((full, FqMatrix::zeros(field, 0, width)));
    }
    let Some(p) = mds_subspace(&full, delta - 1)? else {
        return Err(ConstructionError::NoBlockPair { width, rows, field: field.to_string() });
    };
    let u = p.mul(&full)?;
    // Extend P to an invertible matrix with unit rows.
    let mut basis = p;
    let mut q_rows = FqMatrix::zeros(field, 0, rows);
    for i in 0..rows {
        let mut unit = FqMatrix::zeros(field, 1, rows);
        unit.set(0, i, 1)?;
        let candidate = basis.vstack(&unit)?;
        if candidate.rank() > basis.rank() {
            basis = candidate;
            q_rows = q_rows.vstack(&unit)?;
        }
    }
    Ok((u, q_rows.mul(&full)?))
}

/// Subspaces up to this count are enumerated exhaustively; larger spaces are
/// sampled with a fixed seed for up to the same number of attempts.
const SUBSPACE_SEARCH_LIMIT: u64 = 200_000;

/// Finds a `dim x rows(full)` matrix `P` such that `P * full` has the MDS
/// property. `None` means none exists when the search was exhaustive, or
/// none was found within the sampling limit otherwise.
fn mds_subspace(full: &FqMatrix, dim: usize) -> Result<Option<FqMatrix>, ConstructionError> {
    let field = full.field();
    let t = full.rows();
    let q = field.order() as u64;
    let pivot_sets: Vec<Vec<usize>> = (0..t).combinations(dim).collect();
    let free_positions = |piv: &[usize]| -> Vec<(usize, usize)> {
        (0..dim).flat_map(|r| (piv[r] + 1..t).filter(|c| !piv.contains(c)).map(move |c| (r, c))).collect()
    };
    let total: u64 =
        pivot_sets.iter().map(|piv| q.saturating_pow(free_positions(piv).len() as u32)).fold(0u64, u64::saturating_add);
    let accept = |p: &FqMatrix| -> Result<bool, ConstructionError> { Ok(p.mul(full)?.has_mds_property()?) };
    if total <= SUBSPACE_SEARCH_LIMIT {
        // Every dim-subspace has exactly one reduced echelon basis.
        for piv in &pivot_sets {
            let free = free_positions(piv);
            let mut values = vec![0u32; free.len()];
            loop {
                let mut p = FqMatrix::zeros(field, dim, t);
                for (r, &c) in piv.iter().enumerate() {
                    p.set(r, c, 1)?;
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    p.set(r, c, v)?;
                }
                if accept(&p)? {
                    return Ok(Some(p));
                }
                let Some(i) = values.iter().position(|&v| v + 1 < field.order()) else {
                    break;
                };
                values[i] += 1;
                values[..i].iter_mut().for_each(|v| *v = 0);
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SUBSPACE_SEARCH_LIMIT {
        let data = (0..dim * t).map(|_| rng.gen_range(0..field.order())).collect();
        let p = FqMatrix::new(field, dim, t, data)?;
        // An MDS product has full row rank, so P does too.
        if accept(&p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

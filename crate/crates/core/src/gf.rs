//! Exact arithmetic in GF(q) for q = p^e.
//!
//! Elements are carried as canonical integer codes in `[0, q)`. For prime
//! fields the code is the residue; for extension fields it packs the
//! polynomial-basis coordinates as base-p digits, constant term in the least
//! significant digit. The reduction polynomial travels with the [`FieldSpec`],
//! so a code is meaningful only together with its field.
//!
//! Multiplication is defined by schoolbook polynomial multiplication followed
//! by reduction ([`FieldSpec::mul_schoolbook`]). The fast path goes through
//! log/antilog tables built from that definition when the field is created;
//! the two agree bit for bit.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order supported by the table-backed arithmetic.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus must be monic of degree {expected}, got coefficients {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible over the prime field")]
    Reducible(Vec<u32>),
    #[error("coefficient {coefficient} is not below the characteristic {p}")]
    BadCoefficient { coefficient: u32, p: u32 },
    #[error("element code {code} is out of range for GF({q})")]
    CodeOutOfRange { code: u64, q: u32 },
    #[error("operands belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("GF(2) has a trivial multiplicative group; no primitive element is defined")]
    TrivialMultiplicativeGroup,
}

/// Serialized description of a field: `{"p": .., "e": .., "modulus": [..]}`.
///
/// The modulus is listed constant term first and omitted when `e = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFragment {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, constant term first; `None` for prime fields.
    modulus: Option<Vec<u32>>,
    /// `exp[i] = g^i` for the smallest-code primitive element `g`, doubled
    /// in length so that `exp[log a + log b]` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^e). Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.q),
            Some(m) => write!(f, "GF({}^{}) mod {}", self.0.p, self.0.e, format_poly(m)),
        }
    }
}

pub(crate) fn format_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
        terms.push(match deg {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{deg}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

// Polynomials over GF(p), constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index`.
fn monic_from_index(index: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut rest = index;
    for _ in 0..deg {
        coeffs.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    poly_trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d) {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem_monic(&f, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `e` whose lower coefficients, read as a
/// base-p integer with the constant term least significant, are smallest.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|idx| monic_from_index(idx, e, p))
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl FieldSpec {
    /// Builds GF(p^e). With `modulus = None` and `e > 1` the default modulus
    /// from [`default_modulus`] is used.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::TooLarge((p as u64).saturating_pow(e)))?;
        let modulus = match modulus {
            Some(m) => {
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(GfError::BadCoefficient { coefficient: c, p });
                }
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(GfError::BadModulus { expected: e, got: m.to_vec() });
                }
                if e > 1 && !is_irreducible(m, p) {
                    return Err(GfError::Reducible(m.to_vec()));
                }
                Some(m.to_vec())
            }
            None if e > 1 => Some(default_modulus(p, e)),
            None => None,
        };
        let modulus = if e == 1 { None } else { modulus };
        let mut inner = FieldInner { p, e, q: q as u32, modulus, exp: Vec::new(), log: Vec::new() };
        build_tables(&mut inner);
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn prime(p: u32) -> Result<Self, GfError> {
        Self::new(p, 1, None)
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: u64) -> Result<Self, GfError> {
        if q > MAX_ORDER {
            return Err(GfError::TooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Self::new(p, e, None)
    }

    pub fn from_fragment(frag: &FieldFragment) -> Result<Self, GfError> {
        Self::new(frag.p, frag.e, frag.modulus.as_deref())
    }

    pub fn fragment(&self) -> FieldFragment {
        FieldFragment { p: self.0.p, e: self.0.e, modulus: self.0.modulus.clone() }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_binary(&self) -> bool {
        self.0.p == 2
    }

    pub fn contains(&self, code: u32) -> bool {
        code < self.0.q
    }

    pub fn check(&self, code: u64) -> Result<u32, GfError> {
        if code < self.0.q as u64 {
            Ok(code as u32)
        } else {
            Err(GfError::CodeOutOfRange { code, q: self.0.q })
        }
    }

    pub fn element(&self, code: u32) -> Result<FieldElement, GfError> {
        self.check(code as u64).map(|code| FieldElement { field: self.clone(), code })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 1 }
    }

    // Code-level arithmetic. Inputs must be valid codes of this field.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.0.q && b < self.0.q);
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.e == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut place, mut out) = (a, 1, 0);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.0.q && b < self.0.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let inner = &*self.0;
        let n = inner.q - 1;
        Ok(inner.exp[((n - inner.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.0;
        let n = (inner.q - 1) as u64;
        inner.exp[((inner.log[a as usize] as u64 * (exp % n)) % n) as usize]
    }

    /// Reference multiplication: polynomial product reduced by the modulus
    /// (or integer product mod p for prime fields). Independent of the tables.
    pub fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        schoolbook_mul(&self.0, a, b)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::ZeroOrder);
        }
        let n = (self.0.q - 1) as u64;
        Ok(divisors(n).into_iter().find(|&t| self.pow(a, t) == 1).unwrap_or(n))
    }

    /// The primitive element with the smallest canonical code.
    pub fn primitive_element(&self) -> Result<FieldElement, GfError> {
        if self.0.q == 2 {
            return Err(GfError::TrivialMultiplicativeGroup);
        }
        Ok(FieldElement { field: self.clone(), code: self.0.exp[1] })
    }

    /// `alpha^i` for the primitive element returned by [`Self::primitive_element`].
    pub fn alpha_pow(&self, i: u64) -> u32 {
        let n = (self.0.q - 1) as u64;
        self.0.exp[(i % n) as usize]
    }

    /// Evaluates a polynomial given constant term first (Horner).
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Renders a code as a polynomial in `a` (extension fields) or an integer.
    pub fn format(&self, code: u32) -> String {
        if self.0.e == 1 {
            return code.to_string();
        }
        let p = self.0.p;
        let mut digits = Vec::new();
        let mut rest = code;
        while rest > 0 {
            digits.push(rest % p);
            rest /= p;
        }
        format_poly(&digits).replace('x', "a")
    }
}

fn schoolbook_mul(inner: &FieldInner, a: u32, b: u32) -> u32 {
    let p = inner.p;
    let Some(m) = &inner.modulus else {
        return (a as u64 * b as u64 % p as u64) as u32;
    };
    let digits = |mut v: u32| {
        let mut d = Vec::with_capacity(inner.e as usize);
        while v > 0 {
            d.push(v % p);
            v /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    if da.is_empty() || db.is_empty() {
        return 0;
    }
    let mut prod = vec![0u32; da.len() + db.len() - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem_monic(&prod, m, p).iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_tables(inner: &mut FieldInner) {
    let q = inner.q;
    let n = (q - 1) as u64;
    let order_of = |inner: &FieldInner, a: u32| -> u64 {
        for t in divisors(n) {
            let mut acc = 1;
            for _ in 0..t {
                acc = schoolbook_mul(inner, acc, a);
            }
            if acc == 1 {
                return t;
            }
        }
        n
    };
    let generator = (1..q).find(|&g| order_of(inner, g) == n).expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1;
    for i in 0..n as usize {
        exp[i] = acc;
        exp[i + n as usize] = acc;
        log[acc as usize] = i as u32;
        acc = schoolbook_mul(inner, acc, generator);
    }
    inner.exp = exp;
    inner.log = log;
}

/// An element of a particular field. Arithmetic between elements of
/// different fields is an error.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.code), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    fn with(&self, code: u32) -> Self {
        FieldElement { field: self.field.clone(), code }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.add(self.code, rhs.code)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.sub(self.code, rhs.code)))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.mul(self.code, rhs.code)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.div(self.code, rhs.code)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field.pow(self.code, exp))
    }

    pub fn order(&self) -> Result<u64, GfError> {
        self.field.element_order(self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u64; 7] = [3, 4, 5, 7, 8, 9, 16];

    #[test]
    fn prime_field_needs_no_modulus() {
        let f = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.modulus(), None);
        assert_eq!(f.fragment(), FieldFragment { p: 5, e: 1, modulus: None });
    }

    #[test]
    fn gf4_defaults_to_x2_x_1() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn default_moduli_are_conventional() {
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 1, 0])).unwrap_err(),
            GfError::BadModulus { expected: 2, got: vec![1, 1, 0] }
        );
        // x^2 + x = x(x + 1)
        assert_eq!(FieldSpec::new(2, 2, Some(&[0, 1, 1])).unwrap_err(), GfError::Reducible(vec![0, 1, 1]));
        assert_eq!(FieldSpec::new(6, 1, None).unwrap_err(), GfError::NotPrime(6));
        assert_eq!(FieldSpec::new(5, 0, None).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(FieldSpec::new(2, 17, None), Err(GfError::TooLarge(_))));
        assert_eq!(FieldSpec::with_order(6).unwrap_err(), GfError::NotPrimePower(6));
    }

    #[test]
    fn small_products() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.mul(2, 4), 3);
        let f4 = FieldSpec::with_order(4).unwrap();
        // a * a = a + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.inv(2).unwrap(), 3);
        assert_eq!(f4.inv(0), Err(GfError::ZeroInverse));
    }

    #[test]
    fn element_api_rejects_mixed_fields() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f7 = FieldSpec::prime(7).unwrap();
        let a = f5.element(2).unwrap();
        let b = f7.element(2).unwrap();
        assert!(matches!(a.add(&b), Err(GfError::FieldMismatch(..))));
        assert_eq!(a.mul(&f5.element(4).unwrap()).unwrap().code(), 3);
        assert!(f5.element(5).is_err());
        assert_eq!(f5.zero().inv(), Err(GfError::ZeroInverse));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(FieldSpec::prime(5).unwrap().primitive_element().unwrap().code(), 2);
        assert_eq!(FieldSpec::with_order(4).unwrap().primitive_element().unwrap().code(), 2);
        assert_eq!(FieldSpec::prime(3).unwrap().primitive_element().unwrap().code(), 2);
        assert_eq!(FieldSpec::prime(7).unwrap().primitive_element().unwrap().code(), 3);
        assert_eq!(FieldSpec::prime(2).unwrap().primitive_element().unwrap_err(), GfError::TrivialMultiplicativeGroup);
        for q in ORDERS {
            let f = FieldSpec::with_order(q).unwrap();
            let g = f.primitive_element().unwrap();
            assert_eq!(g.order().unwrap(), q - 1);
            // smallest code with full order
            for c in 1..g.code() {
                assert!(f.element_order(c).unwrap() < q - 1);
            }
        }
    }

    #[test]
    fn element_orders() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.element_order(4).unwrap(), 2);
        assert_eq!(f5.element_order(2).unwrap(), 4);
        assert_eq!(FieldSpec::with_order(4).unwrap().element_order(1).unwrap(), 1);
        assert_eq!(f5.element_order(0), Err(GfError::ZeroOrder));
    }

    #[test]
    fn tables_match_schoolbook() {
        for q in ORDERS.iter().copied().chain([25, 27, 32, 49, 64, 256]) {
            let f = FieldSpec::with_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b), "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = FieldSpec::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert!(f.add(a, b) < f.order() && f.mul(a, b) < f.order());
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        for q in [4u64, 8, 16, 32] {
            let f = FieldSpec::with_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let s = f.add(a, b);
                    assert_eq!(f.mul(s, s), f.add(f.mul(a, a), f.mul(b, b)));
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2 - 1
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn explicit_modulus_is_honoured() {
        let f = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        // x * x^2 = x^3 = x^2 + 1
        assert_eq!(f.mul(2, 4), 5);
        assert_ne!(f, FieldSpec::with_order(8).unwrap());
        assert_eq!(FieldSpec::with_order(8).unwrap(), FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap());
    }

    #[test]
    fn formatting() {
        let f4 = FieldSpec::with_order(4).unwrap();
        assert_eq!(f4.format(3), "a+1");
        assert_eq!(f4.format(2), "a");
        assert_eq!(f4.to_string(), "GF(2^2) mod x^2+x+1");
        assert_eq!(FieldSpec::prime(5).unwrap().format(3), "3");
    }

    #[test]
    fn alpha_powers_follow_generator() {
        let f5 = FieldSpec::prime(5).unwrap();
        let row: Vec<u32> = (1..=4).map(|i| f5.alpha_pow(i)).collect();
        assert_eq!(row, vec![2, 4, 3, 1]);
        let f4 = FieldSpec::with_order(4).unwrap();
        assert_eq!((1..=3).map(|i| f4.alpha_pow(i)).collect::<Vec<_>>(), vec![2, 3, 1]);
    }
}

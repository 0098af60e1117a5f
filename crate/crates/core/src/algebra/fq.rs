//! Prime-power finite fields F_{p^e} = F_p[z]/(modulus).
//!
//! Elements are stored as a single `u32` packing the coordinates in the power
//! basis 1, z, ..., z^{e-1} as base-p digits (lowest coordinate first).
//! Multiplication goes through discrete log / exp tables built at construction.

use std::fmt;
use std::sync::Arc;

use super::field::Field;
use crate::error::AlgebraError;

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 21;

/// A field element in packed form. Only meaningful together with its [`FqField`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone)]
pub struct FqField {
    inner: Arc<FieldData>,
}

struct FieldData {
    p: u32,
    degree: u32,
    size: u32,
    /// Monic, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..size-1.
    exp: Vec<u32>,
    /// log[a] for a != 0.
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p on plain coefficient vectors, used only
// while building fields.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits_of(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Trial-division irreducibility test over F_p.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = digits_of(low as u32, p, d);
            cand.push(1);
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of the given degree, ordering
/// candidates by their packed lower coefficients.
pub fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    if degree == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(degree);
    for low in 0..count {
        let mut cand = digits_of(low as u32, p, degree as usize);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqField {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::with_modulus(p, vec![0, 1])
    }

    /// F_{p^degree} with the lexicographically least irreducible modulus.
    pub fn new(p: u32, degree: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if degree == 0 {
            return Err(AlgebraError::Invalid(
                "extension degree must be positive".into(),
            ));
        }
        let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(AlgebraError::FieldTooLarge(size));
        }
        Self::with_modulus(p, least_irreducible(p, degree))
    }

    /// F_p[z]/(modulus); the modulus is made monic and checked for irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let mut modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(AlgebraError::Invalid(
                "modulus must have positive degree".into(),
            ));
        }
        let lead_inv = inv_mod(*modulus.last().unwrap(), p);
        for c in modulus.iter_mut() {
            *c = (*c as u64 * lead_inv as u64 % p as u64) as u32;
        }
        let degree = (modulus.len() - 1) as u32;
        let size64 = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size64 > MAX_FIELD_SIZE {
            return Err(AlgebraError::FieldTooLarge(size64));
        }
        if !is_irreducible(&modulus, p) {
            return Err(AlgebraError::Reducible(format_zpoly(&modulus), p));
        }
        let size = size64 as u32;
        let (exp, log) = build_log_tables(p, degree, &modulus);
        let add_table = if size <= 256 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = slow_add(a, b, p, degree);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(FqField {
            inner: Arc::new(FieldData {
                p,
                degree,
                size,
                modulus,
                exp,
                log,
                add_table,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn size(&self) -> u32 {
        self.inner.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn same_field(&self, other: &FqField) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.size).map(Fq)
    }

    /// Packs power-basis coordinates, reducing modulo the modulus if needed.
    pub fn from_coords(&self, coords: &[u32]) -> Fq {
        let p = self.inner.p;
        let raw: Vec<u32> = coords.iter().map(|c| c % p).collect();
        let mut r = if raw.len() > self.inner.degree as usize {
            poly_rem(&raw, &self.inner.modulus, p)
        } else {
            raw
        };
        r.resize(self.inner.degree as usize, 0);
        Fq(pack(&r, p))
    }

    pub fn coords(&self, a: Fq) -> Vec<u32> {
        digits_of(a.0, self.inner.p, self.inner.degree as usize)
    }

    /// The generator z of the power basis.
    pub fn generator(&self) -> Fq {
        if self.inner.degree == 1 {
            // z is a root of the modulus z - c.
            Fq((self.inner.p - self.inner.modulus[0]) % self.inner.p)
        } else {
            Fq(self.inner.p)
        }
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(&a, self.inner.p as u64)
    }

    /// The unique p-th root.
    pub fn pth_root(&self, a: Fq) -> Fq {
        self.pow(&a, (self.inner.size / self.inner.p) as u64)
    }

    /// True iff `a` lies in the subfield F_{p^d}, tested as a^{p^d} = a.
    pub fn is_in_subfield(&self, a: Fq, d: u32) -> bool {
        let mut x = a;
        for _ in 0..d {
            x = self.frobenius(x);
        }
        x == a
    }

    /// Degree over F_p of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: Fq) -> u32 {
        (1..=self.inner.degree)
            .filter(|d| self.inner.degree.is_multiple_of(*d))
            .find(|&d| self.is_in_subfield(a, d))
            .unwrap_or(self.inner.degree)
    }

    /// Embedding of `self` into `target`, sending z to the least root of
    /// `self.modulus()` in `target`.
    pub fn embedding_into(&self, target: &FqField) -> Result<Embedding, AlgebraError> {
        if self.p() != target.p() || !target.degree().is_multiple_of(self.degree()) {
            return Err(AlgebraError::NoEmbedding {
                from: self.degree(),
                to: target.degree(),
            });
        }
        let root = if self.degree() == 1 {
            target.from_int(self.generator().0 as i64)
        } else {
            target
                .elements()
                .find(|&r| {
                    let mut acc = target.zero();
                    for &c in self.modulus().iter().rev() {
                        acc = target.add(&target.mul(&acc, &r), &target.from_int(c as i64));
                    }
                    acc == Fq::ZERO
                })
                .ok_or(AlgebraError::NoEmbedding {
                    from: self.degree(),
                    to: target.degree(),
                })?
        };
        let mut powers = Vec::with_capacity(self.degree() as usize);
        let mut cur = Fq::ONE;
        for _ in 0..self.degree() {
            powers.push(cur);
            cur = target.mul(&cur, &root);
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn fq_element(&self, value: Fq) -> FqElement {
        FqElement {
            field: self.clone(),
            value,
        }
    }

    pub fn format_element(&self, a: Fq) -> String {
        format_zpoly(&self.coords(a))
    }

    /// Parses an element written as a polynomial in `z` with integer coefficients.
    pub fn parse_element(&self, s: &str) -> Result<Fq, AlgebraError> {
        let coeffs = parse_zpoly(s, self.p())?;
        Ok(self.from_coords(&coeffs))
    }

    /// Short descriptor such as `GF(9,z^2+1)` or `GF(3)`.
    pub fn descriptor(&self) -> String {
        if self.degree() == 1 {
            format!("GF({})", self.p())
        } else {
            format!("GF({},{})", self.size(), format_zpoly(self.modulus()))
        }
    }

    pub fn parse_descriptor(s: &str) -> Result<Self, AlgebraError> {
        let body = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| AlgebraError::Invalid(format!("bad field descriptor {s}")))?;
        let mut parts = body.splitn(2, ',');
        let size: u64 = parts
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Invalid(format!("bad field size in {s}")))?;
        let (p, e) = prime_power(size)
            .ok_or_else(|| AlgebraError::Invalid(format!("{size} is not a prime power")))?;
        match parts.next() {
            None if e == 1 => FqField::prime(p),
            None => FqField::new(p, e),
            Some(m) => {
                let modulus = parse_zpoly(m, p)?;
                let f = FqField::with_modulus(p, modulus)?;
                if f.degree() != e {
                    return Err(AlgebraError::Invalid(format!(
                        "modulus degree does not match size in {s}"
                    )));
                }
                Ok(f)
            }
        }
    }
}

/// Splits q = p^e.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

fn slow_add(a: u32, b: u32, p: u32, degree: u32) -> u32 {
    let da = digits_of(a, p, degree as usize);
    let db = digits_of(b, p, degree as usize);
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    pack(&s, p)
}

fn build_log_tables(p: u32, degree: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let size = p.pow(degree);
    let d = degree as usize;
    let mul = |a: u32, b: u32| -> u32 {
        let prod = poly_mul(&digits_of(a, p, d), &digits_of(b, p, d), p);
        let mut r = poly_rem(&prod, modulus, p);
        r.resize(d, 0);
        pack(&r, p)
    };
    let order = size - 1;
    for g in 1..size {
        let mut exp = Vec::with_capacity(order as usize);
        let mut cur = 1u32;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && cur == 1 {
                ok = false;
                break;
            }
            exp.push(cur);
            cur = mul(cur, g);
        }
        if ok && cur == 1 {
            let mut log = vec![0u32; size as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            return (exp, log);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FqField {}

impl Field for FqField {
    type Element = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }

    fn one(&self) -> Fq {
        Fq::ONE
    }

    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let d = &self.inner;
        if d.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if d.degree == 1 {
            return Fq((a.0 + b.0) % d.p);
        }
        if let Some(t) = &d.add_table {
            return Fq(t[(a.0 * d.size + b.0) as usize]);
        }
        Fq(slow_add(a.0, b.0, d.p, d.degree))
    }

    fn neg(&self, a: &Fq) -> Fq {
        let d = &self.inner;
        if d.p == 2 {
            return *a;
        }
        let digits = digits_of(a.0, d.p, d.degree as usize);
        let n: Vec<u32> = digits.iter().map(|&x| (d.p - x) % d.p).collect();
        Fq(pack(&n, d.p))
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let d = &self.inner;
        let order = d.size - 1;
        let l = (d.log[a.0 as usize] as u64 + d.log[b.0 as usize] as u64) % order as u64;
        Fq(d.exp[l as usize])
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let d = &self.inner;
        let order = d.size - 1;
        let l = (order - d.log[a.0 as usize]) % order;
        Some(Fq(d.exp[l as usize]))
    }

    fn characteristic(&self) -> u32 {
        self.inner.p
    }

    fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }

    fn pow(&self, a: &Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let d = &self.inner;
        let order = (d.size - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % order)) % order;
        Fq(d.exp[l as usize])
    }
}

/// A fixed ring embedding F_{p^d} -> F_{p^e}.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FqField,
    target: FqField,
    /// Images of 1, z, z^2, ...
    powers: Vec<Fq>,
}

impl Embedding {
    pub fn source(&self) -> &FqField {
        &self.source
    }

    pub fn target(&self) -> &FqField {
        &self.target
    }

    pub fn apply(&self, a: Fq) -> Fq {
        let coords = self.source.coords(a);
        let mut acc = Fq::ZERO;
        for (c, &pw) in coords.iter().zip(&self.powers) {
            if *c != 0 {
                let term = self.target.mul(&self.target.from_int(*c as i64), &pw);
                acc = self.target.add(&acc, &term);
            }
        }
        acc
    }

    /// Preimage of `b`, if it lies in the image.
    pub fn preimage(&self, b: Fq) -> Option<Fq> {
        self.source.elements().find(|&a| self.apply(a) == b)
    }
}

/// A field element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElement {
    pub field: FqField,
    pub value: Fq,
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {}",
            self.field.format_element(self.value),
            self.field.descriptor()
        )
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod ({}, {})",
            self.field.format_element(self.value),
            self.field.p(),
            format_zpoly(self.field.modulus())
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FqElement {
    fn check(&self, other: &FqElement) -> Result<(), AlgebraError> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ))
        }
    }

    pub fn apply(&self, op: FqOp, other: &FqElement) -> Result<FqElement, AlgebraError> {
        self.check(other)?;
        let f = &self.field;
        let value = match op {
            FqOp::Add => f.add(&self.value, &other.value),
            FqOp::Sub => f.sub(&self.value, &other.value),
            FqOp::Mul => f.mul(&self.value, &other.value),
            FqOp::Div => {
                let inv = f.inv(&other.value).ok_or(AlgebraError::DivisionByZero)?;
                f.mul(&self.value, &inv)
            }
        };
        Ok(FqElement {
            field: f.clone(),
            value,
        })
    }

    pub fn inv(&self) -> Result<FqElement, AlgebraError> {
        let value = self
            .field
            .inv(&self.value)
            .ok_or(AlgebraError::DivisionByZero)?;
        Ok(FqElement {
            field: self.field.clone(),
            value,
        })
    }

    /// Negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FqElement, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(FqElement {
            field: self.field.clone(),
            value: self.field.pow(&base.value, e.unsigned_abs()),
        })
    }

    pub fn embed(&self, target: &FqField) -> Result<FqElement, AlgebraError> {
        let emb = self.field.embedding_into(target)?;
        Ok(FqElement {
            field: target.clone(),
            value: emb.apply(self.value),
        })
    }

    pub fn is_in_subfield(&self, d: u32) -> Result<bool, AlgebraError> {
        if d == 0 || !self.field.degree().is_multiple_of(d) {
            return Err(AlgebraError::Invalid(format!(
                "{d} does not divide the extension degree {}",
                self.field.degree()
            )));
        }
        Ok(self.field.is_in_subfield(self.value, d))
    }

    /// Parses `<poly in z> mod (<p>, <modulus in z>)`, or a bare integer with
    /// `mod <p>`.
    pub fn parse(s: &str) -> Result<FqElement, AlgebraError> {
        let (elem, field) = s
            .split_once("mod")
            .ok_or_else(|| AlgebraError::Invalid(format!("missing `mod` in {s}")))?;
        let field = field.trim();
        let field = if let Some(inner) = field.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (p, m) = inner
                .split_once(',')
                .ok_or_else(|| AlgebraError::Invalid(format!("expected (p, modulus) in {s}")))?;
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| AlgebraError::Invalid(format!("bad prime in {s}")))?;
            FqField::with_modulus(p, parse_zpoly(m, p)?)?
        } else {
            let p: u32 = field
                .parse()
                .map_err(|_| AlgebraError::Invalid(format!("bad prime in {s}")))?;
            FqField::prime(p)?
        };
        let value = field.parse_element(elem)?;
        Ok(FqElement { field, value })
    }
}

/// Formats a coefficient vector (lowest first) as a polynomial in `z`.
pub fn format_zpoly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "z".to_string(),
            (1, c) => format!("{c}*z"),
            (i, 1) => format!("z^{i}"),
            (i, c) => format!("{c}*z^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses sums of terms `c`, `z`, `c*z`, `z^k`, `c*z^k`, with optional `-`.
pub fn parse_zpoly(s: &str, p: u32) -> Result<Vec<u32>, AlgebraError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(AlgebraError::Invalid("empty polynomial".into()));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1i64, &rest[1..]),
            b'-' => (-1i64, &rest[1..]),
            _ => (1i64, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let bad = || AlgebraError::Invalid(format!("bad term `{term}`"));
        let (c, k) = if let Some(idx) = term.find('z') {
            let cpart = term[..idx].trim_end_matches('*');
            let c: i64 = if cpart.is_empty() {
                1
            } else {
                cpart.parse().map_err(|_| bad())?
            };
            let kpart = &term[idx + 1..];
            let k: usize = if kpart.is_empty() {
                1
            } else {
                kpart
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            (c, k)
        } else {
            (term.parse::<i64>().map_err(|_| bad())?, 0)
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] += sign * c;
    }
    let mut out: Vec<u32> = coeffs
        .iter()
        .map(|c| c.rem_euclid(p as i64) as u32)
        .collect();
    trim(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_addition() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(f2.add(&Fq::ONE, &Fq::ONE), Fq::ZERO);
    }

    #[test]
    fn z_squared_in_f9() {
        let f9 = FqField::with_modulus(3, vec![1, 0, 1]).unwrap();
        let z = f9.generator();
        assert_eq!(f9.mul(&z, &z), f9.from_int(2));
    }

    #[test]
    fn inverse_of_two_in_f3() {
        let f3 = FqField::prime(3).unwrap();
        assert_eq!(f3.inv(&Fq(2)), Some(Fq(2)));
        assert_eq!(f3.inv(&Fq::ZERO), None);
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert!(FqField::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn embedding_of_f4_generator_into_f16_is_a_root() {
        let f4 = FqField::new(2, 2).unwrap();
        let f16 = FqField::new(2, 4).unwrap();
        let emb = f4.embedding_into(&f16).unwrap();
        let r = emb.apply(f4.generator());
        // exhaustive search: roots of X^2+X+1 in F_16
        let roots: Vec<Fq> = f16
            .elements()
            .filter(|&x| f16.add(&f16.add(&f16.mul(&x, &x), &x), &Fq::ONE) == Fq::ZERO)
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(r, roots[0]);
        // ring homomorphism on all pairs
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(
                    emb.apply(f4.mul(&a, &b)),
                    f16.mul(&emb.apply(a), &emb.apply(b))
                );
                assert_eq!(
                    emb.apply(f4.add(&a, &b)),
                    f16.add(&emb.apply(a), &emb.apply(b))
                );
            }
        }
        assert!(f16.embedding_into(&f4).is_err());
    }

    #[test]
    fn prime_field_embeds_identically() {
        let f3 = FqField::prime(3).unwrap();
        let f9 = FqField::new(3, 2).unwrap();
        let emb = f3.embedding_into(&f9).unwrap();
        assert_eq!(emb.apply(Fq(2)), f9.from_int(2));
        let f2 = FqField::prime(2).unwrap();
        let f4 = FqField::new(2, 2).unwrap();
        assert_eq!(f2.embedding_into(&f4).unwrap().apply(Fq::ONE), Fq::ONE);
    }

    #[test]
    fn subfield_membership() {
        let f9 = FqField::with_modulus(3, vec![1, 0, 1]).unwrap();
        assert!(f9.is_in_subfield(f9.from_int(2), 1));
        assert!(!f9.is_in_subfield(f9.generator(), 1));
        for a in f9.elements() {
            assert!(f9.is_in_subfield(a, 2));
        }
    }

    #[test]
    fn checked_ops_report_errors() {
        let a = FqElement::parse("z^2+1 mod (3, z^2+1)").unwrap();
        assert_eq!(a.value, Fq::ZERO);
        let b = FqElement::parse("2 mod 3").unwrap();
        assert!(matches!(
            b.apply(FqOp::Add, &a),
            Err(AlgebraError::FieldMismatch(..))
        ));
        assert_eq!(
            b.apply(FqOp::Div, &FqElement::parse("0 mod 3").unwrap()),
            Err(AlgebraError::DivisionByZero)
        );
        assert_eq!(b.inv().unwrap().value, Fq(2));
        assert_eq!(b.pow(-1).unwrap().value, Fq(2));
    }

    #[test]
    fn descriptor_round_trip() {
        for f in [
            FqField::prime(5).unwrap(),
            FqField::new(3, 2).unwrap(),
            FqField::new(2, 3).unwrap(),
        ] {
            let back = FqField::parse_descriptor(&f.descriptor()).unwrap();
            assert_eq!(back, f);
        }
    }
}

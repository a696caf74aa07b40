//! Exact arithmetic in the tower `F_p ⊂ F_q = F_p[y]/(f) ⊂ F_{q^m} = F_q[z]/(g)`.
//!
//! Elements are canonical coefficient vectors (little-endian, constant term
//! first). Arithmetic is dispatched through context objects implementing
//! [`Field`] rather than through per-element operator overloads, so elements
//! stay plain data and never carry a back-reference to their tower.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size q^m for a tower. Element arithmetic stays in
/// `u64` comfortably below this bound.
pub const ELEMENT_CAP: u64 = 1 << 20;

/// Largest field size for operations that scan every element of F_{q^m}
/// (subspace union coverage, tau scans, order searches by enumeration).
pub const EXHAUSTIVE_CAP: u64 = 1 << 16;

/// Context object for a finite field: all arithmetic goes through it.
///
/// `from_index`/`index` fix the canonical element order used everywhere for
/// enumeration and tie-breaking: the integer value of the coefficient tuple
/// read little-endian (constant term least significant).
pub trait Field {
    type Elem: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug;

    fn size(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    // the context object is what constructs elements, so from_* takes &self
    #[allow(clippy::wrong_self_convention)]
    fn from_index(&self, idx: u64) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The prime field Z_p with elements represented as integers in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl Field for PrimeField {
    type Elem = u64;

    fn size(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
    fn from_index(&self, idx: u64) -> u64 {
        idx % self.p
    }
    fn index(&self, a: &u64) -> u64 {
        *a
    }
}

/// Element of `F_q = F_p[y]/(f)`: length-e coefficient vector over Z_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElem(pub(crate) Vec<u64>);

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// Element of `F_{q^m} = F_q[z]/(g)`: length-m coefficient vector over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqmElem(pub(crate) Vec<FqElem>);

impl FqmElem {
    pub fn coeffs(&self) -> &[FqElem] {
        &self.0
    }
}

/// View of the middle field F_q of a tower. Borrows only (p, f) so it can be
/// used while the tower itself is still under construction.
#[derive(Debug, Clone, Copy)]
pub struct Fq<'a> {
    p: u64,
    q: u64,
    f: &'a [u64],
}

impl<'a> Fq<'a> {
    fn e(&self) -> usize {
        self.f.len() - 1
    }
}

impl<'a> Field for Fq<'a> {
    type Elem = FqElem;

    fn size(&self) -> u64 {
        self.q
    }
    fn zero(&self) -> FqElem {
        FqElem(vec![0; self.e()])
    }
    fn one(&self) -> FqElem {
        let mut c = vec![0; self.e()];
        c[0] = 1 % self.p;
        FqElem(c)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let e = self.e();
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by monic f: y^e = -(f_0 + f_1 y + ... + f_{e-1} y^{e-1})
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..e {
                let t = c * self.f[j] % self.p;
                prod[i - e + j] = (prod[i - e + j] + self.p - t) % self.p;
            }
        }
        prod.truncate(e);
        FqElem(prod)
    }
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }
    fn from_index(&self, mut idx: u64) -> FqElem {
        let mut c = vec![0; self.e()];
        for ci in c.iter_mut() {
            *ci = idx % self.p;
            idx /= self.p;
        }
        FqElem(c)
    }
    fn index(&self, a: &FqElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }
}

/// View of the top field F_{q^m} of a tower.
#[derive(Debug, Clone, Copy)]
pub struct Fqm<'a> {
    tower: &'a FieldTower,
}

impl<'a> Field for Fqm<'a> {
    type Elem = FqmElem;

    fn size(&self) -> u64 {
        self.tower.qm
    }
    fn zero(&self) -> FqmElem {
        let fq = self.tower.fq();
        FqmElem(vec![fq.zero(); self.tower.m])
    }
    fn one(&self) -> FqmElem {
        let fq = self.tower.fq();
        let mut c = vec![fq.zero(); self.tower.m];
        c[0] = fq.one();
        FqmElem(c)
    }
    fn is_zero(&self, a: &FqmElem) -> bool {
        let fq = self.tower.fq();
        a.0.iter().all(|c| fq.is_zero(c))
    }
    fn add(&self, a: &FqmElem, b: &FqmElem) -> FqmElem {
        let fq = self.tower.fq();
        FqmElem(a.0.iter().zip(&b.0).map(|(x, y)| fq.add(x, y)).collect())
    }
    fn sub(&self, a: &FqmElem, b: &FqmElem) -> FqmElem {
        let fq = self.tower.fq();
        FqmElem(a.0.iter().zip(&b.0).map(|(x, y)| fq.sub(x, y)).collect())
    }
    fn neg(&self, a: &FqmElem) -> FqmElem {
        let fq = self.tower.fq();
        FqmElem(a.0.iter().map(|x| fq.neg(x)).collect())
    }
    fn mul(&self, a: &FqmElem, b: &FqmElem) -> FqmElem {
        let fq = self.tower.fq();
        let m = self.tower.m;
        let mut prod = vec![fq.zero(); 2 * m - 1];
        for (i, x) in a.0.iter().enumerate() {
            if fq.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = fq.add(&prod[i + j], &fq.mul(x, y));
            }
        }
        for i in (m..2 * m - 1).rev() {
            if fq.is_zero(&prod[i]) {
                continue;
            }
            let c = std::mem::replace(&mut prod[i], fq.zero());
            for j in 0..m {
                let t = fq.mul(&c, &self.tower.g[j]);
                prod[i - m + j] = fq.sub(&prod[i - m + j], &t);
            }
        }
        prod.truncate(m);
        FqmElem(prod)
    }
    fn inv(&self, a: &FqmElem) -> Result<FqmElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.tower.qm - 2))
    }
    fn from_index(&self, mut idx: u64) -> FqmElem {
        let fq = self.tower.fq();
        let mut c = Vec::with_capacity(self.tower.m);
        for _ in 0..self.tower.m {
            c.push(fq.from_index(idx % self.tower.q));
            idx /= self.tower.q;
        }
        FqmElem(c)
    }
    fn index(&self, a: &FqmElem) -> u64 {
        let fq = self.tower.fq();
        a.0.iter()
            .rev()
            .fold(0, |acc, c| acc * self.tower.q + fq.index(c))
    }
}

/// The chain F_p ⊂ F_q ⊂ F_{q^m} with explicit moduli. Immutable after
/// construction; all derived operations are pure and thread-safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTower {
    pub p: u64,
    pub e: usize,
    pub m: usize,
    /// q = p^e
    pub q: u64,
    /// q^m
    pub qm: u64,
    /// Monic degree-e modulus of F_q over Z_p, little-endian, length e+1.
    /// For e = 1 this is the polynomial y itself.
    f: Vec<u64>,
    /// Monic degree-m modulus of F_{q^m} over F_q, little-endian, length m+1.
    g: Vec<FqElem>,
}

pub type TowerRef = Arc<FieldTower>;

impl FieldTower {
    /// Builds the tower with canonical moduli: the lexicographically smallest
    /// monic irreducibles (smallest little-endian coefficient value) at each
    /// level. Deterministic across runs.
    pub fn new(p: u64, e: usize, m: usize) -> Result<FieldTower> {
        check_sizes(p, e, m)?;
        let pf = PrimeField { p };
        let f = canonical_irreducible(&pf, e)?;
        let q = p.pow(e as u32);
        let fq = Fq { p, q, f: &f };
        let g = canonical_irreducible(&fq, m)?;
        let qm = q.pow(m as u32);
        Ok(FieldTower { p, e, m, q, qm, f, g })
    }

    /// Builds a tower from explicit moduli, validating monicity, degree,
    /// canonicity of the coefficients and irreducibility. Serialized data
    /// embeds its moduli, so loading never depends on the canonical choice.
    pub fn with_moduli(p: u64, e: usize, m: usize, f: Vec<u64>, g_raw: Vec<Vec<u64>>) -> Result<FieldTower> {
        check_sizes(p, e, m)?;
        if f.len() != e + 1 || f[e] != 1 {
            return Err(Error::InvalidParameter(format!(
                "f must be monic of degree {e}"
            )));
        }
        if f.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("f has a coefficient >= p".into()));
        }
        let pf = PrimeField { p };
        if e > 1 && !is_irreducible(&pf, &f) {
            return Err(Error::InvalidParameter("f is reducible over Z_p".into()));
        }
        let q = p.pow(e as u32);
        let fq = Fq { p, q, f: &f };
        if g_raw.len() != m + 1 {
            return Err(Error::InvalidParameter(format!(
                "g must be monic of degree {m}"
            )));
        }
        let mut g = Vec::with_capacity(m + 1);
        for c in &g_raw {
            if c.len() != e || c.iter().any(|&x| x >= p) {
                return Err(Error::InvalidParameter(
                    "g has a coefficient outside F_q canonical form".into(),
                ));
            }
            g.push(FqElem(c.clone()));
        }
        if g[m] != fq.one() {
            return Err(Error::InvalidParameter(format!(
                "g must be monic of degree {m}"
            )));
        }
        if m > 1 && !is_irreducible(&fq, &g) {
            return Err(Error::InvalidParameter("g is reducible over F_q".into()));
        }
        let qm = q.pow(m as u32);
        Ok(FieldTower { p, e, m, q, qm, f, g })
    }

    pub fn fq(&self) -> Fq<'_> {
        Fq { p: self.p, q: self.q, f: &self.f }
    }

    pub fn fqm(&self) -> Fqm<'_> {
        Fqm { tower: self }
    }

    pub fn f_coeffs(&self) -> &[u64] {
        &self.f
    }

    pub fn g_coeffs(&self) -> &[FqElem] {
        &self.g
    }

    /// Lifts an F_q element into F_{q^m} (constant coefficient).
    pub fn embed(&self, a: &FqElem) -> FqmElem {
        let fq = self.fq();
        let mut c = vec![fq.zero(); self.m];
        c[0] = a.clone();
        FqmElem(c)
    }

    /// The F_q element equal to `a`, if `a` lies in the embedded base field.
    pub fn as_base(&self, a: &FqmElem) -> Option<FqElem> {
        let fq = self.fq();
        if a.0[1..].iter().all(|c| fq.is_zero(c)) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    /// a ↦ a^{q^i}. Restricted to F_q this is the identity; frobenius(·, m)
    /// is the identity on all of F_{q^m}.
    pub fn frobenius(&self, a: &FqmElem, i: usize) -> FqmElem {
        let k = self.fqm();
        let mut x = a.clone();
        for _ in 0..(i % self.m) {
            x = k.pow(&x, self.q);
        }
        x
    }

    /// N_{F_{q^m}/F_q}(a) = a · a^q ⋯ a^{q^{m-1}}, always an element of F_q.
    pub fn norm(&self, a: &FqmElem) -> FqElem {
        let k = self.fqm();
        let mut acc = a.clone();
        let mut x = a.clone();
        for _ in 1..self.m {
            x = k.pow(&x, self.q);
            acc = k.mul(&acc, &x);
        }
        self.as_base(&acc)
            .expect("norm must land in the base field")
    }

    /// Multiplicative order of a nonzero element; None for zero.
    pub fn multiplicative_order(&self, a: &FqmElem) -> Option<u64> {
        let k = self.fqm();
        if k.is_zero(a) {
            return None;
        }
        let group = self.qm - 1;
        if group == 0 {
            return Some(1);
        }
        let mut ord = group;
        for (prime, _) in factorize(group) {
            while ord.is_multiple_of(prime) && k.pow(a, ord / prime) == k.one() {
                ord /= prime;
            }
        }
        Some(ord)
    }

    /// First element in canonical order whose multiplicative order is
    /// q^m − 1. For the degenerate two-element field the unit group is
    /// trivial and the element 1 (of order 1) is returned.
    pub fn primitive_element(&self) -> FqmElem {
        let k = self.fqm();
        if self.qm == 2 {
            return k.one();
        }
        let group = self.qm - 1;
        let primes: Vec<u64> = factorize(group).into_iter().map(|(p, _)| p).collect();
        for idx in 1..self.qm {
            let a = k.from_index(idx);
            if primes.iter().all(|&l| k.pow(&a, group / l) != k.one()) {
                return a;
            }
        }
        unreachable!("every finite field has a primitive element")
    }
}

fn check_sizes(p: u64, e: usize, m: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 || m == 0 {
        return Err(Error::InvalidParameter("extension degrees must be >= 1".into()));
    }
    let size = (p as u128).checked_pow((e * m) as u32);
    match size {
        Some(s) if s <= ELEMENT_CAP as u128 => Ok(()),
        s => Err(Error::SizeCapExceeded {
            size: s.unwrap_or(u128::MAX),
            cap: ELEMENT_CAP,
        }),
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

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// --- polynomial helpers over a generic field (little-endian, dense) ---

fn poly_is_zero<F: Field>(field: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|c| field.is_zero(c))
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = b.len() - 1;
    let mut r: Vec<F::Elem> = a.to_vec();
    while r.len() > db {
        let lead = r.pop().unwrap();
        if field.is_zero(&lead) {
            continue;
        }
        let shift = r.len() - db;
        for j in 0..db {
            let t = field.mul(&lead, &b[j]);
            r[shift + j] = field.sub(&r[shift + j], &t);
        }
    }
    r
}

fn poly_eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, c);
    }
    acc
}

/// Monic degree-d polynomial whose non-leading coefficients are the base-|F|
/// digits of `idx` (canonical element order, constant term least significant).
fn monic_from_index<F: Field>(field: &F, d: usize, mut idx: u64) -> Vec<F::Elem> {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(field.from_index(idx % field.size()));
        idx /= field.size();
    }
    c.push(field.one());
    c
}

/// Irreducibility by exhaustive factor search: a monic polynomial of degree
/// d >= 1 is irreducible iff no monic polynomial of degree 1..=d/2 divides it.
/// Degree-1 candidates are handled as a root scan.
pub fn is_irreducible<F: Field>(field: &F, poly: &[F::Elem]) -> bool {
    let d = poly.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for idx in 0..field.size() {
        let x = field.from_index(idx);
        if field.is_zero(&poly_eval(field, poly, &x)) {
            return false;
        }
    }
    for deg in 2..=d / 2 {
        let count = (field.size() as u128).pow(deg as u32) as u64;
        for idx in 0..count {
            let div = monic_from_index(field, deg, idx);
            if poly_is_zero(field, &poly_rem(field, poly, &div)) {
                return false;
            }
        }
    }
    true
}

/// The canonical irreducible: the monic irreducible of degree d over `field`
/// with the smallest little-endian coefficient value. For d = 1 this is the
/// polynomial x itself, which is the degenerate modulus used when a tower
/// level adds no extension.
pub fn canonical_irreducible<F: Field>(field: &F, d: usize) -> Result<Vec<F::Elem>> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    let space = (field.size() as u128).pow(d as u32);
    if space > ELEMENT_CAP as u128 {
        return Err(Error::SizeCapExceeded {
            size: space,
            cap: ELEMENT_CAP,
        });
    }
    for idx in 0..space as u64 {
        let cand = monic_from_index(field, d, idx);
        if is_irreducible(field, &cand) {
            return Ok(cand);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Number of monic irreducible cubics over a field of the given size,
/// (b^3 − b)/3. Cross-checked against exhaustive search in the tests.
pub fn count_irreducible_cubics(base_size: u64) -> u64 {
    (base_size * base_size * base_size - base_size) / 3
}

//! Table-driven arithmetic for `F_p` and `F_{p^k}`.
//!
//! An element is stored as its index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coefficients of its polynomial representative in the
//! generator `w` (a root of the modulus). Index order coincides with
//! enumeration order: `0`, `1`, then lexicographic on `(c_{k-1}, .., c_0)`.

use std::fmt;
use std::sync::Arc;

use super::{format_poly, is_prime, parse_poly_expr, Field, FieldDescriptor};
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 256;

const NONE: u32 = u32::MAX;

/// An element of a finite field, identified by its enumeration index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

impl Fq {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite field `F_q`, `q = p^k <= 256`, backed by precomputed tables.
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

struct Tables {
    desc: FieldDescriptor,
    p: u32,
    k: u32,
    q: u32,
    /// Coefficient vectors, constant term first, indexed by element.
    digits: Vec<Vec<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    /// Enumeration-first square root, `NONE` for non-squares.
    sqrt: Vec<u32>,
    /// Enumeration-first `x` with `x^2 + x = t` (characteristic 2 only).
    as_root: Vec<u32>,
}

impl FiniteField {
    pub fn new(desc: &FieldDescriptor) -> Result<Self> {
        let (p, k, modulus) = match desc {
            FieldDescriptor::Prime { p } => (*p, 1, vec![0, 1]),
            FieldDescriptor::Extension { p, k, modulus } => (*p, *k, modulus.clone()),
            other => {
                return Err(Error::InvalidField(format!("{other} is not a finite field")));
            }
        };
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k < 1 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("F{p}^{k} exceeds the supported order {MAX_FIELD_ORDER}"))
        })? as u32;
        if modulus.len() != k as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus must have degree {k} over F{p}")));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "{} is reducible over F{p}",
                format_poly(&modulus, "x")
            )));
        }
        Ok(FiniteField(Arc::new(Tables::build(desc.clone(), p, k, q, &modulus))))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(&FieldDescriptor::Prime { p })
    }

    /// The field of order `q` with the default modulus.
    pub fn gf(q: u64) -> Result<Self> {
        Self::new(&FieldDescriptor::gf(q)?)
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// The generator `w` of an extension field (`None` for prime fields).
    pub fn generator(&self) -> Option<Fq> {
        (self.0.k > 1).then_some(Fq(self.0.p))
    }

    pub fn coefficients(&self, a: Fq) -> &[u32] {
        &self.0.digits[a.index()]
    }

    /// Enumeration-first solution of `x^2 + x = t`, characteristic 2 only.
    pub fn artin_schreier_root(&self, t: Fq) -> Option<Fq> {
        let r = *self.0.as_root.get(t.index())?;
        (r != NONE).then_some(Fq(r))
    }

    #[inline]
    fn idx(&self, a: Fq, b: Fq) -> usize {
        a.index() * self.0.q as usize + b.index()
    }
}

impl Tables {
    fn build(desc: FieldDescriptor, p: u32, k: u32, q: u32, modulus: &[u32]) -> Tables {
        let n = q as usize;
        let digits: Vec<Vec<u32>> = (0..q)
            .map(|mut i| {
                let mut d = vec![0; k as usize];
                for c in d.iter_mut() {
                    *c = i % p;
                    i /= p;
                }
                d
            })
            .collect();
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u32> =
                    digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = encode(&sum);
                mul[a * n + b] = encode(&mul_mod(&digits[a], &digits[b], modulus, p));
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![NONE; n];
        let mut sqrt = vec![NONE; n];
        let mut as_root = vec![NONE; if p == 2 { n } else { 0 }];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u32;
                }
            }
            let sq = mul[a * n + a] as usize;
            if sqrt[sq] == NONE {
                sqrt[sq] = a as u32;
            }
            if p == 2 {
                let t = add[sq * n + a] as usize;
                if as_root[t] == NONE {
                    as_root[t] = a as u32;
                }
            }
        }
        Tables { desc, p, k, q, digits, add, mul, neg, inv, sqrt, as_root }
    }
}

impl Field for FiniteField {
    type Elem = Fq;

    fn descriptor(&self) -> FieldDescriptor {
        self.0.desc.clone()
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.0.add[self.idx(*a, *b)])
    }

    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        Fq(self.0.neg[a.index()])
    }

    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.0.mul[self.idx(*a, *b)])
    }

    fn inv(&self, a: &Fq) -> Result<Fq> {
        match self.0.inv[a.index()] {
            NONE => Err(Error::DivisionByZero),
            r => Ok(Fq(r)),
        }
    }

    fn contains(&self, a: &Fq) -> bool {
        a.0 < self.0.q
    }

    fn elements(&self) -> Result<Vec<Fq>> {
        Ok((0..self.0.q).map(Fq).collect())
    }

    fn square_root(&self, a: &Fq) -> Option<Fq> {
        match self.0.sqrt[a.index()] {
            NONE => None,
            r => Some(Fq(r)),
        }
    }

    /// Euler's criterion in odd characteristic; every element is a square in
    /// characteristic 2.
    fn is_square(&self, a: &Fq) -> bool {
        if self.0.p == 2 || a.0 == 0 {
            return true;
        }
        self.pow(a, (self.0.q as u64 - 1) / 2) == Fq(1)
    }

    fn format_elem(&self, a: &Fq) -> String {
        if self.0.k == 1 {
            a.0.to_string()
        } else {
            format_poly(self.coefficients(*a), "w")
        }
    }

    /// Accepts integers (`-3`), polynomials in `w` or `ω` (`w^2+1`) and
    /// quotients of those (`1/2`).
    fn parse_elem(&self, s: &str) -> Result<Fq> {
        if let Some((n, d)) = s.split_once('/') {
            let n = self.parse_elem(n)?;
            let d = self.parse_elem(d)?;
            return self.div(&n, &d);
        }
        let coeffs = parse_poly_expr(s, &['w', 'ω'])?;
        let p = self.0.p as i64;
        let mut acc = Fq(0);
        let mut power = Fq(1);
        let w = self.generator();
        for (deg, c) in coeffs.iter().enumerate() {
            if deg > 0 {
                let w = w.ok_or_else(|| {
                    Error::Parse(format!("`{s}` uses a generator but {} is prime", self.0.desc))
                })?;
                power = self.mul(&power, &w);
            }
            let c = self.from_i64(c.rem_euclid(p));
            acc = self.add(&acc, &self.mul(&c, &power));
        }
        Ok(acc)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.0.desc)
    }
}

/// First monic irreducible polynomial of degree `k` over `F_p`, in
/// enumeration order of its lower coefficients.
pub(crate) fn default_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    let q = (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::InvalidField(format!("F{p}^{k} exceeds the supported order")))?;
    for mut i in 0..q {
        let mut poly = vec![0u32; k as usize + 1];
        for c in poly.iter_mut().take(k as usize) {
            *c = (i % p as u64) as u32;
            i /= p as u64;
        }
        poly[k as usize] = 1;
        if is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    Err(Error::InvalidField(format!("no irreducible polynomial of degree {k} over F{p}")))
}

/// Exhaustive search for a monic factor of degree `1..=k/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for mut i in 0..count {
            let mut g = vec![0u32; d + 1];
            for c in g.iter_mut().take(d) {
                *c = (i % p as u64) as u32;
                i /= p as u64;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by the monic polynomial `g` over `F_p`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let t = (lead as u64 * gc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k, 0);
    r
}

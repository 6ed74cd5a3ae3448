//! Coefficient fields with exact arithmetic.
//!
//! Every algebra in this crate is defined over one of four kinds of field:
//! prime fields `F_p`, extension fields `F_{p^k}` given by an irreducible
//! modulus, the rationals `Q`, and the rational function field `F2(X)`.
//! All of them implement [`Field`], which hands out plain element values and
//! performs arithmetic through the field handle.

mod expr;
mod finite;
mod gf2poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use finite::{FiniteField, Fq, MAX_FIELD_ORDER};
pub use gf2poly::Gf2Poly;
pub use ratfunc::{RatFn, RationalFunctionsF2};
pub use rational::{square_class, squarefree_part, Rationals, SQUAREFREE_BOUND};

pub(crate) use expr::parse_poly_expr;

/// A field with exact arithmetic on canonical element values.
///
/// Elements carry no reference to their field; the handle is passed to
/// every operation. `contains` is the membership check used by the public
/// entry points of the algebra modules.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;

    /// `p` for finite fields and `F2(X)`, `0` for `Q`.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn contains(&self, a: &Self::Elem) -> bool;

    /// All elements in enumeration order: `0`, `1`, then the rest in
    /// lexicographic order of their canonical payload.
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    /// Some `s` with `s² = a`, if one exists.
    fn square_root(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.square_root(a).is_some()
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Nonzero elements in enumeration order.
    fn units(&self) -> Result<Vec<Self::Elem>> {
        let zero = self.zero();
        Ok(self.elements()?.into_iter().filter(|e| *e != zero).collect())
    }
}

/// Which field to build, in the textual syntax `F5`, `F2^2/x^2+x+1`, `Q`,
/// `F2(X)`.
///
/// `Fq` with `q` a proper prime power (e.g. `F4`) is accepted as shorthand
/// for the extension whose modulus is the first monic irreducible polynomial
/// of degree `k` in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime {
        p: u32,
    },
    /// `modulus` holds coefficients constant term first; it is monic of
    /// degree `k`.
    Extension {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
    },
    Rationals,
    RationalFunctionsF2,
}

impl FieldDescriptor {
    /// The finite field of order `q` with the default modulus.
    pub fn gf(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Ok(FieldDescriptor::Prime { p });
        }
        let modulus = finite::default_modulus(p, k)?;
        Ok(FieldDescriptor::Extension { p, k, modulus })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDescriptor::Prime { .. } | FieldDescriptor::Extension { .. })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime { p } => write!(f, "F{p}"),
            FieldDescriptor::Extension { p, k, modulus } => {
                write!(f, "F{p}^{k}/{}", format_poly(modulus, "x"))
            }
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::RationalFunctionsF2 => write!(f, "F2(X)"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "Q" => return Ok(FieldDescriptor::Rationals),
            "F2(X)" => return Ok(FieldDescriptor::RationalFunctionsF2),
            _ => {}
        }
        let body = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("unrecognised field `{s}`")))?;
        let (base, modulus) = match body.split_once('/') {
            Some((base, m)) => (base, Some(m)),
            None => (body, None),
        };
        let parse_int = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}` in field `{s}`")))
        };
        match base.split_once('^') {
            None => {
                if modulus.is_some() {
                    return Err(Error::Parse(format!("modulus given without degree in `{s}`")));
                }
                let n = parse_int(base)?;
                if is_prime(n) {
                    Ok(FieldDescriptor::Prime { p: n as u32 })
                } else {
                    FieldDescriptor::gf(n)
                }
            }
            Some((p, k)) => {
                let p = parse_int(p)?;
                let k = parse_int(k)?;
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if k < 1 {
                    return Err(Error::InvalidField("extension degree must be at least 1".into()));
                }
                if k > 64 || p.checked_pow(k as u32).is_none() {
                    return Err(Error::InvalidField(format!("F{p}^{k} is too large")));
                }
                let modulus = match modulus {
                    None => {
                        if k == 1 {
                            return Ok(FieldDescriptor::Prime { p: p as u32 });
                        }
                        finite::default_modulus(p as u32, k as u32)?
                    }
                    Some(m) => {
                        let coeffs = parse_poly_expr(m, &['x'])?;
                        let reduced: Vec<u32> = coeffs
                            .iter()
                            .map(|c| c.rem_euclid(p as i64) as u32)
                            .collect();
                        trim_poly(reduced)
                    }
                };
                Ok(FieldDescriptor::Extension { p: p as u32, k: k as u32, modulus })
            }
        }
    }
}

/// A runtime-selected field, used where the field comes from user input.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Finite(FiniteField),
    Rationals(Rationals),
    RationalFunctions(RationalFunctionsF2),
}

impl AnyField {
    pub fn new(desc: &FieldDescriptor) -> Result<Self> {
        Ok(match desc {
            FieldDescriptor::Rationals => AnyField::Rationals(Rationals::new()),
            FieldDescriptor::RationalFunctionsF2 => {
                AnyField::RationalFunctions(RationalFunctionsF2::new())
            }
            finite => AnyField::Finite(FiniteField::new(finite)?),
        })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyField::Finite(f) => f.descriptor(),
            AnyField::Rationals(f) => f.descriptor(),
            AnyField::RationalFunctions(f) => f.descriptor(),
        }
    }
}

impl FromStr for AnyField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnyField::new(&s.parse()?)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn trim_poly(mut c: Vec<u32>) -> Vec<u32> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Renders a coefficient vector (constant term first) as `x^2+2x+1`.
pub(crate) fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
        let term = match deg {
            0 => coeff,
            1 => format!("{coeff}{var}"),
            _ => format!("{coeff}{var}^{deg}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

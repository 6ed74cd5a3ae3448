//! Dense polynomials over `F2`, one bit per coefficient.

use std::cmp::Ordering;
use std::fmt;

/// A polynomial in `F2[X]`. Bit `i` of the limb vector is the coefficient of
/// `X^i`; the vector carries no trailing zero limbs, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly::from_bits(1)
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Gf2Poly::from_bits(2)
    }

    pub fn monomial(deg: usize) -> Self {
        let mut limbs = vec![0; deg / 64 + 1];
        limbs[deg / 64] = 1 << (deg % 64);
        Gf2Poly { limbs }
    }

    /// Polynomial whose coefficient vector is the binary expansion of `bits`.
    pub fn from_bits(bits: u64) -> Self {
        Gf2Poly { limbs: vec![bits] }.normalized()
    }

    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut p = Gf2Poly { limbs: vec![0; coeffs.len() / 64 + 1] };
        for (i, &c) in coeffs.iter().enumerate() {
            if c {
                p.limbs[i / 64] |= 1 << (i % 64);
            }
        }
        p.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|l| l >> (i % 64) & 1 == 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        Gf2Poly { limbs }.normalized()
    }

    /// `self ^= other * X^shift`
    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let (word, bit) = (shift / 64, shift % 64);
        let need = other.limbs.len() + word + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + word] ^= l << bit;
            if bit > 0 {
                self.limbs[i + word + 1] ^= l >> (64 - bit);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Gf2Poly { limbs: Vec::new() };
        let Some(deg) = self.degree() else {
            return acc;
        };
        for i in 0..=deg {
            if self.coeff(i) {
                acc.xor_shifted(other, i);
            }
        }
        acc.normalized()
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut quot = Gf2Poly::zero();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            rem.xor_shifted(divisor, shift);
            rem = rem.normalized();
            quot.xor_shifted(&Gf2Poly::one(), shift);
        }
        (quot.normalized(), rem)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Square root when every odd-degree coefficient vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        let (even, odd) = self.split_even_odd();
        odd.is_zero().then_some(even)
    }

    /// `(e, o)` with `self = e(X)^2 + X * o(X)^2`.
    pub fn split_even_odd(&self) -> (Self, Self) {
        let Some(deg) = self.degree() else {
            return (Gf2Poly::zero(), Gf2Poly::zero());
        };
        let mut even = vec![false; deg / 2 + 1];
        let mut odd = vec![false; deg / 2 + 1];
        for i in 0..=deg {
            if self.coeff(i) {
                if i % 2 == 0 {
                    even[i / 2] = true;
                } else {
                    odd[i / 2] = true;
                }
            }
        }
        (Gf2Poly::from_coeffs(&even), Gf2Poly::from_coeffs(&odd))
    }

    /// True iff some term has odd degree.
    pub fn has_odd_term(&self) -> bool {
        self.limbs.iter().any(|l| l & 0xAAAA_AAAA_AAAA_AAAA != 0)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let Some(deg) = self.degree() else {
            return "0".into();
        };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("X"))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("X"))
    }
}

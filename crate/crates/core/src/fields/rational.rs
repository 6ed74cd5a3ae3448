use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

/// Default bound on `|n|` for [`squarefree_part`]; larger inputs are
/// reported as undecided rather than factored.
pub const SQUAREFREE_BOUND: u64 = 1 << 63;

/// The field `Q` of rational numbers, elements kept in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Rationals {
    pub fn new() -> Self {
        Rationals
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn contains(&self, _a: &BigRational) -> bool {
        true
    }

    fn elements(&self) -> Result<Vec<BigRational>> {
        Err(Error::InfiniteField("enumerating elements"))
    }

    /// Exact: numerator and denominator of a reduced fraction must both be
    /// perfect squares.
    fn square_root(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = exact_sqrt(a.numer())?;
        let d = exact_sqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        s.parse::<BigRational>()
            .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Signed squarefree part of `n` by trial division, or `None` when `|n|`
/// exceeds [`SQUAREFREE_BOUND`].
///
/// `squarefree_part(-12) == Some(-3)`; `squarefree_part(0) == Some(0)`.
pub fn squarefree_part(n: &BigInt) -> Option<BigInt> {
    let magnitude = n.magnitude().to_u64()?;
    if magnitude > SQUAREFREE_BOUND {
        return None;
    }
    if magnitude == 0 {
        return Some(BigInt::zero());
    }
    let mut rest = magnitude as u128;
    let mut part: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= rest {
        let mut odd = false;
        while rest % d == 0 {
            rest /= d;
            odd = !odd;
        }
        if odd {
            part *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    part *= rest;
    let sign = if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
    Some(BigInt::from_biguint(sign, part.into()))
}

/// Squarefree class of a nonzero rational: the squarefree part of
/// `numerator * denominator`. Two nonzero rationals differ by a square
/// factor iff their classes agree.
pub fn square_class(t: &BigRational) -> Option<BigInt> {
    let (n, d) = (t.numer(), t.denom());
    let g = n.gcd(d);
    debug_assert!(g.is_one() || n.is_zero());
    squarefree_part(&(n * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        Rationals.parse_elem(s).unwrap()
    }

    #[test]
    fn arithmetic_reduces() {
        let f = Rationals;
        assert_eq!(f.mul(&q("2/3"), &q("9/4")), q("3/2"));
        assert_eq!(f.format_elem(&q("6/4")), "3/2");
        assert_eq!(f.format_elem(&q("4/-2")), "-2");
        assert!(f.inv(&q("0")).is_err());
        assert!(f.parse_elem("1/0").is_err());
        assert_eq!(f.characteristic(), 0);
        assert!(f.elements().is_err());
    }

    #[test]
    fn rational_squares() {
        let f = Rationals;
        assert_eq!(f.square_root(&q("4/9")), Some(q("2/3")));
        assert_eq!(f.square_root(&q("2")), None);
        assert_eq!(f.square_root(&q("-4")), None);
        assert_eq!(f.square_root(&q("0")), Some(q("0")));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(-12)), Some(BigInt::from(-3)));
        assert_eq!(squarefree_part(&BigInt::from(72)), Some(BigInt::from(2)));
        assert_eq!(squarefree_part(&BigInt::from(97)), Some(BigInt::from(97)));
        let huge: BigInt = BigInt::from(1u128 << 70);
        assert_eq!(squarefree_part(&huge), None);
        assert_eq!(square_class(&q("8/3")), Some(BigInt::from(6)));
    }
}

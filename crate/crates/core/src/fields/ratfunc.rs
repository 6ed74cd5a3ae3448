use super::gf2poly::Gf2Poly;
use super::{parse_poly_expr, Field, FieldDescriptor};
use crate::error::{Error, Result};

/// An element of `F2(X)`: a fraction of coprime polynomials with nonzero
/// denominator. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Gf2Poly,
    den: Gf2Poly,
}

impl RatFn {
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn::from_poly(Gf2Poly::zero()));
        }
        let g = num.gcd(&den);
        Ok(RatFn { num: num.div_rem(&g).0, den: den.div_rem(&g).0 })
    }

    pub fn from_poly(num: Gf2Poly) -> Self {
        RatFn { num, den: Gf2Poly::one() }
    }

    pub fn numer(&self) -> &Gf2Poly {
        &self.num
    }

    pub fn denom(&self) -> &Gf2Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `(A, B)` with `self = A^2 + X * B^2`; `{1, X}` is a basis of `F2(X)`
    /// over the subfield of squares.
    pub fn split_square_basis(&self) -> (RatFn, RatFn) {
        let (even, odd) = self.num.mul(&self.den).split_even_odd();
        let a = RatFn::new(even, self.den.clone()).expect("nonzero denominator");
        let b = RatFn::new(odd, self.den.clone()).expect("nonzero denominator");
        (a, b)
    }
}

/// The rational function field `F2(X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalFunctionsF2;

impl RationalFunctionsF2 {
    pub fn new() -> Self {
        RationalFunctionsF2
    }

    /// The indeterminate `X` as a field element.
    pub fn x(&self) -> RatFn {
        RatFn::from_poly(Gf2Poly::x())
    }

    pub fn poly(&self, p: Gf2Poly) -> RatFn {
        RatFn::from_poly(p)
    }

    fn parse_poly(&self, s: &str) -> Result<Gf2Poly> {
        let mut s = s.trim();
        while let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            s = inner.trim();
        }
        let coeffs = parse_poly_expr(s, &['X', 'x'])?;
        let bits: Vec<bool> = coeffs.iter().map(|c| c.rem_euclid(2) == 1).collect();
        Ok(Gf2Poly::from_coeffs(&bits))
    }
}

impl Field for RationalFunctionsF2 {
    type Elem = RatFn;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::RationalFunctionsF2
    }

    fn characteristic(&self) -> u64 {
        2
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> RatFn {
        RatFn::from_poly(Gf2Poly::zero())
    }

    fn one(&self) -> RatFn {
        RatFn::from_poly(Gf2Poly::one())
    }

    fn from_i64(&self, n: i64) -> RatFn {
        if n.rem_euclid(2) == 1 {
            self.one()
        } else {
            self.zero()
        }
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.den == b.den {
            return RatFn::new(a.num.add(&b.num), a.den.clone()).expect("nonzero denominator");
        }
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        RatFn::new(num, a.den.mul(&b.den)).expect("nonzero denominator")
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        a.clone()
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        RatFn::new(a.num.mul(&b.num), a.den.mul(&b.den)).expect("nonzero denominator")
    }

    fn inv(&self, a: &RatFn) -> Result<RatFn> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num: a.den.clone(), den: a.num.clone() })
    }

    fn contains(&self, _a: &RatFn) -> bool {
        true
    }

    fn elements(&self) -> Result<Vec<RatFn>> {
        Err(Error::InfiniteField("enumerating elements"))
    }

    fn square_root(&self, a: &RatFn) -> Option<RatFn> {
        Some(RatFn { num: a.num.sqrt()?, den: a.den.sqrt()? })
    }

    fn format_elem(&self, a: &RatFn) -> String {
        if a.den.is_one() {
            return a.num.to_string();
        }
        let wrap = |p: &Gf2Poly| {
            let s = p.to_string();
            if s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&a.num), wrap(&a.den))
    }

    /// Accepts `X^3+X`, `(X^2+1)/(X+1)`, `1/X`.
    fn parse_elem(&self, s: &str) -> Result<RatFn> {
        match s.split_once('/') {
            Some((n, d)) => RatFn::new(self.parse_poly(n)?, self.parse_poly(d)?),
            None => Ok(RatFn::from_poly(self.parse_poly(s)?)),
        }
    }
}

//! Two-dimensional algebras given by structure matrices.
//!
//! A [`StructureMatrix`] lists the products `e²`, `f²`, `ef`, `fe` of a basis
//! `{e, f}` as rows of coordinates. Straight algebras have a normal form
//! `S(p, q, a, b, c, d)` with `e² = f`, `f² = pe + qf`, `ef = ae + bf` and
//! `fe = ce + df`, held in [`SParams`].

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::iso::{self, Transform};

/// The element `u·e + v·f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement<E> {
    pub u: E,
    pub v: E,
}

impl<E> AlgebraElement<E> {
    pub fn new(u: E, v: E) -> Self {
        AlgebraElement { u, v }
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn e<F: Field<Elem = E>>(field: &F) -> Self {
        AlgebraElement::new(field.one(), field.zero())
    }

    pub fn f<F: Field<Elem = E>>(field: &F) -> Self {
        AlgebraElement::new(field.zero(), field.one())
    }

    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        AlgebraElement::new(field.zero(), field.zero())
    }
}

/// Index of each product in [`StructureMatrix::rows`].
pub const E_SQUARED: usize = 0;
pub const F_SQUARED: usize = 1;
pub const EF: usize = 2;
pub const FE: usize = 3;

/// Structure constants: rows `e², f², ef, fe`, columns (coefficient of `e`,
/// coefficient of `f`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureMatrix<E> {
    pub rows: [[E; 2]; 4],
}

impl<E: Clone + PartialEq> StructureMatrix<E> {
    pub fn new(rows: [[E; 2]; 4]) -> Self {
        StructureMatrix { rows }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        let z = field.zero();
        StructureMatrix::new([[z.clone(), z.clone()], [z.clone(), z.clone()], [
            z.clone(),
            z.clone(),
        ], [z.clone(), z]])
    }

    /// Builds a matrix from small integers embedded in the field.
    pub fn from_ints<F: Field<Elem = E>>(field: &F, rows: [[i64; 2]; 4]) -> Self {
        StructureMatrix::new(rows.map(|r| r.map(|n| field.from_i64(n))))
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.rows.iter().flatten()
    }

    /// The straight-form parameters, when `e² = f`.
    pub fn as_sparams<F: Field<Elem = E>>(&self, field: &F) -> Option<SParams<E>> {
        let [e2, f2, ef, fe] = &self.rows;
        (field.is_zero(&e2[0]) && e2[1] == field.one()).then(|| SParams {
            p: f2[0].clone(),
            q: f2[1].clone(),
            a: ef[0].clone(),
            b: ef[1].clone(),
            c: fe[0].clone(),
            d: fe[1].clone(),
        })
    }
}

/// The straight algebra `S(p, q, a, b, c, d)`.
///
/// The derived ordering compares `(p, q, a, b, c, d)` lexicographically,
/// which for finite fields is enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SParams<E> {
    pub p: E,
    pub q: E,
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone + PartialEq> SParams<E> {
    pub fn new(p: E, q: E, a: E, b: E, c: E, d: E) -> Self {
        SParams { p, q, a, b, c, d }
    }

    pub fn from_ints<F: Field<Elem = E>>(field: &F, v: [i64; 6]) -> Self {
        let [p, q, a, b, c, d] = v.map(|n| field.from_i64(n));
        SParams { p, q, a, b, c, d }
    }

    pub fn to_array(&self) -> [E; 6] {
        [
            self.p.clone(),
            self.q.clone(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    pub fn to_structure_matrix<F: Field<Elem = E>>(&self, field: &F) -> StructureMatrix<E> {
        StructureMatrix::new([
            [field.zero(), field.one()],
            [self.p.clone(), self.q.clone()],
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ])
    }
}

pub(crate) fn check_matrix<F: Field>(field: &F, a: &StructureMatrix<F::Elem>) -> Result<()> {
    if a.entries().all(|x| field.contains(x)) {
        Ok(())
    } else {
        Err(Error::FieldMismatch(field.descriptor().to_string()))
    }
}

fn check_element<F: Field>(field: &F, x: &AlgebraElement<F::Elem>) -> Result<()> {
    if field.contains(&x.u) && field.contains(&x.v) {
        Ok(())
    } else {
        Err(Error::FieldMismatch(field.descriptor().to_string()))
    }
}

pub(crate) fn product<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    x: &AlgebraElement<F::Elem>,
    y: &AlgebraElement<F::Elem>,
) -> AlgebraElement<F::Elem> {
    let weights = [
        field.mul(&x.u, &y.u),
        field.mul(&x.v, &y.v),
        field.mul(&x.u, &y.v),
        field.mul(&x.v, &y.u),
    ];
    let mut u = field.zero();
    let mut v = field.zero();
    for (w, row) in weights.iter().zip(&a.rows) {
        if field.is_zero(w) {
            continue;
        }
        u = field.add(&u, &field.mul(w, &row[0]));
        v = field.add(&v, &field.mul(w, &row[1]));
    }
    AlgebraElement { u, v }
}

/// Bilinear product `x·y` in the algebra with structure matrix `a`.
pub fn multiply<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    x: &AlgebraElement<F::Elem>,
    y: &AlgebraElement<F::Elem>,
) -> Result<AlgebraElement<F::Elem>> {
    check_matrix(field, a)?;
    check_element(field, x)?;
    check_element(field, y)?;
    Ok(product(field, a, x, y))
}

/// All algebra elements `u·e + v·f`, `u` major, in field enumeration order.
pub(crate) fn all_elements<F: Field>(field: &F) -> Result<Vec<AlgebraElement<F::Elem>>> {
    let elems = field.elements()?;
    Ok(elems
        .iter()
        .flat_map(|u| elems.iter().map(move |v| AlgebraElement::new(u.clone(), v.clone())))
        .collect())
}

/// Checks `x²y² = (xy)²` for every pair of elements. Finite fields only.
pub fn is_endo_commutative_definitional<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
) -> Result<bool> {
    if !field.is_finite() {
        return Err(Error::InfiniteField("the definitional endo-commutativity check"));
    }
    check_matrix(field, a)?;
    let elems = all_elements(field)?;
    let squares: Vec<_> = elems.iter().map(|x| product(field, a, x, x)).collect();
    for (x, x2) in elems.iter().zip(&squares) {
        for (y, y2) in elems.iter().zip(&squares) {
            let xy = product(field, a, x, y);
            if product(field, a, x2, y2) != product(field, a, &xy, &xy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed-form endo-commutativity test for `S(p, q, a, b, c, d)`: the five
/// polynomial identities below must all hold.
///
/// ```text
/// pq + pc     = pb² + a²b + abc
/// p(c - a)    = (b - d)(p(b + d) - q(a + c))
/// p(d - b)    = a² - c²
/// q² + pd     = a² + qb² + ab² + abd
/// q(d - b)    = ab - cd
/// ```
pub fn is_endo_commutative_straight<F: Field>(field: &F, s: &SParams<F::Elem>) -> bool {
    let f = field;
    let SParams { p, q, a, b, c, d } = s;
    let b2 = f.square(b);
    let a2 = f.square(a);
    let c2 = f.square(c);

    let lhs1 = f.add(&f.mul(p, q), &f.mul(p, c));
    let ab = f.mul(a, b);
    let rhs1 = f.add(&f.add(&f.mul(p, &b2), &f.mul(&ab, a)), &f.mul(&ab, c));
    if lhs1 != rhs1 {
        return false;
    }

    let lhs2 = f.mul(p, &f.sub(c, a));
    let inner = f.sub(&f.mul(p, &f.add(b, d)), &f.mul(q, &f.add(a, c)));
    if lhs2 != f.mul(&f.sub(b, d), &inner) {
        return false;
    }

    if f.mul(p, &f.sub(d, b)) != f.sub(&a2, &c2) {
        return false;
    }

    let lhs4 = f.add(&f.square(q), &f.mul(p, d));
    let rhs4 = f.add(&f.add(&a2, &f.mul(q, &b2)), &f.add(&f.mul(a, &b2), &f.mul(&ab, d)));
    if lhs4 != rhs4 {
        return false;
    }

    f.mul(q, &f.sub(d, b)) == f.sub(&ab, &f.mul(c, d))
}

fn independent<F: Field>(field: &F, x: &AlgebraElement<F::Elem>, y: &AlgebraElement<F::Elem>) -> bool {
    !field.is_zero(&field.sub(&field.mul(&x.u, &y.v), &field.mul(&x.v, &y.u)))
}

/// True iff `x` and `x²` are linearly dependent for every element `x`.
pub fn is_curled<F: Field>(field: &F, a: &StructureMatrix<F::Elem>) -> Result<bool> {
    if !field.is_finite() {
        return Err(Error::InfiniteField("the curled check"));
    }
    check_matrix(field, a)?;
    Ok(all_elements(field)?
        .iter()
        .all(|x| !independent(field, x, &product(field, a, x, x))))
}

/// Rewrites a straight algebra in the basis `{x, x²}` for the first element
/// `x` (in enumeration order) with `x, x²` independent. Returns the
/// parameters together with `X` such that `transform(a, X)` is their
/// structure matrix, or `None` when the algebra is curled.
pub fn to_straight_form<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
) -> Result<Option<(SParams<F::Elem>, Transform<F::Elem>)>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField("straight-form reduction"));
    }
    check_matrix(field, a)?;
    for x in all_elements(field)? {
        if let Some(found) = iso::straight_form_at(field, a, &x) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Rank of the 4×2 structure matrix.
pub fn rank<F: Field>(field: &F, a: &StructureMatrix<F::Elem>) -> usize {
    if a.entries().all(|x| field.is_zero(x)) {
        return 0;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let [p, q] = &a.rows[i];
            let [r, s] = &a.rows[j];
            if !field.is_zero(&field.sub(&field.mul(p, s), &field.mul(q, r))) {
                return 2;
            }
        }
    }
    1
}

/// Rank-2 types of endo-commutative straight algebras, determined by which
/// of `p`, `a`, `c` vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraType {
    /// `p = a = 0`, `c ≠ 0`
    I001,
    /// `p = c = 0`, `a ≠ 0`
    I010,
    /// `a = c = 0`, `p ≠ 0`
    I100,
    /// `p = 0`, `a, c ≠ 0`
    II1,
    /// `a = 0`, `p, c ≠ 0`
    II2,
    /// `c = 0`, `p, a ≠ 0`
    II3,
    /// `p, a, c ≠ 0`
    III,
    /// `p = a = c = 0`
    NotRank2,
}

impl AlgebraType {
    pub const ALL: [AlgebraType; 8] = [
        AlgebraType::I001,
        AlgebraType::I010,
        AlgebraType::I100,
        AlgebraType::II1,
        AlgebraType::II2,
        AlgebraType::II3,
        AlgebraType::III,
        AlgebraType::NotRank2,
    ];

    /// The coarse family name: `I`, `II1`, `II2`, `II3`, `III`.
    pub fn family(self) -> &'static str {
        match self {
            AlgebraType::I001 | AlgebraType::I010 | AlgebraType::I100 => "I",
            AlgebraType::II1 => "II1",
            AlgebraType::II2 => "II2",
            AlgebraType::II3 => "II3",
            AlgebraType::III => "III",
            AlgebraType::NotRank2 => "not-rank-2",
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraType::I001 => "I.001",
            AlgebraType::I010 => "I.010",
            AlgebraType::I100 => "I.100",
            other => other.family(),
        };
        f.write_str(s)
    }
}

/// Type of an endo-commutative straight algebra. Non-EC input is rejected.
pub fn type_of<F: Field>(field: &F, s: &SParams<F::Elem>) -> Result<AlgebraType> {
    if !is_endo_commutative_straight(field, s) {
        return Err(Error::NotEndoCommutative);
    }
    let nz = |x: &F::Elem| !field.is_zero(x);
    Ok(match (nz(&s.p), nz(&s.a), nz(&s.c)) {
        (false, false, false) => AlgebraType::NotRank2,
        (false, false, true) => AlgebraType::I001,
        (false, true, false) => AlgebraType::I010,
        (true, false, false) => AlgebraType::I100,
        (false, true, true) => AlgebraType::II1,
        (true, false, true) => AlgebraType::II2,
        (true, true, false) => AlgebraType::II3,
        (true, true, true) => AlgebraType::III,
    })
}

/// Subclass `1..=4` of a type-II₁ algebra, split on the vanishing of
/// `b`, `q`, `d`.
pub fn ii1_subclass<F: Field>(field: &F, s: &SParams<F::Elem>) -> Result<u8> {
    let ty = type_of(field, s)?;
    if ty != AlgebraType::II1 {
        return Err(Error::WrongType { expected: "II1".into(), found: ty.to_string() });
    }
    Ok(subclass_unchecked(field, s))
}

pub(crate) fn subclass_unchecked<F: Field>(field: &F, s: &SParams<F::Elem>) -> u8 {
    if field.is_zero(&s.b) {
        1
    } else if field.is_zero(&s.q) {
        2
    } else if field.is_zero(&s.d) {
        3
    } else {
        4
    }
}

/// Renders `u·e + v·f` as `te+f`, `-e+2f`, `(w+1)e`.
pub fn format_combination<F: Field>(field: &F, u: &F::Elem, v: &F::Elem) -> String {
    let term = |c: &F::Elem, basis: &str| -> Option<String> {
        if field.is_zero(c) {
            return None;
        }
        if *c == field.one() {
            return Some(basis.to_string());
        }
        if field.characteristic() != 2 && *c == field.neg(&field.one()) {
            return Some(format!("-{basis}"));
        }
        let s = field.format_elem(c);
        let plain = s.chars().skip(1).all(|ch| ch.is_ascii_alphanumeric())
            && s.chars().all(|ch| ch != '/');
        Some(if plain { format!("{s}{basis}") } else { format!("({s}){basis}") })
    };
    match (term(u, "e"), term(v, "f")) {
        (None, None) => "0".into(),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) if b.starts_with('-') => format!("{a}{b}"),
        (Some(a), Some(b)) => format!("{a}+{b}"),
    }
}

/// Multiplication table in the 2×2 layout `[[e², ef], [fe, f²]]`.
pub fn format_table<F: Field>(field: &F, a: &StructureMatrix<F::Elem>) -> String {
    let cell = |i: usize| format_combination(field, &a.rows[i][0], &a.rows[i][1]);
    let (e2, ef, fe, f2) = (cell(E_SQUARED), cell(EF), cell(FE), cell(F_SQUARED));
    let left = e2.len().max(fe.len());
    let right = ef.len().max(f2.len());
    format!("( {e2:<left$}  {ef:<right$} )\n( {fe:<left$}  {f2:<right$} )")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, Fq, Rationals};

    fn f(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn multiply_reproduces_rows() {
        let k = f(5);
        let a = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]).to_structure_matrix(&k);
        let (e, ff) = (AlgebraElement::e(&k), AlgebraElement::f(&k));
        assert_eq!(multiply(&k, &a, &e, &ff).unwrap(), e);
        assert_eq!(multiply(&k, &a, &e, &e).unwrap(), ff);
        assert_eq!(multiply(&k, &a, &ff, &e).unwrap(), AlgebraElement::new(Fq(4), Fq(2)));
        assert_eq!(multiply(&k, &a, &ff, &ff).unwrap(), ff);
        let zero = AlgebraElement::zero(&k);
        assert_eq!(multiply(&k, &a, &zero, &ff).unwrap(), zero);
    }

    #[test]
    fn multiply_over_f4() {
        let k = FiniteField::gf(4).unwrap();
        let t = k.generator().unwrap();
        let one = k.one();
        let z = k.zero();
        let s = SParams::new(z, t, t, z, t, one);
        let a = s.to_structure_matrix(&k);
        let fe = multiply(&k, &a, &AlgebraElement::f(&k), &AlgebraElement::e(&k)).unwrap();
        assert_eq!(fe, AlgebraElement::new(t, one));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let k = f(5);
        let a = StructureMatrix::new([[Fq(7), Fq(0)], [Fq(0), Fq(0)], [Fq(0), Fq(0)], [
            Fq(0),
            Fq(0),
        ]]);
        let e = AlgebraElement::e(&k);
        assert!(matches!(multiply(&k, &a, &e, &e), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn endo_commutativity_examples() {
        let k3 = f(3);
        let s = SParams::from_ints(&k3, [0, 1, 1, 0, -1, 2]);
        assert!(is_endo_commutative_definitional(&k3, &s.to_structure_matrix(&k3)).unwrap());
        assert!(is_endo_commutative_definitional(&k3, &StructureMatrix::zero(&k3)).unwrap());
        let bad = SParams::from_ints(&k3, [0, 0, 1, 1, 1, 0]);
        assert!(!is_endo_commutative_straight(&k3, &bad));
        assert!(!is_endo_commutative_definitional(&k3, &bad.to_structure_matrix(&k3)).unwrap());

        let q = Rationals;
        assert!(is_endo_commutative_straight(&q, &SParams::from_ints(&q, [0, 1, 1, 0, -1, 2])));
        assert!(is_endo_commutative_straight(&q, &SParams::from_ints(&q, [0; 6])));
        assert!(is_endo_commutative_definitional(&q, &StructureMatrix::zero(&q)).is_err());
        let k5 = f(5);
        assert!(is_endo_commutative_straight(&k5, &SParams::from_ints(&k5, [0, -1, 1, 1, -1, 0])));
    }

    #[test]
    fn curled_and_straight() {
        let k3 = f(3);
        let s = SParams::from_ints(&k3, [0, 1, 1, 0, -1, 2]).to_structure_matrix(&k3);
        assert!(!is_curled(&k3, &s).unwrap());
        assert!(is_curled(&k3, &StructureMatrix::zero(&k3)).unwrap());
        // e² = e, f² = f, ef = fe = 0: x = e + 2f has x² = e + f, so straight.
        let idem = StructureMatrix::from_ints(&k3, [[1, 0], [0, 1], [0, 0], [0, 0]]);
        assert!(!is_curled(&k3, &idem).unwrap());
        // e² = e, ef = e, fe = f, f² = f: every x satisfies x² = u·x.
        let curled = StructureMatrix::from_ints(&k3, [[1, 0], [0, 1], [1, 0], [0, 1]]);
        assert!(is_curled(&k3, &curled).unwrap());
    }

    #[test]
    fn straight_form_round_trip() {
        let k3 = f(3);
        let a = StructureMatrix::from_ints(&k3, [[1, 0], [1, 1], [0, 0], [0, 0]]);
        let (s, x) = to_straight_form(&k3, &a).unwrap().unwrap();
        assert_eq!(iso::transform(&k3, &a, &x).unwrap(), s.to_structure_matrix(&k3));

        let already = SParams::from_ints(&k3, [0, 1, 1, 0, -1, 2]);
        let (s, x) = to_straight_form(&k3, &already.to_structure_matrix(&k3)).unwrap().unwrap();
        assert_eq!(s, already);
        assert_eq!(x, Transform::identity(&k3));

        assert_eq!(to_straight_form(&k3, &StructureMatrix::zero(&k3)).unwrap(), None);
    }

    #[test]
    fn ranks() {
        let k = f(5);
        let s = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]).to_structure_matrix(&k);
        assert_eq!(rank(&k, &s), 2);
        assert_eq!(rank(&k, &StructureMatrix::zero(&k)), 0);
        let one_row = StructureMatrix::from_ints(&k, [[0, 1], [0, 0], [0, 0], [0, 0]]);
        assert_eq!(rank(&k, &one_row), 1);
    }

    #[test]
    fn types_and_subclasses() {
        let k = f(5);
        let s = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]);
        assert_eq!(type_of(&k, &s).unwrap(), AlgebraType::II1);
        assert_eq!(ii1_subclass(&k, &s).unwrap(), 1);
        let s3 = SParams::from_ints(&k, [0, -1, 1, 1, -1, 0]);
        assert_eq!(ii1_subclass(&k, &s3).unwrap(), 3);
        assert_eq!(type_of(&k, &SParams::from_ints(&k, [0; 6])).unwrap(), AlgebraType::NotRank2);

        let k2 = f(2);
        let not_ec = SParams::from_ints(&k2, [0, 1, 1, 1, 1, 1]);
        assert_eq!(ii1_subclass(&k2, &not_ec), Err(Error::NotEndoCommutative));
    }

    #[test]
    fn types_i001_and_i010_are_empty() {
        // p = 0 with exactly one of a, c zero contradicts p(d - b) = a² - c².
        let k = f(5);
        let elems = k.elements().unwrap();
        for q in &elems {
            for b in &elems {
                for d in &elems {
                    for x in &elems[1..] {
                        let s = SParams::new(Fq(0), *q, Fq(0), *b, *x, *d);
                        assert!(!is_endo_commutative_straight(&k, &s));
                        let s = SParams::new(Fq(0), *q, *x, *b, Fq(0), *d);
                        assert!(!is_endo_commutative_straight(&k, &s));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_render_in_two_by_two_layout() {
        let q = Rationals;
        let s = SParams::from_ints(&q, [0, 1, 1, 0, -1, 2]).to_structure_matrix(&q);
        assert_eq!(format_table(&q, &s), "( f      e )\n( -e+2f  f )");
        let k4 = FiniteField::gf(4).unwrap();
        let t = k4.generator().unwrap();
        let s = SParams::new(k4.zero(), t, t, k4.zero(), t, k4.one()).to_structure_matrix(&k4);
        assert_eq!(format_table(&k4, &s), "( f     we )\n( we+f  wf )");
        let half = q.parse_elem("-3/2").unwrap();
        assert_eq!(format_combination(&q, &half, &q.one()), "(-3/2)e+f");
    }
}

//! Changes of basis and isomorphism search.
//!
//! A [`Transform`] `X = ((x, y), (z, w))` acts on structure matrices by
//! `A ↦ X̃⁻¹ · A · X`, where `X̃` is the 4×4 [lift](lift) of `X`. When the
//! rows of `X⁻¹` are taken as a new basis, the result is the structure
//! matrix in that basis.

use rayon::prelude::*;

use crate::algebra::{self, check_matrix, AlgebraElement, SParams, StructureMatrix};
use crate::error::{Error, Result};
use crate::fields::Field;

/// The 2×2 matrix `((x, y), (z, w))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transform<E> {
    pub x: E,
    pub y: E,
    pub z: E,
    pub w: E,
}

impl<E: Clone> Transform<E> {
    pub fn new(x: E, y: E, z: E, w: E) -> Self {
        Transform { x, y, z, w }
    }

    pub fn from_ints<F: Field<Elem = E>>(field: &F, m: [[i64; 2]; 2]) -> Self {
        let [[x, y], [z, w]] = m.map(|r| r.map(|n| field.from_i64(n)));
        Transform { x, y, z, w }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F) -> Self {
        Transform::new(field.one(), field.zero(), field.zero(), field.one())
    }

    pub fn to_rows(&self) -> [[E; 2]; 2] {
        [[self.x.clone(), self.y.clone()], [self.z.clone(), self.w.clone()]]
    }

    pub fn det<F: Field<Elem = E>>(&self, field: &F) -> E {
        field.sub(&field.mul(&self.x, &self.w), &field.mul(&self.y, &self.z))
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        !field.is_zero(&self.det(field))
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Result<Self> {
        let d = field.inv(&self.det(field)).map_err(|_| Error::SingularTransform)?;
        Ok(Transform {
            x: field.mul(&self.w, &d),
            y: field.neg(&field.mul(&self.y, &d)),
            z: field.neg(&field.mul(&self.z, &d)),
            w: field.mul(&self.x, &d),
        })
    }

    /// Matrix product `self · other`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let dot = |a: &E, b: &E, c: &E, d: &E| field.add(&field.mul(a, b), &field.mul(c, d));
        Transform {
            x: dot(&self.x, &other.x, &self.y, &other.z),
            y: dot(&self.x, &other.y, &self.y, &other.w),
            z: dot(&self.z, &other.x, &self.w, &other.z),
            w: dot(&self.z, &other.y, &self.w, &other.w),
        }
    }

    fn check<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        if [&self.x, &self.y, &self.z, &self.w].into_iter().all(|e| field.contains(e)) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(field.descriptor().to_string()))
        }
    }
}

/// The 4×4 matrix induced by a [`Transform`] on the products `e², f², ef, fe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedTransform<E> {
    pub rows: [[E; 4]; 4],
}

impl<E: Clone> LiftedTransform<E> {
    /// Matrix product `self · other`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4).fold(field.zero(), |acc, k| {
                    field.add(&acc, &field.mul(&self.rows[i][k], &other.rows[k][j]))
                })
            })
        });
        LiftedTransform { rows }
    }
}

pub(crate) fn lift_unchecked<F: Field>(field: &F, t: &Transform<F::Elem>) -> LiftedTransform<F::Elem> {
    let m = |a: &F::Elem, b: &F::Elem| field.mul(a, b);
    let Transform { x, y, z, w } = t;
    let (xy, zw) = (m(x, y), m(z, w));
    let (xz, yw, xw, yz) = (m(x, z), m(y, w), m(x, w), m(y, z));
    LiftedTransform {
        rows: [
            [m(x, x), m(y, y), xy.clone(), xy],
            [m(z, z), m(w, w), zw.clone(), zw],
            [xz.clone(), yw.clone(), xw.clone(), yz.clone()],
            [xz, yw, yz, xw],
        ],
    }
}

/// The lift `X̃` of `X = ((x, y), (z, w))`:
///
/// ```text
/// ( x²  y²  xy  xy )
/// ( z²  w²  zw  zw )
/// ( xz  yw  xw  yz )
/// ( xz  yw  yz  xw )
/// ```
pub fn lift<F: Field>(field: &F, t: &Transform<F::Elem>) -> Result<LiftedTransform<F::Elem>> {
    t.check(field)?;
    Ok(lift_unchecked(field, t))
}

type Rows<E> = [[E; 2]; 4];

fn lift_times<F: Field>(field: &F, l: &LiftedTransform<F::Elem>, a: &Rows<F::Elem>) -> Rows<F::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..4).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&l.rows[i][k], &a[k][j])))
        })
    })
}

fn times_transform<F: Field>(field: &F, a: &Rows<F::Elem>, t: &Transform<F::Elem>) -> Rows<F::Elem> {
    a.clone().map(|[r0, r1]| {
        [
            field.add(&field.mul(&r0, &t.x), &field.mul(&r1, &t.z)),
            field.add(&field.mul(&r0, &t.y), &field.mul(&r1, &t.w)),
        ]
    })
}

/// Solves `L · M = rhs` for `M` by Gaussian elimination; `None` if `L` is
/// singular.
fn solve4<F: Field>(field: &F, l: &LiftedTransform<F::Elem>, rhs: Rows<F::Elem>) -> Option<Rows<F::Elem>> {
    let mut lhs = l.rows.clone();
    let mut rhs = rhs;
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !field.is_zero(&lhs[r][col]))?;
        lhs.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = field.inv(&lhs[col][col]).ok()?;
        for k in 0..4 {
            lhs[col][k] = field.mul(&lhs[col][k], &inv);
        }
        for k in 0..2 {
            rhs[col][k] = field.mul(&rhs[col][k], &inv);
        }
        for r in 0..4 {
            if r == col || field.is_zero(&lhs[r][col]) {
                continue;
            }
            let factor = lhs[r][col].clone();
            for k in 0..4 {
                let t = field.mul(&factor, &lhs[col][k]);
                lhs[r][k] = field.sub(&lhs[r][k], &t);
            }
            for k in 0..2 {
                let t = field.mul(&factor, &rhs[col][k]);
                rhs[r][k] = field.sub(&rhs[r][k], &t);
            }
        }
    }
    Some(rhs)
}

/// `X̃⁻¹ · A · X`.
pub fn transform<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    t: &Transform<F::Elem>,
) -> Result<StructureMatrix<F::Elem>> {
    check_matrix(field, a)?;
    t.check(field)?;
    if !t.is_invertible(field) {
        return Err(Error::SingularTransform);
    }
    let ax = times_transform(field, &a.rows, t);
    let rows = solve4(field, &lift_unchecked(field, t), ax).ok_or(Error::SingularTransform)?;
    Ok(StructureMatrix::new(rows))
}

/// Checks the eight polynomial equations saying that the invertible
/// `X = ((x, y), (z, w))` carries `S(p, q, a, b, c, d)` to
/// `S(p', q', a', b', c', d')`:
///
/// ```text
/// p'y² + (a'+c')xy               = z
/// x² + q'y² + (b'+d')xy          = w
/// p'w² + (a'+c')zw               = px + qz
/// z² + q'w² + (b'+d')zw          = py + qw
/// p'yw + a'xw + c'yz             = ax + bz
/// xz + q'yw + b'xw + d'yz        = ay + bw
/// p'yw + a'yz + c'xw             = cx + dz
/// xz + q'yw + b'yz + d'xw        = cy + dw
/// ```
///
/// A singular `X` is never a witness and yields `false`.
pub fn check_iso_system<F: Field>(
    field: &F,
    s: &SParams<F::Elem>,
    s2: &SParams<F::Elem>,
    t: &Transform<F::Elem>,
) -> bool {
    if !t.is_invertible(field) {
        return false;
    }
    let f = field;
    let m = |a: &F::Elem, b: &F::Elem| f.mul(a, b);
    let add = |a: &F::Elem, b: &F::Elem| f.add(a, b);
    let Transform { x, y, z, w } = t;
    let SParams { p, q, a, b, c, d } = s;
    let SParams { p: p2, q: q2, a: a2, b: b2, c: c2, d: d2 } = s2;
    let (xy, zw, yw, xw, yz, xz) = (m(x, y), m(z, w), m(y, w), m(x, w), m(y, z), m(x, z));
    let ac2 = add(a2, c2);
    let bd2 = add(b2, d2);
    let lin = |u: &F::Elem, s: &F::Elem, v: &F::Elem, t: &F::Elem| add(&m(u, s), &m(v, t));

    let eqs = [
        (add(&m(p2, &f.square(y)), &m(&ac2, &xy)), z.clone()),
        (add(&add(&f.square(x), &m(q2, &f.square(y))), &m(&bd2, &xy)), w.clone()),
        (add(&m(p2, &f.square(w)), &m(&ac2, &zw)), lin(p, x, q, z)),
        (add(&add(&f.square(z), &m(q2, &f.square(w))), &m(&bd2, &zw)), lin(p, y, q, w)),
        (add(&add(&m(p2, &yw), &m(a2, &xw)), &m(c2, &yz)), lin(a, x, b, z)),
        (add(&add(&xz, &m(q2, &yw)), &add(&m(b2, &xw), &m(d2, &yz))), lin(a, y, b, w)),
        (add(&add(&m(p2, &yw), &m(a2, &yz)), &m(c2, &xw)), lin(c, x, d, z)),
        (add(&add(&xz, &m(q2, &yw)), &add(&m(b2, &yz), &m(d2, &xw))), lin(c, y, d, w)),
    ];
    eqs.iter().all(|(l, r)| l == r)
}

/// True iff `X` is invertible and `X̃ · b = a · X`, i.e. `transform(a, X) = b`.
pub fn is_witness<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    b: &StructureMatrix<F::Elem>,
    t: &Transform<F::Elem>,
) -> bool {
    t.is_invertible(field)
        && lift_times(field, &lift_unchecked(field, t), &b.rows) == times_transform(field, &a.rows, t)
}

fn require_finite<F: Field>(field: &F, what: &'static str) -> Result<Vec<F::Elem>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField(what));
    }
    field.elements()
}

/// First witness `X` (lexicographic in `(x, y, z, w)` over enumeration
/// order) with `transform(a, X) = b`, or `None` if the algebras are not
/// isomorphic. Finite fields only.
///
/// When `e²` has a nonzero `f`-coefficient in `a`, the first rows of
/// `X̃ · b = a · X` determine `z, w` from `x, y`, so only `q²` candidates
/// are tried. The result is the same as [`are_isomorphic_exhaustive`].
pub fn are_isomorphic<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    b: &StructureMatrix<F::Elem>,
) -> Result<Option<Transform<F::Elem>>> {
    let elems = require_finite(field, "isomorphism search")?;
    check_matrix(field, a)?;
    check_matrix(field, b)?;
    let [r1, r2] = &a.rows[0];
    if field.is_zero(r2) {
        return Ok(exhaustive(field, &elems, a, b));
    }
    let r2_inv = field.inv(r2)?;
    let [b0, b1, b2, b3] = &b.rows;
    let b23 = [field.add(&b2[0], &b3[0]), field.add(&b2[1], &b3[1])];
    Ok(elems.par_iter().find_map_first(|x| {
        let x2 = field.square(x);
        elems.iter().find_map(|y| {
            let y2 = field.square(y);
            let xy = field.mul(x, y);
            let u: [F::Elem; 2] = std::array::from_fn(|j| {
                field.add(
                    &field.add(&field.mul(&x2, &b0[j]), &field.mul(&y2, &b1[j])),
                    &field.mul(&xy, &b23[j]),
                )
            });
            let z = field.mul(&field.sub(&u[0], &field.mul(r1, x)), &r2_inv);
            let w = field.mul(&field.sub(&u[1], &field.mul(r1, y)), &r2_inv);
            let t = Transform::new(x.clone(), y.clone(), z, w);
            is_witness(field, a, b, &t).then_some(t)
        })
    }))
}

/// Reference search over all `q⁴` matrices, without the shortcut used by
/// [`are_isomorphic`].
pub fn are_isomorphic_exhaustive<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    b: &StructureMatrix<F::Elem>,
) -> Result<Option<Transform<F::Elem>>> {
    let elems = require_finite(field, "isomorphism search")?;
    check_matrix(field, a)?;
    check_matrix(field, b)?;
    Ok(exhaustive(field, &elems, a, b))
}

fn exhaustive<F: Field>(
    field: &F,
    elems: &[F::Elem],
    a: &StructureMatrix<F::Elem>,
    b: &StructureMatrix<F::Elem>,
) -> Option<Transform<F::Elem>> {
    elems.par_iter().find_map_first(|x| {
        for y in elems {
            for z in elems {
                for w in elems {
                    let t = Transform::new(x.clone(), y.clone(), z.clone(), w.clone());
                    if is_witness(field, a, b, &t) {
                        return Some(t);
                    }
                }
            }
        }
        None
    })
}

/// All invertible 2×2 matrices in lexicographic `(x, y, z, w)` order.
pub fn general_linear_group<F: Field>(field: &F) -> Result<Vec<Transform<F::Elem>>> {
    let elems = require_finite(field, "enumerating GL2")?;
    let mut out = Vec::new();
    for x in &elems {
        for y in &elems {
            for z in &elems {
                for w in &elems {
                    let t = Transform::new(x.clone(), y.clone(), z.clone(), w.clone());
                    if t.is_invertible(field) {
                        out.push(t);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// An algebra rewritten in a basis `{g, g²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightForm<E> {
    pub generator: AlgebraElement<E>,
    pub params: SParams<E>,
    /// `X` with `transform(a, X)` equal to the structure matrix of `params`.
    pub transform: Transform<E>,
}

/// Straight form in the basis `{g, g²}`, if `g` and `g²` are independent.
pub(crate) fn straight_form_at<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
    g: &AlgebraElement<F::Elem>,
) -> Option<(SParams<F::Elem>, Transform<F::Elem>)> {
    let g2 = algebra::product(field, a, g, g);
    let basis = Transform::new(g.u.clone(), g.v.clone(), g2.u, g2.v);
    let x = basis.inverse(field).ok()?;
    // transform(a, B⁻¹) = B̃ · a · B⁻¹ since the lift is multiplicative.
    let rows = times_transform(field, &lift_times(field, &lift_unchecked(field, &basis), &a.rows), &x);
    let s = StructureMatrix::new(rows).as_sparams(field).expect("e² = f in the basis {g, g²}");
    Some((s, x))
}

/// Every straight form of `a`, one per generator `g` in enumeration order.
/// These are exactly the straight algebras isomorphic to `a`, with
/// repetitions.
pub fn straight_forms<F: Field>(
    field: &F,
    a: &StructureMatrix<F::Elem>,
) -> Result<Vec<StraightForm<F::Elem>>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField("enumerating straight forms"));
    }
    check_matrix(field, a)?;
    Ok(algebra::all_elements(field)?
        .into_iter()
        .filter_map(|g| {
            straight_form_at(field, a, &g)
                .map(|(params, transform)| StraightForm { generator: g, params, transform })
        })
        .collect())
}

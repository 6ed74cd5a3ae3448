//! Equivalence relations on `K*` and their representative systems.
//!
//! | relation | field | `t ~ t'` iff |
//! |---|---|---|
//! | `sim1` | any | `t/t'` is a square |
//! | `sim2` | char 2 | `t + t' = x² + x` for some `x` |
//! | `sim3` | char 2 | `t'x² + y² + t = 0` for some `x ≠ 0`, `y` |
//! | `sim4` | char 2 | `1/t + 1/t' = x² + x` for some `x` |
//! | `sim5` | char ≠ 2 | `t'(4+t) / (t(4+t'))` is a square, `t, t' ≠ -4` |

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{Field, FiniteField, Gf2Poly, RatFn, RationalFunctionsF2, Rationals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    Sim1,
    Sim2,
    Sim3,
    Sim4,
    Sim5,
}

impl RelationId {
    pub const ALL: [RelationId; 5] =
        [RelationId::Sim1, RelationId::Sim2, RelationId::Sim3, RelationId::Sim4, RelationId::Sim5];

    /// Whether the relation is defined in characteristic `p` (0 for `Q`).
    pub fn allows_characteristic(self, p: u64) -> bool {
        match self {
            RelationId::Sim1 => true,
            RelationId::Sim2 | RelationId::Sim3 | RelationId::Sim4 => p == 2,
            RelationId::Sim5 => p != 2,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as u8 + 1;
        write!(f, "sim{n}")
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sim1" | "~1" => Ok(RelationId::Sim1),
            "sim2" | "~2" => Ok(RelationId::Sim2),
            "sim3" | "~3" => Ok(RelationId::Sim3),
            "sim4" | "~4" => Ok(RelationId::Sim4),
            "sim5" | "~5" => Ok(RelationId::Sim5),
            other => Err(Error::Parse(format!("unknown relation `{other}` (expected sim1..sim5)"))),
        }
    }
}

/// Certificate for a positive decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<E> {
    /// `s` with `s²` equal to the ratio tested by `sim1` or `sim5`.
    SquareRoot(E),
    /// `x` with `x² + x` equal to the target of `sim2` or `sim4`.
    ArtinSchreier(E),
    /// `(x, y)` with `t'x² + y² + t = 0`, `x ≠ 0`.
    Pair { x: E, y: E },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision<E> {
    pub related: bool,
    pub witness: Option<Witness<E>>,
}

impl<E> Decision<E> {
    fn from_witness(w: Option<Witness<E>>) -> Self {
        Decision { related: w.is_some(), witness: w }
    }
}

/// Field-specific decision procedures behind [`related`] and
/// [`rep_system`]. A procedure a field lacks reports
/// [`Error::Unsupported`].
pub trait RelationSupport: Field {
    /// A solution of `x² + x = target`, if one exists.
    fn artin_schreier(&self, rel: RelationId, target: &Self::Elem) -> Result<Option<Self::Elem>>;

    /// A solution `(x, y)` of `t'x² + y² + t = 0` with `x ≠ 0`.
    fn sim3_pair(&self, t: &Self::Elem, t2: &Self::Elem) -> Result<Option<(Self::Elem, Self::Elem)>>;

    /// Representatives over an infinite field, where a rule is known.
    fn rule_representatives(&self, rel: RelationId) -> Result<Vec<Self::Elem>> {
        let _ = rel;
        Err(Error::InfiniteField("a representative system"))
    }
}

fn unsupported<F: Field>(field: &F, rel: RelationId) -> Error {
    Error::Unsupported { relation: rel.to_string(), field: field.descriptor().to_string() }
}

impl RelationSupport for FiniteField {
    fn artin_schreier(&self, rel: RelationId, target: &Self::Elem) -> Result<Option<Self::Elem>> {
        if self.p() != 2 {
            return Err(unsupported(self, rel));
        }
        Ok(self.artin_schreier_root(*target))
    }

    /// Squaring is onto in a finite field of characteristic 2, so
    /// `x = sqrt(t/t')`, `y = 0` always works.
    fn sim3_pair(&self, t: &Self::Elem, t2: &Self::Elem) -> Result<Option<(Self::Elem, Self::Elem)>> {
        let ratio = self.div(t, t2)?;
        Ok(self.square_root(&ratio).map(|x| (x, self.zero())))
    }
}

impl RelationSupport for Rationals {
    fn artin_schreier(&self, rel: RelationId, _target: &Self::Elem) -> Result<Option<Self::Elem>> {
        Err(unsupported(self, rel))
    }

    fn sim3_pair(&self, _t: &Self::Elem, _t2: &Self::Elem) -> Result<Option<(Self::Elem, Self::Elem)>> {
        Err(unsupported(self, RelationId::Sim3))
    }
}

impl RelationSupport for RationalFunctionsF2 {
    /// No general procedure; see [`bounded_refutation_search`].
    fn artin_schreier(&self, rel: RelationId, _target: &Self::Elem) -> Result<Option<Self::Elem>> {
        Err(unsupported(self, rel))
    }

    /// Writes `t = A² + X·B²` and `t' = A'² + X·B'²`. The classes are decided
    /// by whether `B` vanishes; if both do, `x = A/A'`, `y = 0`, otherwise
    /// `x = B/B'`, `y = A + A'x`.
    fn sim3_pair(&self, t: &Self::Elem, t2: &Self::Elem) -> Result<Option<(Self::Elem, Self::Elem)>> {
        let (a, b) = t.split_square_basis();
        let (a2, b2) = t2.split_square_basis();
        Ok(match (b.is_zero(), b2.is_zero()) {
            (true, true) => Some((self.div(&a, &a2)?, self.zero())),
            (false, false) => {
                let x = self.div(&b, &b2)?;
                let y = self.add(&a, &self.mul(&a2, &x));
                Some((x, y))
            }
            _ => None,
        })
    }

    fn rule_representatives(&self, rel: RelationId) -> Result<Vec<Self::Elem>> {
        match rel {
            RelationId::Sim3 => Ok(vec![self.one(), self.x()]),
            other => Err(unsupported(self, other)),
        }
    }
}

/// Checks that `t` lies in the carrier of `rel` over `field`.
pub fn check_carrier<F: Field>(field: &F, rel: RelationId, t: &F::Elem) -> Result<()> {
    if !rel.allows_characteristic(field.characteristic()) {
        return Err(unsupported(field, rel));
    }
    if !field.contains(t) {
        return Err(Error::FieldMismatch(field.descriptor().to_string()));
    }
    if field.is_zero(t) {
        return Err(Error::CarrierViolation("0".into()));
    }
    if rel == RelationId::Sim5 && field.is_zero(&field.add(t, &field.from_i64(4))) {
        return Err(Error::CarrierViolation(format!("{} = -4", field.format_elem(t))));
    }
    Ok(())
}

fn sim5_ratio<F: Field>(field: &F, t: &F::Elem, t2: &F::Elem) -> Result<F::Elem> {
    let four = field.from_i64(4);
    let num = field.mul(t2, &field.add(&four, t));
    let den = field.mul(t, &field.add(&four, t2));
    field.div(&num, &den)
}

fn sim4_target<F: Field>(field: &F, t: &F::Elem, t2: &F::Elem) -> Result<F::Elem> {
    Ok(field.add(&field.inv(t)?, &field.inv(t2)?))
}

/// Decides `t ~ t'` and returns a witness when related.
pub fn related<F: RelationSupport>(
    field: &F,
    rel: RelationId,
    t: &F::Elem,
    t2: &F::Elem,
) -> Result<Decision<F::Elem>> {
    check_carrier(field, rel, t)?;
    check_carrier(field, rel, t2)?;
    let w = match rel {
        RelationId::Sim1 => field.square_root(&field.div(t, t2)?).map(Witness::SquareRoot),
        RelationId::Sim5 => field.square_root(&sim5_ratio(field, t, t2)?).map(Witness::SquareRoot),
        RelationId::Sim2 => field
            .artin_schreier(rel, &field.add(t, t2))?
            .map(Witness::ArtinSchreier),
        RelationId::Sim4 => field
            .artin_schreier(rel, &sim4_target(field, t, t2)?)?
            .map(Witness::ArtinSchreier),
        RelationId::Sim3 => field.sim3_pair(t, t2)?.map(|(x, y)| Witness::Pair { x, y }),
    };
    Ok(Decision::from_witness(w))
}

/// Independently checks a witness against the defining equation of `rel`.
pub fn verify_witness<F: Field>(
    field: &F,
    rel: RelationId,
    t: &F::Elem,
    t2: &F::Elem,
    w: &Witness<F::Elem>,
) -> bool {
    let as_value = |x: &F::Elem| field.add(&field.square(x), x);
    match (rel, w) {
        (RelationId::Sim1, Witness::SquareRoot(s)) => {
            field.div(t, t2).is_ok_and(|r| field.square(s) == r)
        }
        (RelationId::Sim5, Witness::SquareRoot(s)) => {
            sim5_ratio(field, t, t2).is_ok_and(|r| field.square(s) == r)
        }
        (RelationId::Sim2, Witness::ArtinSchreier(x)) => as_value(x) == field.add(t, t2),
        (RelationId::Sim4, Witness::ArtinSchreier(x)) => {
            sim4_target(field, t, t2).is_ok_and(|r| as_value(x) == r)
        }
        (RelationId::Sim3, Witness::Pair { x, y }) => {
            !field.is_zero(x)
                && field.is_zero(&field.add(
                    &field.add(&field.mul(t2, &field.square(x)), &field.square(y)),
                    t,
                ))
        }
        _ => false,
    }
}

/// The carrier of `rel` over a finite field, in enumeration order.
pub fn carrier<F: Field>(field: &F, rel: RelationId) -> Result<Vec<F::Elem>> {
    if !rel.allows_characteristic(field.characteristic()) {
        return Err(unsupported(field, rel));
    }
    Ok(field
        .units()?
        .into_iter()
        .filter(|t| check_carrier(field, rel, t).is_ok())
        .collect())
}

/// One equivalence class, headed by its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivClass<E> {
    pub representative: E,
    pub members: Vec<E>,
}

/// A complete system of representatives. `classes` is filled in for finite
/// fields and empty when the system comes from a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSystem<E> {
    pub relation: RelationId,
    pub representatives: Vec<E>,
    pub classes: Vec<EquivClass<E>>,
}

impl<E: Clone + PartialEq> RepSystem<E> {
    /// The representative related to `t`.
    pub fn class_of<F: RelationSupport<Elem = E>>(&self, field: &F, t: &E) -> Result<E> {
        if let Some(c) = self.classes.iter().find(|c| c.members.contains(t)) {
            return Ok(c.representative.clone());
        }
        for r in &self.representatives {
            if related(field, self.relation, r, t)?.related {
                return Ok(r.clone());
            }
        }
        Err(Error::CarrierViolation(field.format_elem(t)))
    }
}

/// Greedy partition of the carrier in enumeration order: the first
/// unassigned element becomes a representative and absorbs every element
/// related to it. Over `F2(X)` only `sim3` is available, with
/// representatives `[1, X]`.
pub fn rep_system<F: RelationSupport>(field: &F, rel: RelationId) -> Result<RepSystem<F::Elem>> {
    if !rel.allows_characteristic(field.characteristic()) {
        return Err(unsupported(field, rel));
    }
    if !field.is_finite() {
        return Ok(RepSystem {
            relation: rel,
            representatives: field.rule_representatives(rel)?,
            classes: Vec::new(),
        });
    }
    let elems = carrier(field, rel)?;
    let mut assigned = vec![false; elems.len()];
    let mut classes = Vec::new();
    for i in 0..elems.len() {
        if assigned[i] {
            continue;
        }
        let rep = &elems[i];
        let hits: Vec<bool> = elems[i..]
            .par_iter()
            .enumerate()
            .map(|(k, s)| {
                !assigned[i + k] && related(field, rel, rep, s).map(|d| d.related).unwrap_or(false)
            })
            .collect();
        let mut members = Vec::new();
        for (k, hit) in hits.into_iter().enumerate() {
            if hit {
                assigned[i + k] = true;
                members.push(elems[i + k].clone());
            }
        }
        classes.push(EquivClass { representative: rep.clone(), members });
    }
    Ok(RepSystem {
        relation: rel,
        representatives: classes.iter().map(|c| c.representative.clone()).collect(),
        classes,
    })
}

/// Largest degree bound accepted by [`bounded_refutation_search`].
pub const MAX_DEGREE_BOUND: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(RatFn),
    NoWitnessUpTo(u32),
}

/// Looks for `x = p/q` over `F2(X)` with `deg p, deg q ≤ bound` solving
/// `x² + x = t + t'` (`sim2`) or `x² + x = 1/t + 1/t'` (`sim4`). Writing the
/// target as `N/D`, this is `D(p² + pq) = N q²`. A negative answer is only
/// evidence: larger solutions are not ruled out.
pub fn bounded_refutation_search(
    rel: RelationId,
    t: &RatFn,
    t2: &RatFn,
    bound: u32,
) -> Result<SearchOutcome> {
    let field = RationalFunctionsF2;
    if !matches!(rel, RelationId::Sim2 | RelationId::Sim4) {
        return Err(unsupported(&field, rel));
    }
    if bound > MAX_DEGREE_BOUND {
        return Err(Error::BoundTooLarge { bound, max: MAX_DEGREE_BOUND });
    }
    check_carrier(&field, rel, t)?;
    check_carrier(&field, rel, t2)?;
    let target = match rel {
        RelationId::Sim2 => field.add(t, t2),
        _ => sim4_target(&field, t, t2)?,
    };
    let (n, d) = (target.numer(), target.denom());
    let polys: Vec<Gf2Poly> = (0..1u64 << (bound + 1)).map(Gf2Poly::from_bits).collect();
    let hit = polys[1..].par_iter().find_map_first(|q| {
        let nq2 = n.mul(&q.mul(q));
        polys.iter().find_map(|p| {
            let lhs = d.mul(&p.mul(p).add(&p.mul(q)));
            (lhs == nq2).then(|| RatFn::new(p.clone(), q.clone()).expect("q is nonzero"))
        })
    });
    Ok(match hit {
        Some(x) => SearchOutcome::Witness(x),
        None => SearchOutcome::NoWitnessUpTo(bound),
    })
}

//! Classification of type-II₁ endo-commutative straight algebras over a
//! finite field, and verification against the predicted families.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{
    is_endo_commutative_straight, subclass_unchecked, type_of, AlgebraType, SParams,
};
use crate::equiv::{rep_system, RelationId};
use crate::error::{Error, Result};
use crate::fields::{Field, FiniteField, Fq};
use crate::iso::{are_isomorphic, straight_forms, Transform};

/// Default field-size guard for [`verify_classification`].
pub const DEFAULT_MAX_Q: u64 = 49;

/// Environment variable overriding [`DEFAULT_MAX_Q`].
pub const MAX_Q_ENV: &str = "ENDOCLASS_MAX_Q";

/// The guard in effect: `ENDOCLASS_MAX_Q` if set and valid, else the default.
pub fn max_q_from_env() -> u64 {
    std::env::var(MAX_Q_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_Q)
}

fn guard(field: &FiniteField, max_q: u64) -> Result<()> {
    let q = u64::from(field.q());
    if q > max_q {
        return Err(Error::FieldTooLarge { order: q, max: max_q });
    }
    Ok(())
}

type S = SParams<Fq>;

/// Type-II₁ algebras split into the four subclasses, once from the closed
/// parametrizations and once by scanning all tuples with `p = 0`. Lists are
/// sorted and free of duplicates. Index `i` holds subclass `i + 1`.
#[derive(Clone, Debug)]
pub struct SubclassInventory {
    pub closed_form: [Vec<S>; 4],
    pub direct_scan: [Vec<S>; 4],
}

impl SubclassInventory {
    /// Every type-II₁ algebra, from the direct scan, sorted.
    pub fn all(&self) -> Vec<S> {
        let mut v: Vec<S> = self.direct_scan.iter().flatten().cloned().collect();
        v.sort();
        v
    }

    /// Both productions agree subclass by subclass.
    pub fn agrees(&self) -> bool {
        self.closed_form == self.direct_scan
    }

    /// The closed-form lists are disjoint and cover the scan.
    pub fn is_partition(&self) -> bool {
        let mut union: Vec<S> = self.closed_form.iter().flatten().cloned().collect();
        let total = union.len();
        union.sort();
        union.dedup();
        union.len() == total && union == self.all()
    }
}

fn sorted(mut v: Vec<S>) -> Vec<S> {
    v.sort();
    v.dedup();
    v
}

/// Closed parametrizations of the four subclasses.
pub fn closed_form_subclasses(field: &FiniteField) -> Result<[Vec<S>; 4]> {
    let k = field;
    let units = k.units()?;
    let zero = k.zero();
    let signs = [k.one(), k.neg(&k.one())];

    let mut sub1 = Vec::new();
    for a in &units {
        for d in &units {
            sub1.push(S::new(zero, *a, *a, zero, k.neg(a), *d));
        }
        for eps in &signs {
            for delta in &signs {
                sub1.push(S::new(zero, k.mul(eps, a), *a, zero, k.mul(delta, a), zero));
            }
        }
    }

    let mut sub3 = Vec::new();
    for a in &units {
        for b in &units {
            sub3.push(S::new(zero, k.neg(a), *a, *b, k.neg(a), zero));
        }
    }

    let mut sub4 = Vec::new();
    if k.characteristic() != 2 {
        let quarter = k.inv(&k.from_i64(4))?;
        for b in &units {
            for d in &units {
                if *b == *d || *b == k.neg(d) {
                    continue;
                }
                let (b2, d2) = (k.square(b), k.square(d));
                let q = k.mul(&k.square(&k.add(b, d)), &quarter);
                let a = k.mul(&k.sub(&d2, &b2), &quarter);
                let c = k.mul(&k.sub(&b2, &d2), &quarter);
                sub4.push(S::new(zero, q, a, *b, c, *d));
            }
        }
    } else {
        for q in &units {
            for a in &units {
                for b in &units {
                    let lhs = k.add(&k.add(&k.square(q), &k.square(a)), &k.mul(q, &k.square(b)));
                    if k.is_zero(&lhs) {
                        sub4.push(S::new(zero, *q, *a, *b, *a, *b));
                    }
                }
            }
        }
    }
    Ok([sorted(sub1), Vec::new(), sorted(sub3), sorted(sub4)])
}

/// Type-II₁ algebras found by testing every `S(0, q, a, b, c, d)`.
pub fn direct_scan_subclasses(field: &FiniteField) -> Result<[Vec<S>; 4]> {
    let elems = field.elements()?;
    let zero = field.zero();
    let found: Vec<(u8, S)> = elems
        .par_iter()
        .flat_map_iter(|q| {
            let mut out = Vec::new();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        for d in &elems {
                            let s = S::new(zero, *q, *a, *b, *c, *d);
                            if is_endo_commutative_straight(field, &s)
                                && type_of(field, &s).ok() == Some(AlgebraType::II1)
                            {
                                out.push((subclass_unchecked(field, &s), s));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut lists: [Vec<S>; 4] = Default::default();
    for (sub, s) in found {
        lists[usize::from(sub - 1)].push(s);
    }
    Ok(lists.map(sorted))
}

pub fn enumerate_subclasses(field: &FiniteField) -> Result<SubclassInventory> {
    Ok(SubclassInventory {
        closed_form: closed_form_subclasses(field)?,
        direct_scan: direct_scan_subclasses(field)?,
    })
}

/// Endo-commutative straight algebras of a given type (by family name
/// `I`, `II1`, `II2`, `II3`, `III`, or all when `None`), optionally
/// restricted to a II₁ subclass. Scans all `q⁶` tuples.
pub fn enumerate_type(
    field: &FiniteField,
    family: Option<&str>,
    subclass: Option<u8>,
) -> Result<Vec<S>> {
    let elems = field.elements()?;
    let found: Vec<S> = elems
        .par_iter()
        .flat_map_iter(|p| {
            let mut out = Vec::new();
            for q in &elems {
                for a in &elems {
                    for b in &elems {
                        for c in &elems {
                            for d in &elems {
                                let s = S::new(*p, *q, *a, *b, *c, *d);
                                let Ok(ty) = type_of(field, &s) else { continue };
                                if family.is_some_and(|f| f != ty.family()) {
                                    continue;
                                }
                                if let Some(n) = subclass {
                                    if ty != AlgebraType::II1 || subclass_unchecked(field, &s) != n {
                                        continue;
                                    }
                                }
                                out.push(s);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(sorted(found))
}

/// A class member with `X` such that `transform(representative, X)` is it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub params: S,
    pub witness: Transform<Fq>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: S,
    pub members: Vec<ClassMember>,
}

impl IsoClass {
    pub fn contains(&self, s: &S) -> bool {
        self.members.iter().any(|m| m.params == *s)
    }
}

/// Partition of `algebras` into isomorphism classes. Representatives are
/// the enumeration-least members; classes are ordered by representative.
///
/// Each class is swept out from its representative through
/// [`straight_forms`], which lists every straight algebra isomorphic to it.
pub fn iso_classes(field: &FiniteField, algebras: &[S]) -> Result<Vec<IsoClass>> {
    let inputs = sorted(algebras.to_vec());
    let index: HashMap<&S, usize> = inputs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut witness: Vec<Option<Transform<Fq>>> = vec![None; inputs.len()];
    let mut classes = Vec::new();
    for i in 0..inputs.len() {
        if witness[i].is_some() {
            continue;
        }
        let rep = &inputs[i];
        witness[i] = Some(Transform::identity(field));
        let mut members = vec![i];
        for form in straight_forms(field, &rep.to_structure_matrix(field))? {
            if let Some(&j) = index.get(&form.params) {
                if witness[j].is_none() {
                    witness[j] = Some(form.transform);
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(IsoClass {
            representative: rep.clone(),
            members: members
                .into_iter()
                .map(|j| ClassMember {
                    params: inputs[j].clone(),
                    witness: witness[j].clone().expect("assigned above"),
                })
                .collect(),
        });
    }
    Ok(classes)
}

/// Reference partition by union-find over pairwise [`are_isomorphic`]
/// calls. Quadratic in the input; meant for cross-checking
/// [`iso_classes`] on small inputs.
pub fn iso_classes_pairwise(field: &FiniteField, algebras: &[S]) -> Result<Vec<Vec<S>>> {
    let inputs = sorted(algebras.to_vec());
    let n = inputs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let matrices: Vec<_> = inputs.iter().map(|s| s.to_structure_matrix(field)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            if are_isomorphic(field, &matrices[i], &matrices[j])?.is_some() {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<Vec<S>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(inputs[i].clone());
    }
    Ok(groups)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    S1,
    S2,
    S3,
    S4,
    S1p,
    S2p,
    S3p,
    S4p,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::S1 => "S1",
            FamilyTag::S2 => "S2",
            FamilyTag::S3 => "S3",
            FamilyTag::S4 => "S4",
            FamilyTag::S1p => "S1'",
            FamilyTag::S2p => "S2'",
            FamilyTag::S3p => "S3'",
            FamilyTag::S4p => "S4'",
        })
    }
}

/// A family name with its parameters, e.g. `S3(t=2, eps=+1, delta=-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyLabel {
    pub tag: FamilyTag,
    pub t: Option<Fq>,
    pub eps: Option<i8>,
    pub delta: Option<i8>,
}

impl FamilyLabel {
    fn plain(tag: FamilyTag) -> Self {
        FamilyLabel { tag, t: None, eps: None, delta: None }
    }

    fn with_t(tag: FamilyTag, t: Fq) -> Self {
        FamilyLabel { tag, t: Some(t), eps: None, delta: None }
    }

    pub fn render(&self, field: &FiniteField) -> String {
        let mut args = Vec::new();
        if let Some(t) = self.t {
            args.push(format!("t={}", field.format_elem(&t)));
        }
        if let Some(e) = self.eps {
            args.push(format!("eps={e:+}"));
        }
        if let Some(d) = self.delta {
            args.push(format!("delta={d:+}"));
        }
        if args.is_empty() {
            self.tag.to_string()
        } else {
            format!("{}({})", self.tag, args.join(", "))
        }
    }

    pub fn to_json(&self, field: &FiniteField) -> Value {
        json!({
            "tag": self.tag.to_string(),
            "t": self.t.map(|t| field.format_elem(&t)),
            "eps": self.eps,
            "delta": self.delta,
            "label": self.render(field),
        })
    }
}

/// The predicted family members. In odd characteristic:
/// `S(0,1,1,0,-1,2)`, `S(0,4,-4,-4,4,0)`, `S(0,εt,t,0,δt,0)` for `t` in the
/// `sim1` representatives and signs `ε, δ`, and
/// `S(0,(1+t)²/4,(t²-1)/4,1,(1-t²)/4,t)` for `t ≠ 0, ±1`. In characteristic
/// 2: `S(0,t,t,0,t,1)`, `S(0,t,t,0,t,0)`, `S(0,t,t,t,t,0)` over the `sim2`,
/// `sim3`, `sim4` representatives, and
/// `S(0,t²/(1+t²),t/(1+t²),1,t/(1+t²),1)` for `t ≠ 0, 1`.
pub fn theorem_families(field: &FiniteField) -> Result<Vec<(FamilyLabel, S)>> {
    let k = field;
    let n = |v: i64| k.from_i64(v);
    let zero = k.zero();
    let one = k.one();
    let units = k.units()?;
    let mut out = Vec::new();
    if k.characteristic() != 2 {
        out.push((FamilyLabel::plain(FamilyTag::S1), S::from_ints(k, [0, 1, 1, 0, -1, 2])));
        out.push((FamilyLabel::plain(FamilyTag::S2), S::from_ints(k, [0, 4, -4, -4, 4, 0])));
        for t in rep_system(k, RelationId::Sim1)?.representatives {
            for eps in [1i8, -1] {
                for delta in [1i8, -1] {
                    let s = S::new(zero, k.mul(&n(eps.into()), &t), t, zero, k.mul(&n(delta.into()), &t), zero);
                    let label = FamilyLabel { tag: FamilyTag::S3, t: Some(t), eps: Some(eps), delta: Some(delta) };
                    out.push((label, s));
                }
            }
        }
        let quarter = k.inv(&n(4))?;
        for t in units.iter().filter(|t| **t != one && **t != k.neg(&one)) {
            let t2 = k.square(t);
            let s = S::new(
                zero,
                k.mul(&k.square(&k.add(&one, t)), &quarter),
                k.mul(&k.sub(&t2, &one), &quarter),
                one,
                k.mul(&k.sub(&one, &t2), &quarter),
                *t,
            );
            out.push((FamilyLabel::with_t(FamilyTag::S4, *t), s));
        }
    } else {
        for t in rep_system(k, RelationId::Sim2)?.representatives {
            out.push((FamilyLabel::with_t(FamilyTag::S1p, t), S::new(zero, t, t, zero, t, one)));
        }
        for t in rep_system(k, RelationId::Sim3)?.representatives {
            out.push((FamilyLabel::with_t(FamilyTag::S2p, t), S::new(zero, t, t, zero, t, zero)));
        }
        for t in rep_system(k, RelationId::Sim4)?.representatives {
            out.push((FamilyLabel::with_t(FamilyTag::S3p, t), S::new(zero, t, t, t, t, zero)));
        }
        for t in units.iter().filter(|t| **t != one) {
            let inv = k.inv(&k.add(&one, &k.square(t)))?;
            let tt = k.mul(t, &inv);
            let s = S::new(zero, k.mul(&k.square(t), &inv), tt, one, tt, one);
            out.push((FamilyLabel::with_t(FamilyTag::S4p, *t), s));
        }
    }
    Ok(out)
}

/// One computed class in a [`ClassificationReport`].
#[derive(Clone, Debug)]
pub struct ReportClass {
    pub representative: S,
    pub size: usize,
    /// Predicted members lying in this class, with the witness `X` taking
    /// the representative to each of them.
    pub predicted: Vec<(FamilyLabel, S, Transform<Fq>)>,
    /// Number of `X` taking the representative to the first predicted
    /// member (the order of its automorphism group when they coincide).
    pub witness_count: usize,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub field: FiniteField,
    pub scanned: usize,
    pub classes: Vec<ReportClass>,
    pub predicted: Vec<(FamilyLabel, S)>,
    /// Number of pairwise searches run between predicted members.
    pub non_isomorphism_checks: usize,
    pub failures: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let k = &self.field;
        let sp = |s: &S| crate::json::sparams_to_json(k, s);
        let tr = |t: &Transform<Fq>| crate::json::transform_to_json(k, t);
        json!({
            "field": k.descriptor().to_string(),
            "verdict": if self.passed() { "pass" } else { "fail" },
            "class_count": self.classes.len(),
            "predicted_count": self.predicted.len(),
            "scanned": self.scanned,
            "non_isomorphism_checks": self.non_isomorphism_checks,
            "classes": self.classes.iter().map(|c| json!({
                "representative": sp(&c.representative),
                "size": c.size,
                "witness_count": c.witness_count,
                "predicted": c.predicted.iter().map(|(label, s, x)| json!({
                    "family": label.to_json(k),
                    "params": sp(s),
                    "witness": tr(x),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "predicted": self.predicted.iter().map(|(label, s)| json!({
                "family": label.to_json(k),
                "params": sp(s),
            })).collect::<Vec<_>>(),
            "failures": self.failures,
        })
    }

    /// Plain-text table: family label, representative, class size, witness
    /// count.
    pub fn summary_table(&self) -> String {
        let k = &self.field;
        let tuple = |s: &S| {
            let parts: Vec<String> = s.to_array().iter().map(|x| k.format_elem(x)).collect();
            format!("S({})", parts.join(","))
        };
        let mut rows = vec![[
            "family".to_string(),
            "representative".to_string(),
            "size".to_string(),
            "witnesses".to_string(),
        ]];
        for c in &self.classes {
            let label = match c.predicted.as_slice() {
                [] => "-".to_string(),
                ps => ps.iter().map(|(l, _, _)| l.render(k)).collect::<Vec<_>>().join(" / "),
            };
            rows.push([label, tuple(&c.representative), c.size.to_string(), c.witness_count.to_string()]);
        }
        let widths: Vec<usize> = (0..4).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &rows {
            let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} classes, {} predicted, verdict {}\n",
            k.descriptor(),
            self.classes.len(),
            self.predicted.len(),
            if self.passed() { "pass" } else { "fail" }
        ));
        for f in &self.failures {
            out.push_str(&format!("failure: {f}\n"));
        }
        out
    }
}

/// [`verify_classification_bounded`] with the guard from the environment.
pub fn verify_classification(field: &FiniteField) -> Result<ClassificationReport> {
    verify_classification_bounded(field, max_q_from_env())
}

/// Computes the isomorphism classes of type-II₁ algebras and checks them
/// against [`theorem_families`]: every predicted member must be
/// endo-commutative of type II₁, predicted members must be pairwise
/// non-isomorphic, and each class must contain exactly one of them.
pub fn verify_classification_bounded(field: &FiniteField, max_q: u64) -> Result<ClassificationReport> {
    guard(field, max_q)?;
    let k = field;
    let algebras = direct_scan_subclasses(k)?.concat();
    let classes = iso_classes(k, &algebras)?;
    let predicted = theorem_families(k)?;
    let mut failures = Vec::new();

    for (label, s) in &predicted {
        match type_of(k, s) {
            Ok(AlgebraType::II1) => {}
            Ok(other) => failures.push(format!("{} has type {other}", label.render(k))),
            Err(e) => failures.push(format!("{}: {e}", label.render(k))),
        }
    }

    let matrices: Vec<_> = predicted.iter().map(|(_, s)| s.to_structure_matrix(k)).collect();
    let pairs: Vec<(usize, usize)> =
        (0..predicted.len()).flat_map(|i| (i + 1..predicted.len()).map(move |j| (i, j))).collect();
    let clashes: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            matches!(are_isomorphic(k, &matrices[i], &matrices[j]), Ok(Some(_))).then_some((i, j))
        })
        .collect();
    for (i, j) in clashes {
        failures.push(format!(
            "{} and {} are isomorphic",
            predicted[i].0.render(k),
            predicted[j].0.render(k)
        ));
    }

    let mut report_classes = Vec::with_capacity(classes.len());
    for class in &classes {
        let hits: Vec<_> = predicted
            .iter()
            .filter_map(|(label, s)| {
                class
                    .members
                    .iter()
                    .find(|m| m.params == *s)
                    .map(|m| (label.clone(), s.clone(), m.witness.clone()))
            })
            .collect();
        let witness_count = match hits.first() {
            Some((_, s, _)) => straight_forms(k, &class.representative.to_structure_matrix(k))?
                .iter()
                .filter(|f| f.params == *s)
                .count(),
            None => 0,
        };
        if hits.len() != 1 {
            failures.push(format!(
                "class of {:?} holds {} predicted members",
                class.representative.to_array().map(|x| k.format_elem(&x)),
                hits.len()
            ));
        }
        report_classes.push(ReportClass {
            representative: class.representative.clone(),
            size: class.members.len(),
            predicted: hits,
            witness_count,
        });
    }
    for (label, s) in &predicted {
        if !classes.iter().any(|c| c.contains(s)) {
            failures.push(format!("{} is not among the scanned algebras", label.render(k)));
        }
    }
    if classes.len() != predicted.len() {
        failures.push(format!("{} classes but {} predicted members", classes.len(), predicted.len()));
    }

    Ok(ClassificationReport {
        field: k.clone(),
        scanned: algebras.len(),
        classes: report_classes,
        non_isomorphism_checks: pairs.len(),
        predicted,
        failures,
    })
}

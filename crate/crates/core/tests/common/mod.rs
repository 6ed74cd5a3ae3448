#![allow(dead_code)]

use std::collections::HashMap;

use endoclass::algebra::{is_endo_commutative_straight, SParams};
use endoclass::fields::{Field, FiniteField, Fq};
use endoclass::iso::Transform;

pub type S = SParams<Fq>;

pub fn gf(q: u64) -> FiniteField {
    FiniteField::gf(q).unwrap()
}

pub struct WitnessCase {
    pub name: &'static str,
    pub source: S,
    pub target: S,
    pub x: Transform<Fq>,
}

fn case(name: &'static str, source: S, target: S, x: Transform<Fq>) -> WitnessCase {
    WitnessCase { name, source, target, x }
}

/// Names of the witness families that apply in characteristic `p`.
pub fn witness_names(p: u32) -> &'static [&'static str] {
    if p == 2 {
        &["a/d^2 scaling", "sim2 shift", "sim3 pair", "sim4 shift", "subclass-4 char 2"]
    } else {
        &[
            "4a=d^2 to S1",
            "equal 4a-d^2",
            "t0=-alpha^2",
            "sim1 on S_t",
            "sim1 on signs",
            "S_t to (t,-t)",
            "subclass 3 to t=b^2/a",
            "sim5 on (-t,t,t,-t)",
            "subclass 4 to S4(t)",
            "signs to (-t,t,t,-t)",
        ]
    }
}

/// Every valid instantiation of the explicit isomorphisms over `k`:
/// `X` should carry `source` to `target`.
pub fn witness_cases(k: &FiniteField) -> Vec<WitnessCase> {
    let units = k.units().unwrap();
    let elems = k.elements().unwrap();
    let n = |v: i64| k.from_i64(v);
    let div = |a: &Fq, b: &Fq| k.div(a, b).unwrap();
    let (zero, one) = (k.zero(), k.one());
    let roots = |v: &Fq| -> Vec<Fq> { elems.iter().copied().filter(|x| k.square(x) == *v).collect() };
    let as_roots = |v: &Fq| -> Vec<Fq> { elems.iter().copied().filter(|x| k.add(&k.square(x), x) == *v).collect() };
    let mut out = Vec::new();

    if k.characteristic() != 2 {
        let four = n(4);
        let two = n(2);
        let s1 = S::from_ints(k, [0, 1, 1, 0, -1, 2]);
        let shape1 = |a: Fq, d: Fq| S::new(zero, a, a, zero, k.neg(&a), d);
        let st = |t: &Fq| {
            let a = div(&k.add(t, &one), &four);
            shape1(a, one)
        };
        let sub3 = |t: &Fq| S::new(zero, k.neg(t), *t, *t, k.neg(t), zero);

        for d in &units {
            let a = div(&k.square(d), &four);
            let x = Transform::new(one, div(&k.sub(d, &two), &two), zero, a);
            out.push(case("4a=d^2 to S1", shape1(a, *d), s1.clone(), x));
        }

        let inv4 = |a: &Fq, d: &Fq| k.sub(&k.mul(&four, a), &k.square(d));
        for a in &units {
            for d in &units {
                let t = inv4(a, d);
                if k.is_zero(&t) {
                    continue;
                }
                for a2 in &units {
                    for d2 in &units {
                        if inv4(a2, d2) != t {
                            continue;
                        }
                        let x = Transform::new(one, div(&k.sub(d, d2), &k.mul(&two, a2)), zero, div(a, a2));
                        out.push(case("equal 4a-d^2", shape1(*a, *d), shape1(*a2, *d2), x));
                    }
                }
            }
        }

        for alpha in &units {
            if *alpha == one || *alpha == k.neg(&one) {
                continue;
            }
            let t0 = k.neg(&k.square(alpha));
            let a_alpha = div(&k.sub(&k.square(alpha), &one), &four);
            let x = Transform::new(*alpha, k.neg(&two), zero, k.neg(&one));
            out.push(case("t0=-alpha^2", st(&t0), shape1(a_alpha, *alpha), x));
        }

        let minus_one = k.neg(&one);
        for t in units.iter().filter(|t| **t != minus_one) {
            for t2 in units.iter().filter(|t| **t != minus_one) {
                let a = div(&k.add(t, &one), &four);
                let a2 = div(&k.add(t2, &one), &four);
                for x0 in roots(&div(t, t2)) {
                    let x = Transform::new(x0, div(&k.sub(&one, &x0), &k.mul(&two, &a2)), zero, div(&a, &a2));
                    out.push(case("sim1 on S_t", st(t), st(t2), x));
                }
            }
        }

        for eps in [one, minus_one] {
            for delta in [one, minus_one] {
                let shape = |a: &Fq| S::new(zero, k.mul(&eps, a), *a, zero, k.mul(&delta, a), zero);
                for a in &units {
                    for a2 in &units {
                        for x0 in roots(&div(a, a2)) {
                            let x = Transform::new(x0, zero, zero, div(a, a2));
                            out.push(case("sim1 on signs", shape(a), shape(a2), x));
                        }
                    }
                }
            }
        }

        for t in units.iter().filter(|t| **t != minus_one) {
            let x = Transform::new(
                div(&one, &two),
                div(&one, &k.mul(&two, t)),
                zero,
                div(&k.add(&one, t), &k.mul(&four, t)),
            );
            let target = S::new(zero, *t, *t, zero, k.neg(t), zero);
            out.push(case("S_t to (t,-t)", st(t), target, x));
        }

        for a in &units {
            for b in &units {
                let t = div(&k.square(b), a);
                let source = S::new(zero, k.neg(a), *a, *b, k.neg(a), zero);
                let x = Transform::new(div(b, &t), zero, zero, div(a, &t));
                out.push(case("subclass 3 to t=b^2/a", source, sub3(&t), x));
            }
        }

        let minus_four = k.neg(&four);
        for t in units.iter().filter(|t| **t != minus_four) {
            for t2 in units.iter().filter(|t| **t != minus_four) {
                let ratio = div(&k.mul(t2, &k.add(&four, t)), &k.mul(t, &k.add(&four, t2)));
                for alpha in roots(&ratio) {
                    let x = Transform::new(
                        div(&k.mul(t, &alpha), t2),
                        div(&k.mul(t, &k.sub(&alpha, &one)), &k.mul(&two, t2)),
                        zero,
                        div(t, t2),
                    );
                    out.push(case("sim5 on (-t,t,t,-t)", sub3(t), sub3(t2), x));
                }
            }
        }

        for b in &units {
            for d in &units {
                if *b == *d || *b == k.neg(d) {
                    continue;
                }
                let (b2, d2) = (k.square(b), k.square(d));
                let source = S::new(
                    zero,
                    div(&k.square(&k.add(b, d)), &four),
                    div(&k.sub(&d2, &b2), &four),
                    *b,
                    div(&k.sub(&b2, &d2), &four),
                    *d,
                );
                let t = div(d, b);
                let tt = k.square(&t);
                let target = S::new(
                    zero,
                    div(&k.square(&k.add(&one, &t)), &four),
                    div(&k.sub(&tt, &one), &four),
                    one,
                    div(&k.sub(&one, &tt), &four),
                    t,
                );
                out.push(case("subclass 4 to S4(t)", source, target, Transform::new(*b, zero, zero, b2)));
            }
        }

        for t in &units {
            for t2 in units.iter().filter(|t| **t != minus_four) {
                let v = div(t, &k.mul(t2, &k.add(&four, t2)));
                for alpha in roots(&v) {
                    let source = S::new(zero, k.neg(t), *t, zero, k.neg(t), zero);
                    let x = Transform::new(k.mul(&two, &alpha), alpha, zero, div(t, t2));
                    out.push(case("signs to (-t,t,t,-t)", source, sub3(t2), x));
                }
            }
        }
    } else {
        for a in &units {
            for d in &units {
                let t = div(a, &k.square(d));
                let x = Transform::new(*d, zero, zero, div(a, &t));
                out.push(case(
                    "a/d^2 scaling",
                    S::new(zero, *a, *a, zero, *a, *d),
                    S::new(zero, t, t, zero, t, one),
                    x,
                ));
            }
        }
        for t in &units {
            for t2 in &units {
                for alpha in as_roots(&k.add(t, t2)) {
                    let x = Transform::new(one, div(&alpha, t2), zero, div(t, t2));
                    out.push(case(
                        "sim2 shift",
                        S::new(zero, *t, *t, zero, *t, one),
                        S::new(zero, *t2, *t2, zero, *t2, one),
                        x,
                    ));
                }
                let target = k.add(&k.inv(t).unwrap(), &k.inv(t2).unwrap());
                for alpha in as_roots(&target) {
                    let r = div(t, t2);
                    let x = Transform::new(r, k.mul(&r, &alpha), zero, r);
                    out.push(case(
                        "sim4 shift",
                        S::new(zero, *t, *t, *t, *t, zero),
                        S::new(zero, *t2, *t2, *t2, *t2, zero),
                        x,
                    ));
                }
            }
        }
        for a in &units {
            for a2 in &units {
                for x0 in &units {
                    for y0 in &elems {
                        let lhs = k.add(&k.add(&k.mul(a2, &k.square(x0)), &k.square(y0)), a);
                        if !k.is_zero(&lhs) {
                            continue;
                        }
                        let x = Transform::new(*x0, div(y0, a2), zero, div(a, a2));
                        out.push(case(
                            "sim3 pair",
                            S::new(zero, *a, *a, zero, *a, zero),
                            S::new(zero, *a2, *a2, zero, *a2, zero),
                            x,
                        ));
                    }
                }
            }
        }
        for q in &units {
            for a in &units {
                for b in &units {
                    let lhs = k.add(&k.add(&k.square(q), &k.square(a)), &k.mul(q, &k.square(b)));
                    if !k.is_zero(&lhs) {
                        continue;
                    }
                    let t = div(q, a);
                    let inv = k.inv(&k.add(&one, &k.square(&t))).unwrap();
                    let tt = k.mul(&t, &inv);
                    let target = S::new(zero, k.mul(&k.square(&t), &inv), tt, one, tt, one);
                    let w = div(&k.mul(a, &k.add(&one, &k.square(&t))), &t);
                    out.push(case(
                        "subclass-4 char 2",
                        S::new(zero, *q, *a, *b, *a, *b),
                        target,
                        Transform::new(*b, zero, zero, w),
                    ));
                }
            }
        }
    }
    out
}

fn mul_in(k: &FiniteField, s: &S, x: (Fq, Fq), y: (Fq, Fq)) -> (Fq, Fq) {
    // e² = f, f² = pe + qf, ef = ae + bf, fe = ce + df
    let rows = [(k.zero(), k.one()), (s.p, s.q), (s.a, s.b), (s.c, s.d)];
    let w = [k.mul(&x.0, &y.0), k.mul(&x.1, &y.1), k.mul(&x.0, &y.1), k.mul(&x.1, &y.0)];
    let mut out = (k.zero(), k.zero());
    for (wi, r) in w.iter().zip(rows) {
        out.0 = k.add(&out.0, &k.mul(wi, &r.0));
        out.1 = k.add(&out.1, &k.mul(wi, &r.1));
    }
    out
}

/// Class count of type-II₁ algebras by brute force over bases: every
/// ordered basis `{u, v}` of every algebra is tried, products are
/// re-expressed in that basis by Cramer's rule, and S-forms are merged.
pub fn oracle_class_count(k: &FiniteField) -> usize {
    let elems = k.elements().unwrap();
    let zero = k.zero();
    let mut algebras = Vec::new();
    for q in &elems {
        for a in elems.iter().skip(1) {
            for b in &elems {
                for c in elems.iter().skip(1) {
                    for d in &elems {
                        let s = S::new(zero, *q, *a, *b, *c, *d);
                        if is_endo_commutative_straight(k, &s) {
                            algebras.push(s);
                        }
                    }
                }
            }
        }
    }
    let index: HashMap<S, usize> = algebras.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..algebras.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    let vectors: Vec<(Fq, Fq)> = elems.iter().flat_map(|x| elems.iter().map(move |y| (*x, *y))).collect();
    for (i, s) in algebras.iter().enumerate() {
        for u in &vectors {
            for v in &vectors {
                let det = k.sub(&k.mul(&u.0, &v.1), &k.mul(&u.1, &v.0));
                if k.is_zero(&det) {
                    continue;
                }
                let inv = k.inv(&det).unwrap();
                // coordinates of w in the basis {u, v}
                let coords = |w: (Fq, Fq)| {
                    let alpha = k.mul(&k.sub(&k.mul(&w.0, &v.1), &k.mul(&w.1, &v.0)), &inv);
                    let beta = k.mul(&k.sub(&k.mul(&u.0, &w.1), &k.mul(&u.1, &w.0)), &inv);
                    (alpha, beta)
                };
                let uu = coords(mul_in(k, s, *u, *u));
                if uu != (k.zero(), k.one()) {
                    continue;
                }
                let vv = coords(mul_in(k, s, *v, *v));
                let uv = coords(mul_in(k, s, *u, *v));
                let vu = coords(mul_in(k, s, *v, *u));
                let image = S::new(vv.0, vv.1, uv.0, uv.1, vu.0, vu.1);
                if let Some(&j) = index.get(&image) {
                    let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
    }
    (0..algebras.len()).filter(|&i| root(&mut parent, i) == i).count()
}

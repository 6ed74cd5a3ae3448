mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use endoclass::algebra::{rank, type_of, SParams, StructureMatrix};
use endoclass::classify::enumerate_type;
use endoclass::equiv::{
    bounded_refutation_search, carrier, related, rep_system, verify_witness, RelationId, SearchOutcome, Witness,
};
use endoclass::fields::{Field, Fq, Gf2Poly, RatFn, RationalFunctionsF2, Rationals};
use endoclass::iso::{are_isomorphic, check_iso_system, is_witness, lift, transform, Transform};
use endoclass::Error;

use common::gf;

#[test]
fn lift_of_swap_and_scaling() {
    let k = gf(5);
    let swap = lift(&k, &Transform::from_ints(&k, [[0, 1], [1, 0]])).unwrap();
    let rows: Vec<Vec<u32>> = swap.rows.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
    assert_eq!(rows, vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
    let scale = lift(&k, &Transform::from_ints(&k, [[2, 0], [0, 1]])).unwrap();
    let diag: Vec<u32> = (0..4).map(|i| scale.rows[i][i].0).collect();
    assert_eq!(diag, vec![4, 1, 2, 2]);
    let id = lift(&k, &Transform::identity(&k)).unwrap();
    assert!((0..4).all(|i| (0..4).all(|j| id.rows[i][j] == if i == j { k.one() } else { k.zero() })));
}

#[test]
fn cross_subclass_witness_over_f5() {
    let k = gf(5);
    let t = Fq(2);
    let a = k.div(&k.add(&t, &k.one()), &k.from_i64(4)).unwrap();
    let s = SParams::new(k.zero(), a, a, k.zero(), k.neg(&a), k.one());
    let s2 = SParams::from_ints(&k, [0, 2, 2, 0, -2, 0]);
    let two_t = k.mul(&k.from_i64(2), &t);
    let x = Transform::new(
        k.inv(&k.from_i64(2)).unwrap(),
        k.inv(&two_t).unwrap(),
        k.zero(),
        k.div(&k.add(&k.one(), &t), &k.mul(&k.from_i64(4), &t)).unwrap(),
    );
    assert!(check_iso_system(&k, &s, &s2, &x));
    assert!(!check_iso_system(&k, &s, &s2, &Transform::identity(&k)));
}

#[test]
fn identity_witnesses_only_equal_tuples() {
    let k = gf(5);
    let s = SParams::from_ints(&k, [0, -1, 1, 1, -1, 0]);
    let id = Transform::identity(&k);
    assert!(check_iso_system(&k, &s, &s, &id));
    assert!(!check_iso_system(&k, &s, &SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]), &id));
}

#[test]
fn search_examples_over_f5() {
    let k = gf(5);
    let m = |v: [i64; 6]| SParams::from_ints(&k, v).to_structure_matrix(&k);
    let s1 = m([0, 1, 1, 0, -1, 2]);
    assert_eq!(are_isomorphic(&k, &s1, &s1).unwrap(), Some(Transform::identity(&k)));
    assert_eq!(are_isomorphic(&k, &s1, &m([0, 4, -4, -4, 4, 0])).unwrap(), None);
    // the right side is the t = -4 member of the (-t, t, t, -t) shape, which no other t reaches
    let pair = are_isomorphic(&k, &m([0, -4, 4, 4, -4, 0]), &m([0, 4, -4, -4, 4, 0])).unwrap();
    assert_eq!(pair, None);
    let s4 = m([0, 4, 4, 0, -4, 4]);
    let x = are_isomorphic(&k, &s4, &s1).unwrap().expect("4a = d² in both");
    assert!(is_witness(&k, &s4, &s1, &x));
}

#[test]
fn isomorphism_is_an_equivalence_on_ii1_over_f3() {
    let k = gf(3);
    let algebras: Vec<StructureMatrix<Fq>> = enumerate_type(&k, Some("II1"), None)
        .unwrap()
        .iter()
        .map(|s| s.to_structure_matrix(&k))
        .collect();
    let n = algebras.len();
    let mut iso = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if let Some(x) = are_isomorphic(&k, &algebras[i], &algebras[j]).unwrap() {
                assert_eq!(transform(&k, &algebras[i], &x).unwrap(), algebras[j]);
                iso[i * n + j] = true;
            }
        }
    }
    for i in 0..n {
        assert!(iso[i * n + i]);
        for j in 0..n {
            assert_eq!(iso[i * n + j], iso[j * n + i]);
            for l in 0..n {
                assert!(!(iso[i * n + j] && iso[j * n + l]) || iso[i * n + l]);
            }
        }
    }
}

#[test]
fn rank_and_type_are_invariant() {
    let k = gf(5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ec = enumerate_type(&k, None, None).unwrap();
    for _ in 0..300 {
        let s = &ec[rng.gen_range(0..ec.len())];
        let x = loop {
            let v: Vec<i64> = (0..4).map(|_| rng.gen_range(0..5)).collect();
            let x = Transform::from_ints(&k, [[v[0], v[1]], [v[2], v[3]]]);
            if x.is_invertible(&k) {
                break x;
            }
        };
        let m = s.to_structure_matrix(&k);
        let image = transform(&k, &m, &x).unwrap();
        assert_eq!(rank(&k, &image), rank(&k, &m));
        if let Some(s2) = image.as_sparams(&k) {
            assert_eq!(type_of(&k, &s2).unwrap(), type_of(&k, s).unwrap());
        }
    }
}

#[test]
fn sim1_class_counts() {
    for (q, n) in [(3, 2), (5, 2), (7, 2), (9, 2), (13, 2), (2, 1), (4, 1), (8, 1), (16, 1)] {
        let reps = rep_system(&gf(q), RelationId::Sim1).unwrap();
        assert_eq!(reps.representatives.len(), n, "F{q}");
    }
}

#[test]
fn rep_systems_partition_their_carriers() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let k = gf(q);
        for rel in RelationId::ALL {
            if !rel.allows_characteristic(k.characteristic()) {
                assert!(matches!(rep_system(&k, rel), Err(Error::Unsupported { .. })));
                continue;
            }
            let reps = rep_system(&k, rel).unwrap();
            let mut all: Vec<Fq> = reps.classes.iter().flat_map(|c| c.members.clone()).collect();
            all.sort();
            let mut expected = carrier(&k, rel).unwrap();
            expected.sort();
            assert_eq!(all, expected, "F{q} {rel}");
            for (i, c) in reps.classes.iter().enumerate() {
                assert_eq!(c.members[0], c.representative);
                for m in &c.members {
                    assert!(related(&k, rel, &c.representative, m).unwrap().related);
                    assert_eq!(reps.class_of(&k, m).unwrap(), c.representative);
                }
                for other in &reps.classes[i + 1..] {
                    assert!(!related(&k, rel, &c.representative, &other.representative).unwrap().related);
                }
            }
        }
    }
}

#[test]
fn relation_axioms_on_larger_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [11, 13, 16] {
        let k = gf(q);
        for rel in RelationId::ALL.into_iter().filter(|r| r.allows_characteristic(k.characteristic())) {
            let elems = carrier(&k, rel).unwrap();
            let rel_of = |a: &Fq, b: &Fq| related(&k, rel, a, b).unwrap().related;
            for a in &elems {
                assert!(rel_of(a, a));
                for b in &elems {
                    assert_eq!(rel_of(a, b), rel_of(b, a));
                }
            }
            for _ in 0..2000 {
                let pick = |r: &mut ChaCha8Rng| elems[r.gen_range(0..elems.len())];
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                assert!(!(rel_of(&a, &b) && rel_of(&b, &c)) || rel_of(&a, &c));
            }
        }
    }
}

#[test]
fn sim5_on_f3_has_singleton_carrier() {
    let k = gf(3);
    assert_eq!(carrier(&k, RelationId::Sim5).unwrap(), vec![k.one()]);
    assert!(matches!(
        related(&k, RelationId::Sim5, &k.one(), &k.from_i64(2)),
        Err(Error::CarrierViolation(_))
    ));
}

#[test]
fn relation_examples() {
    let f4 = gf(4);
    let w = f4.generator().unwrap();
    let d = related(&f4, RelationId::Sim2, &w, &f4.square(&w)).unwrap();
    assert_eq!(d.witness, Some(Witness::ArtinSchreier(w)));
    let reps = rep_system(&f4, RelationId::Sim2).unwrap();
    assert_eq!(reps.classes.iter().map(|c| c.members.len()).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(rep_system(&gf(8), RelationId::Sim3).unwrap().representatives, vec![Fq(1)]);
    assert_eq!(rep_system(&gf(2), RelationId::Sim4).unwrap().representatives, vec![Fq(1)]);

    let f2x = RationalFunctionsF2;
    let x = f2x.x();
    assert!(!related(&f2x, RelationId::Sim3, &f2x.one(), &x).unwrap().related);
    let t = f2x.parse_elem("X^3+X^2").unwrap();
    let d = related(&f2x, RelationId::Sim3, &t, &x).unwrap();
    assert!(d.related);
    assert!(verify_witness(&f2x, RelationId::Sim3, &t, &x, &d.witness.unwrap()));
    assert!(matches!(related(&f2x, RelationId::Sim2, &x, &x), Err(Error::Unsupported { .. })));

    let q = Rationals;
    let n = |s: &str| q.parse_elem(s).unwrap();
    assert!(!related(&q, RelationId::Sim1, &n("2"), &n("3")).unwrap().related);
    assert!(related(&q, RelationId::Sim1, &n("8"), &n("1/2")).unwrap().related);
    assert!(related(&q, RelationId::Sim5, &n("5"), &n("5")).unwrap().related);
    assert!(matches!(related(&q, RelationId::Sim5, &n("-4"), &n("1")), Err(Error::CarrierViolation(_))));
    assert!(matches!(related(&q, RelationId::Sim2, &n("1"), &n("1")), Err(Error::Unsupported { .. })));
}

#[test]
fn bounded_search_examples() {
    let mono = |d: usize| RatFn::from_poly(Gf2Poly::monomial(d));
    assert_eq!(
        bounded_refutation_search(RelationId::Sim2, &mono(3), &mono(5), 6).unwrap(),
        SearchOutcome::NoWitnessUpTo(6)
    );
    let t = RatFn::from_poly(Gf2Poly::from_bits(0b1011));
    match bounded_refutation_search(RelationId::Sim2, &t, &t, 0).unwrap() {
        SearchOutcome::Witness(x) => assert!(x.is_zero()),
        other => panic!("{other:?}"),
    }
    // t' = t + X² + X is reached by x = X
    let shift = RatFn::from_poly(Gf2Poly::from_bits(0b110));
    let t2 = RationalFunctionsF2.add(&t, &shift);
    match bounded_refutation_search(RelationId::Sim2, &t, &t2, 1).unwrap() {
        SearchOutcome::Witness(x) => {
            let f = RationalFunctionsF2;
            assert_eq!(f.add(&f.square(&x), &x), shift);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        bounded_refutation_search(RelationId::Sim2, &t, &t, 13),
        Err(Error::BoundTooLarge { .. })
    ));
    assert!(matches!(
        bounded_refutation_search(RelationId::Sim3, &t, &t, 2),
        Err(Error::Unsupported { .. })
    ));
}

//! Explicit isomorphisms between family members, checked against the
//! eight-equation system over F7.
use endoclass::algebra::SParams;
use endoclass::fields::{Field, FiniteField};
use endoclass::iso::{check_iso_system, Transform};

fn main() -> endoclass::Result<()> {
    let k = FiniteField::prime(7)?;
    let n = |v: i64| k.from_i64(v);
    let (zero, one) = (k.zero(), k.one());

    // S(0,a,a,0,-a,d) with 4a = d^2 goes to S(0,1,1,0,-1,2).
    let target = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]);
    for d in k.units()? {
        let a = k.div(&k.square(&d), &n(4))?;
        let s = SParams::new(zero, a, a, zero, k.neg(&a), d);
        let x = Transform::new(one, k.div(&k.sub(&d, &n(2)), &n(2))?, zero, a);
        println!("d = {}: {}", k.format_elem(&d), check_iso_system(&k, &s, &target, &x));
    }

    // S(0,-a,a,b,-a,0) goes to S(0,-t,t,t,-t,0) with t = b^2/a.
    for a in k.units()? {
        let b = n(3);
        let t = k.div(&k.square(&b), &a)?;
        let s = SParams::new(zero, k.neg(&a), a, b, k.neg(&a), zero);
        let s2 = SParams::new(zero, k.neg(&t), t, t, k.neg(&t), zero);
        let x = Transform::new(k.div(&b, &t)?, zero, zero, k.div(&a, &t)?);
        println!("a = {}, b = 3: {}", k.format_elem(&a), check_iso_system(&k, &s, &s2, &x));
    }
    Ok(())
}

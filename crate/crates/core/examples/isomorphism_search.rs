//! Searching GL2 for isomorphisms and checking the eight-equation system.
//! The first pair below is not isomorphic: S(0,-t,t,t,-t,0) never is
//! isomorphic to S(0,4,-4,-4,4,0) unless t = -4.
use endoclass::algebra::SParams;
use endoclass::fields::{Field, FiniteField};
use endoclass::iso::{are_isomorphic, check_iso_system, transform, Transform};

fn show(k: &FiniteField, x: &Transform<endoclass::fields::Fq>) -> String {
    let r = x.to_rows().map(|r| r.map(|v| k.format_elem(&v)));
    format!("(({}, {}), ({}, {}))", r[0][0], r[0][1], r[1][0], r[1][1])
}

fn main() -> endoclass::Result<()> {
    let k = FiniteField::prime(5)?;
    let s1 = SParams::from_ints(&k, [0, -4, 4, 4, -4, 0]);
    let s2 = SParams::from_ints(&k, [0, 4, -4, -4, 4, 0]);
    match are_isomorphic(&k, &s1.to_structure_matrix(&k), &s2.to_structure_matrix(&k))? {
        Some(x) => {
            println!("S(0,-4,4,4,-4,0) ~ S(0,4,-4,-4,4,0) over F5 via X = {}", show(&k, &x));
            println!("eight equations hold: {}", check_iso_system(&k, &s1, &s2, &x));
        }
        None => println!("not isomorphic"),
    }

    let a = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]).to_structure_matrix(&k);
    let b = SParams::from_ints(&k, [0, 4, -4, -4, 4, 0]).to_structure_matrix(&k);
    println!("S(0,1,1,0,-1,2) vs S(0,4,-4,-4,4,0): {:?}", are_isomorphic(&k, &a, &b)?.map(|x| show(&k, &x)));

    // Moving an algebra and finding its way back.
    let x = Transform::from_ints(&k, [[2, 1], [3, 3]]);
    let moved = transform(&k, &a, &x)?;
    let back = are_isomorphic(&k, &moved, &a)?.expect("same orbit");
    println!("recovered X = {}", show(&k, &back));
    Ok(())
}

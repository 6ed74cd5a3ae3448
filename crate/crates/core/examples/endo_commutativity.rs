//! Endo-commutativity, straightness and types.
use endoclass::algebra::{
    format_table, is_curled, is_endo_commutative_definitional, is_endo_commutative_straight,
    to_straight_form, type_of, ii1_subclass, SParams, StructureMatrix,
};
use endoclass::fields::{Field, FiniteField};
use endoclass::iso::transform;

fn main() -> endoclass::Result<()> {
    let k = FiniteField::prime(5)?;
    let s = SParams::from_ints(&k, [0, 1, 1, 0, -1, 2]);
    let m = s.to_structure_matrix(&k);
    println!("{}", format_table(&k, &m));
    println!("closed form: {}", is_endo_commutative_straight(&k, &s));
    println!("x^2 y^2 = (xy)^2 for all x, y: {}", is_endo_commutative_definitional(&k, &m)?);
    println!("type {}, subclass {}", type_of(&k, &s)?, ii1_subclass(&k, &s)?);

    // A non-straight presentation, reduced to S-form.
    let a = StructureMatrix::from_ints(&k, [[1, 0], [0, 1], [0, 0], [0, 0]]);
    println!("\ne^2 = e, f^2 = f, ef = fe = 0; curled: {}", is_curled(&k, &a)?);
    if let Some((s, x)) = to_straight_form(&k, &a)? {
        let shown: Vec<String> = s.to_array().iter().map(|v| k.format_elem(v)).collect();
        println!("straight form S({}) via X = {:?}", shown.join(","), x.to_rows().map(|r| r.map(|v| k.format_elem(&v))));
        assert_eq!(transform(&k, &a, &x)?, s.to_structure_matrix(&k));
    }
    Ok(())
}

//! Arithmetic in the supported coefficient fields.
use endoclass::fields::{AnyField, Field, FiniteField, RationalFunctionsF2, Rationals};

fn main() -> endoclass::Result<()> {
    let f9 = FiniteField::gf(9)?;
    let w = f9.generator().expect("F9 is an extension");
    println!("{}: w^2 = {}, 1/(w+1) = {}", f9.descriptor(), f9.format_elem(&f9.square(&w)), {
        let x = f9.inv(&f9.add(&w, &f9.one()))?;
        f9.format_elem(&x)
    });
    let squares: Vec<String> = f9
        .units()?
        .iter()
        .filter(|x| f9.is_square(x))
        .map(|x| f9.format_elem(x))
        .collect();
    println!("squares in F9*: {}", squares.join(" "));

    let q = Rationals;
    let x = q.parse_elem("-3/4")?;
    println!("Q: (-3/4)^2 = {}, sqrt(9/16) = {:?}", q.format_elem(&q.square(&x)), q.square_root(&q.parse_elem("9/16")?).map(|r| q.format_elem(&r)));

    let k = RationalFunctionsF2;
    let t = k.parse_elem("(X^2+1)/X")?;
    println!("F2(X): t + 1/t = {}", k.format_elem(&k.add(&t, &k.inv(&t)?)));

    // Descriptors parse from strings.
    for spec in ["F7", "F2^3/x^3+x^2+1", "Q", "F2(X)"] {
        let field: AnyField = spec.parse()?;
        println!("{spec:>16} -> {}", field.descriptor());
    }
    Ok(())
}

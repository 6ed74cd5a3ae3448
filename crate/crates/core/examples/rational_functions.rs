//! sim3 classes over F2(X) and bounded searches for sim2 / sim4.
use endoclass::equiv::{bounded_refutation_search, related, rep_system, RelationId};
use endoclass::fields::{Field, RationalFunctionsF2};

fn main() -> endoclass::Result<()> {
    let k = RationalFunctionsF2;
    let reps = rep_system(&k, RelationId::Sim3)?;
    for s in ["X^3+X^2", "X^2+1", "1/X", "(X^4+X)/(X^2+X+1)"] {
        let t = k.parse_elem(s)?;
        let class = reps.class_of(&k, &t)?;
        println!("{s:>20} ~3 {}", k.format_elem(&class));
    }
    let one_x = related(&k, RelationId::Sim3, &k.one(), &k.x())?;
    println!("1 ~3 X: {}", one_x.related);

    let (a, b) = (k.parse_elem("X^3")?, k.parse_elem("X^5")?);
    println!("X^3 ~2 X^5 up to degree 6: {:?}", bounded_refutation_search(RelationId::Sim2, &a, &b, 6)?);
    let c = k.parse_elem("X^3+X^2+X")?;
    println!("X^3 ~2 X^3+X^2+X: {:?}", bounded_refutation_search(RelationId::Sim2, &a, &c, 2)?);
    Ok(())
}

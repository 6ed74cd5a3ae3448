//! The relations sim1..sim5 and their representative systems.
use endoclass::equiv::{rep_system, related, RelationId};
use endoclass::fields::{Field, FiniteField, Rationals};

fn main() -> endoclass::Result<()> {
    for (q, rel) in [(7, RelationId::Sim1), (7, RelationId::Sim5), (8, RelationId::Sim2), (8, RelationId::Sim3), (8, RelationId::Sim4)] {
        let k = FiniteField::gf(q)?;
        let reps = rep_system(&k, rel)?;
        let classes: Vec<String> = reps
            .classes
            .iter()
            .map(|c| {
                let m: Vec<String> = c.members.iter().map(|x| k.format_elem(x)).collect();
                format!("{{{}}}", m.join(", "))
            })
            .collect();
        println!("{rel} over {}: {}", k.descriptor(), classes.join(" "));
    }

    let qq = Rationals;
    for (a, b) in [(2, 8), (2, 3), (2, 7)] {
        let d1 = related(&qq, RelationId::Sim1, &qq.from_i64(a), &qq.from_i64(b))?;
        let d5 = related(&qq, RelationId::Sim5, &qq.from_i64(a), &qq.from_i64(b))?;
        println!("Q: {a} sim1 {b}: {}, {a} sim5 {b}: {}", d1.related, d5.related);
    }
    Ok(())
}

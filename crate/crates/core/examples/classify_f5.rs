//! Classify type-II1 algebras over a small field and compare with the
//! predicted families. Pass a field spec to override F5.
use endoclass::classify::{enumerate_subclasses, verify_classification};
use endoclass::fields::FiniteField;

fn main() -> endoclass::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "F5".into());
    let k = FiniteField::new(&spec.parse()?)?;
    let inv = enumerate_subclasses(&k)?;
    for (i, list) in inv.direct_scan.iter().enumerate() {
        println!("subclass {}: {} algebras", i + 1, list.len());
    }
    println!("closed forms agree with scan: {}\n", inv.agrees());
    let report = verify_classification(&k)?;
    print!("{}", report.summary_table());
    Ok(())
}

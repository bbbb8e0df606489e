//! Root systems, pairings and classical character data.
//!
//! ```bash
//! cargo run -p weylmod --example roots_and_weights
//! ```

use weylmod::rootsys::RootSystem;

fn main() -> weylmod::Result<()> {
    for name in ["B2", "C4", "G2"] {
        let rs = RootSystem::build(name.parse()?)?;
        println!("== {name}: {} positive roots", rs.positive_roots.len());
        println!("   cartan = {:?}", rs.cartan);
        let labels: Vec<String> = rs.positive_roots.iter().map(|r| r.label()).collect();
        println!("   roots  = {}", labels.join(" "));
    }

    // The C4 example weight: the fourth fundamental weight.
    let c4 = RootSystem::build("C4".parse()?)?;
    let omega4 = c4.parse_weight("0001")?;
    println!("\ndim V(ω₄) over C4 = {}", c4.weyl_dimension(&omega4)?);
    for root in &c4.positive_roots {
        let v = c4.pairing(&omega4, root);
        if v != 0 {
            println!("  <ω₄, {}^∨> = {v}", root.label());
        }
    }

    // Freudenthal weight multiplicities.
    let mults = c4.dominant_multiplicities(&omega4)?;
    println!("\ndominant weight multiplicities of V(ω₄):");
    for (w, m) in &mults {
        println!("  {w}  ×{m}");
    }
    let full = c4.weight_multiplicities(&omega4)?;
    let total: i64 = full.values().sum();
    println!("total mass = {total} (= Weyl dimension)");
    Ok(())
}

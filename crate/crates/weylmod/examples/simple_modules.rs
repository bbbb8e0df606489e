//! Simple modules mod p as quotients by the radical of the contravariant
//! form: dimensions, surviving weights, generation by lowering operators.
//!
//! ```bash
//! cargo run -p weylmod --example simple_modules
//! ```

use std::sync::Arc;

use weylmod::highestweight::{ModularSimple, WeylModule};
use weylmod::rootsys::{characteristic_warning, RootSystem, Weight};

fn show(name: &str, coords: Vec<i64>, p: u64) -> weylmod::Result<()> {
    let rs = Arc::new(RootSystem::build(name.parse()?)?);
    if let Some(w) = characteristic_warning(rs.spec, p) {
        println!("note: {w}");
    }
    let lam = Weight(coords);
    let module = WeylModule::build(rs, &lam, 512)?;
    let simple = ModularSimple::build(&module, p)?;
    println!(
        "{name}, λ = {lam}, p = {p}: dim V = {}, dim L = {}",
        module.dim, simple.dim
    );
    for (v, l) in module.spaces.iter().zip(&simple.spaces) {
        let marker = if l.dim == 0 { " (killed)" } else { "" };
        println!(
            "  weight {:>12}: V {} → L {}{marker}",
            v.weight.to_string(),
            v.dim,
            l.dim
        );
    }
    simple.verify_generated(&module)?;
    println!("  generated from the highest weight line by lowering operators ✓");
    Ok(())
}

fn main() -> weylmod::Result<()> {
    // The paper's B2 example: dim V(ω) = 5 and dim L(ω) = 4, with the zero
    // weight failing to survive.
    show("B2", vec![1, 0], 2)?;
    println!();
    // The C4 example: dim V(ω₄) = 42, dim L(ω₄) = 16.
    show("C4", vec![0, 0, 0, 1], 2)?;
    Ok(())
}

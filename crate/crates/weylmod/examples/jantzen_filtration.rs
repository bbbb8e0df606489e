//! The Jantzen sum formula Σ_{i>0} ch V(λ)^i as a virtual Weyl character,
//! cross-checked against the Smith elementary divisors of the contravariant
//! Gram matrices.
//!
//! ```bash
//! cargo run -p weylmod --example jantzen_filtration
//! ```

use std::sync::Arc;

use weylmod::highestweight::WeylModule;
use weylmod::jantzen::{jantzen_gram_report, jantzen_sum};
use weylmod::rootsys::{RootSystem, Weight};

fn show(name: &str, coords: Vec<i64>, p: u64) -> weylmod::Result<()> {
    let rs = Arc::new(RootSystem::build(name.parse()?)?);
    let lam = Weight(coords);
    let sum = jantzen_sum(&rs, &lam, p)?;
    println!("{name}, λ = {lam}, p = {p}:");
    if sum.is_zero() {
        println!("  Σ ch V^i = 0 (the Weyl module is simple mod p)");
    } else {
        let terms: Vec<String> = sum
            .terms()
            .iter()
            .map(|(w, c)| format!("{c}·χ({w})"))
            .collect();
        println!("  Σ ch V^i = {}", terms.join(" + "));
    }
    let module = WeylModule::build(rs, &lam, 512)?;
    let report = jantzen_gram_report(&module, p)?;
    println!("  Gram valuations per weight:");
    for (w, v) in report.gram.iter().filter(|(_, &v)| v > 0) {
        println!("    {w} ↦ {v}");
    }
    println!(
        "  agrees with the weight expansion of the sum: {}",
        report.ok
    );
    Ok(())
}

fn main() -> weylmod::Result<()> {
    show("A1", vec![4], 2)?;
    println!();
    show("B2", vec![1, 0], 2)?;
    println!();
    show("C4", vec![0, 0, 0, 1], 2)?;
    Ok(())
}

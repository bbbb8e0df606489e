//! Character lattices X(G_x) = Σ ℤ p^{n_i} ω_{α_i} of standard parabolic
//! subgroup schemes, and the very-ampleness criterion for the induced line
//! bundles.
//!
//! ```bash
//! cargo run -p weylmod --example character_lattices
//! ```

use std::sync::Arc;

use weylmod::parabolic::{
    character_lattice, is_very_ample, simple_exponents, ParabolicStandardSpec,
};
use weylmod::rootsys::{RootSystem, Weight};

fn main() -> weylmod::Result<()> {
    // The stabilizer of the unseparated incidence variety inside
    // ℙ(V)×ℙ(V*)^{(r)} for SL₄: λ = ω₁ + p^r ω₃.
    let (p, r) = (2u64, 2u32);
    let pr = p.pow(r) as i64;
    let rs = Arc::new(RootSystem::build("A3".parse()?)?);
    let lambda = Weight(vec![1, 0, pr]);
    let exps = simple_exponents(&rs, &lambda, p)?;
    println!("A3, λ = ω₁ + {pr}ω₃, p = {p}: simple exponents = {exps:?}");
    let spec = ParabolicStandardSpec::from_simple_exponents(&exps);
    let lattice = character_lattice(&rs, &spec, p)?;
    println!("X(G_x) generators:");
    for (i, n, pw) in &lattice.generators {
        println!("  {pw}·ω_{} (thickening level {n})", i + 1);
    }

    // The very-ampleness grid: χ = a ω₁ + b p^r ω₃ works iff a, b > 0.
    println!("\nvery ample?  (rows a = -1..2, cols b = -1..2)");
    for a in -1..=2i64 {
        let mut row = String::new();
        for b in -1..=2i64 {
            let chi = Weight(vec![a, 0, b * pr]);
            let va = is_very_ample(&rs, &chi, &spec, p)?;
            row.push_str(if va { "  yes" } else { "   no" });
        }
        println!("a={a:>2}: {row}");
    }

    // A character outside the lattice is rejected outright.
    let bad = Weight(vec![1, 0, 2]);
    match is_very_ample(&rs, &bad, &spec, p) {
        Err(e) => println!("\nχ = {bad}: {e}"),
        Ok(_) => unreachable!("2 is not divisible by p^r = 4"),
    }
    Ok(())
}

//! Stabilizer exponent vectors of the highest weight line in ℙ(L(λ)):
//! the 16-row C4 table, the B2 example with its labeling note, and the
//! exceptional/standard dichotomy.
//!
//! ```bash
//! cargo run -p weylmod --example stabilizer_table
//! ```

use std::sync::Arc;

use weylmod::chevalley::StructureConstants;
use weylmod::highestweight::ModularContext;
use weylmod::parabolic::{
    b2_report, compare_with_c4_table, is_exceptional, orbit_dimension, simple_exponents,
    stabilizer_exponents,
};
use weylmod::rootsys::{RootSystem, Weight};

fn main() -> weylmod::Result<()> {
    // C4, λ = ω₄, p = 2: an exceptional parabolic subgroup scheme.
    let rs = Arc::new(RootSystem::build("C4".parse()?)?);
    let lam = Weight(vec![0, 0, 0, 1]);
    let mut ctx = ModularContext::new(rs.clone(), 2, 512)?;
    let pair = ctx.get(&lam)?;
    let sc = StructureConstants::compute(rs.clone());
    let ev = stabilizer_exponents(&pair.0, &pair.1, &sc)?;
    println!("C4, λ = ω₄, p = 2 — exponent table:");
    for (label, e) in ev.labeled(&rs) {
        println!("  {label}  n = {e}");
    }
    println!("orbit dimension = {}", orbit_dimension(&ev));
    println!("embedding: X ↪ ℙ({})", pair.1.dim - 1);
    println!(
        "exceptional (not an intersection of thickenings): {}",
        is_exceptional(&rs, &ev)
    );
    let cmp = compare_with_c4_table(&rs, &ev)?;
    println!("matches the embedded reference table: {}", cmp.matches);

    // The closed form on simple roots needs no module at all.
    let closed = simple_exponents(&rs, &lam, 2)?;
    println!("simple-root exponents ν₂(⟨λ, αᵢ^∨⟩) = {closed:?}");

    // B2: the other exceptional example, with the labeling caveat.
    let b2 = Arc::new(RootSystem::build("B2".parse()?)?);
    let mut ctx = ModularContext::new(b2.clone(), 2, 512)?;
    let pair = ctx.get(&Weight(vec![1, 0]))?;
    let sc = StructureConstants::compute(b2.clone());
    let ev = stabilizer_exponents(&pair.0, &pair.1, &sc)?;
    let report = b2_report(&b2, &ev)?;
    println!("\nB2, λ = ω (long fundamental), p = 2:");
    for (label, e) in &report.computed {
        println!("  {label}  n = {e}");
    }
    println!("note: {}", report.label_note);
    Ok(())
}

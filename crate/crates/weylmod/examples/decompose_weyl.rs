//! Composition multiplicities [V(λ) : L(μ)] by character subtraction, with
//! the dimension bookkeeping identity.
//!
//! ```bash
//! cargo run -p weylmod --example decompose_weyl
//! ```

use std::sync::Arc;

use weylmod::highestweight::{decompose, ModularContext};
use weylmod::rootsys::{RootSystem, Weight};

fn show(name: &str, coords: Vec<i64>, p: u64) -> weylmod::Result<()> {
    let rs = Arc::new(RootSystem::build(name.parse()?)?);
    let lam = Weight(coords);
    let mut ctx = ModularContext::new(rs.clone(), p, 2048)?;
    let factors = decompose(&mut ctx, &lam)?;
    let dim_v = rs.weyl_dimension(&lam)?;
    println!("{name}, p = {p}: V({lam}) of dimension {dim_v} decomposes as");
    let mut total = 0u64;
    for (mu, c) in &factors {
        let dim_l = ctx.get(mu)?.1.dim;
        total += (*c as u64) * dim_l;
        println!("  {c} × L({mu})   (dim {dim_l})");
    }
    println!("  bookkeeping: Σ mult·dim = {total}");
    Ok(())
}

fn main() -> weylmod::Result<()> {
    show("B2", vec![1, 0], 2)?; // V(ω) = L(ω) + L(0)
    println!();
    show("C4", vec![0, 0, 0, 1], 2)?; // V(ω₄) = L(ω₄) + L(ω₂), 42 = 16 + 26
    println!();
    show("A2", vec![1, 1], 3)?; // the adjoint module at p = 3
    Ok(())
}

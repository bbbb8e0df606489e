//! The minimal admissible ℤ-form of a Weyl module: lattice bases per weight
//! space, contravariant Gram matrices, divided-power action matrices.
//!
//! ```bash
//! cargo run -p weylmod --example weyl_module_lattice
//! ```

use std::sync::Arc;

use weylmod::highestweight::WeylModule;
use weylmod::rootsys::{RootSystem, Weight};

fn main() -> weylmod::Result<()> {
    // sl2 first: V(4) has the divided basis f^(k)·v with ⟨f^(k)v, f^(k)v⟩ = C(4,k).
    let a1 = Arc::new(RootSystem::build("A1".parse()?)?);
    let module = WeylModule::build(a1, &Weight(vec![4]), 512)?;
    println!("V(4) over A1, dim {}:", module.dim);
    for ws in &module.spaces {
        println!(
            "  weight {:>3}: Gram = {:?}",
            ws.weight.to_string(),
            ws.gram[(0, 0)]
        );
    }

    // B2, the five-dimensional module of the paper's first example.
    let b2 = Arc::new(RootSystem::build("B2".parse()?)?);
    let module = WeylModule::build(b2.clone(), &Weight(vec![1, 0]), 512)?;
    println!("\nV(ω) over B2, dim {}:", module.dim);
    for (idx, ws) in module.spaces.iter().enumerate() {
        println!("  space {idx}: weight {} (dim {})", ws.weight, ws.dim);
    }

    // Contravariance as matrices: Fᵀ·Gram = Gram·E for every stored pair.
    let mut checked = 0;
    for &(src, i, m) in module.f_keys() {
        let tgt = module.shifted_space(src, i, m, -1).unwrap();
        let f = module.f_action(src, i, m).unwrap();
        let e = module.e_action(tgt, i, m).unwrap();
        assert_eq!(
            f.transpose().mul(module.gram(tgt)),
            module.gram(src).mul(&e)
        );
        checked += 1;
    }
    println!("contravariance ⟨f x, y⟩ = ⟨x, e y⟩ verified on {checked} action matrices");
    Ok(())
}

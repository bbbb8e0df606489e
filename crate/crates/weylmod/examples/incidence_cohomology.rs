//! Line-bundle cohomology on the unseparated incidence variety
//! Z(Σ xᵢ^q yᵢ) ⊂ ℙⁿ×ℙⁿ: the closed forms, the brute-force oracle, the
//! canonical bundle and Serre duality.
//!
//! ```bash
//! cargo run -p weylmod --example incidence_cohomology
//! ```

use weylmod::incidence::{
    brute_force_h0, canonical_bidegree, cohomology, defining_section, effective_cohomology,
    BiDegree, IncidenceSpec,
};

fn main() -> weylmod::Result<()> {
    let spec = IncidenceSpec::new(2, 3, 1)?;
    println!(
        "X = Z({}) in P2 x P2, dim X = {}",
        defining_section(spec)?,
        spec.dim()
    );

    // Effective bundles: closed form against the oracle.
    println!("\nh⁰ closed form vs brute force:");
    for (a, b) in [(3, 1), (0, 1), (2, 2), (0, 0)] {
        let d = BiDegree { a, b };
        let table = effective_cohomology(spec, d)?;
        let oracle = brute_force_h0(spec, d, 20_000)?;
        println!(
            "  L({a}, {b}): h⁰ = {} (oracle {oracle}), h¹ = {}, h² = {}, h³ = {}",
            table.h(0),
            table.h(1),
            table.h(2),
            table.h(3)
        );
    }

    // The canonical bundle and Serre duality h^{2n−1}(ω_X) = h⁰(O_X) = 1.
    let k = canonical_bidegree(spec)?;
    println!("\nω_X has bidegree ({}, {})", k.a, k.b);
    let t = cohomology(spec, k, 20_000)?;
    println!(
        "h^i(ω_X): {:?}",
        (0..=spec.dim()).map(|i| t.h(i)).collect::<Vec<_>>()
    );

    // A bundle with cohomology in the middle: the b-negative strand.
    let d = BiDegree { a: 4, b: -2 };
    let t = cohomology(spec, d, 20_000)?;
    println!(
        "\nL({}, {}): status {:?}, h^i = {:?}",
        d.a,
        d.b,
        t.status,
        (0..=spec.dim()).map(|i| t.h(i)).collect::<Vec<_>>()
    );
    println!("χ(L) = {}", t.euler_characteristic());
    Ok(())
}

//! Kodaira-type vanishing on the unseparated incidence variety: for every
//! ample L(a, b̄) the twist L ⊗ ω_X has no higher cohomology.
//!
//! ```bash
//! cargo run -p weylmod --example kodaira_vanishing
//! ```

use weylmod::incidence::{
    canonical_bidegree, is_ample, kodaira_vanishing, BiDegree, IncidenceSpec,
};

fn main() -> weylmod::Result<()> {
    for (p, r) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let spec = IncidenceSpec::new(2, p, r)?;
        let k = canonical_bidegree(spec)?;
        println!("n = 2, p = {p}, r = {r}: ω_X = O({}, {})", k.a, k.b);
        for a in 1..=3i64 {
            for b in 1..=3i64 {
                let d = BiDegree { a, b };
                assert!(is_ample(d));
                let ok = kodaira_vanishing(spec, d, 20_000)?;
                println!("  L({a}, {b}) ⊗ ω_X has vanishing higher cohomology: {ok}");
            }
        }
    }
    // Non-ample input is rejected: the statement is about ample bundles.
    let spec = IncidenceSpec::new(2, 2, 1)?;
    match kodaira_vanishing(spec, BiDegree { a: 0, b: 1 }, 20_000) {
        Err(e) => println!("\nL(0, 1): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

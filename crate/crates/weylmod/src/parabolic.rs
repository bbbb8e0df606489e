//! Stabilizer exponent vectors of B-stable lines, parabolic subgroup
//! schemes, character lattices and the very-ampleness criterion.
//!
//! A parabolic subgroup scheme is encoded here by its exponent vector
//! (n_γ)_{γ>0}: the intersection of its distribution algebra with the
//! divided-power algebra of the root subgroup U_{−γ} is spanned by
//! X_{−γ}^{(m)} for m < p^{n_γ}, with n_γ = ∞ meaning the whole subgroup.
//! For the stabilizer of the highest weight line in ℙ(L(λ)) the simple-root
//! exponents are the closed form ν_p(⟨λ, α_i^∨⟩); the non-simple ones are
//! genuine divided-power computations on the admissible lattice, reduced
//! mod p and tested against the radical of the contravariant form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::highestweight::{ModularSimple, WeylModule};
use crate::rootsys::{is_prime, nu_p, NatInf, RootSystem, Weight};

/// Exponents n_γ ∈ ℕ∪{∞}, one per positive root, aligned with
/// `RootSystem::positive_roots`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector {
    pub entries: Vec<NatInf>,
}

impl ExponentVector {
    /// (coefficient-string label, exponent) rows in root order, matching the
    /// table notation of the C4 example.
    pub fn labeled(&self, rs: &RootSystem) -> Vec<(String, NatInf)> {
        rs.positive_roots
            .iter()
            .zip(&self.entries)
            .map(|(r, &e)| (r.label(), e))
            .collect()
    }

    /// Restriction to the simple roots, in simple-root order.
    pub fn simple_part(&self, rs: &RootSystem) -> Vec<NatInf> {
        (0..rs.rank())
            .map(|i| self.entries[rs.simple_position(i)])
            .collect()
    }
}

/// Simple-root exponents of the stabilizer of the B-stable line in
/// ℙ(L(λ)): the closed form n_i = ν_p(⟨λ, α_i^∨⟩), no module required.
pub fn simple_exponents(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<Vec<NatInf>> {
    rs.validate_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!(
            "weight {lambda} is not dominant"
        )));
    }
    (0..rs.rank())
        .map(|i| nu_p(rs.pairing_simple(lambda, i), p))
        .collect()
}

/// Full exponent vector from the simple module: for each positive root γ,
/// the minimal n with X_{−γ}^{(p^n)} v̄ ≠ 0 in L(λ), or ∞ when every divided
/// power kills the highest weight line. The vanishing pattern is checked to
/// be an initial segment {m < p^n} — anything else cannot be the
/// distribution algebra of a subgroup scheme and is reported as an internal
/// inconsistency.
pub fn stabilizer_exponents(
    module: &WeylModule,
    simple: &ModularSimple,
    sc: &StructureConstants,
) -> Result<ExponentVector> {
    let rs = module.root_system();
    let p = simple.p;
    let mut entries = Vec::with_capacity(rs.positive_roots.len());
    for (gi, root) in rs.positive_roots.iter().enumerate() {
        let bound = rs.pairing(&module.lambda, root);
        if bound <= 0 {
            // X_{−γ}^{(m)} v = 0 for all m ≥ 1 already over ℚ.
            entries.push(NatInf::Infinity);
            continue;
        }
        let op = module.root_lowering_operator(sc, gi)?;
        let powers = op.divided_power_sequence(module, bound as u64)?;
        // Vanishing pattern of X^{(m)} v̄ in L(λ), m = 1..bound.
        let mut nonzero = Vec::with_capacity(bound as usize);
        for snapshot in &powers {
            let alive = match snapshot.get(&0) {
                Some((tgt, mat)) => {
                    let v: Vec<u64> = mat.mod_p(p).mul_vec(&[1u64]);
                    simple.is_nonzero_in_quotient(*tgt, &v)
                }
                None => false,
            };
            nonzero.push(alive);
        }
        let exponent = {
            let mut found = None;
            let mut pn: u64 = 1;
            let mut n: u64 = 0;
            while pn <= bound as u64 {
                if nonzero[(pn - 1) as usize] {
                    found = Some(n);
                    break;
                }
                n += 1;
                pn = pn.saturating_mul(p);
            }
            found
        };
        match exponent {
            Some(n) => {
                let pn = p.pow(n as u32);
                if nonzero.iter().take((pn - 1) as usize).any(|&b| b) {
                    return Err(Error::Internal(format!(
                        "exponent pattern at root {} is not an initial segment below p^{n}",
                        root.label()
                    )));
                }
                entries.push(NatInf::Finite(n));
            }
            None => {
                if nonzero.iter().any(|&b| b) {
                    return Err(Error::Internal(format!(
                        "root {}: nonvanishing divided power without a nonvanishing p-power",
                        root.label()
                    )));
                }
                entries.push(NatInf::Infinity);
            }
        }
    }
    Ok(ExponentVector { entries })
}

/// Exponent vector of the standard intersection ∩ G_{n_i}P(α_i): each
/// positive root takes the minimum of the simple exponents over its support.
pub fn standard_closure(rs: &RootSystem, simple: &[NatInf]) -> ExponentVector {
    assert_eq!(simple.len(), rs.rank());
    let entries = rs
        .positive_roots
        .iter()
        .map(|root| {
            root.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, _)| simple[i])
                .min()
                .expect("positive roots have nonempty support")
        })
        .collect();
    ExponentVector { entries }
}

/// A parabolic subgroup scheme is exceptional when it is not the standard
/// intersection of Frobenius thickenings of maximal parabolics.
pub fn is_exceptional(rs: &RootSystem, ev: &ExponentVector) -> bool {
    let closure = standard_closure(rs, &ev.simple_part(rs));
    ev != &closure
}

/// dim G/G_x: the number of positive roots with finite exponent.
pub fn orbit_dimension(ev: &ExponentVector) -> usize {
    ev.entries.iter().filter(|e| e.is_finite()).count()
}

/// Dimension of ℙ(L(λ)), i.e. dim L(λ) − 1; λ = 0 is degenerate.
pub fn embedding_dimension(simple: &ModularSimple) -> Result<u64> {
    if simple.dim < 2 {
        return Err(Error::InvalidInput(format!(
            "L({}) is a point in projective space; no embedding dimension",
            simple.lambda
        )));
    }
    Ok(simple.dim - 1)
}

/// P̃ = G_{n_1}P(α_1) ∩ … ∩ G_{n_m}P(α_m): the simple roots with finite
/// thickening level; every other simple root has exponent ∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicStandardSpec {
    /// Map simple-root index → n_i.
    pub finite: BTreeMap<usize, u64>,
}

impl ParabolicStandardSpec {
    pub fn from_simple_exponents(exponents: &[NatInf]) -> Self {
        let finite = exponents
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.finite().map(|n| (i, n)))
            .collect();
        ParabolicStandardSpec { finite }
    }

    pub fn simple_exponents(&self, rank: usize) -> Vec<NatInf> {
        (0..rank)
            .map(|i| {
                self.finite
                    .get(&i)
                    .map_or(NatInf::Infinity, |&n| NatInf::Finite(n))
            })
            .collect()
    }
}

/// X(G_x) = Σ ℤ p^{n_i} ω_{α_i} over the finite part of the spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterLattice {
    pub p: u64,
    /// (simple index, n_i, p^{n_i}) per generator.
    pub generators: Vec<(usize, u64, BigInt)>,
    rank: usize,
}

impl CharacterLattice {
    /// Membership: every coordinate on a generator index divisible by the
    /// p-power, all other coordinates zero.
    pub fn contains(&self, chi: &Weight) -> bool {
        if chi.rank() != self.rank {
            return false;
        }
        let mut allowed = vec![None; self.rank];
        for (i, _, pw) in &self.generators {
            allowed[*i] = Some(pw.clone());
        }
        chi.0.iter().zip(&allowed).all(|(&c, a)| match a {
            Some(pw) => (BigInt::from(c) % pw).is_zero(),
            None => c == 0,
        })
    }

    /// Coefficients a_i with χ = Σ a_i p^{n_i} ω_{α_i}, when χ lies in the
    /// lattice.
    pub fn coefficients(&self, chi: &Weight) -> Option<Vec<BigInt>> {
        if !self.contains(chi) {
            return None;
        }
        Some(
            self.generators
                .iter()
                .map(|(i, _, pw)| BigInt::from(chi.0[*i]) / pw)
                .collect(),
        )
    }
}

pub fn character_lattice(
    rs: &RootSystem,
    spec: &ParabolicStandardSpec,
    p: u64,
) -> Result<CharacterLattice> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let generators = spec
        .finite
        .iter()
        .map(|(&i, &n)| (i, n, BigInt::from(p).pow(n as u32)))
        .collect();
    Ok(CharacterLattice {
        p,
        generators,
        rank: rs.rank(),
    })
}

/// Character lattice from a full exponent vector, refusing exceptional
/// parabolics: the classification of characters is proved for the standard
/// intersection form only.
pub fn character_lattice_checked(
    rs: &RootSystem,
    ev: &ExponentVector,
    p: u64,
) -> Result<CharacterLattice> {
    if is_exceptional(rs, ev) {
        return Err(Error::Unsupported(
            "exceptional parabolic subgroup scheme: the character lattice is only \
             established for standard intersections of thickenings"
                .into(),
        ));
    }
    let spec = ParabolicStandardSpec::from_simple_exponents(&ev.simple_part(rs));
    character_lattice(rs, &spec, p)
}

/// Very-ampleness of L_P̃(χ) on G/P̃: writing χ = Σ a_i p^{n_i} ω_{α_i},
/// the bundle is very ample iff every a_i > 0 (equivalently ample).
pub fn is_very_ample(
    rs: &RootSystem,
    chi: &Weight,
    spec: &ParabolicStandardSpec,
    p: u64,
) -> Result<bool> {
    let lattice = character_lattice(rs, spec, p)?;
    let coeffs = lattice.coefficients(chi).ok_or_else(|| {
        Error::InvalidInput(format!(
            "{chi} is not a character of the parabolic subgroup scheme"
        ))
    })?;
    Ok(!coeffs.is_empty() && coeffs.iter().all(|a| a.is_positive()))
}

/// The 16-row stabilizer table of the C4 example (λ = ω₄, p = 2), in the
/// coefficient-string labeling.
pub fn c4_reference_table() -> Vec<(&'static str, NatInf)> {
    use NatInf::{Finite, Infinity};
    vec![
        ("1000", Infinity),
        ("1100", Infinity),
        ("1110", Infinity),
        ("0100", Infinity),
        ("0110", Infinity),
        ("0010", Infinity),
        ("0001", Finite(0)),
        ("0011", Finite(1)),
        ("0111", Finite(1)),
        ("1111", Finite(1)),
        ("0021", Finite(0)),
        ("0121", Finite(1)),
        ("1121", Finite(1)),
        ("0221", Finite(0)),
        ("1221", Finite(1)),
        ("2221", Finite(0)),
    ]
}

#[derive(Debug, Serialize)]
pub struct TableComparison {
    /// (root label, computed, reference) triples in root order.
    pub rows: Vec<(String, NatInf, NatInf)>,
    pub matches: bool,
}

/// Compare a computed exponent vector against the embedded C4 table.
pub fn compare_with_c4_table(rs: &RootSystem, ev: &ExponentVector) -> Result<TableComparison> {
    if rs.spec.to_string() != "C4" {
        return Err(Error::InvalidInput(format!(
            "the embedded reference table is for C4, not {}",
            rs.spec
        )));
    }
    let reference: BTreeMap<&str, NatInf> = c4_reference_table().into_iter().collect();
    let mut rows = Vec::new();
    let mut matches = true;
    for (label, computed) in ev.labeled(rs) {
        let expected = reference[label.as_str()];
        if computed != expected {
            matches = false;
        }
        rows.push((label, computed, expected));
    }
    Ok(TableComparison { rows, matches })
}

/// Report for the B2 example. The printed example assigns n = 0 to the
/// short simple root and ∞ to the long one, while the stabilizer rule
/// n_i = ν_p(⟨λ, α_i^∨⟩) applied to the fundamental weight of the long root
/// yields the opposite labeling; the unordered data agrees and the
/// discrepancy is reported rather than silently resolved.
#[derive(Debug, Serialize)]
pub struct B2Report {
    pub computed: Vec<(String, NatInf)>,
    /// The simple-root exponents as an unordered pair {0, ∞}.
    pub simple_unordered_match: bool,
    /// α+β ↦ 1 and 2α+β ↦ 0, which are unambiguous.
    pub nonsimple_match: bool,
    pub label_note: &'static str,
}

pub const B2_LABEL_NOTE: &str =
    "the printed example assigns n=0 to the short simple root and inf to the \
     long one; the stabilizer rule nu_p(<omega, alpha^vee>) with omega dual \
     to the long root gives the swapped assignment. The unordered pair {0, inf} \
     is asserted; the labeling discrepancy is reported, not resolved.";

pub fn b2_report(rs: &RootSystem, ev: &ExponentVector) -> Result<B2Report> {
    if rs.spec.to_string() != "B2" {
        return Err(Error::InvalidInput(format!("expected B2, got {}", rs.spec)));
    }
    let by_label: BTreeMap<String, NatInf> = ev.labeled(rs).into_iter().collect();
    let mut simple: Vec<NatInf> = vec![by_label["10"], by_label["01"]];
    simple.sort();
    let simple_unordered_match = simple == vec![NatInf::Finite(0), NatInf::Infinity];
    let nonsimple_match =
        by_label["11"] == NatInf::Finite(1) && by_label["12"] == NatInf::Finite(0);
    Ok(B2Report {
        computed: ev.labeled(rs),
        simple_unordered_match,
        nonsimple_match,
        label_note: B2_LABEL_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highestweight::ModularContext;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn system(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(name.parse().unwrap()).unwrap())
    }

    fn full_exponents_of(
        name: &str,
        lam: Vec<i64>,
        p: u64,
    ) -> (Arc<RootSystem>, ExponentVector, u64) {
        let rs = system(name);
        let mut ctx = ModularContext::new(rs.clone(), p, 512).unwrap();
        let lam = Weight(lam);
        let pair = ctx.get(&lam).unwrap();
        let sc = StructureConstants::compute(rs.clone());
        let ev = stabilizer_exponents(&pair.0, &pair.1, &sc).unwrap();
        (rs, ev, pair.1.dim)
    }

    #[test]
    fn simple_exponents_closed_form() {
        let c4 = system("C4");
        let e = simple_exponents(&c4, &Weight(vec![0, 0, 0, 1]), 2).unwrap();
        assert_eq!(
            e,
            vec![
                NatInf::Infinity,
                NatInf::Infinity,
                NatInf::Infinity,
                NatInf::Finite(0)
            ]
        );
        // A_n incidence weight ω₁ + p^r ω_n.
        let a3 = system("A3");
        let e = simple_exponents(&a3, &Weight(vec![1, 0, 8]), 2).unwrap();
        assert_eq!(
            e,
            vec![NatInf::Finite(0), NatInf::Infinity, NatInf::Finite(3)]
        );
        // ρ has all pairings one.
        let b2 = system("B2");
        let e = simple_exponents(&b2, &b2.rho.clone(), 5).unwrap();
        assert_eq!(e, vec![NatInf::Finite(0), NatInf::Finite(0)]);
    }

    #[test]
    fn c4_paper_table_reproduced() {
        let (rs, ev, ldim) = full_exponents_of("C4", vec![0, 0, 0, 1], 2);
        let cmp = compare_with_c4_table(&rs, &ev).unwrap();
        assert!(cmp.matches, "table mismatch: {:?}", cmp.rows);
        assert_eq!(orbit_dimension(&ev), 10);
        assert_eq!(ldim, 16);
        assert!(is_exceptional(&rs, &ev));
    }

    #[test]
    fn b2_example_reproduced_with_label_note() {
        let (rs, ev, ldim) = full_exponents_of("B2", vec![1, 0], 2);
        let report = b2_report(&rs, &ev).unwrap();
        assert!(report.simple_unordered_match);
        assert!(report.nonsimple_match);
        assert_eq!(orbit_dimension(&ev), 3);
        assert_eq!(ldim, 4);
        assert!(is_exceptional(&rs, &ev));
        // The computed labeling follows the stabilizer rule: 0 at the long
        // simple root (10), ∞ at the short one (01).
        let by_label: BTreeMap<String, NatInf> = ev.labeled(&rs).into_iter().collect();
        assert_eq!(by_label["10"], NatInf::Finite(0));
        assert_eq!(by_label["01"], NatInf::Infinity);
    }

    #[test]
    fn a1_minimal_case() {
        let (_, ev, _) = full_exponents_of("A1", vec![1], 2);
        assert_eq!(ev.entries, vec![NatInf::Finite(0)]);
    }

    #[test]
    fn full_matches_simple_on_small_sweep() {
        for (name, lam, p) in [
            ("A2", vec![2, 4], 2u64),
            ("A2", vec![3, 0], 3),
            ("B2", vec![2, 1], 2),
            ("B2", vec![0, 2], 2),
            ("C3", vec![1, 0, 1], 2),
        ] {
            let (rs, ev, _) = full_exponents_of(name, lam.clone(), p);
            let closed = simple_exponents(&rs, &Weight(lam.clone()), p).unwrap();
            assert_eq!(ev.simple_part(&rs), closed, "{name} {lam:?} p={p}");
        }
    }

    #[test]
    fn exponents_independent_of_sign_convention() {
        let rs = system("B2");
        let mut ctx = ModularContext::new(rs.clone(), 2, 512).unwrap();
        let pair = ctx.get(&Weight(vec![1, 0])).unwrap();
        let default_sc = StructureConstants::compute(rs.clone());
        let baseline = stabilizer_exponents(&pair.0, &pair.1, &default_sc).unwrap();
        let mut signs = BTreeMap::new();
        for (i, r) in rs.positive_roots.iter().enumerate() {
            if r.height > 1 {
                signs.insert(i, -1);
            }
        }
        let flipped_sc = StructureConstants::compute_with_signs(rs.clone(), &signs);
        let flipped = stabilizer_exponents(&pair.0, &pair.1, &flipped_sc).unwrap();
        assert_eq!(baseline, flipped);
    }

    #[test]
    fn standard_closure_examples() {
        use NatInf::{Finite, Infinity};
        let c4 = system("C4");
        let closure = standard_closure(&c4, &[Infinity, Infinity, Infinity, Finite(0)]);
        let by_label: BTreeMap<String, NatInf> = closure.labeled(&c4).into_iter().collect();
        assert_eq!(by_label["0011"], Finite(0));
        assert_eq!(by_label["0010"], Infinity);
        // A3 incidence spec: the full-support root gets min(0, r) = 0.
        let a3 = system("A3");
        let closure = standard_closure(&a3, &[Finite(0), Infinity, Finite(2)]);
        let by_label: BTreeMap<String, NatInf> = closure.labeled(&a3).into_iter().collect();
        assert_eq!(by_label["111"], Finite(0));
        // All zeros give the Borel at thickening zero.
        let all_zero = standard_closure(&a3, &[Finite(0); 3]);
        assert!(all_zero.entries.iter().all(|&e| e == Finite(0)));
        assert_eq!(orbit_dimension(&all_zero), a3.positive_roots.len());
    }

    #[test]
    fn closure_outputs_are_never_exceptional() {
        use NatInf::{Finite, Infinity};
        let b3 = system("B3");
        for simple in [
            vec![Finite(0), Infinity, Finite(2)],
            vec![Finite(1), Finite(1), Infinity],
            vec![Infinity, Infinity, Infinity],
        ] {
            let ev = standard_closure(&b3, &simple);
            assert!(!is_exceptional(&b3, &ev));
        }
    }

    #[test]
    fn embedding_dimensions() {
        let (_, _, l) = full_exponents_of("C4", vec![0, 0, 0, 1], 2);
        assert_eq!(l - 1, 15);
        let rs = system("A1");
        let mut ctx = ModularContext::new(rs.clone(), 2, 512).unwrap();
        let pair = ctx.get(&Weight(vec![1])).unwrap();
        assert_eq!(embedding_dimension(&pair.1).unwrap(), 1);
        let trivial = ctx.get(&Weight(vec![0])).unwrap();
        assert!(embedding_dimension(&trivial.1).is_err());
    }

    #[test]
    fn character_lattice_cases() {
        use NatInf::{Finite, Infinity};
        // Single factor G_n P(α): ℤ p^n ω_α.
        let b2 = system("B2");
        let spec = ParabolicStandardSpec::from_simple_exponents(&[Finite(2), Infinity]);
        let lat = character_lattice(&b2, &spec, 3).unwrap();
        assert!(lat.contains(&Weight(vec![9, 0])));
        assert!(!lat.contains(&Weight(vec![3, 0])));
        assert!(!lat.contains(&Weight(vec![9, 1])));
        // Incidence spec: ℤω₁ + ℤ p^r ω_n.
        let a3 = system("A3");
        let spec = ParabolicStandardSpec::from_simple_exponents(&[Finite(0), Infinity, Finite(2)]);
        let lat = character_lattice(&a3, &spec, 2).unwrap();
        assert!(lat.contains(&Weight(vec![5, 0, 4])));
        assert!(!lat.contains(&Weight(vec![5, 0, 2])));
        assert!(!lat.contains(&Weight(vec![5, 1, 4])));
        // All simple roots at level zero: the full weight lattice.
        let spec = ParabolicStandardSpec::from_simple_exponents(&[Finite(0); 3]);
        let lat = character_lattice(&a3, &spec, 2).unwrap();
        assert!(lat.contains(&Weight(vec![-3, 7, 1])));
    }

    #[test]
    fn very_ampleness_criterion() {
        use NatInf::{Finite, Infinity};
        let a3 = system("A3");
        let spec = ParabolicStandardSpec::from_simple_exponents(&[Finite(0), Infinity, Finite(1)]);
        // a ω₁ + b p ω₃ with a, b > 0.
        assert!(is_very_ample(&a3, &Weight(vec![2, 0, 6]), &spec, 3).unwrap());
        assert!(!is_very_ample(&a3, &Weight(vec![0, 0, 0]), &spec, 3).unwrap());
        assert!(!is_very_ample(&a3, &Weight(vec![1, 0, -3]), &spec, 3).unwrap());
        // Outside the lattice: not a character at all.
        assert!(is_very_ample(&a3, &Weight(vec![1, 1, 3]), &spec, 3).is_err());
        assert!(is_very_ample(&a3, &Weight(vec![1, 0, 2]), &spec, 3).is_err());
    }

    #[test]
    fn exceptional_parabolics_refuse_lattice_classification() {
        let (rs, ev, _) = full_exponents_of("C4", vec![0, 0, 0, 1], 2);
        match character_lattice_checked(&rs, &ev, 2) {
            Err(Error::Unsupported(_)) => {}
            other => panic!("expected an unsupported-case refusal, got {other:?}"),
        }
        // A standard case passes through.
        let a2 = system("A2");
        let closure = standard_closure(&a2, &[NatInf::Finite(0), NatInf::Finite(1)]);
        assert!(character_lattice_checked(&a2, &closure, 2).is_ok());
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_monotone(
            seed in proptest::collection::vec(0u64..4, 3),
            bumps in proptest::collection::vec(any::<bool>(), 3),
        ) {
            let rs = system("B3");
            let to_natinf = |v: &[u64]| -> Vec<NatInf> {
                v.iter().map(|&x| if x == 3 { NatInf::Infinity } else { NatInf::Finite(x) }).collect()
            };
            let base = to_natinf(&seed);
            let closure = standard_closure(&rs, &base);
            // Idempotent: closing the simple part again changes nothing.
            let again = standard_closure(&rs, &closure.simple_part(&rs));
            prop_assert_eq!(&again, &closure);
            // Monotone: raising any simple exponent never lowers an entry.
            let raised: Vec<u64> =
                seed.iter().zip(&bumps).map(|(&x, &b)| if b { (x + 1).min(3) } else { x }).collect();
            let closure_up = standard_closure(&rs, &to_natinf(&raised));
            for (lo, hi) in closure.entries.iter().zip(&closure_up.entries) {
                prop_assert!(lo <= hi);
            }
        }
    }
}

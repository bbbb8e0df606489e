//! Chevalley basis structure constants and divided-power matrix calculus.
//!
//! The constants N_{α,β} with [X_α, X_β] = N_{α,β} X_{α+β} are computed from
//! the extraspecial-pair convention: order the positive roots by (height,
//! lex), give every extraspecial pair the constant +(p+1), and propagate to
//! all other pairs through the standard norm-weighted triple and quadruple
//! relations. Any consistent sign choice yields an isomorphic module; what
//! matters here is determinism, plus a hook to perturb the extraspecial
//! signs so tests can confirm that stabilizer exponents do not depend on the
//! convention.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IMat, QMat};
use crate::rootsys::{binomial, RootSystem};

/// A root of the full system R = R⁺ ∪ −R⁺, referenced by the index of its
/// positive part. Encoded as ±(index+1).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedRoot(i32);

impl SignedRoot {
    pub fn positive(idx: usize) -> Self {
        SignedRoot(idx as i32 + 1)
    }

    pub fn negative(idx: usize) -> Self {
        SignedRoot(-(idx as i32 + 1))
    }

    pub fn index(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn neg(self) -> Self {
        SignedRoot(-self.0)
    }
}

/// A word of divided powers of simple lowering operators,
/// f_{i_1}^{(m_1)} ··· f_{i_k}^{(m_k)}, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoweringWord(pub Vec<(usize, u64)>);

impl LoweringWord {
    /// Total weight drop in root-lattice coordinates.
    pub fn weight_drop(&self, rank: usize) -> Vec<i64> {
        let mut drop = vec![0i64; rank];
        for &(i, m) in &self.0 {
            drop[i] += m as i64;
        }
        drop
    }
}

/// Signed structure constant table for one root system.
pub struct StructureConstants {
    rs: Arc<RootSystem>,
    table: BTreeMap<(i32, i32), i64>,
}

struct Builder<'a> {
    rs: &'a RootSystem,
    coeff_index: HashMap<Vec<i64>, usize>,
    /// Extraspecial pair (index pair into positive_roots) per non-simple
    /// positive root index.
    extraspecial: BTreeMap<usize, (usize, usize)>,
    signs: BTreeMap<usize, i64>,
    memo: HashMap<(i32, i32), i64>,
}

impl<'a> Builder<'a> {
    fn coeffs(&self, a: SignedRoot) -> Vec<i64> {
        let base = &self.rs.positive_roots[a.index()].coeffs;
        if a.is_positive() {
            base.clone()
        } else {
            base.iter().map(|c| -c).collect()
        }
    }

    fn lookup(&self, coeffs: &[i64]) -> Option<SignedRoot> {
        if coeffs.iter().all(|&c| c == 0) {
            return None;
        }
        if coeffs.iter().all(|&c| c >= 0) {
            self.coeff_index
                .get(coeffs)
                .map(|&i| SignedRoot::positive(i))
        } else if coeffs.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
            self.coeff_index.get(&neg).map(|&i| SignedRoot::negative(i))
        } else {
            None
        }
    }

    fn sum(&self, a: SignedRoot, b: SignedRoot) -> Option<SignedRoot> {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let s: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.lookup(&s)
    }

    fn norm(&self, a: SignedRoot) -> i64 {
        2 * self.rs.positive_roots[a.index()].half_norm
    }

    /// Largest k with β − kα a root (the string-down length p of Chevalley's
    /// theorem |N_{α,β}| = p+1).
    fn string_down(&self, a: SignedRoot, b: SignedRoot) -> i64 {
        let ca = self.coeffs(a);
        let mut cur = self.coeffs(b);
        let mut k = 0;
        loop {
            for (x, y) in cur.iter_mut().zip(&ca) {
                *x -= y;
            }
            if self.lookup(&cur).is_none() {
                return k;
            }
            k += 1;
        }
    }

    fn n(&mut self, a: SignedRoot, b: SignedRoot) -> i64 {
        if let Some(&v) = self.memo.get(&(a.0, b.0)) {
            return v;
        }
        let v = self.compute(a, b);
        self.memo.insert((a.0, b.0), v);
        v
    }

    /// N(a,b) assuming a+b is a root.
    fn compute(&mut self, a: SignedRoot, b: SignedRoot) -> i64 {
        match (a.is_positive(), b.is_positive()) {
            (true, true) => self.positive_pair(a.index(), b.index()),
            (false, false) => -self.n(a.neg(), b.neg()),
            _ => {
                // Mixed signs: reduce through the triple relation
                // N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b) for a+b+c = 0.
                let (a, b, flip) = if a.is_positive() {
                    (a, b, false)
                } else {
                    (b, a, true)
                };
                let w = self.sum(a, b).expect("sum must be a root");
                let v = if w.is_positive() {
                    // N(a,b) = |w|²/|a|² · N(b, −w), with (b, −w) both negative.
                    let q = Rational64::new(self.norm(w), self.norm(a));
                    let inner = self.n(b, w.neg());
                    ratio_times(q, inner)
                } else {
                    // N(a,b) = |w|²/|b|² · N(−w, a), with (−w, a) both positive.
                    let q = Rational64::new(self.norm(w), self.norm(b));
                    let inner = self.n(w.neg(), a);
                    ratio_times(q, inner)
                };
                if flip {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn positive_pair(&mut self, ai: usize, bi: usize) -> i64 {
        if ai > bi {
            return -self.n(SignedRoot::positive(bi), SignedRoot::positive(ai));
        }
        debug_assert_ne!(ai, bi, "2α is never a root");
        let a = SignedRoot::positive(ai);
        let b = SignedRoot::positive(bi);
        let gamma = self.sum(a, b).expect("sum must be a root");
        debug_assert!(gamma.is_positive());
        let (x1, y1) = self.extraspecial[&gamma.index()];
        if (ai, bi) == (x1, y1) {
            let sign = self.signs.get(&gamma.index()).copied().unwrap_or(1);
            return sign * (self.string_down(a, b) + 1);
        }
        // Quadruple relation on (x1, −a, −b, y1), which sums to zero:
        //   N(x1,−a)N(−b,y1)/|x1−a|² + N(−a,−b)N(x1,y1)/|a+b|²
        //     + N(−b,x1)N(−a,y1)/|x1−b|² = 0.
        let x1r = SignedRoot::positive(x1);
        let y1r = SignedRoot::positive(y1);
        let term_a = match self.sum(x1r, a.neg()) {
            Some(s) => {
                let n1 = self.n(x1r, a.neg());
                let n2 = self.n(b.neg(), y1r);
                Rational64::new(n1 * n2, self.norm(s))
            }
            None => Rational64::zero(),
        };
        let term_c = match self.sum(b.neg(), x1r) {
            Some(s) => {
                let n1 = self.n(b.neg(), x1r);
                let n2 = self.n(a.neg(), y1r);
                Rational64::new(n1 * n2, self.norm(s))
            }
            None => Rational64::zero(),
        };
        let n_extra = self.n(x1r, y1r);
        let val = Rational64::from_integer(self.norm(gamma)) * (term_a + term_c)
            / Rational64::from_integer(n_extra);
        assert!(
            val.is_integer(),
            "structure constant recursion produced a non-integer"
        );
        *val.numer()
    }
}

fn ratio_times(q: Rational64, n: i64) -> i64 {
    let v = q * Rational64::from_integer(n);
    assert!(v.is_integer(), "triple relation produced a non-integer");
    *v.numer()
}

impl StructureConstants {
    pub fn compute(rs: Arc<RootSystem>) -> Self {
        Self::compute_with_signs(rs, &BTreeMap::new())
    }

    /// Compute with perturbed extraspecial signs (map from non-simple
    /// positive root index to ±1). Entries default to +1.
    pub fn compute_with_signs(rs: Arc<RootSystem>, signs: &BTreeMap<usize, i64>) -> Self {
        let mut coeff_index = HashMap::new();
        for (i, r) in rs.positive_roots.iter().enumerate() {
            coeff_index.insert(r.coeffs.clone(), i);
        }
        // Extraspecial pair of γ: among ordered pairs (a, b), a < b, of
        // positive roots with α_a + α_b = γ, the one with minimal a.
        let mut extraspecial = BTreeMap::new();
        for (gi, g) in rs.positive_roots.iter().enumerate() {
            if g.height == 1 {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            for (ai, a) in rs.positive_roots.iter().enumerate() {
                if a.height >= g.height {
                    break; // sorted by height
                }
                let rest: Vec<i64> = g.coeffs.iter().zip(&a.coeffs).map(|(x, y)| x - y).collect();
                if rest.iter().all(|&c| c >= 0) {
                    if let Some(&bi) = coeff_index.get(&rest) {
                        if ai < bi && best.is_none() {
                            best = Some((ai, bi));
                        }
                    }
                }
            }
            extraspecial.insert(gi, best.expect("every non-simple positive root splits"));
        }
        let mut builder = Builder {
            rs: &rs,
            coeff_index,
            extraspecial,
            signs: signs.clone(),
            memo: HashMap::new(),
        };
        let n = rs.positive_roots.len();
        let mut table = BTreeMap::new();
        let all: Vec<SignedRoot> = (0..n)
            .map(SignedRoot::positive)
            .chain((0..n).map(SignedRoot::negative))
            .collect();
        for &a in &all {
            for &b in &all {
                if builder.sum(a, b).is_some() {
                    let v = builder.n(a, b);
                    table.insert((a.0, b.0), v);
                }
            }
        }
        StructureConstants { rs, table }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// N_{a,b}, or None when a+b is not a root.
    pub fn n(&self, a: SignedRoot, b: SignedRoot) -> Option<i64> {
        self.table.get(&(a.0, b.0)).copied()
    }

    /// Sum of two roots inside the system, if it is again a root.
    pub fn sum(&self, a: SignedRoot, b: SignedRoot) -> Option<SignedRoot> {
        let ca = self.signed_coeffs(a);
        let cb = self.signed_coeffs(b);
        let s: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        if s.iter().all(|&c| c == 0) {
            return None;
        }
        let (sign_flip, abs): (bool, Vec<i64>) = if s.iter().all(|&c| c >= 0) {
            (false, s)
        } else if s.iter().all(|&c| c <= 0) {
            (true, s.iter().map(|c| -c).collect())
        } else {
            return None;
        };
        self.rs.root_by_coeffs(&abs).map(|r| {
            let idx = self
                .rs
                .positive_roots
                .iter()
                .position(|x| std::ptr::eq(x, r))
                .expect("root from same system");
            if sign_flip {
                SignedRoot::negative(idx)
            } else {
                SignedRoot::positive(idx)
            }
        })
    }

    pub fn signed_coeffs(&self, a: SignedRoot) -> Vec<i64> {
        let base = &self.rs.positive_roots[a.index()].coeffs;
        if a.is_positive() {
            base.clone()
        } else {
            base.iter().map(|c| -c).collect()
        }
    }

    /// All pairs (a, b) with a+b a root, with their constants.
    pub fn pairs(&self) -> impl Iterator<Item = (SignedRoot, SignedRoot, i64)> + '_ {
        self.table
            .iter()
            .map(|(&(a, b), &v)| (SignedRoot(a), SignedRoot(b), v))
    }
}

/// Greedy decomposition of a positive root γ as a chain of simple-root
/// additions, each step recording the structure constant that normalizes the
/// corresponding bracket of lowering operators:
/// X_{−γ} = [X_{−α_{i_k}}, [ ... [X_{−α_{i_2}}, X_{−α_{i_1}}] ... ]] / Π N.
#[derive(Clone, Debug)]
pub struct LoweringDecomposition {
    /// Index of the simple root the chain starts from.
    pub base: usize,
    /// Subsequent steps (simple root index, normalizing constant
    /// N_{−α_i, −δ} where δ is the partial sum so far).
    pub steps: Vec<(usize, i64)>,
}

pub fn lowering_decomposition(
    sc: &StructureConstants,
    gamma_idx: usize,
) -> Result<LoweringDecomposition> {
    let rs = sc.root_system();
    let gamma = &rs.positive_roots[gamma_idx];
    if gamma.height == 1 {
        let i = gamma.coeffs.iter().position(|&c| c == 1).unwrap();
        return Ok(LoweringDecomposition {
            base: i,
            steps: Vec::new(),
        });
    }
    // Peel simple roots greedily: smallest simple index whose removal leaves
    // a positive root.
    let mut chain_rev = Vec::new();
    let mut current = gamma.coeffs.clone();
    'outer: while current.iter().sum::<i64>() > 1 {
        for i in 0..rs.rank() {
            if current[i] == 0 {
                continue;
            }
            let mut rest = current.clone();
            rest[i] -= 1;
            if rs.root_by_coeffs(&rest).is_some() {
                chain_rev.push(i);
                current = rest;
                continue 'outer;
            }
        }
        return Err(Error::Internal(format!(
            "no simple peel for positive root {}",
            gamma.label()
        )));
    }
    let base = current.iter().position(|&c| c == 1).unwrap();
    let mut steps = Vec::new();
    let mut partial = current;
    for &i in chain_rev.iter().rev() {
        let delta_idx = positive_index(rs, &partial)?;
        let alpha_idx = positive_index(rs, &rs.simple_root(i).coeffs.clone())?;
        let n = sc
            .n(
                SignedRoot::negative(alpha_idx),
                SignedRoot::negative(delta_idx),
            )
            .ok_or_else(|| Error::Internal("bracket step is not a root".into()))?;
        steps.push((i, n));
        for (x, y) in partial.iter_mut().zip(&rs.simple_root(i).coeffs) {
            *x += y;
        }
    }
    Ok(LoweringDecomposition { base, steps })
}

fn positive_index(rs: &RootSystem, coeffs: &[i64]) -> Result<usize> {
    rs.positive_roots
        .iter()
        .position(|r| r.coeffs == coeffs)
        .ok_or_else(|| Error::Internal("expected a positive root".into()))
}

/// Scalar c with X_α^{(m)} X_{−α}^{(n)} v = c · X_{−α}^{(n−m)} v on a weight
/// vector v killed by X_α with ⟨wt v, α^∨⟩ = `pairing`; zero when m > n.
/// Specializes to C(pairing, n) at m = n.
pub fn sl2_commutation_scalar(m: u64, n: u64, pairing: i64) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    if m > n {
        return BigInt::zero();
    }
    binomial(pairing - n as i64 + m as i64, m)
}

/// M^m / m! over ℚ (exact). M must be nilpotent for this to be globally
/// integral on an admissible lattice; integrality is the caller's check.
pub fn divided_power_matrix(m: &QMat, power: u64) -> QMat {
    assert_eq!(m.rows, m.cols);
    let mut acc = QMat::identity(m.rows);
    for _ in 0..power {
        acc = acc.mul(m);
    }
    let mut fact = BigInt::one();
    for k in 1..=power {
        fact *= BigInt::from(k);
    }
    acc.scale(&num_rational::BigRational::new(BigInt::one(), fact))
}

/// Divided power on an admissible lattice basis: must come out integral,
/// otherwise the lattice (or the bracket normalization) is wrong.
pub fn divided_power_integral(m: &QMat, power: u64) -> Result<IMat> {
    divided_power_matrix(m, power).to_integer().ok_or_else(|| {
        Error::Internal(format!(
            "divided power X^({power}) is not integral on the admissible basis"
        ))
    })
}

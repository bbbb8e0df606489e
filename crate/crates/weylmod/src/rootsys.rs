//! Root systems of the simple types A–G: Cartan matrices, positive roots,
//! coroot pairings, and the classical character-level formulas (Weyl
//! dimension, Freudenthal multiplicities) that serve as oracles for the
//! module-theoretic computations downstream.
//!
//! Weights live in fundamental-weight coordinates throughout; roots carry
//! their simple-root coordinates together with precomputed pairing data.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMat;

/// ℕ ∪ {∞} with total order and minimum. The `inf` value is semantically
/// load-bearing (ν_p(0) = ∞ encodes an entire root subgroup inside a
/// stabilizer), so it is a dedicated variant, never a sentinel integer.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NatInf {
    Finite(u64),
    Infinity,
}

impl NatInf {
    pub fn is_finite(&self) -> bool {
        matches!(self, NatInf::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            NatInf::Finite(n) => Some(*n),
            NatInf::Infinity => None,
        }
    }
}

impl fmt::Display for NatInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatInf::Finite(n) => write!(f, "{n}"),
            NatInf::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for NatInf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(NatInf::Infinity)
        } else {
            s.parse::<u64>()
                .map(NatInf::Finite)
                .map_err(|_| Error::InvalidInput(format!("not a natural number or 'inf': {s}")))
        }
    }
}

impl Serialize for NatInf {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NatInf::Finite(n) => ser.serialize_u64(*n),
            NatInf::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for NatInf {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(NatInf::Finite)
                .ok_or_else(|| D::Error::custom("expected a natural number")),
            serde_json::Value::String(s) if s == "inf" => Ok(NatInf::Infinity),
            _ => Err(D::Error::custom("expected a natural number or \"inf\"")),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// p-adic valuation with ν_p(0) = ∞.
pub fn nu_p_big(m: &BigInt, p: u64) -> Result<NatInf> {
    require_prime(p)?;
    if m.is_zero() {
        return Ok(NatInf::Infinity);
    }
    let pb = BigInt::from(p);
    let mut m = m.abs();
    let mut v = 0u64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    Ok(NatInf::Finite(v))
}

/// p-adic valuation of a machine integer, ν_p(0) = ∞.
pub fn nu_p(m: i64, p: u64) -> Result<NatInf> {
    nu_p_big(&BigInt::from(m), p)
}

/// Generalized binomial coefficient C(m, n) for integer m (possibly negative)
/// and n ≥ 0, by the falling-factorial product.
pub fn binomial(m: i64, n: u64) -> BigInt {
    let mut num = BigInt::one();
    for k in 0..n {
        num *= BigInt::from(m) - BigInt::from(k);
    }
    let mut den = BigInt::one();
    for k in 1..=n {
        den *= BigInt::from(k);
    }
    num / den
}

/// ν_p(C(m, n)) by Kummer carry-counting (with the reflection
/// C(m, n) = ±C(n−m−1, n) for negative m), ν_p(0) = ∞ when the binomial
/// vanishes.
pub fn binom_valuation(m: i64, n: u64, p: u64) -> Result<NatInf> {
    require_prime(p)?;
    if n == 0 {
        return Ok(NatInf::Finite(0));
    }
    let m_eff: u64 = if m >= 0 {
        let mu = m as u64;
        if mu < n {
            return Ok(NatInf::Infinity); // C(m, n) = 0 for 0 <= m < n
        }
        mu
    } else {
        // C(m, n) = (-1)^n C(n - m - 1, n)
        (n as i64 - m - 1) as u64
    };
    // Kummer: ν_p(C(a+b, a)) is the number of carries when adding a and b
    // in base p.
    let mut a = n;
    let mut b = m_eff - n;
    let mut carries = 0u64;
    let mut carry = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = if s >= p { 1 } else { 0 };
        carries += carry;
        a /= p;
        b /= p;
    }
    Ok(NatInf::Finite(carries))
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A simple root system named in Cartan notation, e.g. `C4`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "rank {rank} is not legal for family {family:?}"
            )));
        }
        // Desk-scale cap for the classical families; E7/E8 are permitted but
        // carry no test coverage at this size.
        if matches!(family, Family::A | Family::B | Family::C | Family::D) && rank > 8 {
            return Err(Error::Unsupported(format!(
                "family {family:?} is supported up to rank 8 (got {rank})"
            )));
        }
        Ok(RootSystemSpec { family, rank })
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .ok_or_else(|| Error::InvalidInput("empty root system".into()))?;
        let family = match fam.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            c => return Err(Error::InvalidInput(format!("unknown family '{c}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rank in root system '{s}'")))?;
        RootSystemSpec::new(family, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_scaled(&self, coeffs: &[i64], k: i64) -> Weight {
        Weight(self.0.iter().zip(coeffs).map(|(a, b)| a + k * b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A positive root with its bookkeeping data: simple-root coefficients,
/// height, fundamental-weight coordinates, integer coroot pairing vector
/// (so that ⟨λ, γ^∨⟩ = Σ coroot[i]·λ_i) and half squared norm.
#[derive(Clone, Debug)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub height: i64,
    pub fw: Vec<i64>,
    pub coroot: Vec<i64>,
    pub half_norm: i64,
}

impl Root {
    /// The coefficient-string label ("0011" for α₃+α₄ in C₄).
    pub fn label(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// A built root system.
pub struct RootSystem {
    pub spec: RootSystemSpec,
    /// cartan[i][j] = ⟨α_j, α_i^∨⟩.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared norms of the simple roots, short roots normalized to 1.
    pub d: Vec<i64>,
    /// Positive roots sorted by (height, lexicographic coefficient vector).
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    simple_positions: Vec<usize>,
    root_index: BTreeMap<Vec<i64>, usize>,
    cartan_inv: QMat,
}

/// Warning text when the ambient characteristic assumptions (p > 2 for
/// B/C/F₄, p > 3 for G₂) fail; the computations still run, but uniqueness of
/// the standard parabolic form is no longer guaranteed.
pub fn characteristic_warning(spec: RootSystemSpec, p: u64) -> Option<String> {
    match spec.family {
        Family::B | Family::C | Family::F if p <= 2 => Some(format!(
            "characteristic assumption violated: p > 2 is assumed for type {}; \
             exceptional (non-standard) parabolic subgroup schemes may occur",
            spec.family
        )),
        Family::G if p <= 3 => Some(
            "characteristic assumption violated: p > 3 is assumed for type G; \
             exceptional (non-standard) parabolic subgroup schemes may occur"
                .to_string(),
        ),
        _ => None,
    }
}

fn family_data(spec: RootSystemSpec) -> (Vec<i64>, Vec<(usize, usize)>) {
    let l = spec.rank;
    let chain = |n: usize| {
        (0..n.saturating_sub(1))
            .map(|i| (i, i + 1))
            .collect::<Vec<_>>()
    };
    match spec.family {
        Family::A => (vec![1; l], chain(l)),
        Family::B => {
            let mut d = vec![2; l];
            d[l - 1] = 1;
            (d, chain(l))
        }
        Family::C => {
            let mut d = vec![1; l];
            d[l - 1] = 2;
            (d, chain(l))
        }
        Family::D => {
            let mut edges = chain(l - 1);
            edges.push((l - 3, l - 1));
            (vec![1; l], edges)
        }
        Family::E => {
            // Bourbaki numbering: chain 1-3-4-5-6(-7-8) with node 2 on node 4.
            let mut edges = vec![(0, 2), (1, 3)];
            for i in 2..l - 1 {
                edges.push((i, i + 1));
            }
            (vec![1; l], edges)
        }
        Family::F => (vec![2, 2, 1, 1], chain(4)),
        Family::G => (vec![1, 3], chain(2)),
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a / num_integer::gcd(a, b) * b
}

impl RootSystem {
    pub fn build(spec: RootSystemSpec) -> Result<RootSystem> {
        let l = spec.rank;
        let (d, edges) = family_data(spec);
        // Symmetric bilinear form on simple roots: (α_i, α_i) = 2 d_i,
        // (α_i, α_j) = -lcm(d_i, d_j) on diagram edges.
        let mut bilin = vec![vec![0i64; l]; l];
        for i in 0..l {
            bilin[i][i] = 2 * d[i];
        }
        for &(i, j) in &edges {
            let v = -lcm_i64(d[i], d[j]);
            bilin[i][j] = v;
            bilin[j][i] = v;
        }
        let mut cartan = vec![vec![0i64; l]; l];
        for i in 0..l {
            for j in 0..l {
                debug_assert_eq!(bilin[i][j] % d[i], 0);
                cartan[i][j] = bilin[i][j] / d[i];
            }
        }

        // All roots by reflection closure from the simple roots.
        let pairing_coeffs =
            |c: &[i64], i: usize| -> i64 { (0..l).map(|j| cartan[i][j] * c[j]).sum() };
        let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..l {
            let mut c = vec![0i64; l];
            c[i] = 1;
            seen.insert(c.clone(), ());
            queue.push(c);
        }
        while let Some(c) = queue.pop() {
            for i in 0..l {
                let k = pairing_coeffs(&c, i);
                let mut refl = c.clone();
                refl[i] -= k;
                if !seen.contains_key(&refl) {
                    seen.insert(refl.clone(), ());
                    queue.push(refl);
                }
            }
        }
        let mut positives: Vec<Vec<i64>> = seen
            .keys()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        positives.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));

        let norm_of = |c: &[i64]| -> i64 {
            let mut n = 0;
            for i in 0..l {
                for j in 0..l {
                    n += c[i] * c[j] * bilin[i][j];
                }
            }
            n
        };
        let mut positive_roots = Vec::with_capacity(positives.len());
        for c in positives {
            let norm = norm_of(&c);
            debug_assert_eq!(norm % 2, 0);
            let half_norm = norm / 2;
            let fw: Vec<i64> = (0..l).map(|i| pairing_coeffs(&c, i)).collect();
            let coroot: Vec<i64> = (0..l)
                .map(|i| {
                    let num = c[i] * d[i];
                    debug_assert_eq!(num % half_norm, 0);
                    num / half_norm
                })
                .collect();
            positive_roots.push(Root {
                height: c.iter().sum(),
                coeffs: c,
                fw,
                coroot,
                half_norm,
            });
        }

        let mut root_index = BTreeMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            root_index.insert(r.coeffs.clone(), k);
        }
        let simple_positions = (0..l)
            .map(|i| {
                let mut c = vec![0i64; l];
                c[i] = 1;
                root_index[&c]
            })
            .collect();

        let mut cartan_q = QMat::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                cartan_q[(i, j)] = BigRational::from(BigInt::from(cartan[i][j]));
            }
        }
        let cartan_inv = cartan_q.solve(&QMat::identity(l))?;

        Ok(RootSystem {
            spec,
            cartan,
            d,
            positive_roots,
            rho: Weight(vec![1; l]),
            simple_positions,
            root_index,
            cartan_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[self.simple_positions[i]]
    }

    /// Position of the i-th simple root within `positive_roots`.
    pub fn simple_position(&self, i: usize) -> usize {
        self.simple_positions[i]
    }

    pub fn root_by_coeffs(&self, coeffs: &[i64]) -> Option<&Root> {
        self.root_index
            .get(coeffs)
            .map(|&k| &self.positive_roots[k])
    }

    pub fn root_by_label(&self, label: &str) -> Result<&Root> {
        let coeffs: Vec<i64> = label
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as i64)
                    .ok_or_else(|| Error::InvalidInput(format!("bad root label '{label}'")))
            })
            .collect::<Result<_>>()?;
        if coeffs.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "root label '{label}' has wrong length for rank {}",
                self.rank()
            )));
        }
        self.root_by_coeffs(&coeffs)
            .ok_or_else(|| Error::InvalidInput(format!("'{label}' is not a positive root")))
    }

    /// ⟨λ, γ^∨⟩ for a positive root γ.
    pub fn pairing(&self, lambda: &Weight, root: &Root) -> i64 {
        root.coroot.iter().zip(&lambda.0).map(|(u, x)| u * x).sum()
    }

    /// ⟨λ, α_i^∨⟩ for the i-th simple root; in fundamental-weight
    /// coordinates this is just the i-th coordinate.
    pub fn pairing_simple(&self, lambda: &Weight, i: usize) -> i64 {
        lambda.0[i]
    }

    /// Invariant inner product (λ, γ) between a weight (fundamental-weight
    /// coordinates) and a root, integer-valued in our normalization.
    fn weight_root_inner(&self, lambda: &Weight, root_coeffs: &[i64]) -> i64 {
        root_coeffs
            .iter()
            .zip(&self.d)
            .zip(&lambda.0)
            .map(|((c, d), x)| c * d * x)
            .sum()
    }

    pub fn validate_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "weight {} has rank {}, expected {}",
                w,
                w.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    fn require_dominant(&self, w: &Weight) -> Result<()> {
        self.validate_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::InvalidInput(format!("weight {w} is not dominant")));
        }
        Ok(())
    }

    /// dim V(λ) by the Weyl dimension formula, exact.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.require_dominant(lambda)?;
        let lr = lambda.add(&self.rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            num *= BigInt::from(self.pairing(&lr, root));
            den *= BigInt::from(self.pairing(&self.rho, root));
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// Simple reflection s_i(w) = w − ⟨w, α_i^∨⟩ α_i on weights.
    pub fn simple_reflect(&self, w: &Weight, i: usize) -> Weight {
        w.add_scaled(&self.simple_root(i).fw, -w.0[i])
    }

    /// The unique dominant weight in the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        loop {
            match v.0.iter().position(|&c| c < 0) {
                None => return v,
                Some(i) => v = self.simple_reflect(&v, i),
            }
        }
    }

    /// Full Weyl orbit of a weight.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = BTreeMap::new();
        let mut queue = vec![w.clone()];
        seen.insert(w.clone(), ());
        while let Some(v) = queue.pop() {
            for i in 0..self.rank() {
                let r = self.simple_reflect(&v, i);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    queue.push(r);
                }
            }
        }
        seen.into_keys().collect()
    }

    /// Affine dot-action reflection s_{γ,c}·λ = λ + (c − ⟨λ+ρ, γ^∨⟩)γ.
    pub fn reflect_dot(&self, lambda: &Weight, root: &Root, level: i64) -> Weight {
        let k = level - self.pairing(&lambda.add(&self.rho), root);
        lambda.add_scaled(&root.fw, k)
    }

    /// Root-lattice coordinates of a weight difference, when integral.
    pub fn root_coordinates(&self, diff: &Weight) -> Option<Vec<i64>> {
        // Solve cartan^T? The fundamental-weight coordinates of Σ c_j α_j are
        // (Σ_j cartan[i][j] c_j)_i, so c = cartan_inv · diff.
        let mut out = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let mut acc = BigRational::zero();
            for j in 0..self.rank() {
                acc += &self.cartan_inv[(i, j)] * BigRational::from(BigInt::from(diff.0[j]));
            }
            if !acc.denom().is_one() {
                return None;
            }
            out.push(acc.numer().to_i64()?);
        }
        Some(out)
    }

    /// Is μ a weight of V(λ)? By saturation this means the dominant
    /// representative of μ lies below λ in the root order.
    pub fn is_weight_of(&self, lambda: &Weight, mu: &Weight) -> bool {
        let dom = self.dominant_representative(mu);
        match self.root_coordinates(&lambda.sub(&dom)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// The full weight set of V(λ) with the root-coordinates of λ−μ for each
    /// weight μ, generated by downward closure from λ.
    pub fn weight_set(&self, lambda: &Weight) -> Result<BTreeMap<Weight, Vec<i64>>> {
        self.require_dominant(lambda)?;
        let mut set: BTreeMap<Weight, Vec<i64>> = BTreeMap::new();
        set.insert(lambda.clone(), vec![0; self.rank()]);
        let mut frontier = vec![lambda.clone()];
        while let Some(w) = frontier.pop() {
            let depth = set[&w].clone();
            for i in 0..self.rank() {
                let w2 = w.add_scaled(&self.simple_root(i).fw, -1);
                if set.contains_key(&w2) {
                    continue;
                }
                if self.is_weight_of(lambda, &w2) {
                    let mut d2 = depth.clone();
                    d2[i] += 1;
                    set.insert(w2.clone(), d2);
                    frontier.push(w2);
                }
            }
        }
        Ok(set)
    }

    /// Weight multiplicities of the characteristic-zero module V(λ) at the
    /// dominant weights, by the Freudenthal recursion.
    pub fn dominant_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
        let set = self.weight_set(lambda)?;
        let mut dominant: Vec<(&Weight, &Vec<i64>)> =
            set.iter().filter(|(w, _)| w.is_dominant()).collect();
        dominant.sort_by_key(|(w, depth)| (depth.iter().sum::<i64>(), (*w).clone()));
        let mut mults: BTreeMap<Weight, i64> = BTreeMap::new();
        for (mu, depth) in dominant {
            if mu == lambda {
                mults.insert(lambda.clone(), 1);
                continue;
            }
            let mut num: i64 = 0;
            for root in &self.positive_roots {
                let mut k = 1i64;
                loop {
                    let nu = mu.add_scaled(&root.fw, k);
                    if !set.contains_key(&nu) {
                        break;
                    }
                    let m = mults[&self.dominant_representative(&nu)];
                    num += m * self.weight_root_inner(&nu, &root.coeffs);
                    k += 1;
                }
            }
            // Denominator (λ+ρ, λ+ρ) − (μ+ρ, μ+ρ) = (λ+μ+2ρ, λ−μ).
            let sum = lambda.add(mu).add(&self.rho).add(&self.rho);
            let den: i64 = depth
                .iter()
                .zip(&self.d)
                .zip(&sum.0)
                .map(|((c, d), x)| c * d * x)
                .sum();
            if den <= 0 || (2 * num) % den != 0 || 2 * num / den <= 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion failed at weight {mu} (num {num}, den {den})"
                )));
            }
            mults.insert(mu.clone(), 2 * num / den);
        }
        Ok(mults)
    }

    /// Full weight multiset of V(λ): every weight with its multiplicity.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
        let dom = self.dominant_multiplicities(lambda)?;
        let set = self.weight_set(lambda)?;
        let mut out = BTreeMap::new();
        for w in set.keys() {
            out.insert(w.clone(), dom[&self.dominant_representative(w)]);
        }
        Ok(out)
    }

    /// Parse a weight: either comma-separated coordinates ("1,0,2") or a
    /// contiguous digit string ("0001", single-digit coordinates only).
    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        let s = s.trim();
        let coords: Vec<i64> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad weight coordinate '{t}'")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as i64).ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "bad weight string '{s}': digit form allows single digits 0-9 only; \
                             use the comma form for larger coordinates"
                        ))
                    })
                })
                .collect::<Result<_>>()?
        };
        let w = Weight(coords);
        self.validate_weight(&w)?;
        Ok(w)
    }

    /// Dominant weights with every coordinate ≤ `coord_cap` and Weyl
    /// dimension ≤ `dim_cap`, in lexicographic order.
    pub fn dominant_weights_up_to(&self, coord_cap: i64, dim_cap: u64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut current = vec![0i64; self.rank()];
        self.enumerate_rec(0, coord_cap, dim_cap, &mut current, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        i: usize,
        coord_cap: i64,
        dim_cap: u64,
        current: &mut Vec<i64>,
        out: &mut Vec<Weight>,
    ) {
        if i == self.rank() {
            out.push(Weight(current.clone()));
            return;
        }
        for v in 0..=coord_cap {
            current[i] = v;
            // Weyl dimension is monotone in every coordinate, so once the
            // partial weight (zeros beyond i) is too big we can stop.
            let partial = Weight(
                current
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| if j <= i { c } else { 0 })
                    .collect(),
            );
            let dim = self
                .weyl_dimension(&partial)
                .expect("dominant by construction");
            if dim > BigInt::from(dim_cap) {
                break;
            }
            self.enumerate_rec(i + 1, coord_cap, dim_cap, current, out);
        }
        current[i] = 0;
    }
}

//! Weight enumerators of quantum codes.
//!
//! For a stabilizer code with additive image `C ⊆ C⊥`, the Shor-Laflamme
//! enumerators `B` and `B⊥` are the Hamming weight distributions of `C` and
//! `C⊥`. They are related by the homogeneous substitution
//!
//! ```text
//! B(x, y)  = 1/(2^n K) · B⊥(x + 3y, x - y)
//! B⊥(x, y) = K/2^n     · B(x + 3y, x - y)
//! ```
//!
//! where `W(x, y) = Σ_i W_i x^(n-i) y^i`. All arithmetic is exact.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::code::{AdditiveCode, ENUMERATION_CAP_LOG2};
use crate::error::{Error, Result};

/// Exact counts of words by Hamming weight, indices `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> Self {
        assert!(!counts.is_empty(), "a distribution has at least index 0");
        WeightDistribution { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn into_counts(self) -> Vec<BigUint> {
        self.counts
    }
}

/// Weight distribution of `code` by enumerating its words.
pub fn hamming_weights(code: &AdditiveCode) -> Result<WeightDistribution> {
    let mut counts = vec![0u64; code.n() + 1];
    for w in code.codewords()? {
        counts[w.weight()] += 1;
    }
    Ok(WeightDistribution::new(
        counts.into_iter().map(BigUint::from).collect(),
    ))
}

/// The pair `(B, B⊥)` of a quantum code of length `n` and dimension `K`.
#[derive(Clone, Debug)]
pub struct EnumeratorPair {
    n: usize,
    dimension: BigUint,
    b: Vec<BigUint>,
    bperp: Vec<BigUint>,
    moments: OnceLock<(Vec<BigUint>, Vec<BigUint>)>,
}

impl PartialEq for EnumeratorPair {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dimension == other.dimension
            && self.b == other.b
            && self.bperp == other.bperp
    }
}

impl Eq for EnumeratorPair {}

impl EnumeratorPair {
    pub fn new(n: usize, dimension: BigUint, b: Vec<BigUint>, bperp: Vec<BigUint>) -> Result<Self> {
        if b.len() != n + 1 || bperp.len() != n + 1 {
            return Err(Error::InvalidPair(format!(
                "expected {} coefficients, got {} and {}",
                n + 1,
                b.len(),
                bperp.len()
            )));
        }
        if dimension.is_zero() {
            return Err(Error::InvalidPair("K must be positive".into()));
        }
        Ok(EnumeratorPair {
            n,
            dimension,
            b,
            bperp,
            moments: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Code-space dimension `K`.
    pub fn dimension(&self) -> &BigUint {
        &self.dimension
    }

    pub fn b(&self) -> &[BigUint] {
        &self.b
    }

    pub fn bperp(&self) -> &[BigUint] {
        &self.bperp
    }

    /// `B⊥_i - B_i`, the number of undetectable errors of weight `i` for a
    /// stabilizer code. Negative entries only arise for invalid pairs.
    pub fn undetectable_counts(&self) -> Vec<BigInt> {
        self.bperp
            .iter()
            .zip(&self.b)
            .map(|(bp, b)| BigInt::from(bp.clone()) - BigInt::from(b.clone()))
            .collect()
    }

    /// Binomial moments `(𝓑, 𝓑⊥)`, computed on first use.
    pub fn moments(&self) -> (&[BigUint], &[BigUint]) {
        let (m, mp) = self
            .moments
            .get_or_init(|| (binomial_moments(&self.b), binomial_moments(&self.bperp)));
        (m, mp)
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[BigUint]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let (m, mp) = self.moments();
        json!({
            "n": self.n,
            "K": self.dimension.to_string(),
            "B": strings(&self.b),
            "Bperp": strings(&self.bperp),
            "moments": { "B": strings(m), "Bperp": strings(mp) },
            "d": min_distance(self).ok(),
        })
    }
}

/// How `B⊥` is obtained in [`stabilizer_enumerators_via`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualRoute {
    /// Enumerate `C⊥` when it fits under the cap, otherwise transform.
    Auto,
    Enumerate,
    MacWilliams,
}

pub fn stabilizer_enumerators(code: &AdditiveCode) -> Result<EnumeratorPair> {
    stabilizer_enumerators_via(code, DualRoute::Auto)
}

pub fn stabilizer_enumerators_via(code: &AdditiveCode, route: DualRoute) -> Result<EnumeratorPair> {
    if !code.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let dimension = code.code_dimension().ok_or(Error::NotSelfOrthogonal)?;
    let n = code.n();
    let b = hamming_weights(code)?.into_counts();
    let dual_rank = 2 * n - code.rank();
    let enumerate = match route {
        DualRoute::Auto => dual_rank <= ENUMERATION_CAP_LOG2,
        DualRoute::Enumerate => true,
        DualRoute::MacWilliams => false,
    };
    let bperp = if enumerate {
        hamming_weights(&code.dual())?.into_counts()
    } else {
        let signed: Vec<BigInt> = b.iter().cloned().map(BigInt::from).collect();
        macwilliams(&signed, n, &dimension, Direction::PrimalToDual)?
            .into_iter()
            .map(|c| {
                c.to_biguint()
                    .ok_or_else(|| Error::InvalidPair("negative dual coefficient".into()))
            })
            .collect::<Result<_>>()?
    };
    EnumeratorPair::new(n, dimension, b, bperp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `B⊥ → B`, scaled by `1/(2^n K)`.
    DualToPrimal,
    /// `B → B⊥`, scaled by `K/2^n`.
    PrimalToDual,
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Substitutes `(x, y) → (x + 3y, x - y)` into the homogeneous enumerator
/// with coefficients `dist` and rescales. Every division must be exact.
pub fn macwilliams(dist: &[BigInt], n: usize, dimension: &BigUint, direction: Direction) -> Result<Vec<BigInt>> {
    if dist.len() != n + 1 {
        return Err(Error::InvalidPair(format!(
            "expected {} coefficients, got {}",
            n + 1,
            dist.len()
        )));
    }
    if !dist[0].is_one() {
        return Err(Error::InvalidPair("coefficient 0 must be 1".into()));
    }
    let binom: Vec<Vec<BigInt>> = (0..=n).map(binomial_row).collect();
    let pow3: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |p| Some(p * 3))
        .take(n + 1)
        .collect();

    // a_i x^(n-i) y^i → a_i (x + 3y)^(n-i) (x - y)^i
    let mut raw = vec![BigInt::zero(); n + 1];
    for (i, a) in dist.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for s in 0..=n - i {
            let left = &binom[n - i][s] * &pow3[s];
            for t in 0..=i {
                let mut term = &left * &binom[i][t];
                if t % 2 == 1 {
                    term = -term;
                }
                raw[s + t] += a * term;
            }
        }
    }

    let k = BigInt::from(dimension.clone());
    let two_n = BigInt::one() << n;
    let (numer, denom) = match direction {
        Direction::DualToPrimal => (BigInt::one(), two_n * k),
        Direction::PrimalToDual => (k, two_n),
    };
    let mut out = Vec::with_capacity(n + 1);
    for (weight, c) in raw.into_iter().enumerate() {
        let (q, r) = (c * &numer).div_rem(&denom);
        if !r.is_zero() {
            return Err(Error::NonIntegral { weight });
        }
        out.push(q);
    }
    if !out[0].is_one() {
        return Err(Error::InvalidPair(format!(
            "transformed coefficient 0 is {} rather than 1",
            out[0]
        )));
    }
    Ok(out)
}

/// `𝓑_w = Σ_{i ≤ w} B_i C(n-i, n-w)` for `w = 0..=n`.
pub fn binomial_moments(dist: &[BigUint]) -> Vec<BigUint> {
    let n = dist.len().saturating_sub(1);
    let binom: Vec<Vec<BigInt>> = (0..=n).map(binomial_row).collect();
    (0..dist.len())
        .map(|w| {
            dist[..=w]
                .iter()
                .enumerate()
                .map(|(i, b)| b * binom[n - i][n - w].magnitude())
                .sum()
        })
        .collect()
}

fn check_pair(pair: &EnumeratorPair) -> std::result::Result<(), String> {
    if !pair.b[0].is_one() || !pair.bperp[0].is_one() {
        return Err("B_0 and B⊥_0 must equal 1".into());
    }
    if let Some(i) = (0..=pair.n).find(|&i| pair.b[i] > pair.bperp[i]) {
        return Err(format!("B_{i} exceeds B⊥_{i}"));
    }
    Ok(())
}

/// `t + 1` for the largest `t` with `B_i = B⊥_i` on `0..=t`; `n + 1` when
/// the enumerators coincide everywhere.
pub fn min_distance(pair: &EnumeratorPair) -> Result<usize> {
    check_pair(pair).map_err(Error::InvalidPair)?;
    Ok((0..=pair.n)
        .find(|&i| pair.b[i] != pair.bperp[i])
        .unwrap_or(pair.n + 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Itemized outcome of a batch of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks `B_0 = B⊥_0 = 1`, `0 ≤ B_i ≤ B⊥_i`, `Σ B⊥ = 2^n K` and
/// `K Σ B = 2^n`.
pub fn check_enum_properties(pair: &EnumeratorPair) -> PropertyReport {
    let mut report = PropertyReport::default();
    report.push(Check::new(
        "B_0 = 1",
        pair.b[0].is_one(),
        format!("B_0 = {}", pair.b[0]),
    ));
    report.push(Check::new(
        "B⊥_0 = 1",
        pair.bperp[0].is_one(),
        format!("B⊥_0 = {}", pair.bperp[0]),
    ));
    let bad: Vec<usize> = (0..=pair.n).filter(|&i| pair.b[i] > pair.bperp[i]).collect();
    report.push(Check::new(
        "0 ≤ B_i ≤ B⊥_i",
        bad.is_empty(),
        if bad.is_empty() {
            "holds for every i".to_string()
        } else {
            format!("violated at i = {bad:?}")
        },
    ));
    let two_n = BigUint::one() << pair.n;
    let sum_b: BigUint = pair.b.iter().sum();
    let sum_bperp: BigUint = pair.bperp.iter().sum();
    report.push(Check::new(
        "Σ B⊥_i = 2^n K",
        sum_bperp == &two_n * &pair.dimension,
        format!("Σ B⊥_i = {sum_bperp}"),
    ));
    report.push(Check::new(
        "K Σ B_i = 2^n",
        &sum_b * &pair.dimension == two_n,
        format!("Σ B_i = {sum_b}"),
    ));
    report
}

/// Lossy conversion used by the floating-point evaluators.
pub(crate) fn to_f64(v: &BigInt) -> f64 {
    match v.to_f64() {
        Some(f) => f,
        None if v.sign() == Sign::Minus => f64::NEG_INFINITY,
        None => f64::INFINITY,
    }
}

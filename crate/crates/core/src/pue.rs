//! Undetected-error probabilities over the depolarizing channel.
//!
//! With `d_i = B⊥_i - B_i` the undetectable-error counts, the stabilizer
//! protocol fails with probability
//!
//! ```text
//! P_s(p) = Σ_i d_i (p/3)^i (1-p)^(n-i)
//! ```
//!
//! The nonstabilizer protocol scales this by `K/(K+1)`; the composite
//! (entangled reference) protocol reproduces it unchanged. In binomial
//! moments the same value is `Σ_w (𝓑⊥_w - 𝓑_w) (p/3)^w (1 - 4p/3)^(n-w)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::AdditiveCode;
use crate::enumerators::{to_f64, EnumeratorPair};
use crate::error::{Error, Result};

/// Depolarizing channel with error probability `0 ≤ p ≤ 3/4`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ChannelParams {
    p: f64,
}

impl ChannelParams {
    pub const MAX_P: f64 = 0.75;

    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=Self::MAX_P).contains(&p) {
            Ok(ChannelParams { p })
        } else {
            Err(Error::ProbabilityOutOfRange(p))
        }
    }

    pub fn p(self) -> f64 {
        self.p
    }

    /// `Pr(E)` for an error of weight `w` on `n` qubits.
    pub fn error_probability(self, n: usize, w: usize) -> f64 {
        (self.p / 3.0).powi(w as i32) * (1.0 - self.p).powi((n - w) as i32)
    }
}

/// Neumaier-compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `Σ_i c_i a^i b^(n-i)`.
fn eval_homogeneous(coeffs: &[BigInt], a: f64, b: f64) -> f64 {
    let n = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| to_f64(c) * a.powi(i as i32) * b.powi((n - i) as i32))
        .collect::<CompensatedSum>()
        .value()
}

fn diff(hi: &[BigUint], lo: &[BigUint]) -> Vec<BigInt> {
    hi.iter()
        .zip(lo)
        .map(|(h, l)| BigInt::from(h.clone()) - BigInt::from(l.clone()))
        .collect()
}

pub fn pue_stabilizer(pair: &EnumeratorPair, p: f64) -> Result<f64> {
    let ch = ChannelParams::new(p)?;
    Ok(eval_homogeneous(&pair.undetectable_counts(), ch.p / 3.0, 1.0 - ch.p))
}

pub fn pue_nonstabilizer(pair: &EnumeratorPair, p: f64) -> Result<f64> {
    let k = to_f64(&BigInt::from(pair.dimension().clone()));
    Ok(k / (k + 1.0) * pue_stabilizer(pair, p)?)
}

/// `Σ_{e ∈ C⊥ \ C} Pr(e)` by explicit enumeration of the dual.
pub fn pue_stabilizer_direct(code: &AdditiveCode, p: f64) -> Result<f64> {
    let ch = ChannelParams::new(p)?;
    if !code.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let n = code.n();
    let mut by_weight = vec![0u64; n + 1];
    for e in code.dual().codewords()? {
        if !code.contains(&e) {
            by_weight[e.weight()] += 1;
        }
    }
    Ok(by_weight
        .iter()
        .enumerate()
        .map(|(w, &c)| c as f64 * ch.error_probability(n, w))
        .collect::<CompensatedSum>()
        .value())
}

/// Composite-system functional; equal to the stabilizer one.
pub fn pue_composite(pair: &EnumeratorPair, p: f64) -> Result<f64> {
    pue_stabilizer(pair, p)
}

pub fn pue_via_moments(pair: &EnumeratorPair, p: f64) -> Result<f64> {
    let ch = ChannelParams::new(p)?;
    let (m, mp) = pair.moments();
    Ok(eval_homogeneous(&diff(mp, m), ch.p / 3.0, 1.0 - 4.0 * ch.p / 3.0))
}

/// Classical `q`-ary symmetric channel: `Σ_{i≥1} B_i (p/(q-1))^i (1-p)^(n-i)`.
pub fn pue_classical(distance_distribution: &[BigUint], q: u32, p: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("alphabet size {q} < 2")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    if distance_distribution.is_empty() {
        return Err(Error::InvalidArgument("empty distance distribution".into()));
    }
    let mut coeffs: Vec<BigInt> = distance_distribution.iter().cloned().map(BigInt::from).collect();
    coeffs[0] = BigInt::zero();
    Ok(eval_homogeneous(&coeffs, p / f64::from(q - 1), 1.0 - p))
}

fn rational_bounds(p: &BigRational) -> Result<()> {
    let max = BigRational::new(BigInt::from(3), BigInt::from(4));
    if *p < BigRational::zero() || *p > max {
        return Err(Error::ProbabilityOutOfRange(to_f64(p.numer()) / to_f64(p.denom())));
    }
    Ok(())
}

fn eval_exact(coeffs: &[BigInt], a: &BigRational, b: &BigRational) -> BigRational {
    let n = coeffs.len() - 1;
    let mut total = BigRational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = BigRational::from_integer(c.clone());
        for _ in 0..i {
            term *= a;
        }
        for _ in 0..n - i {
            term *= b;
        }
        total += term;
    }
    total
}

/// Exact rational evaluation of [`pue_stabilizer`].
pub fn pue_stabilizer_exact(pair: &EnumeratorPair, p: &BigRational) -> Result<BigRational> {
    rational_bounds(p)?;
    let three = BigRational::from_integer(BigInt::from(3));
    Ok(eval_exact(
        &pair.undetectable_counts(),
        &(p / &three),
        &(BigRational::one() - p),
    ))
}

/// Exact rational evaluation of [`pue_via_moments`].
pub fn pue_via_moments_exact(pair: &EnumeratorPair, p: &BigRational) -> Result<BigRational> {
    rational_bounds(p)?;
    let three = BigRational::from_integer(BigInt::from(3));
    let four = BigRational::from_integer(BigInt::from(4));
    let (m, mp) = pair.moments();
    Ok(eval_exact(
        &diff(mp, m),
        &(p / &three),
        &(BigRational::one() - four * p / three),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Stabilizer,
    Nonstabilizer,
    Composite,
    Classical,
    Moments,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Stabilizer => "stabilizer",
            Mode::Nonstabilizer => "nonstabilizer",
            Mode::Composite => "composite",
            Mode::Classical => "classical",
            Mode::Moments => "moments",
        }
    }

    /// Evaluates this functional; the classical mode reads `B` as the
    /// distance distribution of a 4-ary code.
    pub fn evaluate(self, pair: &EnumeratorPair, p: f64) -> Result<f64> {
        match self {
            Mode::Stabilizer => pue_stabilizer(pair, p),
            Mode::Nonstabilizer => pue_nonstabilizer(pair, p),
            Mode::Composite => pue_composite(pair, p),
            Mode::Classical => {
                ChannelParams::new(p)?;
                pue_classical(pair.b(), 4, p)
            }
            Mode::Moments => pue_via_moments(pair, p),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "s" | "stabilizer" => Mode::Stabilizer,
            "n" | "nonstabilizer" => Mode::Nonstabilizer,
            "c" | "composite" => Mode::Composite,
            "q" | "classical" => Mode::Classical,
            "m" | "moments" => Mode::Moments,
            _ => return Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PueResult {
    pub mode: Mode,
    pub p: f64,
    pub value: f64,
    pub code: String,
}

/// One row per `(p, mode)`, ordered by grid index and then by `modes`.
pub fn sweep(pair: &EnumeratorPair, grid: &[f64], modes: &[Mode], code: &str) -> Result<Vec<PueResult>> {
    let rows: Vec<Vec<PueResult>> = grid
        .par_iter()
        .map(|&p| {
            modes
                .iter()
                .map(|&mode| {
                    Ok(PueResult {
                        mode,
                        p,
                        value: mode.evaluate(pair, p)?,
                        code: code.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("grid {spec:?} is not start:stop:step"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if stop < start {
        return Ok(Vec::new());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub const CSV_HEADER: &str = "p,mode,pue";

/// CSV with header `p,mode,pue`; floats use shortest round-trip formatting.
pub fn to_csv(rows: &[PueResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.p, r.mode, r.value));
    }
    out
}

pub fn from_csv(text: &str, code: &str) -> Result<Vec<PueResult>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(Error::InvalidArgument("missing CSV header".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let bad = || Error::InvalidArgument(format!("bad CSV row {line:?}"));
            let mut parts = line.split(',');
            let (Some(p), Some(mode), Some(v), None) = (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad());
            };
            Ok(PueResult {
                p: p.parse().map_err(|_| bad())?,
                mode: mode.parse()?,
                value: v.parse().map_err(|_| bad())?,
                code: code.to_string(),
            })
        })
        .collect()
}

//! Seeded simulation of transmission over the depolarizing channel followed
//! by syndrome-free detection: measure against `(P, I - P)` and, for the
//! nonstabilizer protocol, the surviving state against `(vv*, P - vv*)`.

use rand::Rng;
use serde::Serialize;

use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::gf4::{Gf4, Gf4Vector};
use crate::oracle::dense::{check_cap, oracle_cap, DenseOperator, PauliAction};
use crate::oracle::group::stabilizer_projector;
use crate::oracle::sampling::{uniform_state, StateVector};
use crate::pue::ChannelParams;
use crate::rng::{RunPlan, StreamRng};

const NONIDENTITY: [Gf4; 3] = [Gf4::One, Gf4::Omega, Gf4::OmegaSq];

/// An error pattern drawn from the channel: each position independently
/// identity with probability `1 - p`, otherwise X, Z or Y with `p/3` each.
pub fn sample_error<R: Rng + ?Sized>(n: usize, channel: ChannelParams, rng: &mut R) -> Gf4Vector {
    let p = channel.p();
    let mut e = Gf4Vector::zeros(n);
    for i in 0..n {
        let u: f64 = rng.random();
        if u < p {
            e.set(i, NONIDENTITY[rng.random_range(0..3)]);
        }
    }
    e
}

/// Outcome of a projective measurement.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub outcome: usize,
    pub state: StateVector,
    pub probabilities: Vec<f64>,
}

pub const BORN_TOLERANCE: f64 = 1e-9;

/// Measures `state` against orthogonal projectors whose Born probabilities
/// sum to one on it. Outcome `i` has probability `‖P_i v‖²`; the post-state
/// is `P_i v / ‖P_i v‖`.
pub fn measure<R: Rng + ?Sized>(
    state: &StateVector,
    projectors: &[DenseOperator],
    rng: &mut R,
) -> Result<Measurement> {
    let images: Vec<_> = projectors.iter().map(|p| p.apply(state.amplitudes())).collect();
    let probabilities: Vec<f64> = images.iter().map(|v| v.norm_squared()).collect();
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > BORN_TOLERANCE {
        return Err(Error::BornNormalization(total));
    }
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut outcome = probabilities.len() - 1;
    for (i, &q) in probabilities.iter().enumerate() {
        acc += q;
        if u < acc && q > 0.0 {
            outcome = i;
            break;
        }
    }
    let state = StateVector::normalized(images[outcome].clone())?;
    Ok(Measurement {
        outcome,
        state,
        probabilities,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    /// Accept when the received state lies in `Q`.
    Stabilizer,
    /// Additionally measure against `(vv*, P - vv*)`, with `v` the
    /// transmitted state kept as ground truth.
    Nonstabilizer,
}

impl std::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "stabilizer" => Ok(Protocol::Stabilizer),
            "n" | "nonstabilizer" => Ok(Protocol::Nonstabilizer),
            other => Err(Error::InvalidArgument(format!("unknown protocol '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub undetected: u64,
    pub detected: u64,
    pub trivial: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub protocol: Protocol,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub counts: Counts,
    pub shards: usize,
    /// Largest `min(Pr(Q), Pr(Q⊥))` seen in the first measurement.
    #[serde(skip)]
    pub max_born_split: f64,
}

impl SimReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// `(estimate - target) / stderr`; infinite when the estimate is exact
    /// but differs from the target.
    pub fn sigma_distance(&self, target: f64) -> f64 {
        let diff = self.estimate - target;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// `|z* v|² > 1 - 1e-9`.
fn collinear(z: &StateVector, v: &StateVector) -> bool {
    z.inner(v).norm_sqr() > 1.0 - BORN_TOLERANCE
}

#[derive(Default)]
struct ShardTally {
    counts: Counts,
    max_split: f64,
}

/// Runs `plan.samples` trials against the code space of projector `p`.
pub fn simulate_projector(
    p: &DenseOperator,
    channel: ChannelParams,
    protocol: Protocol,
    plan: &RunPlan,
) -> Result<SimReport> {
    let n = p
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch(format!("dimension {} is not 2^n", p.dim())))?;
    check_cap(n, oracle_cap())?;
    if plan.samples == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let complement = &DenseOperator::identity(p.dim()) - p;
    let first = [p.clone(), complement];

    let tallies = plan.run(|rng: &mut StreamRng, count| -> Result<ShardTally> {
        let mut tally = ShardTally::default();
        for _ in 0..count {
            let v = uniform_state(p, rng)?;
            let e = sample_error(n, channel, rng);
            let received = StateVector::normalized(PauliAction::new(&e).apply(v.amplitudes()))?;
            let m = measure(&received, &first, rng)?;
            tally.max_split = tally.max_split.max(m.probabilities[0].min(m.probabilities[1]));
            if m.outcome == 1 {
                tally.counts.detected += 1;
                continue;
            }
            let undetected = match protocol {
                Protocol::Stabilizer => !collinear(&m.state, &v),
                Protocol::Nonstabilizer => {
                    let vv = v.outer();
                    let second = [vv.clone(), p - &vv];
                    measure(&m.state, &second, rng)?.outcome == 1
                }
            };
            if undetected {
                tally.counts.undetected += 1;
            } else {
                tally.counts.trivial += 1;
            }
        }
        Ok(tally)
    });

    let mut counts = Counts::default();
    let mut max_born_split: f64 = 0.0;
    for t in tallies {
        let t = t?;
        counts.undetected += t.counts.undetected;
        counts.detected += t.counts.detected;
        counts.trivial += t.counts.trivial;
        max_born_split = max_born_split.max(t.max_split);
    }
    let trials = plan.samples as u64;
    let estimate = counts.undetected as f64 / trials as f64;
    Ok(SimReport {
        protocol,
        p: channel.p(),
        trials,
        seed: plan.seed,
        estimate,
        stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        counts,
        shards: plan.shards,
        max_born_split,
    })
}

/// Simulates the detection protocol on a stabilizer code.
pub fn simulate(code: &AdditiveCode, p: f64, protocol: Protocol, plan: &RunPlan) -> Result<SimReport> {
    let channel = ChannelParams::new(p)?;
    if plan.samples == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let (_, projector) = stabilizer_projector(code)?;
    simulate_projector(&projector, channel, protocol, plan)
}

//! Monte Carlo evaluation of the nonstabilizer functional
//! `∫ Σ_E Pr(E) ‖(I - vv*) P E v‖² dν(v)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::dense::{check_cap, oracle_cap, pauli_matrix_unchecked, DenseOperator, PauliAction, C64};
use super::sampling::{range_basis, uniform_state};
use crate::chansim::sample_error;
use crate::error::{Error, Result};
use crate::gf4::Gf4Vector;
use crate::pue::ChannelParams;
use crate::rng::{RunPlan, StreamRng};

/// Largest `n` for which every error is summed exactly per sample.
pub const EXACT_ERROR_SUM_MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub p: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub shards: usize,
}

/// With `Q` an orthonormal basis of the code, `‖(I - vv*) P E v‖²` equals
/// `‖Q* E v‖² - |(Q* v)* (Q* E v)|²`.
fn leak(a: &DVector<C64>, u: &DVector<C64>) -> f64 {
    (u.norm_squared() - a.dotc(u).norm_sqr()).max(0.0)
}

#[derive(Clone)]
struct Moments {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn new(len: usize) -> Self {
        Moments {
            sum: vec![0.0; len],
            sum_sq: vec![0.0; len],
        }
    }

    fn add(&mut self, i: usize, x: f64) {
        self.sum[i] += x;
        self.sum_sq[i] += x * x;
    }

    fn merge(mut self, other: &Moments) -> Self {
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }

    fn estimate(&self, i: usize, samples: usize) -> (f64, f64) {
        let nf = samples as f64;
        let mean = self.sum[i] / nf;
        let var = if samples > 1 {
            ((self.sum_sq[i] - nf * mean * mean) / (nf - 1.0)).max(0.0)
        } else {
            0.0
        };
        (mean, (var / nf).sqrt())
    }
}

fn qubits_of(p: &DenseOperator) -> Result<usize> {
    p.qubits()
        .ok_or_else(|| Error::DimensionMismatch(format!("dimension {} is not 2^n", p.dim())))
}

/// Estimates the functional at every point of `grid`. For `n ≤ 4` each state
/// sample is paired with the exact sum over all `4^n` errors, so all grid
/// points share one set of state samples; above that one error is drawn
/// from the channel per state sample, independently for each grid point.
pub fn pue_nonstab_mc_grid(p: &DenseOperator, k: usize, grid: &[f64], plan: &RunPlan) -> Result<Vec<McEstimate>> {
    let n = qubits_of(p)?;
    check_cap(n, oracle_cap())?;
    let channels = grid.iter().map(|&x| ChannelParams::new(x)).collect::<Result<Vec<_>>>()?;
    if plan.samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let q = range_basis(p, k)?;
    let qh = q.adjoint();

    let moments = if n <= EXACT_ERROR_SUM_MAX_N {
        vec![exact_error_sum(p, &qh, n, &channels, plan)?]
    } else {
        channels
            .iter()
            .map(|&ch| sampled_errors(p, &qh, n, ch, plan))
            .collect::<Result<Vec<_>>>()?
    };

    Ok(channels
        .iter()
        .enumerate()
        .map(|(g, ch)| {
            let (estimate, stderr) = if moments.len() == 1 {
                moments[0].estimate(g, plan.samples)
            } else {
                moments[g].estimate(0, plan.samples)
            };
            McEstimate {
                p: ch.p(),
                estimate,
                stderr,
                samples: plan.samples,
                seed: plan.seed,
                shards: plan.shards,
            }
        })
        .collect())
}

pub fn pue_nonstab_mc(p: &DenseOperator, k: usize, prob: f64, plan: &RunPlan) -> Result<McEstimate> {
    Ok(pue_nonstab_mc_grid(p, k, &[prob], plan)?[0])
}

fn exact_error_sum(
    p: &DenseOperator,
    qh: &DMatrix<C64>,
    n: usize,
    channels: &[ChannelParams],
    plan: &RunPlan,
) -> Result<Moments> {
    // Q* E for every error of positive weight; the identity contributes 0.
    let errors: Vec<(usize, DMatrix<C64>)> = (1..4u64.pow(n as u32))
        .map(|idx| {
            let e = Gf4Vector::from_index(n, idx);
            (e.weight(), qh * pauli_matrix_unchecked(&e).matrix())
        })
        .collect();
    let weights: Vec<Vec<f64>> = channels
        .iter()
        .map(|ch| (0..=n).map(|w| ch.error_probability(n, w)).collect())
        .collect();

    let parts = plan.run(|rng: &mut StreamRng, count| -> Result<Moments> {
        let mut acc = Moments::new(channels.len());
        let mut per_weight = vec![0.0; n + 1];
        for _ in 0..count {
            let v = uniform_state(p, rng)?;
            let a = qh * v.amplitudes();
            per_weight.iter_mut().for_each(|s| *s = 0.0);
            for (w, m) in &errors {
                per_weight[*w] += leak(&a, &(m * v.amplitudes()));
            }
            for (g, pr) in weights.iter().enumerate() {
                let f: f64 = per_weight.iter().zip(pr).map(|(s, q)| s * q).sum();
                acc.add(g, f);
            }
        }
        Ok(acc)
    });
    let first = Moments::new(channels.len());
    parts
        .into_iter()
        .try_fold(first, |acc, part| part.map(|m| acc.merge(&m)))
}

fn sampled_errors(
    p: &DenseOperator,
    qh: &DMatrix<C64>,
    n: usize,
    channel: ChannelParams,
    plan: &RunPlan,
) -> Result<Moments> {
    let parts = plan.run(|rng: &mut StreamRng, count| -> Result<Moments> {
        let mut acc = Moments::new(1);
        for _ in 0..count {
            let v = uniform_state(p, rng)?;
            let e = sample_error(n, channel, rng);
            let a = qh * v.amplitudes();
            let u = qh * PauliAction::new(&e).apply(v.amplitudes());
            acc.add(0, leak(&a, &u));
        }
        Ok(acc)
    });
    parts
        .into_iter()
        .try_fold(Moments::new(1), |acc, part| part.map(|m| acc.merge(&m)))
}

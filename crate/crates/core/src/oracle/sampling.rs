//! Uniform states on a code subspace and the averaging identities
//! `∫ vv* dν = P/K` and `∫ vv*⊗vv* dν = (Î + J)/(K(K+1))`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use super::dense::{DenseOperator, C64};
use crate::error::{Error, Result};
use crate::rng::{RunPlan, StreamRng};

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("state has norm {norm}")));
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(v: DVector<C64>) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("cannot normalize a zero vector".into()));
        }
        Ok(StateVector { amplitudes: v / C64::new(norm, 0.0) })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn outer(&self) -> DenseOperator {
        DenseOperator::new(&self.amplitudes * self.amplitudes.adjoint()).expect("square")
    }
}

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DVector<C64> {
    DVector::from_fn(dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    })
}

const MAX_ATTEMPTS: usize = 100;

/// Uniform unit vector in the range of the projector `p`: an ambient
/// standard complex Gaussian, projected and normalized.
pub fn uniform_state<R: Rng + ?Sized>(p: &DenseOperator, rng: &mut R) -> Result<StateVector> {
    for _ in 0..MAX_ATTEMPTS {
        let g = complex_gaussian(rng, p.dim());
        let v = p.apply(&g);
        if v.norm() > 1e-8 {
            return StateVector::normalized(v);
        }
    }
    Err(Error::DegenerateProjection(MAX_ATTEMPTS))
}

/// Orthonormal basis of `range(p)` as the columns of a `dim × K` matrix,
/// by twice-iterated Gram-Schmidt over the columns of `p`.
pub fn range_basis(p: &DenseOperator, k: usize) -> Result<DMatrix<C64>> {
    let dim = p.dim();
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(k);
    for j in 0..dim {
        if basis.len() == k {
            break;
        }
        let mut v: DVector<C64> = p.matrix().column(j).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v / C64::new(norm, 0.0));
        }
    }
    if basis.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "projector has rank {} rather than {k}",
            basis.len()
        )));
    }
    Ok(DMatrix::from_columns(&basis))
}

/// Frobenius deviation of a Monte Carlo mean from its target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaReport {
    pub samples: usize,
    pub deviation: f64,
    /// Standard error of the mean in Frobenius norm: `sqrt(Σ Var(X_ab) / N)`.
    pub sigma: f64,
}

impl LemmaReport {
    /// `deviation ≤ k σ`, with a floor of 1e-12 for the zero-variance case.
    pub fn within(&self, k: f64) -> bool {
        self.deviation <= k * self.sigma + 1e-12
    }
}

/// Accumulates first and second moments of sampled matrices.
struct MomentSums {
    sum: DMatrix<C64>,
    sum_sq: f64,
}

impl MomentSums {
    fn new(dim: usize) -> Self {
        MomentSums {
            sum: DMatrix::zeros(dim, dim),
            sum_sq: 0.0,
        }
    }

    fn add_outer(&mut self, u: &DVector<C64>) {
        let d = u.len();
        for b in 0..d {
            let ub = u[b].conj();
            for a in 0..d {
                self.sum[(a, b)] += u[a] * ub;
            }
        }
        // ‖u u*‖_F² = ‖u‖⁴
        self.sum_sq += u.norm_squared().powi(2);
    }

    fn merge(mut self, other: MomentSums) -> Self {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    fn report(self, samples: usize, target: &DMatrix<C64>) -> LemmaReport {
        let nf = samples as f64;
        let mean = self.sum / C64::new(nf, 0.0);
        let mean_sq: f64 = mean.iter().map(|z| z.norm_sqr()).sum();
        let variance = (self.sum_sq / nf - mean_sq).max(0.0) * nf / (nf - 1.0).max(1.0);
        let deviation = (mean - target).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        LemmaReport {
            samples,
            deviation,
            sigma: (variance / nf).sqrt(),
        }
    }
}

fn merge_all(parts: Vec<MomentSums>, dim: usize) -> MomentSums {
    parts.into_iter().fold(MomentSums::new(dim), MomentSums::merge)
}

/// Checks `E[vv*] = P/K` for `v` uniform on the range of `p`.
pub fn verify_lemma_int(p: &DenseOperator, k: usize, plan: &RunPlan) -> Result<LemmaReport> {
    let dim = p.dim();
    let parts = plan.run(|rng: &mut StreamRng, count| -> Result<MomentSums> {
        let mut acc = MomentSums::new(dim);
        for _ in 0..count {
            acc.add_outer(uniform_state(p, rng)?.amplitudes());
        }
        Ok(acc)
    });
    let acc = merge_all(parts.into_iter().collect::<Result<_>>()?, dim);
    let target = p.matrix() / C64::new(k as f64, 0.0);
    Ok(acc.report(plan.samples, &target))
}

/// `(Î + J)/(K(K+1))` on `C^K ⊗ C^K`, `J` the swap.
pub fn symmetric_target(k: usize) -> DMatrix<C64> {
    let d = k * k;
    let scale = 1.0 / (k * (k + 1)) as f64;
    DMatrix::from_fn(d, d, |r, c| {
        let (i, j) = (r / k, r % k);
        let (ip, jp) = (c / k, c % k);
        let identity = f64::from(u8::from(r == c));
        let swap = f64::from(u8::from(i == jp && j == ip));
        C64::new((identity + swap) * scale, 0.0)
    })
}

fn uniform_unit<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DVector<C64> {
    let g = complex_gaussian(rng, k);
    let n = g.norm();
    g / C64::new(n, 0.0)
}

/// Checks `E[vv* ⊗ vv*] = (Î + J)/(K(K+1))` for `v` uniform on the unit
/// sphere of `C^K`.
pub fn verify_lemma_vvvv(k: usize, plan: &RunPlan) -> Result<LemmaReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    let d = k * k;
    let parts = plan.run(|rng: &mut StreamRng, count| {
        let mut acc = MomentSums::new(d);
        for _ in 0..count {
            let v = uniform_unit(rng, k);
            acc.add_outer(&v.kronecker(&v));
        }
        acc
    });
    Ok(merge_all(parts, d).report(plan.samples, &symmetric_target(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `E[vv*] = I/K` on `C^K`.
    SecondMoment,
    /// `E[vv*⊗vv*] = (Î + J)/(K(K+1))` on `C^K`.
    FourthMoment,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingPoint {
    pub samples: usize,
    /// Root mean square of the deviation over independent replicates.
    pub rms_deviation: f64,
}

/// Replicate count giving every configuration about the same accumulation
/// work: `4096 / d²` clamped to `32..=256`, `d` the sampled matrix dimension.
pub fn scaling_replicates(lemma: Lemma, k: usize) -> usize {
    let d = match lemma {
        Lemma::SecondMoment => k,
        Lemma::FourthMoment => k * k,
    };
    (4096 / (d * d).max(1)).clamp(32, 256)
}

/// RMS deviation at each sample size over `replicates` independent runs;
/// replicate `r` at size index `s` uses seed `seed + s·replicates + r`.
pub fn deviation_scaling(
    lemma: Lemma,
    k: usize,
    sizes: &[usize],
    replicates: usize,
    seed: u64,
) -> Result<Vec<ScalingPoint>> {
    let identity = DenseOperator::identity(k);
    sizes
        .iter()
        .enumerate()
        .map(|(s, &samples)| {
            let mut sq = 0.0;
            for r in 0..replicates {
                let run_seed = seed.wrapping_add((s * replicates + r) as u64);
                let plan = RunPlan::new(samples, run_seed).with_shards(1).serial();
                let report = match lemma {
                    Lemma::SecondMoment => verify_lemma_int(&identity, k, &plan)?,
                    Lemma::FourthMoment => verify_lemma_vvvv(k, &plan)?,
                };
                sq += report.deviation * report.deviation;
            }
            Ok(ScalingPoint {
                samples,
                rms_deviation: (sq / replicates as f64).sqrt(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn states_are_unit_and_in_range() {
        let mut p = DenseOperator::zeros(4);
        let mut m = p.clone().into_matrix();
        m[(0, 0)] = C64::new(1.0, 0.0);
        m[(3, 3)] = C64::new(1.0, 0.0);
        p = DenseOperator::new(m).unwrap();
        let mut rng = stream(1, 0);
        for _ in 0..50 {
            let v = uniform_state(&p, &mut rng).unwrap();
            assert!((v.amplitudes().norm() - 1.0).abs() < 1e-12);
            assert!(v.amplitudes()[1].norm() == 0.0 && v.amplitudes()[2].norm() == 0.0);
        }
    }

    #[test]
    fn rank_one_is_deterministic_up_to_phase() {
        let u = DVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
        let p = DenseOperator::new(&u * u.adjoint()).unwrap();
        let mut rng = stream(2, 0);
        let v = uniform_state(&p, &mut rng).unwrap();
        assert!((u.dotc(v.amplitudes()).norm() - 1.0).abs() < 1e-12);
        let report = verify_lemma_int(&p, 1, &RunPlan::new(200, 3)).unwrap();
        assert!(report.deviation < 1e-12);
        assert!(report.within(4.0));
    }

    #[test]
    fn zero_projector_is_degenerate() {
        let mut rng = stream(0, 0);
        assert_eq!(
            uniform_state(&DenseOperator::zeros(2), &mut rng).unwrap_err(),
            Error::DegenerateProjection(100)
        );
    }

    #[test]
    fn symmetric_target_is_a_density() {
        for k in 1..=4 {
            let t = DenseOperator::new(symmetric_target(k)).unwrap();
            assert!((t.trace().re - 1.0).abs() < 1e-14);
            assert!(t.is_hermitian(0.0));
        }
        // K = 1: Î = J, target vv*⊗vv* = 1.
        let r = verify_lemma_vvvv(1, &RunPlan::new(100, 9)).unwrap();
        assert!(r.deviation < 1e-12);
    }

    #[test]
    fn range_basis_is_orthonormal() {
        let p = DenseOperator::new(symmetric_target(2) * C64::new(3.0, 0.0)).unwrap();
        // (Î + J)/2 projects onto the 3-dimensional symmetric subspace.
        let q = range_basis(&p, 3).unwrap();
        let gram = q.adjoint() * &q;
        assert!((gram - DMatrix::<C64>::identity(3, 3)).norm() < 1e-12);
        assert!(range_basis(&p, 4).is_err());
    }
}

//! The composite-system functional: transmit `b = K^(-1/2) Σ v_i ⊗ w_i`
//! through `E ⊗ I` and measure against `(P ⊗ I, I - P ⊗ I)` and `(bb*, ·)`.

use nalgebra::DVector;

use super::dense::{check_cap, pauli_matrix_unchecked, DenseOperator, COMPOSITE_CAP, C64};
use super::sampling::range_basis;
use crate::error::{Error, Result};
use crate::gf4::Gf4Vector;
use crate::pue::{ChannelParams, CompensatedSum};

/// The completely entangled state of the code with a `K`-dimensional
/// reference system, built from an orthonormal basis of `range(p)` and the
/// standard basis of `C^K`.
pub fn entangled_state(p: &DenseOperator, k: usize) -> Result<DVector<C64>> {
    let q = range_basis(p, k)?;
    let scale = C64::new(1.0 / (k as f64).sqrt(), 0.0);
    let mut b = DVector::zeros(p.dim() * k);
    for i in 0..k {
        let mut w = DVector::zeros(k);
        w[i] = C64::new(1.0, 0.0);
        b += q.column(i).into_owned().kronecker(&w) * scale;
    }
    Ok(b)
}

/// `s_w = Σ_{wt E = w} ‖(I - bb*)(P ⊗ I)(E ⊗ I) b‖²`.
pub fn composite_weight_sums(p: &DenseOperator, k: usize) -> Result<Vec<f64>> {
    let n = p
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch(format!("dimension {} is not 2^n", p.dim())))?;
    check_cap(n, COMPOSITE_CAP)?;
    let b = entangled_state(p, k)?;
    let reference = DenseOperator::identity(k);
    let pi = p.kron(&reference);
    let mut sums = vec![0.0; n + 1];
    for idx in 0..4u64.pow(n as u32) {
        let e = Gf4Vector::from_index(n, idx);
        let ei = pauli_matrix_unchecked(&e).kron(&reference);
        let y = pi.apply(&ei.apply(&b));
        let overlap = b.dotc(&y);
        let r = &y - &b * overlap;
        sums[e.weight()] += r.norm_squared();
    }
    Ok(sums)
}

/// `Σ_E Pr(E) ‖(I - bb*)(P ⊗ I)(E ⊗ I) b‖²`, evaluated exactly; `n ≤ 4`.
pub fn pue_composite_exact(p: &DenseOperator, k: usize, prob: f64) -> Result<f64> {
    let channel = ChannelParams::new(prob)?;
    let sums = composite_weight_sums(p, k)?;
    let n = sums.len() - 1;
    Ok(sums
        .iter()
        .enumerate()
        .map(|(w, s)| s * channel.error_probability(n, w))
        .collect::<CompensatedSum>()
        .value())
}
